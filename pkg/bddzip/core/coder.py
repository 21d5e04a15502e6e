"""
Level coder
Codifica la transición S_{i-1} -> S_i en cinco secciones: corridas de frecuencia,
banderas de tipo, potencias unarias, rango de π_i^1 y π_i^2 (banderas de primera
aparición más rango de π̃_i^2 cuando no está forzado).
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from ..infrastructure.errors import CorruptStreamError, StructuralError
from .bitstream import BitStream
from .enumerative import Composition, first_strike, rank_multiset_perm, unrank_multiset_perm
from .levelstrings import (
    LevelDecomposition,
    LevelString,
    LevelStrings,
    LevelSymbol,
    decompose_level,
    level_skeleton,
)

logger = logging.getLogger(__name__)


class SectionBudget(BaseModel):
    """
    Bits de cada sección de un nivel. `five_term_bits` es M_i (cinco términos);
    `actual_bits` suma además las banderas de primera aparición.
    """
    level: Optional[int] = Field(description="Índice i del nivel codificado", default=None)
    freq_bits: int = Field(description="|S_i|: corridas de frecuencia")
    type_bits: int = Field(description="|Ŝ_i|: banderas Tipo I / Tipo II")
    power_bits: int = Field(description="Q_i: potencias unarias de los Tipo II")
    rank1_bits: int = Field(description="⌈H(π_i^1)⌉")
    fa_bits: int = Field(description="Banderas de primera aparición de π_i^2 (0 o |π_i^2|)")
    rank2_bits: int = Field(description="⌈H(π̃_i^2)⌉")

    @property
    def five_term_bits(self) -> int:
        return self.freq_bits + self.type_bits + self.power_bits + self.rank1_bits + self.rank2_bits

    @property
    def actual_bits(self) -> int:
        return self.five_term_bits + self.fa_bits


@dataclass(frozen=True)
class _LevelPlan:
    decomposition: LevelDecomposition
    runs: Tuple[Tuple[LevelSymbol, int], ...]
    type2: LevelString
    pi1_composition: Optional[Composition]
    forced: bool
    first_flags: str
    tail: Tuple[LevelSymbol, ...]
    tail_composition: Optional[Composition]
    budget: SectionBudget


def _composition(pairs: Sequence[Tuple[Hashable, int]]) -> Optional[Composition]:
    pairs = [(symbol, count) for symbol, count in pairs if count > 0]
    return Composition.from_pairs(pairs) if pairs else None


def _plan_level(s_prev: Sequence[LevelSymbol], s_cur: Sequence[LevelSymbol],
                next_index: Optional[int], level: Optional[int]) -> _LevelPlan:
    dec = decompose_level(s_prev, s_cur, next_index)
    counts = Counter(s_cur)
    type2 = dec.type2_symbols

    # Orden de corridas: parte conocida en orden del esqueleto, luego los Tipo II
    runs = tuple((symbol, counts[symbol]) for symbol in dec.known + type2)
    pi1_composition = _composition([(symbol, counts[symbol] - 1) for symbol in dec.known])

    forced = len(type2) <= 1 or all(counts[symbol] == 1 for symbol in type2)
    first_flags = ""
    tail: Tuple[LevelSymbol, ...] = ()
    tail_composition = None
    if not forced:
        seen = set()
        flags = []
        for symbol in dec.pi2:
            flags.append("0" if symbol in seen else "1")
            seen.add(symbol)
        first_flags = "".join(flags)
        tail = tuple(first_strike(dec.pi2))
        tail_composition = _composition([(symbol, counts[symbol] - 1) for symbol in type2])

    budget = SectionBudget(
        level=level,
        freq_bits=len(s_cur),
        type_bits=len(dec.hat_s),
        power_bits=dec.Q,
        rank1_bits=pi1_composition.width() if pi1_composition else 0,
        fa_bits=len(first_flags),
        rank2_bits=tail_composition.width() if tail_composition else 0
    )

    return _LevelPlan(
        decomposition=dec,
        runs=runs,
        type2=type2,
        pi1_composition=pi1_composition,
        forced=forced,
        first_flags=first_flags,
        tail=tail,
        tail_composition=tail_composition,
        budget=budget
    )


def level_budget(s_prev: Sequence[LevelSymbol], s_cur: Sequence[LevelSymbol],
                 next_index: Optional[int] = None, level: Optional[int] = None) -> SectionBudget:
    return _plan_level(s_prev, s_cur, next_index, level).budget


def encode_level(s_prev: Sequence[LevelSymbol], s_cur: Sequence[LevelSymbol], sink: BitStream,
                 next_index: Optional[int] = None, level: Optional[int] = None) -> SectionBudget:
    """Escribe las cinco secciones de S_{i-1} -> S_i en `sink` y devuelve su presupuesto"""
    plan = _plan_level(s_prev, s_cur, next_index, level)
    dec = plan.decomposition
    start = len(sink)

    # (1) frecuencias
    for _, count in plan.runs:
        sink.write_unary(count)

    # (2) tipos
    for flag in dec.type_flags:
        sink.write_bit(flag.value)

    # (3) potencias
    for symbol in plan.type2:
        sink.write_unary(symbol.q)

    # (4) π^1
    if plan.pi1_composition is not None:
        rank, width = rank_multiset_perm(dec.pi1, plan.pi1_composition)
        sink.write_uint(rank, width)

    # (5) π^2
    if not plan.forced:
        sink.write_bits(plan.first_flags)
        if plan.tail_composition is not None:
            rank, width = rank_multiset_perm(plan.tail, plan.tail_composition)
            sink.write_uint(rank, width)

    written = len(sink) - start
    if written != plan.budget.actual_bits:
        raise StructuralError(
            f"emitted {written} bits but the budget accounts for {plan.budget.actual_bits}",
            f"level {level}" if level else None
        )
    return plan.budget


def _read_ranked(source: BitStream, composition: Optional[Composition], section: str) -> List[LevelSymbol]:
    if composition is None:
        return []
    rank = source.read_uint(composition.width(), section)
    try:
        return unrank_multiset_perm(rank, composition)
    except CorruptStreamError as e:
        raise CorruptStreamError(e.message, section) from e


def decode_level(s_prev: Sequence[LevelSymbol], source: BitStream, next_index: Optional[int] = None,
                 K: Optional[int] = None, level: Optional[int] = None) -> LevelString:
    """
    Inversa de encode_level. El esqueleto de S_i sale de S_{i-1}; con él se conocen
    |S_i| y el número de huecos antes de leer un solo bit.
    """
    prefix = f"level {level}/" if level else ""
    entries, _ = level_skeleton(s_prev)
    known = [entry for entry in entries if entry is not None]
    length = len(entries)
    slots = length - len(known)
    if next_index is None:
        next_index = max(symbol.m for symbol in s_prev) + 1

    # (1) frecuencias
    counts: List[int] = []
    total = 0
    while total < length:
        count = source.read_unary(length - total, prefix + "frequency runs")
        counts.append(count)
        total += count
    if len(counts) < len(known):
        raise CorruptStreamError(
            f"{len(counts)} runs cannot cover {len(known)} known symbols", prefix + "frequency runs"
        )

    known_counts = counts[:len(known)]
    type2_counts = counts[len(known):]
    pi1_length = sum(count - 1 for count in known_counts)
    pi2_length = sum(type2_counts)
    if pi1_length + pi2_length != slots:
        raise CorruptStreamError(
            f"runs describe {pi1_length + pi2_length} new entries but there are {slots} slots",
            prefix + "frequency runs"
        )

    # (2) tipos
    flags = source.read_bits(slots, prefix + "type flags")
    if flags.count("0") != pi1_length:
        raise CorruptStreamError(
            f"{flags.count('0')} Type I flags but the runs imply {pi1_length}", prefix + "type flags"
        )

    # (3) potencias
    power_limit = K + 2 - level if K is not None and level is not None else max(source.remaining, 1)
    type2 = [
        LevelSymbol(next_index + k, source.read_unary(power_limit, prefix + "powers"))
        for k in range(len(type2_counts))
    ]

    # (4) π^1
    pi1 = _read_ranked(
        source,
        _composition([(symbol, count - 1) for symbol, count in zip(known, known_counts)]),
        prefix + "pi1 rank"
    )

    # (5) π^2
    pi2 = _decode_pi2(source, type2, type2_counts, next_index, prefix)

    pi1_iter = iter(pi1)
    pi2_iter = iter(pi2)
    hat_iter = iter([next(pi1_iter) if flag == "0" else next(pi2_iter) for flag in flags])
    return tuple(entry if entry is not None else next(hat_iter) for entry in entries)


def _decode_pi2(source: BitStream, type2: List[LevelSymbol], counts: List[int],
                next_index: int, prefix: str) -> List[LevelSymbol]:
    r = len(type2)
    if r == 0:
        return []
    if r == 1:
        return [type2[0]] * counts[0]
    if all(count == 1 for count in counts):
        return list(type2)

    section = prefix + "pi2 first appearances"
    flags = source.read_bits(sum(counts), section)
    if flags[0] != "1" or flags.count("1") != r:
        raise CorruptStreamError(f"first-appearance flags name {flags.count('1')} of {r} new symbols", section)

    tail = iter(_read_ranked(
        source,
        _composition([(symbol, count - 1) for symbol, count in zip(type2, counts)]),
        prefix + "pi2 rank"
    ))

    result = []
    introduced = 0
    for flag in flags:
        if flag == "1":
            result.append(type2[introduced])
            introduced += 1
        else:
            symbol = next(tail)
            if symbol.m - next_index >= introduced:
                raise CorruptStreamError(f"{symbol} repeats before its first appearance", section)
            result.append(symbol)
    return result


def section_budgets(ls: LevelStrings) -> List[SectionBudget]:
    """Presupuesto de cada nivel i = 2 ... K+1"""
    budgets = []
    next_index = 2
    for i in range(2, ls.K + 2):
        budgets.append(level_budget(ls.level(i - 1), ls.level(i), next_index, level=i))
        next_index = max(next_index, max(symbol.m for symbol in ls.level(i)) + 1)
    return budgets


def encode_levels(ls: LevelStrings, sink: BitStream) -> List[SectionBudget]:
    budgets = []
    next_index = 2
    for i in range(2, ls.K + 2):
        budgets.append(encode_level(ls.level(i - 1), ls.level(i), sink, next_index, level=i))
        next_index = max(next_index, max(symbol.m for symbol in ls.level(i)) + 1)
    logger.debug(f"Encoded {ls.K} level transitions into {sum(b.actual_bits for b in budgets)} bits")
    return budgets


def decode_levels(source: BitStream, K: int) -> LevelStrings:
    S = [(LevelSymbol(1, 1),)]
    next_index = 2
    for i in range(2, K + 2):
        S.append(decode_level(S[-1], source, next_index, K=K, level=i))
        next_index = max(next_index, max(symbol.m for symbol in S[-1]) + 1)
    return LevelStrings(S=tuple(S), K=K)
