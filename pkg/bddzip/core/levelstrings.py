"""
Level strings
Genera las cadenas S_1 ... S_{K+1} a partir del ROBDD, clasifica las entradas nuevas
(Ŝ_i, Tipo I / Tipo II, π_i^1, π_i^2, Q_i) y reconstruye el grafo en el decodificador.

Los símbolos se numeran en orden de introducción: el orden en que cada vértice aparece
por primera vez al recorrer S_1, S_2, ... Así los vértices nuevos de cada nivel reciben
índices consecutivos y el decodificador puede reproducirlos sin ver el grafo.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from ..infrastructure.errors import DomainError, StructuralError
from .robdd import DyadicInput, Robdd, _as_core, assign_terminals, robdd_from_relations

logger = logging.getLogger(__name__)


class LevelSymbol(NamedTuple):
    """A_m^q"""
    m: int
    q: int

    def __str__(self):
        return f"A{self.m}" if self.q == 1 else f"A{self.m}^{self.q}"


LevelString = Tuple[LevelSymbol, ...]


class EntryType(Enum):
    """Clasificación de las entradas de Ŝ_i; el valor es el bit transmitido"""
    TYPE_I = 0
    TYPE_II = 1


@dataclass(frozen=True)
class LevelStrings:
    """S[0] es S_1; S[i - 1] es S_i"""
    S: Tuple[LevelString, ...]
    K: int

    def level(self, i: int) -> LevelString:
        if not 1 <= i <= len(self.S):
            raise DomainError(f"level {i} outside 1..{len(self.S)}")
        return self.S[i - 1]

    def lengths(self) -> List[int]:
        return [len(s) for s in self.S]

    def vertex_count(self) -> int:
        return max(symbol.m for s in self.S for symbol in s)


@dataclass(frozen=True)
class LevelDecomposition:
    hat_s: LevelString
    type_flags: Tuple[EntryType, ...]
    pi1: LevelString
    pi2: LevelString
    Q: int
    known: LevelString

    @property
    def type2_symbols(self) -> LevelString:
        """Símbolos Tipo II distintos, en orden de primera aparición"""
        return tuple(dict.fromkeys(self.pi2))


def distinct(s: Sequence[LevelSymbol]) -> List[LevelSymbol]:
    """U: símbolos distintos en orden de primera aparición"""
    return list(dict.fromkeys(s))


def symbol_index(s: Sequence[LevelSymbol]) -> Dict[LevelSymbol, Tuple[int, int]]:
    """símbolo -> (primera posición, número de apariciones), en orden de primera aparición"""
    index: Dict[LevelSymbol, Tuple[int, int]] = {}
    for position, symbol in enumerate(s):
        first, count = index.get(symbol, (position, 0))
        index[symbol] = (first, count + 1)
    return index


def level_skeleton(s_prev: Sequence[LevelSymbol]) -> Tuple[List[Optional[LevelSymbol]], List[int]]:
    """
    Forma de S_i calculable a partir de S_{i-1}: cada A_m^q con q > 1 deja A_m^{q-1}
    y cada A_m desnudo deja dos huecos (None). Devuelve también los padres de los huecos.
    """
    entries: List[Optional[LevelSymbol]] = []
    parents: List[int] = []
    for symbol in distinct(s_prev):
        if symbol.q > 1:
            entries.append(LevelSymbol(symbol.m, symbol.q - 1))
        else:
            entries.extend((None, None))
            parents.append(symbol.m)
    return entries, parents


def _raw_levels(g: Robdd) -> List[List[Tuple[int, int]]]:
    """Pasos (i)-(iv) con los ids canónicos del grafo"""
    levels = [[(g.root, 1)]]
    for _ in range(2, g.K + 2):
        current = []
        for m, q in dict.fromkeys(levels[-1]):
            if q > 1:
                current.append((m, q - 1))
            else:
                vertex = g.vertices[m - 1]
                if vertex.is_terminal:
                    raise StructuralError(f"terminal {m} appears bare before the last level")
                for child in (vertex.lo, vertex.hi):
                    current.append((child, g.vertices[child - 1].level - vertex.level))
        levels.append(current)
    return levels


def level_order(g: Robdd) -> List[int]:
    """Ids canónicos en orden de introducción en las cadenas de nivel"""
    order = []
    seen = set()
    for level in _raw_levels(g):
        for m, _ in level:
            if m not in seen:
                seen.add(m)
                order.append(m)
    return order


def generate_levels(g: Robdd) -> LevelStrings:
    raw = _raw_levels(g)
    rename: Dict[int, int] = {}
    for level in raw:
        for m, _ in level:
            if m not in rename:
                rename[m] = len(rename) + 1

    S = tuple(tuple(LevelSymbol(rename[m], q) for m, q in level) for level in raw)
    return LevelStrings(S=S, K=g.K)


def decompose_level(s_prev: Sequence[LevelSymbol], s_cur: Sequence[LevelSymbol],
                    next_index: Optional[int] = None) -> LevelDecomposition:
    """
    Separa S_i en la parte conocida (paso ii) y Ŝ_i (paso iii), y clasifica Ŝ_i.
    `next_index` es el primer índice libre; si se omite se toma el del primer Tipo II.
    """
    entries, _ = level_skeleton(s_prev)
    if len(entries) != len(s_cur):
        raise StructuralError(f"S_i has {len(s_cur)} entries but S_(i-1) implies {len(entries)}")

    previous = {symbol.m: symbol.q for symbol in s_prev}
    known = []
    hat_s = []
    for expected, actual in zip(entries, s_cur):
        if expected is None:
            hat_s.append(actual)
        elif expected != actual:
            raise StructuralError(f"expected {expected} from S_(i-1), found {actual}")
        else:
            known.append(actual)

    known_set = set(known)
    flags = []
    pi1 = []
    pi2 = []
    for symbol in hat_s:
        if symbol.m in previous:
            if previous[symbol.m] != symbol.q + 1:
                raise StructuralError(f"{symbol} is not power-coherent with S_(i-1)")
            if symbol not in known_set:
                raise StructuralError(f"Type I entry {symbol} missing from the known part")
            flags.append(EntryType.TYPE_I)
            pi1.append(symbol)
        else:
            flags.append(EntryType.TYPE_II)
            pi2.append(symbol)

    type2 = list(dict.fromkeys(pi2))
    if type2:
        start = type2[0].m if next_index is None else next_index
        for offset, symbol in enumerate(type2):
            if symbol.m != start + offset:
                raise StructuralError(
                    f"new vertex {symbol} breaks consecutive numbering (expected A{start + offset})"
                )
        if len({symbol.m for symbol in type2}) != len(type2):
            raise StructuralError("a new vertex appears with two different powers")

    return LevelDecomposition(
        hat_s=tuple(hat_s),
        type_flags=tuple(flags),
        pi1=tuple(pi1),
        pi2=tuple(pi2),
        Q=sum(symbol.q for symbol in type2),
        known=tuple(known)
    )


def rebuild_graph(ls: LevelStrings, terminal_bit: int) -> Robdd:
    """
    Reconstruye G a partir de las cadenas: el nivel de A_m es el índice de la única S_i
    donde aparece desnudo y sus aristas son las dos entradas que deja debajo en S_{i+1}.
    `terminal_bit` = 0 indica que el terminal de menor id canónico es T⁰.
    """
    K = ls.K
    if len(ls.S) != K + 1:
        raise StructuralError(f"expected {K + 1} level strings, got {len(ls.S)}")
    if ls.S[0] != (LevelSymbol(1, 1),):
        raise StructuralError("S_1 must be (A1)")

    levels: Dict[int, int] = {}
    for i, s in enumerate(ls.S, start=1):
        for symbol in s:
            implied = i + symbol.q - 1
            if symbol.q < 1 or implied > K + 1:
                raise StructuralError(f"{symbol} in S_{i} implies level {implied} outside 1..{K + 1}")
            if levels.setdefault(symbol.m, implied) != implied:
                raise StructuralError(f"level conflict for A{symbol.m}: {levels[symbol.m]} vs {implied}")

    relations = []
    for i in range(1, K + 1):
        entries, parents = level_skeleton(ls.S[i - 1])
        below = ls.S[i]
        if len(entries) != len(below):
            raise StructuralError(f"S_{i + 1} has {len(below)} entries but S_{i} implies {len(entries)}")
        slots = [below[p] for p, expected in enumerate(entries) if expected is None]
        for parent, k in zip(parents, range(0, len(slots), 2)):
            relations.append((parent, slots[k].m, slots[k + 1].m))
        for expected, actual in zip(entries, below):
            if expected is not None and expected != actual:
                raise StructuralError(f"S_{i + 1} carries {actual} where {expected} was implied")

    terminals = sorted(set(levels) - {m for m, _, _ in relations})
    if not terminals:
        raise StructuralError("level strings define no terminal")

    graph = robdd_from_relations(relations, levels, terminal0=terminals[0], K=K)
    logger.debug(f"Rebuilt graph with {len(graph)} vertices from {K + 1} level strings")
    return assign_terminals(graph, terminal_bit)


def build_v_sequences(x: DyadicInput) -> List[List[str]]:
    """
    v_2 ... v_{K+1}: bloques distintos de longitud 2^(K-i+2) en orden de aparición,
    cada uno sustituido por sus dos mitades si difieren o por su mitad izquierda.
    El resultado es una lista de secuencias de cadenas.
    """
    core = _as_core(x)
    bits = core.bits
    sequences = []
    for i in range(2, core.K + 2):
        width = 1 << (core.K - i + 2)
        half = width // 2
        blocks = dict.fromkeys(bits[p:p + width] for p in range(0, len(bits), width))
        v = []
        for block in blocks:
            left, right = block[:half], block[half:]
            if left != right:
                v.extend((left, right))
            else:
                v.append(left)
        sequences.append(v)
    return sequences
