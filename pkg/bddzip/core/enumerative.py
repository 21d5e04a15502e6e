"""
Enumerative coding
Auto-entropía de secuencias, secuencias first-strike y rango lexicográfico de
permutaciones de multiconjuntos con enteros de precisión arbitraria.
"""

import math
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, List, Sequence, Tuple

from ..infrastructure.errors import CorruptStreamError, DomainError


def entropy_H(u: Sequence[Hashable]) -> float:
    """H(u) = Σ_j -log2(n(u_j) / J), con H(vacío) = 0"""
    J = len(u)
    if J == 0:
        return 0.0
    counts = Counter(u)
    if len(counts) == 1:
        return 0.0
    return sum(c * math.log2(J / c) for c in counts.values())


def first_strike(u: Sequence[Hashable]) -> List[Hashable]:
    """ũ: u sin la primera aparición de cada símbolo"""
    seen = set()
    result = []
    for symbol in u:
        if symbol in seen:
            result.append(symbol)
        else:
            seen.add(symbol)
    return result


def first_appearance_cost(u: Sequence[Hashable]) -> float:
    """
    h(u): coste de codificar u cuando solo se conoce su composición; |u| bits de
    primeras apariciones más H(ũ), o 0 cuando H(ũ) = 0.
    """
    tail = entropy_H(first_strike(u))
    if tail == 0:
        return 0.0
    return len(u) + tail


def multinomial(counts: Sequence[int]) -> int:
    """(Σ n_a)! / Π n_a!  como producto de binomiales"""
    result = 1
    total = 0
    for count in counts:
        if count < 0:
            raise DomainError(f"negative count {count}")
        total += count
        result *= math.comb(total, count)
    return result


def code_width(counts: Sequence[int]) -> int:
    """
    ⌈H⌉ exacto para una composición: el menor w con 2^w · Π n_a^n_a >= J^J.
    Se calcula en aritmética entera para no depender del redondeo flotante.
    """
    positive = [c for c in counts if c > 0]
    if len(positive) <= 1:
        return 0

    J = sum(positive)
    target = J ** J
    base = 1
    for count in positive:
        base *= count ** count

    width = max(0, target.bit_length() - base.bit_length())
    while (base << width) < target:
        width += 1
    while width > 0 and (base << (width - 1)) >= target:
        width -= 1
    return width


@dataclass(frozen=True)
class Composition:
    """Lista ordenada (símbolo, cuenta); el orden define el orden lexicográfico"""
    symbols: Tuple[Hashable, ...]
    counts: Tuple[int, ...]

    def __post_init__(self):
        if len(self.symbols) != len(self.counts):
            raise DomainError("composition needs one count per symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise DomainError("composition symbols must be distinct")
        if any(c < 1 for c in self.counts):
            raise DomainError("composition counts must be >= 1")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[Hashable, int]]) -> 'Composition':
        return cls(
            symbols=tuple(s for s, _ in pairs),
            counts=tuple(c for _, c in pairs)
        )

    @classmethod
    def of(cls, u: Sequence[Hashable]) -> 'Composition':
        """Composición de u con los símbolos en orden de primera aparición"""
        return cls.from_pairs(list(Counter(u).items()))

    @property
    def length(self) -> int:
        return sum(self.counts)

    def width(self) -> int:
        return code_width(self.counts)

    def size(self) -> int:
        return multinomial(self.counts)


class _Fenwick:
    """Árbol de Fenwick sobre las cuentas restantes de cada símbolo"""

    def __init__(self, counts: Sequence[int]):
        self.size = len(counts)
        self.tree = [0] * (self.size + 1)
        for index, count in enumerate(counts):
            self.add(index, count)

    def add(self, index: int, delta: int) -> None:
        i = index + 1
        while i <= self.size:
            self.tree[i] += delta
            i += i & -i

    def prefix(self, index: int) -> int:
        """Suma de las cuentas de los símbolos 0..index-1"""
        total = 0
        i = index
        while i > 0:
            total += self.tree[i]
            i -= i & -i
        return total

    def search(self, target: int) -> Tuple[int, int]:
        """Índice del símbolo con prefix(idx) <= target < prefix(idx + 1), y ese prefijo"""
        pos = 0
        remaining = target
        step = 1 << self.size.bit_length()
        while step:
            nxt = pos + step
            if nxt <= self.size and self.tree[nxt] <= remaining:
                pos = nxt
                remaining -= self.tree[nxt]
            step >>= 1
        return pos, target - remaining


def rank_multiset_perm(u: Sequence[Hashable], c: Composition) -> Tuple[int, int]:
    """
    Posición (base 0) de u en la enumeración lexicográfica de todas las secuencias
    con composición c, y el ancho ⌈H(u)⌉ con el que se transmite.
    """
    index = {symbol: i for i, symbol in enumerate(c.symbols)}
    if len(u) != c.length:
        raise DomainError(f"sequence of length {len(u)} does not match composition of length {c.length}")

    remaining = list(c.counts)
    fenwick = _Fenwick(remaining)
    total = c.length
    size = c.size()
    arrangements = size
    rank = 0

    for symbol in u:
        i = index.get(symbol)
        if i is None or remaining[i] == 0:
            raise DomainError(f"sequence is not consistent with the composition (symbol {symbol!r})")
        # Secuencias que empiezan por un símbolo menor
        rank += arrangements * fenwick.prefix(i) // total
        arrangements = arrangements * remaining[i] // total
        remaining[i] -= 1
        fenwick.add(i, -1)
        total -= 1

    return rank, c.width()


def unrank_multiset_perm(rank: int, c: Composition) -> List[Hashable]:
    """Inversa de rank_multiset_perm"""
    size = c.size()
    if not 0 <= rank < size:
        raise CorruptStreamError(f"rank {rank} out of range for {size} arrangements")

    remaining = list(c.counts)
    fenwick = _Fenwick(remaining)
    total = c.length
    arrangements = size
    result = []

    while total:
        target = rank * total // arrangements
        i, before = fenwick.search(target)
        rank -= arrangements * before // total
        arrangements = arrangements * remaining[i] // total
        remaining[i] -= 1
        fenwick.add(i, -1)
        total -= 1
        result.append(c.symbols[i])

    return result
