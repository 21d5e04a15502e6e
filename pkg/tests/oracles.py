"""
Brute-force oracles and golden data shared by the test modules
"""

import itertools
import math
import random
from typing import Iterator, List, Sequence, Tuple

from bddzip.core.levelstrings import LevelSymbol
from bddzip.core.robdd import is_dyadic

# 64-bit string whose ROBDD has 16 vertices (A_8 = T0, A_16 = T1)
EXAMPLE_X = (
    "0000000001010101"
    "0011001101110111"
    "0000111101011111"
    "0011111101111111"
)

EXAMPLE_LEVELS = {
    1: 1, 2: 2, 3: 2, 4: 3, 5: 3, 6: 3, 7: 3, 8: 7,
    9: 6, 10: 5, 11: 5, 12: 4, 13: 4, 14: 4, 15: 4, 16: 7,
}


def A(m: int, q: int = 1) -> LevelSymbol:
    return LevelSymbol(m, q)


EXAMPLE_S = (
    (A(1),),
    (A(2), A(3)),
    (A(4), A(5), A(6), A(7)),
    (A(8, 4), A(9, 3), A(10, 2), A(11, 2), A(12), A(13), A(14), A(15)),
    (A(8, 3), A(9, 2), A(10), A(11), A(8, 3), A(16, 3), A(9, 2), A(16, 3), A(10), A(16, 3), A(11), A(16, 3)),
    (A(8, 2), A(9), A(8, 2), A(16, 2), A(9), A(16, 2), A(16, 2)),
    (A(8), A(8), A(16), A(16)),
)

# Relations of the 14 nonterminals, in id order
EXAMPLE_RELATIONS = [
    (1, 2, 3), (2, 4, 5), (3, 6, 7), (4, 8, 9), (5, 10, 11), (6, 12, 13), (7, 14, 15),
    (9, 8, 16), (10, 8, 16), (11, 9, 16), (12, 8, 16), (13, 9, 16), (14, 10, 16), (15, 11, 16),
]


def all_strings(n: int) -> Iterator[str]:
    for bits in itertools.product("01", repeat=n):
        yield "".join(bits)


def all_dyadic(K: int) -> List[str]:
    return [x for x in all_strings(1 << K) if is_dyadic(x)]


def random_dyadic(rng: random.Random, K: int) -> str:
    n = 1 << K
    while True:
        x = format(rng.getrandbits(n), f"0{n}b")
        if is_dyadic(x):
            return x


def partition_blocks(x: str) -> List[set]:
    """Bloques distintos de cada partición diádica de x, de ancho 1 a |x|"""
    result = []
    width = 1
    while width <= len(x):
        result.append({x[i:i + width] for i in range(0, len(x), width)})
        width <<= 1
    return result


def primitive_vertex_count(x: str) -> int:
    """Subcadenas de las particiones con mitades distintas, más los dos terminales"""
    primitive = set()
    for blocks in partition_blocks(x):
        for block in blocks:
            half = len(block) // 2
            if half and block[:half] != block[half:]:
                primitive.add(block)
    return len(primitive) + 2


def lexicographic_arrangements(symbols: Sequence, counts: Sequence[int]) -> List[tuple]:
    """Todas las secuencias con la composición dada, en orden lexicográfico"""
    pool = [symbol for symbol, count in zip(symbols, counts) for _ in range(count)]
    order = {symbol: i for i, symbol in enumerate(symbols)}
    unique = set(itertools.permutations(pool))
    return sorted(unique, key=lambda seq: [order[s] for s in seq])


def iid_log2_lambda(x: str, theta: float) -> float:
    ones = x.count("1")
    return ones * math.log2(theta) + (len(x) - ones) * math.log2(1 - theta)


def alpha(expansions: dict, order: Sequence[int], symbol) -> str:
    """Cadena que representa A_m^q en v_i (numeración por introducción)"""
    return expansions[order[symbol.m - 1]] * (1 << (symbol.q - 1))


def v_entry_spans(x: str) -> List[List[Tuple[int, str]]]:
    """
    (posición, cadena) de cada entrada de v_2 ... v_{K+1}, tomando cada bloque en
    su primera aparición dentro de x.
    """
    K = len(x).bit_length() - 1
    levels = []
    for i in range(2, K + 2):
        width = 1 << (K - i + 2)
        half = width // 2
        first = {}
        for p in range(0, len(x), width):
            first.setdefault(x[p:p + width], p)
        spans = []
        for block, p in first.items():
            if block[:half] != block[half:]:
                spans.extend([(p, block[:half]), (p + half, block[half:])])
            else:
                spans.append((p, block[:half]))
        levels.append(spans)
    return levels
