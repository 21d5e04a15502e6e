import pytest

from bddzip.core.enumerative import first_strike
from bddzip.core.levelstrings import (
    EntryType,
    LevelStrings,
    build_v_sequences,
    decompose_level,
    distinct,
    generate_levels,
    level_order,
    level_skeleton,
    rebuild_graph,
    symbol_index,
)
from bddzip.core.robdd import build_robdd, expand_all, quasi_reduced_vertex_count, terminal_bit
from bddzip.infrastructure.errors import DomainError, StructuralError
from oracles import A, EXAMPLE_S, EXAMPLE_X, all_dyadic, alpha, random_dyadic, v_entry_spans

INTRODUCTION_X = "0101010100111100"


def test_symbol_rendering():
    assert str(A(4)) == "A4"
    assert str(A(8, 3)) == "A8^3"


def test_example_level_strings(example_levels):
    assert example_levels.K == 6
    assert example_levels.S == EXAMPLE_S
    assert example_levels.lengths() == [1, 2, 4, 8, 12, 7, 4]
    assert example_levels.vertex_count() == 16


def test_level_index_bounds(example_levels):
    assert example_levels.level(1) == (A(1),)
    with pytest.raises(DomainError):
        example_levels.level(0)
    with pytest.raises(DomainError):
        example_levels.level(8)


def test_introduction_numbering_differs_from_canonical():
    g = build_robdd(INTRODUCTION_X)
    assert level_order(g) == [1, 2, 3, 6, 7, 4, 5]

    ls = generate_levels(g)
    assert ls.level(2) == (A(2, 3), A(3))
    assert ls.level(3) == (A(2, 2), A(4), A(5))
    assert ls.level(4) == (A(2), A(6, 2), A(7, 2), A(7, 2), A(6, 2))
    assert ls.level(5) == (A(6), A(7), A(6), A(7))


def test_distinct_and_symbol_index():
    s = (A(8, 3), A(16, 3), A(8, 3), A(9))
    assert distinct(s) == [A(8, 3), A(16, 3), A(9)]
    assert symbol_index(s) == {A(8, 3): (0, 2), A(16, 3): (1, 1), A(9): (3, 1)}


def test_level_skeleton():
    entries, parents = level_skeleton(EXAMPLE_S[3])
    assert entries == [A(8, 3), A(9, 2), A(10), A(11)] + [None] * 8
    assert parents == [12, 13, 14, 15]


def test_decompose_mixed_level():
    dec = decompose_level(EXAMPLE_S[3], EXAMPLE_S[4], next_index=16)
    assert dec.known == (A(8, 3), A(9, 2), A(10), A(11))
    assert dec.hat_s == (A(8, 3), A(16, 3), A(9, 2), A(16, 3), A(10), A(16, 3), A(11), A(16, 3))
    assert dec.type_flags == (EntryType.TYPE_I, EntryType.TYPE_II) * 4
    assert dec.pi1 == (A(8, 3), A(9, 2), A(10), A(11))
    assert dec.pi2 == (A(16, 3),) * 4
    assert dec.type2_symbols == (A(16, 3),)
    assert dec.Q == 3


def test_decompose_all_new_level():
    dec = decompose_level(EXAMPLE_S[2], EXAMPLE_S[3], next_index=8)
    assert dec.known == ()
    assert dec.pi1 == ()
    assert all(flag is EntryType.TYPE_II for flag in dec.type_flags)
    assert dec.Q == 4 + 3 + 2 + 2 + 4


def test_decompose_only_type_one():
    dec = decompose_level(EXAMPLE_S[4], EXAMPLE_S[5], next_index=17)
    assert dec.pi2 == ()
    assert dec.Q == 0
    assert dec.pi1 == (A(8, 2), A(16, 2), A(9), A(16, 2))


def test_decompose_rejects_length_mismatch():
    with pytest.raises(StructuralError):
        decompose_level((A(1),), (A(2),))


def test_decompose_rejects_skipped_index():
    with pytest.raises(StructuralError):
        decompose_level((A(1),), (A(2), A(4)), next_index=2)


def test_decompose_rejects_incoherent_power():
    # A_8^4 above must reappear as A_8^3, never as A_8^2
    s_prev = (A(8, 4), A(9))
    with pytest.raises(StructuralError):
        decompose_level(s_prev, (A(8, 3), A(8, 2), A(10)))


def test_rebuild_example(example_graph, example_levels):
    assert rebuild_graph(example_levels, terminal_bit(example_graph)) == example_graph


def test_rebuild_rejects_bad_first_level(example_levels):
    broken = LevelStrings(S=((A(2),),) + example_levels.S[1:], K=example_levels.K)
    with pytest.raises(StructuralError):
        rebuild_graph(broken, 0)


def test_rebuild_rejects_missing_level(example_levels):
    broken = LevelStrings(S=example_levels.S[:-1], K=example_levels.K)
    with pytest.raises(StructuralError):
        rebuild_graph(broken, 0)


def test_rebuild_rejects_wrong_known_entry(example_levels):
    S = list(example_levels.S)
    S[4] = (A(8, 2),) + S[4][1:]
    with pytest.raises(StructuralError):
        rebuild_graph(LevelStrings(S=tuple(S), K=example_levels.K), 0)


def _check_v_sequences(x):
    g = build_robdd(x)
    ls = generate_levels(g)
    expansions = expand_all(g)
    order = level_order(g)
    for i, v in enumerate(build_v_sequences(x), start=2):
        assert [alpha(expansions, order, symbol) for symbol in ls.level(i)] == v


def test_level_strings_spell_v_sequences():
    _check_v_sequences(EXAMPLE_X)
    _check_v_sequences(INTRODUCTION_X)


@pytest.mark.parametrize("x", all_dyadic(3))
def test_exhaustive_level_strings(x):
    g = build_robdd(x)
    ls = generate_levels(g)
    assert len(ls.S) == g.K + 1
    assert ls.vertex_count() == len(g)
    assert sum(ls.lengths()) <= quasi_reduced_vertex_count(x) + len(g)
    assert rebuild_graph(ls, terminal_bit(g)) == g


@pytest.mark.parametrize("K", [4, 6, 8])
def test_random_level_strings(rng, K):
    for _ in range(10):
        x = random_dyadic(rng, K)
        g = build_robdd(x)
        ls = generate_levels(g)
        _check_v_sequences(x)
        assert rebuild_graph(ls, terminal_bit(g)) == g
        assert sum(ls.lengths()) <= quasi_reduced_vertex_count(x) + len(g)

        next_index = 2
        for i in range(2, K + 2):
            dec = decompose_level(ls.level(i - 1), ls.level(i), next_index)
            assert len(dec.hat_s) == len(dec.pi1) + len(dec.pi2)
            next_index = max(next_index, max(symbol.m for symbol in ls.level(i)) + 1)


@pytest.mark.slow
def test_exhaustive_level_strings_k4():
    for x in all_dyadic(4):
        g = build_robdd(x)
        assert rebuild_graph(generate_levels(g), terminal_bit(g)) == g


def _check_struck_entries_tile(x):
    """Las entradas de cada ṽ_i ocupan posiciones disjuntas de x"""
    spans = v_entry_spans(x)
    assert [[entry for _, entry in level] for level in spans] == build_v_sequences(x)

    covered = [False] * len(x)
    total = 0
    for level in spans:
        seen = set()
        struck = []
        for start, entry in level:
            if entry not in seen:
                seen.add(entry)
                continue
            struck.append(entry)
            for p in range(start, start + len(entry)):
                assert not covered[p]
                covered[p] = True
            total += len(entry)
        assert struck == first_strike([entry for _, entry in level])
    assert total <= len(x)


def test_struck_entries_tile_example():
    _check_struck_entries_tile(EXAMPLE_X)
    _check_struck_entries_tile(INTRODUCTION_X)


@pytest.mark.parametrize("x", all_dyadic(3))
def test_struck_entries_tile_exhaustive(x):
    _check_struck_entries_tile(x)


def test_struck_entries_tile_random(rng):
    for K in (5, 8, 10):
        for _ in range(5):
            _check_struck_entries_tile(random_dyadic(rng, K))


def _check_level_properties(x):
    g = build_robdd(x)
    ls = generate_levels(g)
    assert ls.lengths()[1:] == [len(v) for v in build_v_sequences(x)]
    _check_v_sequences(x)
    _check_struck_entries_tile(x)


@pytest.mark.slow
def test_level_properties_exhaustive_up_to_k4():
    for K in range(1, 5):
        for x in all_dyadic(K):
            _check_level_properties(x)


@pytest.mark.slow
def test_level_properties_random_up_to_k12(rng):
    for _ in range(200):
        _check_level_properties(random_dyadic(rng, rng.randint(1, 12)))
