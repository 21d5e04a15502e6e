import random
import time

import pytest

from bddzip.benchmark.stats import build_stats_report
from bddzip.core.bitstream import bits_to_bytes, bytes_to_bits
from bddzip.core.container import MAGIC, analyze, codeword_length, decode, encode, reduce_core
from bddzip.core.robdd import quasi_reduced_vertex_count
from bddzip.infrastructure.errors import CorruptStreamError, DomainError
from oracles import EXAMPLE_X, all_strings, random_dyadic

EXAMPLE_BODY = (
    "0000001000000" + "1" + "0"
    + "111111"
    + "111111111111"
    + "11111111" + "11111111" + "000100101011111"
    + "010101010001" + "01010101" + "001" + "00000000"
    + "0101001" + "0000" + "000001"
    + "0101" + "00" + "00"
)


def test_example_golden_container():
    data = encode(EXAMPLE_X)
    assert data[:4] == MAGIC
    assert len(data) == 19
    assert bytes_to_bits(data[4:]) == EXAMPLE_BODY
    assert decode(data) == EXAMPLE_X


def test_example_codeword_length():
    assert codeword_length(EXAMPLE_X) == 106
    assert analyze(EXAMPLE_X).body_bits == 106


@pytest.mark.parametrize("bits, expected", [
    ("0000", b"BDZ1\x23\x00"),
    ("0101", b"BDZ1\x22\x7e"),
])
def test_small_golden_containers(bits, expected):
    assert encode(bits) == expected
    assert decode(expected) == bits


def test_shortest_dyadic_input():
    data = encode("01")
    assert bytes_to_bits(data[4:])[:11] == "010" + "1" + "0" + "111111"
    assert decode(data) == "01"


def test_cross_codeword_length():
    assert codeword_length("0110") == 1 + 6 + 16


@pytest.mark.parametrize("bits, core, e", [
    ("0101", "01", 1),
    ("0000", "0", 2),
    ("0110", "0110", 0),
    ("1", "1", 0),
])
def test_reduce_core(bits, core, e):
    assert reduce_core(bits) == (core, e)


@pytest.mark.parametrize("bits", ["0", "00", "11", "0" * 37, "1" * 64])
def test_constant_inputs(bits):
    trace = analyze(bits)
    assert trace.is_constant
    assert trace.K == 0
    assert trace.body_bits == 1
    assert decode(encode(bits)) == bits


def test_padding_to_power_of_two():
    trace = analyze("101")
    assert (trace.n, trace.k, trace.e) == (3, 2, 1)
    assert trace.core == "10"
    assert decode(encode("101")) == "101"


@pytest.mark.parametrize("bits", ["", "01a", "2"])
def test_encode_rejects_bad_input(bits):
    with pytest.raises(DomainError):
        encode(bits)


def test_codeword_length_needs_power_of_two():
    with pytest.raises(DomainError):
        codeword_length("011")


def _assert_codec_invariants(bits):
    """Ida y vuelta, tamaño del contenedor, cota de longitud, cota de ΣQ_i y |V(G)| <= |V(G')|"""
    data = encode(bits)
    assert decode(data) == bits
    trace = analyze(bits)
    assert 8 * len(data) == trace.container_bits
    if trace.is_constant:
        return

    lengths = trace.levels.lengths()
    rank_bits = sum(budget.rank1_bits + budget.rank2_bits for budget in trace.budgets)
    assert trace.body_bits <= 4 * sum(lengths) + rank_bits
    assert sum(budget.power_bits for budget in trace.budgets) <= sum(lengths[1:])
    assert len(trace.graph) <= quasi_reduced_vertex_count(trace.core)


@pytest.mark.parametrize("n", range(1, 9))
def test_exhaustive_round_trip(n):
    for bits in all_strings(n):
        _assert_codec_invariants(bits)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(9, 17))
def test_exhaustive_round_trip_full(n):
    for bits in all_strings(n):
        _assert_codec_invariants(bits)


def test_random_round_trip(rng):
    for n in (100, 255, 256, 1000, 4096):
        for _ in range(3):
            _assert_codec_invariants(format(rng.getrandbits(n), f"0{n}b"))


@pytest.mark.slow
@pytest.mark.parametrize("K", range(7, 17))
def test_random_round_trip_full(K):
    rng = random.Random(K)
    n = 1 << K
    for _ in range(10_000):
        _assert_codec_invariants(format(rng.getrandbits(n), f"0{n}b"))


@pytest.mark.slow
def test_random_round_trip_odd_lengths():
    rng = random.Random(1000)
    checked = 0
    while checked < 1000:
        n = rng.randint(3, 1 << 16)
        if n & (n - 1) == 0:
            continue
        _assert_codec_invariants(format(rng.getrandbits(n), f"0{n}b"))
        checked += 1


def test_periodic_input_round_trip():
    bits = "0110" * 256
    trace = analyze(bits)
    assert trace.e == 8
    assert trace.K == 2
    assert decode(encode(bits)) == bits


def test_bad_magic():
    with pytest.raises(CorruptStreamError) as info:
        decode(b"BDZ2\x23\x00")
    assert info.value.section == "header/magic"
    with pytest.raises(CorruptStreamError):
        decode(b"BD")


def test_length_limit():
    data = encode("0" * 100)
    with pytest.raises(CorruptStreamError) as info:
        decode(data, max_bits=50)
    assert info.value.section == "header/length"


def test_reduction_exponent_above_k():
    # n = 1 gives k = 1; gamma(3) declares e = 2
    with pytest.raises(CorruptStreamError) as info:
        decode(MAGIC + bits_to_bytes("1" + "011" + "1"))
    assert info.value.section == "header/reduction"


def test_nonzero_padding_bits():
    # n = 3, e = 2, literal 1: the padded core 1111 puts a 1 in the padding
    with pytest.raises(CorruptStreamError) as info:
        decode(MAGIC + bits_to_bytes("011" + "011" + "1"))
    assert info.value.section == "trailer"


def test_trailing_garbage():
    data = encode(EXAMPLE_X)
    with pytest.raises(CorruptStreamError) as info:
        decode(data + b"\x00")
    assert info.value.section == "trailer"


def test_nonzero_trailing_pad():
    data = bytearray(encode("0000"))
    data[-1] |= 0x01
    with pytest.raises(CorruptStreamError):
        decode(bytes(data))


def test_truncated_stream():
    data = encode(EXAMPLE_X)
    for cut in range(5, len(data)):
        with pytest.raises(CorruptStreamError):
            decode(data[:cut])


def test_single_bit_flips_are_detected_or_decoded():
    data = encode(EXAMPLE_X)
    limit = 2 * len(EXAMPLE_X)
    for position in range(8 * len(MAGIC), 8 * len(data)):
        corrupted = bytearray(data)
        corrupted[position // 8] ^= 0x80 >> (position % 8)
        try:
            decoded = decode(bytes(corrupted), max_bits=limit)
        except CorruptStreamError:
            continue
        assert set(decoded) <= {"0", "1"}
        assert len(decoded) <= limit


@pytest.mark.slow
def test_single_bit_flips_of_kilobyte_codeword():
    rng = random.Random(1024)
    n = 8192
    bits = format(rng.getrandbits(n), f"0{n}b")
    data = encode(bits)
    assert len(data) >= 1024
    for position in range(8 * len(MAGIC), 8 * len(data)):
        corrupted = bytearray(data)
        corrupted[position // 8] ^= 0x80 >> (position % 8)
        start = time.perf_counter()
        try:
            decode(bytes(corrupted), max_bits=2 * n)
        except CorruptStreamError:
            pass
        assert time.perf_counter() - start < 5.0


def test_random_corruption(rng):
    for _ in range(200):
        n = rng.randint(1, 300)
        data = bytearray(encode(format(rng.getrandbits(n), f"0{n}b")))
        for _ in range(rng.randint(1, 4)):
            index = rng.randrange(len(MAGIC), len(data))
            data[index] = rng.randrange(256)
        try:
            decode(bytes(data), max_bits=2 * n + 64)
        except CorruptStreamError:
            pass


@pytest.mark.parametrize("K", [4, 6, 8, 10])
def test_length_bounds_on_random_dyadic(rng, K):
    for _ in range(5):
        report = build_stats_report(random_dyadic(rng, K))
        assert report.length_bound_holds
        assert report.level_size_bound_holds
