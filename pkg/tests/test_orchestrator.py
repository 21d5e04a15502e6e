import asyncio

import pytest

from bddzip.core.bitstream import bits_to_bytes
from bddzip.core.source import MarkovSource
from bddzip.infrastructure.config import BddzipConfig
from bddzip.infrastructure.errors import CorruptStreamError, DomainError
from bddzip.orchestrator import CodecPhase, create_codec_orchestrator
from oracles import EXAMPLE_X


@pytest.fixture
def orchestrator(clean_env, monkeypatch):
    monkeypatch.setenv("BDDZIP_AUDIT_LOG", str(clean_env / "audit.jsonl"))
    return create_codec_orchestrator(BddzipConfig())


def test_compress_then_decompress(orchestrator, clean_env):
    source = clean_env / "in.bin"
    source.write_bytes(bits_to_bytes(EXAMPLE_X))

    packed = orchestrator.compress_file(str(source), str(clean_env / "in.bdz"))
    assert packed.success
    assert packed.phase is CodecPhase.COMPLETED
    assert (packed.input_bits, packed.output_bits) == (64, 152)
    assert packed.ratio == pytest.approx(152 / 64)

    restored = orchestrator.decompress_file(str(clean_env / "in.bdz"), str(clean_env / "out.bin"))
    assert restored.output_bits == 64
    assert (clean_env / "out.bin").read_bytes() == source.read_bytes()

    stats = orchestrator.get_stats()
    assert stats["total_runs"] == 2
    assert stats["successful_runs"] == 2
    assert stats["success_rate"] == 100.0
    assert stats["total_input_bits"] == 64 + 152


def test_failures_are_counted_and_audited(orchestrator, clean_env):
    bogus = clean_env / "bogus.bdz"
    bogus.write_bytes(b"BDZ1\xff")
    with pytest.raises(CorruptStreamError):
        orchestrator.decompress_file(str(bogus), str(clean_env / "out.bin"))

    empty = clean_env / "empty.bin"
    empty.write_bytes(b"")
    with pytest.raises(DomainError):
        orchestrator.compress_file(str(empty), str(clean_env / "out.bdz"))

    with pytest.raises(FileNotFoundError):
        orchestrator.stats_file(str(clean_env / "missing.bin"))

    stats = orchestrator.get_stats()
    assert stats["failed_runs"] == 3
    assert stats["success_rate"] == 0.0

    failures = [e for e in orchestrator.audit_logger.get_recent_events() if e["event_type"] == "RUN_FAILED"]
    assert [e["details"]["operation"] for e in failures] == ["decompress", "compress", "stats"]
    assert failures[1]["details"]["failure_section"] == "input"


def test_input_size_limit(clean_env, monkeypatch):
    monkeypatch.setenv("BDDZIP_MAX_INPUT_BYTES", "4")
    orchestrator = create_codec_orchestrator(BddzipConfig())
    big = clean_env / "big.bin"
    big.write_bytes(b"\x00" * 5)
    with pytest.raises(DomainError):
        orchestrator.compress_file(str(big), str(clean_env / "big.bdz"))


def test_decoded_size_limit(orchestrator, clean_env, monkeypatch):
    source = clean_env / "in.bin"
    source.write_bytes(b"\x5a" * 16)
    orchestrator.compress_file(str(source), str(clean_env / "in.bdz"))

    monkeypatch.setenv("BDDZIP_MAX_DECODED_BITS", "64")
    limited = create_codec_orchestrator(BddzipConfig())
    with pytest.raises(CorruptStreamError):
        limited.decompress_file(str(clean_env / "in.bdz"), str(clean_env / "out.bin"))


def test_stats_payload(orchestrator, clean_env):
    source = clean_env / "in.bin"
    source.write_bytes(bits_to_bytes(EXAMPLE_X))
    result = orchestrator.stats_file(str(source))
    assert result.payload.total_codeword_bits == 106
    assert result.output_bits == 152

    trail = orchestrator.audit_logger.get_run_audit_trail(result.run_id)
    assert [event["event_type"] for event in trail] == ["STATS"]


def test_run_bench_payload(orchestrator, clean_env):
    csv_path = clean_env / "rows.csv"
    result = asyncio.run(orchestrator.run_bench(MarkovSource.bernoulli(0.25), [64, 128], 2, 3, str(csv_path)))
    assert result.success
    assert len(result.payload["rows"]) == 4
    assert [s.n for s in result.payload["summary"]] == [64, 128]
    assert result.input_bits == 2 * 64 + 2 * 128
    assert csv_path.exists()


def test_run_bench_rejects_bad_sizes(orchestrator):
    with pytest.raises(DomainError):
        asyncio.run(orchestrator.run_bench(MarkovSource.bernoulli(0.25), [100], 1, 0))
    assert orchestrator.get_stats()["failed_runs"] == 1


def test_run_bench_rejects_negative_seed(orchestrator):
    with pytest.raises(DomainError):
        asyncio.run(orchestrator.run_bench(MarkovSource.bernoulli(0.25), [64], 1, -1))
    assert orchestrator.get_stats()["failed_runs"] == 1
    failure = orchestrator.audit_logger.get_recent_events()[-1]
    assert failure["event_type"] == "RUN_FAILED"
    assert failure["details"]["operation"] == "bench"
