"""
Codec Orchestrator - Coordinador de las operaciones del compresor
Valida entradas, ejecuta compresión / descompresión / estadísticas / benchmark,
mantiene estadísticas de ejecución y registra cada corrida en la auditoría.
"""

import logging
import uuid
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from .benchmark.bench import BenchSummary, run_benchmark, summarize, write_csv
from .benchmark.stats import StatsReport, build_stats_report
from .core.bitstream import bits_to_bytes, bytes_to_bits
from .core.container import decode, encode
from .core.source import MarkovSource
from .infrastructure.audit_logger import create_audit_logger
from .infrastructure.config import BddzipConfig
from .infrastructure.errors import BddzipError, DomainError
from .infrastructure.input_validator import validate_input_file


class CodecPhase(Enum):
    """Fases de una corrida"""
    PENDING = "pending"
    INPUT_VALIDATION = "input_validation"
    ENCODING = "encoding"
    DECODING = "decoding"
    ANALYSIS = "analysis"
    BENCHMARK = "benchmark"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class RunResult:
    """Resultado de una corrida del orquestador"""
    run_id: str
    operation: str
    phase: CodecPhase
    success: bool
    input_bits: int = 0
    output_bits: int = 0
    processing_time: float = 0.0
    timestamp: datetime = field(default_factory=datetime.now)
    errors: List[str] = field(default_factory=list)
    payload: Any = None

    @property
    def ratio(self) -> float:
        return self.output_bits / self.input_bits if self.input_bits else 0.0


class CodecOrchestrator:
    """
    Orquestador del compresor

    Cada operación pasa por validación de entrada, la fase de trabajo y el registro
    de auditoría. Los errores se registran y se vuelven a lanzar para que el llamador
    decida el código de salida.
    """

    def __init__(self, config: Optional[BddzipConfig] = None):
        self.logger = logging.getLogger(__name__)
        self.config = config or BddzipConfig()

        # Audit Logger
        self.audit_logger = create_audit_logger(self.config.logging.audit_log_path)

        # Statistics
        self.stats = {
            "total_runs": 0,
            "successful_runs": 0,
            "failed_runs": 0,
            "average_processing_time": 0.0,
            "total_input_bits": 0,
            "total_output_bits": 0
        }

        self.logger.info("CodecOrchestrator initialized")

    def _new_run(self, operation: str) -> str:
        self.stats["total_runs"] += 1
        return f"{operation}_{datetime.now().strftime('%Y%m%d_%H%M%S')}_{uuid.uuid4().hex[:8]}"

    def _read_validated(self, path: str) -> bytes:
        validation = validate_input_file(path, self.config.codec.max_input_bytes)
        if not validation.is_valid:
            if validation.is_io_error:
                raise FileNotFoundError(validation.reason)
            raise DomainError(validation.reason, "input")
        with open(path, "rb") as f:
            return f.read()

    def _complete(self, result: RunResult, start_time: datetime) -> RunResult:
        result.processing_time = (datetime.now() - start_time).total_seconds()
        result.phase = CodecPhase.COMPLETED
        result.success = True
        self.stats["successful_runs"] += 1
        self.stats["total_input_bits"] += result.input_bits
        self.stats["total_output_bits"] += result.output_bits
        self._update_average_processing_time(result.processing_time)
        self.logger.info(f"Run completed: {result.run_id} in {result.processing_time:.3f}s")
        return result

    def _fail(self, result: RunResult, start_time: datetime, error: Exception) -> None:
        result.processing_time = (datetime.now() - start_time).total_seconds()
        result.errors.append(str(error))
        self.stats["failed_runs"] += 1
        self.logger.error(f"Run failed: {result.run_id} during {result.phase.value} - {error}")

        if self.audit_logger:
            section = error.section if isinstance(error, BddzipError) else None
            self.audit_logger.log_run_failure(
                result.run_id, result.operation, str(error), section, result.processing_time
            )
        result.phase = CodecPhase.FAILED

    def compress_file(self, in_path: str, out_path: str) -> RunResult:
        """Comprime un archivo; n = 8 × bytes, bits MSB primero"""
        start_time = datetime.now()
        result = RunResult(run_id=self._new_run("compress"), operation="compress",
                           phase=CodecPhase.PENDING, success=False)
        try:
            result.phase = CodecPhase.INPUT_VALIDATION
            data = self._read_validated(in_path)
            bits = bytes_to_bits(data)

            result.phase = CodecPhase.ENCODING
            encoded = encode(bits)
            with open(out_path, "wb") as f:
                f.write(encoded)

            result.input_bits = len(bits)
            result.output_bits = 8 * len(encoded)
            self._complete(result, start_time)

            if self.audit_logger:
                self.audit_logger.log_compression(
                    result.run_id, in_path, result.input_bits, result.output_bits,
                    {"output": out_path, "ratio": result.ratio}, result.processing_time
                )
            return result

        except (BddzipError, OSError) as e:
            self._fail(result, start_time, e)
            raise

    def decompress_file(self, in_path: str, out_path: str) -> RunResult:
        start_time = datetime.now()
        result = RunResult(run_id=self._new_run("decompress"), operation="decompress",
                           phase=CodecPhase.PENDING, success=False)
        try:
            result.phase = CodecPhase.INPUT_VALIDATION
            with open(in_path, "rb") as f:
                data = f.read()

            result.phase = CodecPhase.DECODING
            bits = decode(data, max_bits=self.config.codec.max_decoded_bits)
            with open(out_path, "wb") as f:
                f.write(bits_to_bytes(bits))

            result.input_bits = 8 * len(data)
            result.output_bits = len(bits)
            self._complete(result, start_time)

            if self.audit_logger:
                self.audit_logger.log_decompression(
                    result.run_id, in_path, result.input_bits, result.output_bits, result.processing_time
                )
            return result

        except (BddzipError, OSError) as e:
            self._fail(result, start_time, e)
            raise

    def stats_file(self, in_path: str) -> RunResult:
        """El payload del resultado es el StatsReport"""
        start_time = datetime.now()
        result = RunResult(run_id=self._new_run("stats"), operation="stats",
                           phase=CodecPhase.PENDING, success=False)
        try:
            result.phase = CodecPhase.INPUT_VALIDATION
            bits = bytes_to_bits(self._read_validated(in_path))

            result.phase = CodecPhase.ANALYSIS
            report: StatsReport = build_stats_report(bits)
            result.payload = report
            result.input_bits = len(bits)
            result.output_bits = report.container_bits
            self._complete(result, start_time)

            if self.audit_logger:
                self.audit_logger.log_stats(
                    result.run_id, in_path, report.model_dump(), result.processing_time
                )
            return result

        except (BddzipError, OSError) as e:
            self._fail(result, start_time, e)
            raise

    async def run_bench(self, source: MarkovSource, sizes: Sequence[int], reps: int, seed: int,
                        csv_path: Optional[str] = None) -> RunResult:
        """El payload es un dict con las filas y el resumen por n"""
        start_time = datetime.now()
        result = RunResult(run_id=self._new_run("bench"), operation="bench",
                           phase=CodecPhase.PENDING, success=False)
        try:
            result.phase = CodecPhase.BENCHMARK
            rows = await run_benchmark(source, sizes, reps, seed, workers=self.config.bench.workers)
            if csv_path:
                write_csv(rows, csv_path)

            summaries: List[BenchSummary] = summarize(rows)
            result.payload = {"rows": rows, "summary": summaries}
            result.input_bits = sum(row.n for row in rows)
            result.output_bits = sum(row.codeword_bits for row in rows)
            self._complete(result, start_time)

            if self.audit_logger:
                self.audit_logger.log_benchmark(
                    result.run_id, source.name, list(sizes), reps, len(rows), result.processing_time
                )
            return result

        except (BddzipError, OSError) as e:
            self._fail(result, start_time, e)
            raise

    def _update_average_processing_time(self, processing_time: float):
        """Actualiza el tiempo promedio de procesamiento"""
        total_successful = self.stats["successful_runs"]
        current_avg = self.stats["average_processing_time"]
        self.stats["average_processing_time"] = (
            (current_avg * (total_successful - 1) + processing_time) / total_successful
        )

    def get_stats(self) -> Dict[str, Any]:
        """Obtiene estadísticas del orquestador"""
        return {
            **self.stats,
            "success_rate": (
                self.stats["successful_runs"] / max(self.stats["total_runs"], 1)
            ) * 100
        }


def create_codec_orchestrator(config: Optional[BddzipConfig] = None) -> CodecOrchestrator:
    """Crea el orquestador con la configuración del entorno"""
    return CodecOrchestrator(config)
