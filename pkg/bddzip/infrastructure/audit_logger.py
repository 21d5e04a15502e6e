# infrastructure/audit_logger.py

import json
import os
from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class AuditEvent(BaseModel):
    """
    Define la estructura de un evento de auditoría
    """
    timestamp: str = Field(description="Timestamp del evento en formato ISO")
    run_id: str = Field(description="ID único de la ejecución")
    event_type: str = Field(description="Tipo de evento: COMPRESS, DECOMPRESS, STATS, BENCH, RUN_FAILED, SYSTEM_INIT, AUDIT_ERROR")
    component: str = Field(description="Componente que generó el evento")
    details: Dict[str, Any] = Field(description="Detalles específicos del evento")
    success: bool = Field(description="Indica si la operación fue exitosa")
    processing_time: Optional[float] = Field(description="Tiempo de procesamiento en segundos", default=None)
    input_bits: Optional[int] = Field(description="Bits de entrada procesados", default=None)
    output_bits: Optional[int] = Field(description="Bits de salida producidos", default=None)


class AuditLogger:
    """
    Registra en JSONL todas las ejecuciones del compresor
    """

    def __init__(self, log_file_path: str = "bddzip_audit.log"):
        self.log_file_path = log_file_path
        self._ensure_log_file_exists()

    def _ensure_log_file_exists(self):
        """Asegura que el archivo de log existe"""
        if not os.path.exists(self.log_file_path):
            with open(self.log_file_path, 'w', encoding='utf-8') as f:
                initial_entry = AuditEvent(
                    timestamp=datetime.now().isoformat(),
                    run_id="system_init",
                    event_type="SYSTEM_INIT",
                    component="audit_logger",
                    details={"message": "Audit log initialized"},
                    success=True
                )
                f.write(initial_entry.model_dump_json() + "\n")

    def log_compression(self, run_id: str, source: str, input_bits: int, output_bits: int,
                        details: Dict[str, Any], processing_time: float) -> None:
        """Registra una compresión completada"""
        self._write_event(AuditEvent(
            timestamp=datetime.now().isoformat(),
            run_id=run_id,
            event_type="COMPRESS",
            component="container_encoder",
            details={"source": source, **details},
            success=True,
            processing_time=processing_time,
            input_bits=input_bits,
            output_bits=output_bits
        ))

    def log_decompression(self, run_id: str, source: str, input_bits: int, output_bits: int,
                          processing_time: float) -> None:
        """Registra una descompresión completada"""
        self._write_event(AuditEvent(
            timestamp=datetime.now().isoformat(),
            run_id=run_id,
            event_type="DECOMPRESS",
            component="container_decoder",
            details={"source": source},
            success=True,
            processing_time=processing_time,
            input_bits=input_bits,
            output_bits=output_bits
        ))

    def log_stats(self, run_id: str, source: str, report: Dict[str, Any], processing_time: float) -> None:
        """Registra la generación de un reporte de estadísticas"""
        self._write_event(AuditEvent(
            timestamp=datetime.now().isoformat(),
            run_id=run_id,
            event_type="STATS",
            component="stats_report",
            details={
                "source": source,
                "K": report.get("K"),
                "vertices": report.get("robdd_vertices"),
                "total_codeword_bits": report.get("total_codeword_bits")
            },
            success=True,
            processing_time=processing_time,
            input_bits=report.get("n")
        ))

    def log_benchmark(self, run_id: str, preset: str, sizes: List[int], reps: int,
                      rows: int, processing_time: float) -> None:
        """Registra una corrida de benchmark"""
        self._write_event(AuditEvent(
            timestamp=datetime.now().isoformat(),
            run_id=run_id,
            event_type="BENCH",
            component="bench_orchestrator",
            details={"preset": preset, "sizes": sizes, "reps": reps, "rows": rows},
            success=True,
            processing_time=processing_time
        ))

    def log_run_failure(self, run_id: str, operation: str, error_message: str,
                        section: Optional[str], processing_time: float) -> None:
        """Registra el fallo de una ejecución"""
        self._write_event(AuditEvent(
            timestamp=datetime.now().isoformat(),
            run_id=run_id,
            event_type="RUN_FAILED",
            component="codec_orchestrator",
            details={
                "operation": operation,
                "error_message": error_message,
                "failure_section": section
            },
            success=False,
            processing_time=processing_time
        ))

    def _write_event(self, event: AuditEvent) -> None:
        """Escribe un evento al archivo de log"""
        try:
            with open(self.log_file_path, 'a', encoding='utf-8') as f:
                f.write(event.model_dump_json() + "\n")
        except OSError as e:
            # Fall back to a sibling file; losing the event is the last resort
            try:
                backup_path = f"{self.log_file_path}.backup"
                with open(backup_path, 'a', encoding='utf-8') as f:
                    error_event = AuditEvent(
                        timestamp=datetime.now().isoformat(),
                        run_id="audit_error",
                        event_type="AUDIT_ERROR",
                        component="audit_logger",
                        details={
                            "original_error": str(e),
                            "failed_event": event.model_dump(),
                            "backup_location": backup_path
                        },
                        success=False
                    )
                    f.write(error_event.model_dump_json() + "\n")
            except OSError:
                pass

    def get_recent_events(self, limit: int = 100) -> List[Dict[str, Any]]:
        """Obtiene los eventos más recientes del log"""
        try:
            with open(self.log_file_path, 'r', encoding='utf-8') as f:
                lines = f.readlines()[-limit:]
        except FileNotFoundError:
            return []

        events = []
        for line in lines:
            try:
                events.append(json.loads(line.strip()))
            except json.JSONDecodeError:
                continue
        return events

    def get_run_audit_trail(self, run_id: str) -> List[Dict[str, Any]]:
        """Obtiene todos los eventos de una ejecución específica"""
        return [
            event for event in self.get_recent_events(limit=1_000_000)
            if event.get("run_id") == run_id
        ]


def create_audit_logger(log_file_path: Optional[str]) -> Optional[AuditLogger]:
    """Crea el logger de auditoría, o None si la auditoría está deshabilitada"""
    if not log_file_path:
        return None
    return AuditLogger(log_file_path)
