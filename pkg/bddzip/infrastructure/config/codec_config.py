"""
Codec Configuration
Configuración del compresor, del logging y del benchmark leída desde variables de entorno
"""

import logging
import os
from dataclasses import dataclass
from typing import Optional


_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class CodecConfig:
    """Límites del codificador / decodificador"""
    max_decoded_bits: int = 1 << 27
    max_input_bytes: int = 16 * 1024 * 1024

    @classmethod
    def from_env(cls) -> 'CodecConfig':
        return cls(
            max_decoded_bits=int(os.getenv("BDDZIP_MAX_DECODED_BITS", str(1 << 27))),
            max_input_bytes=int(os.getenv("BDDZIP_MAX_INPUT_BYTES", str(16 * 1024 * 1024)))
        )


@dataclass
class LoggingConfig:
    """Configuración de logs y auditoría"""
    level: str = "WARNING"
    log_file: Optional[str] = None
    audit_log_path: Optional[str] = None

    @classmethod
    def from_env(cls) -> 'LoggingConfig':
        return cls(
            level=os.getenv("BDDZIP_LOG_LEVEL", "WARNING").upper(),
            log_file=os.getenv("BDDZIP_LOG_FILE") or None,
            audit_log_path=os.getenv("BDDZIP_AUDIT_LOG") or None
        )


@dataclass
class BenchConfig:
    """Configuración del benchmark de redundancia"""
    workers: int = 1

    @classmethod
    def from_env(cls) -> 'BenchConfig':
        return cls(
            workers=int(os.getenv("BDDZIP_BENCH_WORKERS", "1"))
        )


class BddzipConfig:
    """Configuración principal del sistema"""

    def __init__(self):
        self.codec = CodecConfig.from_env()
        self.logging = LoggingConfig.from_env()
        self.bench = BenchConfig.from_env()

    def validate_config(self) -> list[str]:
        """Valida que todas las configuraciones tengan valores utilizables"""
        errors = []

        if self.codec.max_decoded_bits < 1:
            errors.append("BDDZIP_MAX_DECODED_BITS must be positive")

        if self.codec.max_input_bytes < 1:
            errors.append("BDDZIP_MAX_INPUT_BYTES must be positive")

        if self.logging.level not in _LOG_LEVELS:
            errors.append(f"BDDZIP_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}")

        if self.bench.workers < 1:
            errors.append("BDDZIP_BENCH_WORKERS must be at least 1")

        # Warnings only
        if self.codec.max_decoded_bits > (1 << 31):
            logger = logging.getLogger(__name__)
            logger.warning("BDDZIP_MAX_DECODED_BITS above 2^31 may exhaust memory on decode")

        return errors
