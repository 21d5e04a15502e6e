# infrastructure/logger.py

import hashlib
import json
import logging
import sys
from datetime import datetime
from typing import Optional


class JsonFormatter(logging.Formatter):
    """
    Formateador que convierte cada registro en una línea JSON con hash de integridad.
    """
    def format(self, record):
        log_object = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            log_object["exception"] = self.formatException(record.exc_info)

        # Hash over the sorted record so that identical records hash identically
        log_string = json.dumps(log_object, sort_keys=True)
        log_object["integrity_hash"] = hashlib.sha256(log_string.encode()).hexdigest()

        return json.dumps(log_object)


def setup_logger(level: str = "WARNING", log_file: Optional[str] = None) -> logging.Logger:
    """
    Configura y devuelve el logger raíz del paquete `bddzip`.
    """
    logger = logging.getLogger("bddzip")
    logger.setLevel(getattr(logging, level.upper(), logging.WARNING))

    # Evitamos manejadores duplicados si se llama varias veces
    if logger.hasHandlers():
        logger.handlers.clear()

    if log_file:
        handler = logging.FileHandler(log_file, mode='a', encoding='utf-8')
    else:
        handler = logging.StreamHandler(sys.stderr)

    handler.setFormatter(JsonFormatter())
    logger.addHandler(handler)
    logger.propagate = False

    return logger
