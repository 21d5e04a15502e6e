# infrastructure/errors.py

from typing import Optional


class BddzipError(Exception):
    """
    Error base del sistema de compresión. `section` indica la parte del
    contenedor o del algoritmo donde se detectó el problema.
    """

    def __init__(self, message: str, section: Optional[str] = None):
        self.message = message
        self.section = section
        super().__init__(message)

    def __str__(self):
        if self.section:
            return f"[{self.section}] {self.message}"
        return self.message


class DomainError(BddzipError, ValueError):
    """Precondición violada por el llamador (entrada fuera de dominio)."""


class StructuralError(BddzipError):
    """Cadenas de nivel o grafo inconsistentes."""


class CorruptStreamError(BddzipError):
    """El flujo de bits no es un codeword válido."""


class ConfigurationError(BddzipError):
    """Configuración o preset de fuente inválido."""
