# infrastructure/input_validator.py

import os

from pydantic import BaseModel, Field


class ValidationResult(BaseModel):
    """
    Resultado de la validación de un archivo de entrada.
    """
    is_valid: bool = Field(description="True si el archivo puede procesarse")
    reason: str = Field(description="Explicación breve. Si es válido, 'Entrada válida'.")
    path: str = Field(description="Ruta validada")
    size_bytes: int = Field(description="Tamaño del archivo en bytes (0 si no existe)", default=0)
    is_io_error: bool = Field(description="True si el problema es de E/S y no de contenido", default=False)


def validate_input_file(path: str, max_bytes: int) -> ValidationResult:
    """
    Comprueba que el archivo exista, sea legible, no esté vacío y no supere el límite.
    """
    if not os.path.isfile(path):
        return ValidationResult(
            is_valid=False,
            reason=f"No such file: {path}",
            path=path,
            is_io_error=True
        )

    if not os.access(path, os.R_OK):
        return ValidationResult(
            is_valid=False,
            reason=f"File is not readable: {path}",
            path=path,
            is_io_error=True
        )

    size = os.path.getsize(path)
    if size == 0:
        return ValidationResult(
            is_valid=False,
            reason="Input file is empty (nothing to encode)",
            path=path
        )

    if size > max_bytes:
        return ValidationResult(
            is_valid=False,
            reason=f"Input file has {size} bytes, above the limit of {max_bytes}",
            path=path,
            size_bytes=size
        )

    return ValidationResult(
        is_valid=True,
        reason="Entrada válida",
        path=path,
        size_bytes=size
    )
