"""
bddzip - compresión sin pérdida de cadenas binarias mediante su ROBDD
"""

from .core import analyze, build_robdd, decode, encode, generate_levels
from .infrastructure.errors import (
    BddzipError,
    ConfigurationError,
    CorruptStreamError,
    DomainError,
    StructuralError,
)

__version__ = "1.0.0"

__all__ = [
    'BddzipError',
    'ConfigurationError',
    'CorruptStreamError',
    'DomainError',
    'StructuralError',
    'analyze',
    'build_robdd',
    'decode',
    'encode',
    'generate_levels',
]
