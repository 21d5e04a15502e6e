# infrastructure/__init__.py

from .errors import BddzipError, ConfigurationError, CorruptStreamError, DomainError, StructuralError
from .logger import JsonFormatter, setup_logger
from .audit_logger import AuditEvent, AuditLogger, create_audit_logger
from .input_validator import ValidationResult, validate_input_file

__all__ = [
    'AuditEvent',
    'AuditLogger',
    'BddzipError',
    'ConfigurationError',
    'CorruptStreamError',
    'DomainError',
    'JsonFormatter',
    'StructuralError',
    'ValidationResult',
    'create_audit_logger',
    'setup_logger',
    'validate_input_file',
]
