class TornadoError(Exception):
    """Base class of the errors raised by tornadotab."""


class ParameterError(TornadoError, ValueError):
    """Raised for invalid hash, selector, sketch or bound parameters."""


class InputError(TornadoError, ValueError):
    """Raised for invalid keys, characters, samples or files."""


class DomainError(TornadoError, ValueError):
    """Raised when a formula is evaluated outside its mathematical domain."""


class SizeError(TornadoError, ValueError):
    """Raised when an exhaustive enumeration would exceed its guard."""


class UnsupportedError(TornadoError, ValueError):
    """Raised when an operation is not defined for the given parameters."""


class ConfigError(TornadoError, ValueError):
    """Raised for invalid experiment configurations."""


class ResourceError(TornadoError, RuntimeError):
    """Raised when an experiment would need more memory than allowed."""
