"""Exception hierarchy shared by the library, the CLI and the Dify tools."""
from __future__ import annotations


class QSphereError(Exception):
    """Base class for all errors raised by qsphere."""

    code = "qsphere_error"


class ConfigError(QSphereError, ValueError):
    """Invalid run parameters (q, shells, margin, p, z, tolerance, format, config file)."""

    code = "config_error"


class EmptyInteriorError(ConfigError):
    """The truncation leaves no interior shells for the requested margin."""


class QOverflowError(QSphereError, OverflowError):
    """A q-number or q-power would leave the double precision exponent range."""

    code = "overflow_guard"

    def __init__(self, message: str, q: float | None = None, shells: int | None = None):
        super().__init__(message)
        self.q = q
        self.shells = shells


class DimensionMismatchError(QSphereError, ValueError):
    code = "dimension_mismatch"


class NotSelfAdjointError(QSphereError, ValueError):
    code = "not_selfadjoint"
