"""Finite-truncation model of the equivariant spectral triple over the standard Podles sphere."""
from qsphere.axioms import CheckReport, run_suite
from qsphere.config import RunConfig
from qsphere.errors import ConfigError, EmptyInteriorError, QOverflowError, QSphereError
from qsphere.hilbert import Truncation
from qsphere.operators import DiracParams, build_triple
from qsphere.qnum import HalfInt, QContext

__version__ = "0.2.0"

__all__ = [
    "CheckReport",
    "ConfigError",
    "DiracParams",
    "EmptyInteriorError",
    "HalfInt",
    "QContext",
    "QOverflowError",
    "QSphereError",
    "RunConfig",
    "Truncation",
    "build_triple",
    "run_suite",
]
