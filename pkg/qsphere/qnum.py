"""
Half-integer indices and q-number arithmetic.

``HalfInt`` stores twice its value so that shifts of l and m by one stay exact.
``q_number`` evaluates [x] = (q^x - q^-x)/(q - q^-1) in the hyperbolic form
sinh(x ln q)/sinh(ln q), which stays accurate as q approaches 1; q = 1 is an exact
special case where [x] = x and q^x = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from qsphere.errors import ConfigError, QOverflowError

# ln of the largest finite double; sinh/exp overflow past it.
MAX_EXPONENT = float(np.log(np.finfo(np.float64).max))


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of Z/2, stored as the integer ``twice`` = 2 * value."""

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, (int, np.integer)) or isinstance(self.twice, bool):
            raise TypeError(f"HalfInt expects an integer twice-value, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @classmethod
    def of(cls, value: Union["HalfInt", int, float, Fraction, str]) -> "HalfInt":
        """Build from an int, a float/Fraction that is a multiple of 1/2, or a string like '3/2'."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        doubled = Fraction(value) * 2
        if doubled.denominator != 1:
            raise ValueError(f"{value!r} is not a multiple of 1/2")
        return cls(int(doubled))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other: Union["HalfInt", int]) -> "HalfInt":
        if isinstance(other, HalfInt):
            return HalfInt(self.twice + other.twice)
        if isinstance(other, int):
            return HalfInt(self.twice + 2 * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Union["HalfInt", int]) -> "HalfInt":
        if isinstance(other, HalfInt):
            return HalfInt(self.twice - other.twice)
        if isinstance(other, int):
            return HalfInt(self.twice - 2 * other)
        return NotImplemented

    def __rsub__(self, other: int) -> "HalfInt":
        if isinstance(other, int):
            return HalfInt(2 * other - self.twice)
        return NotImplemented

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __str__(self) -> str:
        return str(self.twice // 2) if self.is_integer else f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


HALF = HalfInt(1)

Exponent = Union[HalfInt, int, float]


def _log_q(q: float) -> float:
    if q == 1.0:
        return 0.0
    # q - 1 is exact on [0.5, 1], where log1p keeps ln q accurate next to 1
    if q >= 0.5:
        return float(np.log1p(q - 1.0))
    return float(np.log(q))


@dataclass(frozen=True)
class QContext:
    """Deformation parameter 0 < q <= 1 together with ln q (exactly 0 at q = 1)."""

    q: float
    log_q: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        try:
            q = float(self.q)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"q must be a real number, got {self.q!r}") from e
        if not math.isfinite(q) or not 0.0 < q <= 1.0:
            raise ConfigError(f"q must satisfy 0 < q <= 1, got {q!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "log_q", _log_q(q))

    @property
    def is_classical(self) -> bool:
        return self.q == 1.0


def _as_float(x: Exponent) -> float:
    return float(x)


def _guard(ctx: QContext, exponent: float) -> None:
    if abs(exponent * ctx.log_q) > MAX_EXPONENT:
        raise QOverflowError(
            f"q-evaluation overflows: |x ln q| = {abs(exponent * ctx.log_q):.6g} at q={ctx.q!r}",
            q=ctx.q,
        )


def q_number(ctx: QContext, x: Exponent) -> float:
    """The q-number [x]; equals x exactly at q = 1 and is positive for x > 0."""
    value = _as_float(x)
    if ctx.is_classical or value == 0.0:
        return value
    _guard(ctx, value)
    return float(np.sinh(value * ctx.log_q) / np.sinh(ctx.log_q))


def q_power(ctx: QContext, x: Exponent) -> float:
    """q**x with the positive real root for half-integer x."""
    value = _as_float(x)
    if ctx.is_classical or value == 0.0:
        return 1.0
    _guard(ctx, value)
    return float(np.exp(value * ctx.log_q))


def q_sqrt_product(ctx: QContext, *args: Exponent) -> float:
    """sqrt([a1][a2]...), defined as 0 as soon as any argument is <= 0."""
    product = 1.0
    for arg in args:
        if _as_float(arg) <= 0.0:
            return 0.0
        product *= q_number(ctx, arg)
    return math.sqrt(product)


def check_shell_range(ctx: QContext, shells: int) -> None:
    """
    Pre-flight: reject (q, shells) before anything is allocated.

    Matrix entries carry factors up to q^-(2 shells + 3); the radial normalisation of
    alpha+ at the top shell evaluates [4 shells + 2], which is the binding limit.
    """
    exponent = max(2 * shells + 3, 4 * shells + 2)
    if abs(exponent * ctx.log_q) > MAX_EXPONENT:
        raise QOverflowError(
            f"q={ctx.q!r} with shells={shells} needs q^-{exponent}, beyond double range",
            q=ctx.q,
            shells=shells,
        )
