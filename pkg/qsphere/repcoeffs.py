"""
Closed-form coefficients of the two equivariant representations pi+ and pi- of the
standard Podles sphere on V_{1/2} (+) V_{3/2} (+) ...

    B  |l,m> = B+ |l+1,m+1> + B0 |l,m+1> + B- |l-1,m+1>
    B* |l,m> = B~+|l+1,m-1> + B~0|l,m-1> + B~-|l-1,m-1>
    A  |l,m> = A+ |l+1,m>   + A0 |l,m>   + A- |l-1,m>

All entries are products of q-powers, square roots of q-number pairs and the three
radial functions alpha0_l, alpha+_l, alpha-_l. A square root whose argument contains a
non-positive q-number is zero, so every selection rule lives in those zeros.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional

from qsphere.qnum import HALF, HalfInt, QContext, q_number, q_power, q_sqrt_product


class Variant(enum.Enum):
    PI_PLUS = "pi_plus"
    PI_MINUS = "pi_minus"


class Shift(enum.IntEnum):
    """Change of l produced by one term of a generator."""

    PLUS = 1
    ZERO = 0
    MINUS = -1


MUTABLE_FAMILIES = ("alpha0", "alpha_plus", "a0_constant")


@dataclass(frozen=True)
class Mutation:
    """Relative perturbation of one coefficient family, optionally at a single l."""

    family: str
    rel: float = 1e-3
    at: Optional[HalfInt] = None

    def __post_init__(self) -> None:
        if self.family not in MUTABLE_FAMILIES:
            raise ValueError(f"unknown coefficient family {self.family!r}; expected one of {MUTABLE_FAMILIES}")

    def factor(self, family: str, l: Optional[HalfInt] = None) -> float:
        if family != self.family or (self.at is not None and l != self.at):
            return 1.0
        return 1.0 + self.rel


@dataclass(frozen=True)
class CoeffSet:
    """Coefficients of one representation variant at a fixed q."""

    ctx: QContext
    variant: Variant
    mutations: tuple[Mutation, ...] = field(default=())

    def perturbed(self, family: str, rel: float = 1e-3, at=None) -> "CoeffSet":
        at = HalfInt.of(at) if at is not None else None
        return replace(self, mutations=self.mutations + (Mutation(family, rel, at),))

    def _scale(self, family: str, l: Optional[HalfInt] = None) -> float:
        return math.prod(m.factor(family, l) for m in self.mutations)

    # radial functions

    def alpha0(self, l: HalfInt) -> float:
        ctx = self.ctx
        q, x = ctx.q, float(l)
        tail = q if self.variant is Variant.PI_PLUS else -1.0 / q
        numerator = (q - 1.0 / q) * q_number(ctx, x - 0.5) * q_number(ctx, x + 1.5) + tail
        denominator = math.sqrt(q) * q_number(ctx, 2 * x) * q_number(ctx, 2 * x + 2)
        return numerator / denominator * self._scale("alpha0", l)

    def alpha_plus(self, l: HalfInt) -> float:
        if l.twice < 1:
            return 0.0
        ctx = self.ctx
        x = float(l)
        outer = q_number(ctx, 2 * x + 2)
        inner = q_number(ctx, 4 * x + 4) + q_number(ctx, 2) * outer
        shift = 2 if self.variant is Variant.PI_PLUS else 1
        # the two square roots are taken separately; their product overflows long before either factor
        return q_power(ctx, -x - shift) / (math.sqrt(outer) * math.sqrt(inner)) * self._scale("alpha_plus", l)

    def alpha_minus(self, l: HalfInt) -> float:
        """alpha-_l = -q^{2l} alpha+_{l-1}; zero on V_{1/2}, where its coefficients vanish anyway."""
        if l.twice < 3:
            return 0.0
        return -q_power(self.ctx, l.twice) * self.alpha_plus(l - 1)

    def a0_constant(self) -> float:
        q = self.ctx.q
        return 1.0 / (1.0 + q * q) * self._scale("a0_constant")

    # matrix elements

    def b(self, j: Shift, l: HalfInt, m: HalfInt) -> float:
        ctx = self.ctx
        qm = q_power(ctx, m)
        if j is Shift.PLUS:
            return qm * q_sqrt_product(ctx, l + m + 1, l + m + 2) * self.alpha_plus(l)
        if j is Shift.ZERO:
            return qm * q_sqrt_product(ctx, l + m + 1, l - m) * self.alpha0(l)
        return qm * q_sqrt_product(ctx, l - m, l - m - 1) * self.alpha_minus(l)

    def bstar(self, j: Shift, l: HalfInt, m: HalfInt) -> float:
        ctx = self.ctx
        qm = q_power(ctx, m - 1)
        if j is Shift.PLUS:
            return qm * q_sqrt_product(ctx, l - m + 2, l - m + 1) * self.alpha_minus(l + 1)
        if j is Shift.ZERO:
            return qm * q_sqrt_product(ctx, l + m, l - m + 1) * self.alpha0(l)
        return qm * q_sqrt_product(ctx, l + m, l + m - 1) * self.alpha_plus(l - 1)

    def a(self, j: Shift, l: HalfInt, m: HalfInt) -> float:
        ctx = self.ctx
        q = ctx.q
        if j is Shift.PLUS:
            return -q_power(ctx, m + l + HALF) * q_sqrt_product(ctx, l - m + 1, l + m + 1) * self.alpha_plus(l)
        if j is Shift.MINUS:
            return q_power(ctx, m - l - HALF) * q_sqrt_product(ctx, l - m, l + m) * self.alpha_minus(l)
        bracket = (
            q_number(ctx, l - m + 1) * q_number(ctx, l + m)
            - q * q * q_number(ctx, l - m) * q_number(ctx, l + m + 1)
        )
        return q_power(ctx, -HALF) / (1.0 + q * q) * bracket * self.alpha0(l) + self.a0_constant()

    # Independent cross-checks of the closed forms. Each returns a defect relative to the
    # largest term involved, so zero means the identity holds.

    def alpha0_recurrence_defect(self, l: HalfInt) -> float:
        """alpha0_{l+1} [2l+4] = alpha0_l [2l] + (q - 1/q)/sqrt(q)."""
        ctx = self.ctx
        q, x = ctx.q, float(l)
        lhs = self.alpha0(l + 1) * q_number(ctx, 2 * x + 4)
        rhs = self.alpha0(l) * q_number(ctx, 2 * x) + (q - 1.0 / q) / math.sqrt(q)
        return _relative(lhs - rhs, lhs, rhs)

    def b_recursion_defect(self, j: Shift, l: HalfInt, m: HalfInt) -> float:
        """q^-1 B^j_{l,m+1} sqrt([l-m][l+m+1]) = B^j_{l,m} sqrt([l+j-m-1][l+j+m+2])."""
        ctx = self.ctx
        lhs = self.b(j, l, m + 1) * q_sqrt_product(ctx, l - m, l + m + 1) / ctx.q
        rhs = self.b(j, l, m) * q_sqrt_product(ctx, l + int(j) - m - 1, l + int(j) + m + 2)
        return _relative(lhs - rhs, lhs, rhs)

    def quadratic_defects(self, l: HalfInt) -> tuple[float, float]:
        """The two quadratic relations tying alpha0_l, alpha+_l and alpha+_{l-1} together."""
        ctx = self.ctx
        q, x = ctx.q, float(l)
        qn = lambda y: q_number(ctx, y)  # noqa: E731
        a0, ap, ap_prev = self.alpha0(l), self.alpha_plus(l), self.alpha_plus(l - 1)
        first = (
            ap * ap * q ** (2 * x + 3) * qn(2 * x + 3) * qn(2),
            -ap_prev * ap_prev * q ** (2 * x + 1) * qn(2 * x - 1) * qn(2),
            -a0 * a0 * q * qn(4 * x + 2) / qn(2 * x + 1),
            a0 * math.sqrt(q) * (q - 1.0 / q),
        )
        second = (
            -ap * ap * q ** (2 * x + 3) * qn(4 * x + 6) * qn(2),
            ap_prev * ap_prev * q ** (2 * x + 1) * qn(4 * x - 2) * qn(2),
            a0 * a0 * q * qn(2) ** 2,
            -a0 * math.sqrt(q) * (q - 1.0 / q) * qn(4 * x + 2) / qn(2 * x + 1),
            (q - 1.0 / q) ** 2,
        )
        return _relative(math.fsum(first), *first), _relative(math.fsum(second), *second)

    def initial_value_defect(self) -> float:
        """alpha+_{1/2}^2 = q^{-4 -+ 1} / ([3]^2 [4]), upper sign on pi+."""
        ctx = self.ctx
        exponent = -5 if self.variant is Variant.PI_PLUS else -3
        expected = q_power(ctx, exponent) / (q_number(ctx, 3) ** 2 * q_number(ctx, 4))
        actual = self.alpha_plus(HALF) ** 2
        return _relative(actual - expected, actual, expected)


def _relative(defect: float, *terms: float) -> float:
    scale = max((abs(t) for t in terms), default=0.0)
    if scale == 0.0:
        return abs(defect)
    return abs(defect) / scale


def alpha0(ctx: QContext, variant: Variant, l: HalfInt) -> float:
    return CoeffSet(ctx, variant).alpha0(HalfInt.of(l))


def alpha_plus(ctx: QContext, variant: Variant, l: HalfInt) -> float:
    return CoeffSet(ctx, variant).alpha_plus(HalfInt.of(l))


def alpha_minus(ctx: QContext, variant: Variant, l: HalfInt) -> float:
    return CoeffSet(ctx, variant).alpha_minus(HalfInt.of(l))


def coeff_b(ctx: QContext, variant: Variant, j: Shift, l: HalfInt, m: HalfInt) -> float:
    return CoeffSet(ctx, variant).b(Shift(j), HalfInt.of(l), HalfInt.of(m))


def coeff_bstar(ctx: QContext, variant: Variant, j: Shift, l: HalfInt, m: HalfInt) -> float:
    return CoeffSet(ctx, variant).bstar(Shift(j), HalfInt.of(l), HalfInt.of(m))


def coeff_a(ctx: QContext, variant: Variant, j: Shift, l: HalfInt, m: HalfInt) -> float:
    return CoeffSet(ctx, variant).a(Shift(j), HalfInt.of(l), HalfInt.of(m))


def default_coeffs(ctx: QContext) -> dict[Variant, CoeffSet]:
    return {variant: CoeffSet(ctx, variant) for variant in Variant}
