"""
U_q(su(2)) Hopf data needed to test equivariance of the sphere representation.

Elements of the sphere algebra produced by the action of e, f, k, k^-1 on the generators
always lie in span{1, A, B, B*}; ``SphereElement`` stores such a combination.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType

from qsphere.qnum import QContext, q_power


class SphereGenerator(enum.Enum):
    A = "A"
    B = "B"
    BSTAR = "Bstar"

    @property
    def star(self) -> "SphereGenerator":
        return {SphereGenerator.A: SphereGenerator.A,
                SphereGenerator.B: SphereGenerator.BSTAR,
                SphereGenerator.BSTAR: SphereGenerator.B}[self]


class UqGenerator(enum.Enum):
    E = "e"
    F = "f"
    K = "k"
    KINV = "kinv"


UNIT = "1"
_TERMS = (UNIT, SphereGenerator.A, SphereGenerator.B, SphereGenerator.BSTAR)


@dataclass(frozen=True)
class SphereElement:
    """Real linear combination c0*1 + cA*A + cB*B + cB**B*."""

    coefficients: MappingProxyType

    @classmethod
    def of(cls, **terms: float) -> "SphereElement":
        by_name = {"one": UNIT, "A": SphereGenerator.A, "B": SphereGenerator.B, "Bstar": SphereGenerator.BSTAR}
        return cls(MappingProxyType({by_name[name]: float(c) for name, c in terms.items() if c != 0.0}))

    @classmethod
    def generator(cls, x: SphereGenerator, scale: float = 1.0) -> "SphereElement":
        return cls(MappingProxyType({x: float(scale)} if scale != 0.0 else {}))

    def coefficient(self, term) -> float:
        return self.coefficients.get(term, 0.0)

    def scaled(self, factor: float) -> "SphereElement":
        return SphereElement(MappingProxyType({t: c * factor for t, c in self.coefficients.items() if c * factor != 0.0}))

    def star(self) -> "SphereElement":
        """Coefficients are real, so * only swaps B and B*."""
        return SphereElement(MappingProxyType({
            (t if t == UNIT else t.star): c for t, c in self.coefficients.items()
        }))

    def distance(self, other: "SphereElement") -> float:
        return max(abs(self.coefficient(t) - other.coefficient(t)) for t in _TERMS)


def act(ctx: QContext, h: UqGenerator, x: SphereGenerator) -> SphereElement:
    """h |> x on the generators of the standard Podles sphere."""
    q = ctx.q
    qp = lambda e: q_power(ctx, e)  # noqa: E731
    if h is UqGenerator.K:
        return SphereElement.generator(x, {SphereGenerator.A: 1.0, SphereGenerator.B: q,
                                           SphereGenerator.BSTAR: 1.0 / q}[x])
    if h is UqGenerator.KINV:
        return SphereElement.generator(x, {SphereGenerator.A: 1.0, SphereGenerator.B: 1.0 / q,
                                           SphereGenerator.BSTAR: q}[x])
    if h is UqGenerator.E:
        if x is SphereGenerator.B:
            return SphereElement.of(A=-(qp(0.5) + qp(-1.5)), one=qp(-1.5))
        if x is SphereGenerator.BSTAR:
            return SphereElement.of()
        return SphereElement.of(Bstar=qp(-0.5))
    if x is SphereGenerator.B:
        return SphereElement.of()
    if x is SphereGenerator.BSTAR:
        return SphereElement.of(A=qp(1.5) + qp(-0.5), one=-qp(-0.5))
    return SphereElement.of(B=-qp(0.5))


def coproduct(h: UqGenerator) -> tuple[tuple[UqGenerator, UqGenerator], ...]:
    """Sweedler pairs (h1, h2) of Delta h."""
    if h is UqGenerator.K:
        return ((UqGenerator.K, UqGenerator.K),)
    if h is UqGenerator.KINV:
        return ((UqGenerator.KINV, UqGenerator.KINV),)
    return ((h, UqGenerator.K), (UqGenerator.KINV, h))


def antipode_star(ctx: QContext, h: UqGenerator) -> tuple[float, UqGenerator]:
    """(S h)* as scalar * generator: (Sk)* = k^-1, (Se)* = -q^-1 f, (Sf)* = -q e."""
    q = ctx.q
    return {
        UqGenerator.K: (1.0, UqGenerator.KINV),
        UqGenerator.KINV: (1.0, UqGenerator.K),
        UqGenerator.E: (-1.0 / q, UqGenerator.F),
        UqGenerator.F: (-q, UqGenerator.E),
    }[h]


def act_on_element(ctx: QContext, h: UqGenerator, element: SphereElement) -> SphereElement:
    """Linear extension of ``act``; h |> 1 is the counit eps(h) times 1."""
    total: dict = {}
    for term, c in element.coefficients.items():
        if term == UNIT:
            image = SphereElement.of(one=1.0 if h in (UqGenerator.K, UqGenerator.KINV) else 0.0)
        else:
            image = act(ctx, h, term)
        for t, v in image.coefficients.items():
            total[t] = total.get(t, 0.0) + c * v
    return SphereElement(MappingProxyType({t: v for t, v in total.items() if v != 0.0}))


def action_star_defect(ctx: QContext, h: UqGenerator, x: SphereGenerator) -> float:
    """Coefficient distance between h |> x* and ((S h)* |> x)*; zero for a *-compatible action."""
    scalar, g = antipode_star(ctx, h)
    element = SphereElement.generator(x)
    lhs = act_on_element(ctx, h, element.star())
    rhs = act_on_element(ctx, g, element).scaled(scalar).star()
    return lhs.distance(rhs)
