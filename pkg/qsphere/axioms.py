"""
Named residual checks for the identities of the equivariant spectral triple over the
standard Podles sphere, plus the boundedness and classical-limit scans.

Every operator identity is compared on interior vectors only:

    residual = || (lhs - rhs) P || / max(1, || lhs P ||)

where P keeps the basis vectors lying at least ``max(margin, degree)`` shells below the
cutoff and ``degree`` is the number of sphere-generator factors in the expression. Negative
controls are identities that must fail; they pass when the residual exceeds a threshold.
"""
from __future__ import annotations

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import groupby, product
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.linalg

from qsphere.errors import ConfigError, QOverflowError
from qsphere.hilbert import DEFAULT_MARGIN, BasisIndex, Truncation
from qsphere.hopf import (
    SphereElement,
    SphereGenerator,
    UqGenerator,
    UNIT,
    act_on_element,
    action_star_defect,
    antipode_star,
    coproduct,
)
from qsphere.operators import (
    BLOCK_VARIANT,
    AntilinearOp,
    DiracParams,
    LinearOp,
    Operator,
    SpectralTriple,
    adjoint,
    anticommutator,
    build_D,
    build_sphere_gen,
    build_triple,
    commutator,
    eigenvalues,
    op_norm,
    sandwich_J,
)
from qsphere.qnum import HALF, HalfInt, QContext, check_shell_range, q_number, q_power
from qsphere.repcoeffs import Shift, Variant, default_coeffs

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
STRICT_TOLERANCE = 1e-12
COEFFICIENT_TOLERANCE = 1e-11
J_EQUIVARIANCE_THRESHOLD = 1e-2
ALTERNATIVE_LAW_THRESHOLD = 1e-3
RECURRENCE_L_MAX = HalfInt(79)

_GEN_LABEL = {SphereGenerator.A: "A", SphereGenerator.B: "B", SphereGenerator.BSTAR: "Bstar"}

# provenance of each check group, keyed by the first component of the check name
ANCHOR_GROUPS = {
    "coeff": "radial coefficients of the equivariant representations",
    "sphere": "defining relations of the standard Podles sphere",
    "star": "star structure of the representation",
    "uq": "defining relations of U_q(su(2))",
    "action": "compatibility of the U_q(su(2)) action with the star",
    "equivariance": "equivariance of the representation",
    "reality": "reality structure J",
    "dirac": "equivariant Dirac operator",
}


def anchor_group(name: str) -> str:
    group = name.split(".", 1)[0]
    return ANCHOR_GROUPS.get(group, group)


class Expectation(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"


@dataclass(frozen=True)
class CheckSpec:
    """
    One named identity.

    ``tolerance`` of None means the suite tolerance; otherwise the smaller of the two is used.
    ``threshold`` only matters for negative controls.
    """

    name: str
    anchor: str
    degree: int = 0
    tolerance: Optional[float] = None
    expect: Expectation = Expectation.HOLDS
    threshold: float = 0.0

    def effective_margin(self, margin: int) -> int:
        return max(margin, self.degree)


@dataclass(frozen=True)
class CheckReport:
    name: str
    anchor: str
    q: float
    shells: int
    p: float
    z: complex
    residual: float
    tolerance: float
    passed: bool
    expect: Expectation = Expectation.HOLDS
    margin: int = DEFAULT_MARGIN

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "paper_anchor": f"{anchor_group(self.name)}: {self.anchor}",
            "identity": self.anchor,
            "q": self.q,
            "shells": self.shells,
            "p": self.p,
            "z": [self.z.real, self.z.imag],
            "variants": [variant.value for variant in BLOCK_VARIANT.values()],
            "margin": self.margin,
            "expect": self.expect.value,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def interior_residual(lhs: Operator, rhs: Operator, mask: np.ndarray) -> float:
    """|| (lhs - rhs) P || / max(1, || lhs P ||) for the column mask P."""
    if type(lhs) is not type(rhs):
        raise TypeError(f"cannot compare {type(lhs).__name__} with {type(rhs).__name__}")
    lhs_cols = lhs.matrix[:, mask]
    diff = lhs_cols - rhs.matrix[:, mask]
    if diff.size == 0:
        return 0.0
    scale = max(1.0, float(scipy.linalg.svdvals(lhs_cols)[0]))
    return float(scipy.linalg.svdvals(diff)[0]) / scale


def entrywise_residual(lhs: Operator, rhs: Operator) -> float:
    """max |lhs - rhs| over all entries of the truncated matrices, relative to max(1, max |lhs|)."""
    if lhs.dim == 0:
        return 0.0
    scale = max(1.0, float(np.max(np.abs(lhs.matrix))))
    return float(np.max(np.abs(lhs.matrix - rhs.matrix))) / scale


class _Checker:
    """Turns residuals into reports for one (q, truncation, p, z) point."""

    def __init__(self, ctx: QContext, trunc: Truncation, p: float, z: complex, tolerance: float):
        if not tolerance > 0:
            raise ConfigError(f"tolerance must be positive, got {tolerance!r}")
        self.ctx = ctx
        self.trunc = trunc
        self.p = float(p)
        self.z = complex(z)
        self.tolerance = float(tolerance)

    @classmethod
    def for_triple(cls, triple: SpectralTriple, tolerance: float) -> "_Checker":
        return cls(triple.ctx, triple.trunc, triple.p, triple.params.z, tolerance)

    def _tolerance(self, spec: CheckSpec) -> float:
        if spec.expect is Expectation.VIOLATED:
            return spec.threshold
        if spec.tolerance is None:
            return self.tolerance
        return min(self.tolerance, spec.tolerance)

    def report(self, spec: CheckSpec, residual: float) -> CheckReport:
        tolerance = self._tolerance(spec)
        if spec.expect is Expectation.VIOLATED:
            passed = bool(residual > tolerance)
        else:
            passed = bool(residual <= tolerance)
        if not passed:
            logger.warning("check %s failed: residual=%.3e tolerance=%.1e (%s)",
                           spec.name, residual, tolerance, spec.expect.value)
        return CheckReport(
            name=spec.name,
            anchor=spec.anchor,
            q=self.ctx.q,
            shells=self.trunc.shells,
            p=self.p,
            z=self.z,
            residual=float(residual),
            tolerance=tolerance,
            passed=passed,
            expect=spec.expect,
            margin=spec.effective_margin(self.trunc.margin),
        )

    def interior_mask(self, spec: CheckSpec) -> np.ndarray:
        return self.trunc.interior_mask(max(0, spec.degree - self.trunc.margin))

    def identity(self, spec: CheckSpec, lhs: Operator, rhs: Operator) -> CheckReport:
        return self.report(spec, interior_residual(lhs, rhs, self.interior_mask(spec)))

    def entrywise(self, spec: CheckSpec, lhs: Operator, rhs: Operator) -> CheckReport:
        return self.report(spec, entrywise_residual(lhs, rhs))


def _triple_for(
    ctx: QContext,
    trunc: Truncation,
    triple: Optional[SpectralTriple],
    params: Optional[DiracParams] = None,
    p: Optional[float] = None,
) -> SpectralTriple:
    if triple is not None:
        return triple
    return build_triple(ctx, trunc, params, p)


def represent(triple: SpectralTriple, element: SphereElement) -> LinearOp:
    """pi(c0 1 + cA A + cB B + cB* B*) on the truncation."""
    total = LinearOp(np.zeros((triple.dim, triple.dim), dtype=np.complex128))
    for term, c in element.coefficients.items():
        total = total + c * (triple.identity() if term == UNIT else triple.pi[term])
    return total


# algebra


def check_coefficients(
    ctx: QContext,
    trunc: Truncation,
    *,
    triple: Optional[SpectralTriple] = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[CheckReport]:
    """Recurrences and quadratic relations of the radial functions on the interior shells."""
    coeffs = (triple.coeffs if triple is not None else None) or default_coeffs(ctx)
    checker = (
        _Checker.for_triple(triple, tolerance)
        if triple is not None
        else _Checker(ctx, trunc, ctx.q, 1.0, tolerance)
    )
    trunc.interior_mask()
    top = trunc.interior_l_max()
    shells = [l for l in trunc.shell_values() if l <= top]
    reports = []
    for variant in Variant:
        cs = coeffs[variant]
        recursion = max(
            (cs.b_recursion_defect(j, l, HalfInt(m2))
             for l in shells for m2 in range(-l.twice, l.twice - 1, 2) for j in Shift),
            default=0.0,
        )
        quadratic = [cs.quadratic_defects(l) for l in shells]
        entries = (
            ("alpha0_recurrence", "alpha0_{l+1} [2l+4] = alpha0_l [2l] + (q - 1/q)/sqrt(q)",
             max(cs.alpha0_recurrence_defect(l) for l in shells)),
            ("b_recursion", "q^-1 B_{l,m+1} sqrt([l-m][l+m+1]) = B_{l,m} sqrt([l+j-m-1][l+j+m+2])", recursion),
            ("quadratic_first", "first quadratic relation of alpha0, alpha+", max(a for a, _ in quadratic)),
            ("quadratic_second", "second quadratic relation of alpha0, alpha+", max(b for _, b in quadratic)),
            ("initial_value", "alpha+_{1/2}^2 = q^{-4 -+ 1} / ([3]^2 [4])", cs.initial_value_defect()),
        )
        for name, anchor, residual in entries:
            spec = CheckSpec(f"coeff.{variant.value}.{name}", anchor, tolerance=COEFFICIENT_TOLERANCE)
            reports.append(checker.report(spec, residual))
    return reports


def check_sphere_relations(
    ctx: QContext,
    trunc: Truncation,
    *,
    triple: Optional[SpectralTriple] = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[CheckReport]:
    """The defining relations of the sphere algebra and their combination."""
    triple = _triple_for(ctx, trunc, triple)
    checker = _Checker.for_triple(triple, tolerance)
    q2 = ctx.q * ctx.q
    A, B, Bs = (triple.pi[g] for g in SphereGenerator)
    one = triple.identity()
    relations = (
        (CheckSpec("sphere.ab", "A B = q^2 B A", 2), A @ B, q2 * (B @ A)),
        (CheckSpec("sphere.abstar", "A B* = q^-2 B* A", 2), A @ Bs, (1.0 / q2) * (Bs @ A)),
        (CheckSpec("sphere.bbstar", "B B* = q^-2 A (1 - A)", 2), B @ Bs, (1.0 / q2) * (A @ (one - A))),
        (CheckSpec("sphere.bstarb", "B* B = A (1 - q^2 A)", 2), Bs @ B, A @ (one - q2 * A)),
        (CheckSpec("sphere.combination", "B* B - q^4 B B* = (1 - q^2) A", 2),
         Bs @ B - (q2 * q2) * (B @ Bs), (1.0 - q2) * A),
    )
    return [checker.identity(spec, lhs, rhs) for spec, lhs, rhs in relations]


def check_star_structure(
    ctx: QContext,
    trunc: Truncation,
    *,
    triple: Optional[SpectralTriple] = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[CheckReport]:
    """pi is a *-representation by bounded operators; pi(A) is a positive contraction."""
    triple = _triple_for(ctx, trunc, triple)
    checker = _Checker.for_triple(triple, tolerance)
    A, B, Bs = (triple.pi[g] for g in SphereGenerator)
    reports = [
        checker.entrywise(CheckSpec("star.b_adjoint", "pi(B)^* = pi(B*)", tolerance=STRICT_TOLERANCE), adjoint(B), Bs),
        checker.entrywise(CheckSpec("star.a_selfadjoint", "pi(A)^* = pi(A)", tolerance=STRICT_TOLERANCE), adjoint(A), A),
    ]
    spec = CheckSpec("star.a_positive_contraction", "0 <= P pi(A) P <= 1", 1)
    mask = checker.interior_mask(spec)
    compressed = A.matrix[np.ix_(mask, mask)]
    compressed = 0.5 * (compressed + compressed.conj().T)
    spectrum = scipy.linalg.eigvalsh(compressed)
    reports.append(checker.report(spec, max(0.0, -float(spectrum[0]), float(spectrum[-1]) - 1.0)))
    return reports


def check_uq_relations(
    ctx: QContext,
    trunc: Truncation,
    *,
    triple: Optional[SpectralTriple] = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[CheckReport]:
    """Commutation relations of e, f, k on the truncated modules, and e^* = f."""
    triple = _triple_for(ctx, trunc, triple)
    checker = _Checker.for_triple(triple, tolerance)
    q = ctx.q
    e, f, k, kinv = (triple.uq[g] for g in UqGenerator)
    cartan = LinearOp(np.diag([q_number(ctx, 2 * float(b.m)) for b in trunc.basis]).astype(np.complex128))
    return [
        checker.identity(CheckSpec("uq.e_k", "e k = q k e"), e @ k, q * (k @ e)),
        checker.identity(CheckSpec("uq.k_f", "k f = q f k"), k @ f, q * (f @ k)),
        checker.identity(CheckSpec("uq.cartan", "f e - e f = [2m]"), f @ e - e @ f, cartan),
        checker.identity(CheckSpec("uq.k_kinv", "k k^-1 = 1"), k @ kinv, triple.identity()),
        checker.entrywise(CheckSpec("uq.e_adjoint", "e^* = f", tolerance=STRICT_TOLERANCE), adjoint(e), f),
    ]


def check_action_star_compatibility(
    ctx: QContext,
    trunc: Truncation,
    *,
    p: Optional[float] = None,
    z: complex = 1.0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[CheckReport]:
    """h |> x* = ((S h)* |> x)* on the generators; only the coefficient table is involved."""
    checker = _Checker(ctx, trunc, ctx.q if p is None else p, z, tolerance)
    return [
        checker.report(
            CheckSpec(f"action.star.{h.value}.{_GEN_LABEL[x]}", f"{h.value} |> {_GEN_LABEL[x]}* = ((S {h.value})* |> {_GEN_LABEL[x]})*"),
            action_star_defect(ctx, h, x),
        )
        for h, x in product((UqGenerator.K, UqGenerator.E, UqGenerator.F), SphereGenerator)
    ]


def check_equivariance(
    ctx: QContext,
    trunc: Truncation,
    *,
    triple: Optional[SpectralTriple] = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[CheckReport]:
    """h pi(x) = sum pi(h1 |> x) h2 over the coproduct of h, for h in {k, e, f}."""
    triple = _triple_for(ctx, trunc, triple)
    checker = _Checker.for_triple(triple, tolerance)
    reports = []
    for h, x in product((UqGenerator.K, UqGenerator.E, UqGenerator.F), SphereGenerator):
        lhs = triple.uq[h] @ triple.pi[x]
        rhs = LinearOp(np.zeros_like(lhs.matrix))
        for h1, h2 in coproduct(h):
            rhs = rhs + represent(triple, act_on_element(ctx, h1, SphereElement.generator(x))) @ triple.uq[h2]
        label = _GEN_LABEL[x]
        spec = CheckSpec(f"equivariance.{h.value}.{label}", f"{h.value} pi({label}) = pi({h.value}(1) |> {label}) {h.value}(2)", 1)
        reports.append(checker.identity(spec, lhs, rhs))
    return reports


# reality


def check_reality(
    ctx: QContext,
    trunc: Truncation,
    p: Optional[float] = None,
    *,
    triple: Optional[SpectralTriple] = None,
    tolerance: float = DEFAULT_TOLERANCE,
    assert_j_equivariance: bool = False,
) -> list[CheckReport]:
    """
    J^2 = -1, gamma J = -J gamma, the commutant property J pi(x) J pi(y) = pi(y) J pi(x) J,
    and equivariance h J = J (S h)*.

    The last one holds only at p = q. For any other p it is reported as a negative control
    unless ``assert_j_equivariance`` is set.
    """
    triple = _triple_for(ctx, trunc, triple, p=p)
    p = triple.p if p is None else float(p)
    J = triple.J if p == triple.p else triple.J_at(p)
    checker = _Checker(ctx, triple.trunc, p, triple.params.z, tolerance)
    one = triple.identity()
    gamma = triple.gamma

    reports = [
        checker.identity(CheckSpec("reality.j_squared", "J^2 = -1"), J @ J, -one),
        checker.identity(CheckSpec("reality.gamma_j", "gamma J = -J gamma"), gamma @ J, -1.0 * (J @ gamma)),
    ]
    for x, y in product(SphereGenerator, SphereGenerator):
        opposite = sandwich_J(J, triple.pi[x])
        spec = CheckSpec(
            f"reality.commutant.{_GEN_LABEL[x]}.{_GEN_LABEL[y]}",
            f"J pi({_GEN_LABEL[x]}) J pi({_GEN_LABEL[y]}) = pi({_GEN_LABEL[y]}) J pi({_GEN_LABEL[x]}) J",
            2,
        )
        reports.append(checker.identity(spec, opposite @ triple.pi[y], triple.pi[y] @ opposite))

    asserted = assert_j_equivariance or p == ctx.q
    for h in (UqGenerator.K, UqGenerator.E, UqGenerator.F):
        scalar, g = antipode_star(ctx, h)
        # k J = J k^-1 holds for every p
        holds = asserted or h is UqGenerator.K
        spec = CheckSpec(
            f"reality.j_equivariance.{h.value}",
            f"{h.value} J = J (S {h.value})*",
            expect=Expectation.HOLDS if holds else Expectation.VIOLATED,
            threshold=0.0 if holds else J_EQUIVARIANCE_THRESHOLD,
        )
        reports.append(checker.identity(spec, triple.uq[h] @ J, J @ (scalar * triple.uq[g])))

    if p == 1.0:
        gram = LinearOp(J.matrix.conj().T @ J.matrix)
        reports.append(checker.entrywise(CheckSpec("reality.j_unitary", "J^* J = 1 at p = 1", tolerance=STRICT_TOLERANCE), gram, one))
    return reports


# Dirac operator


def inverse_q_power_law(ctx: QContext, l: HalfInt) -> float:
    """
    d_l = q^-l; not proportional to [l + 1/2], so it must break the first-order condition.

    Its ratio to [l + 1/2] is (q^-1 - q) q^(1/2) / (1 - q^(2l+1)), which departs from a
    constant by about q^2 between the two lowest shells. The control therefore separates the
    laws only while q^2 stays well above ALTERNATIVE_LAW_THRESHOLD, that is for q from about
    0.1 up to 1. Towards q = 0 the law becomes proportional to [l + 1/2] to machine precision
    (residual near 1e-11 at q = 1e-6) and the control reports a failure.
    """
    return q_power(ctx, -l)


def _first_order_residuals(checker: _Checker, triple: SpectralTriple, D: LinearOp, J: AntilinearOp):
    for x, y in product(SphereGenerator, SphereGenerator):
        bracket = commutator(D, triple.pi[x])
        opposite = sandwich_J(J, triple.pi[y])
        spec = CheckSpec(
            f"dirac.first_order.{_GEN_LABEL[x]}.{_GEN_LABEL[y]}",
            f"[[D, pi({_GEN_LABEL[x]})], J pi({_GEN_LABEL[y]}) J] = 0",
            2,
        )
        yield spec, interior_residual(bracket @ opposite, opposite @ bracket, checker.interior_mask(spec))


def analytic_spectrum(ctx: QContext, trunc: Truncation, z: complex) -> list[tuple[float, HalfInt, int]]:
    """(eigenvalue, l, sign) for +-|z|[l + 1/2], each repeated 2l + 1 times, sorted by eigenvalue."""
    modulus = abs(complex(z))
    rows = []
    for l in trunc.shell_values():
        value = modulus * q_number(ctx, l + HALF)
        for sign in (-1, 1):
            rows.extend([(sign * value, l, sign)] * (l.twice + 1))
    return sorted(rows, key=lambda row: (row[0], row[1]))


def eigen_recurrence_residual(ctx: QContext, law: Callable[[QContext, HalfInt], float], l_max: HalfInt = RECURRENCE_L_MAX) -> float:
    """max over l <= l_max of |d_l + d_{l+2} - [2] d_{l+1}| relative to the largest term."""
    two = q_number(ctx, 2)
    worst = 0.0
    for twice in range(1, l_max.twice + 1, 2):
        l = HalfInt(twice)
        try:
            terms = (law(ctx, l), law(ctx, l + 2), two * law(ctx, l + 1))
        except QOverflowError:
            logger.debug("recurrence stops at l=%s: q-numbers leave the double range", l)
            break
        scale = max(1.0, *(abs(t) for t in terms))
        worst = max(worst, abs(terms[0] + terms[1] - terms[2]) / scale)
    return worst


def check_dirac(
    ctx: QContext,
    trunc: Truncation,
    params: Optional[DiracParams] = None,
    *,
    triple: Optional[SpectralTriple] = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[CheckReport]:
    """
    Grading, reality, equivariance and first-order condition for D, plus its spectrum.

    The closing negative control uses ``inverse_q_power_law`` and is only meaningful for
    q of order 0.1 and above; see that function.
    """
    triple = _triple_for(ctx, trunc, triple, params)
    params = triple.params
    checker = _Checker.for_triple(triple, tolerance)
    D, gamma = triple.D, triple.gamma

    reports = [
        checker.identity(CheckSpec("dirac.gamma_anticommute", "D gamma = -gamma D"), anticommutator(D, gamma),
                         LinearOp(np.zeros_like(D.matrix))),
        checker.entrywise(CheckSpec("dirac.selfadjoint", "D^* = D", tolerance=STRICT_TOLERANCE), adjoint(D), D),
    ]
    for p in sorted({triple.p, ctx.q, 1.0}):
        J = triple.J if p == triple.p else triple.J_at(p)
        spec = CheckSpec(f"dirac.j_commute[p={p:.6g}]", "D J = J D")
        reports.append(checker.identity(spec, D @ J, J @ D))
    for h in (UqGenerator.K, UqGenerator.E, UqGenerator.F):
        spec = CheckSpec(f"dirac.equivariance.{h.value}", f"D {h.value} = {h.value} D")
        reports.append(checker.identity(spec, D @ triple.uq[h], triple.uq[h] @ D))
    for spec, residual in _first_order_residuals(checker, triple, D, triple.J):
        reports.append(checker.report(spec, residual))

    reports.append(checker.report(
        CheckSpec("dirac.eigen_recurrence", "d_l + d_{l+2} = [2] d_{l+1}, l <= 40", tolerance=STRICT_TOLERANCE),
        eigen_recurrence_residual(ctx, params.law),
    ))

    analytic = np.array([row[0] for row in analytic_spectrum(ctx, trunc, params.z)])
    numeric = eigenvalues(D)
    scale = max(1.0, float(np.max(np.abs(analytic)))) if analytic.size else 1.0
    reports.append(checker.report(
        CheckSpec("dirac.spectrum", "eigenvalues of D = +-|z| [l + 1/2] with multiplicity 2l + 1", tolerance=STRICT_TOLERANCE),
        float(np.max(np.abs(numeric - analytic))) / scale,
    ))

    alternative = build_D(ctx, triple.trunc, DiracParams(params.z, law=inverse_q_power_law))
    worst = max(residual for _, residual in _first_order_residuals(checker, triple, alternative, triple.J))
    reports.append(checker.report(
        CheckSpec(
            "dirac.first_order.alternative_law",
            "d_l = q^-l breaks [[D, pi(x)], J pi(y) J] = 0",
            2,
            expect=Expectation.VIOLATED,
            threshold=ALTERNATIVE_LAW_THRESHOLD,
        ),
        worst,
    ))
    return reports


# suite


def run_suite(
    ctx: QContext,
    trunc: Truncation,
    params: Optional[DiracParams] = None,
    p: Optional[float] = None,
    *,
    triple: Optional[SpectralTriple] = None,
    tolerance: float = DEFAULT_TOLERANCE,
    workers: int = 1,
    assert_j_equivariance: bool = False,
) -> list[CheckReport]:
    """Every check group on one triple; reports sorted by name."""
    if workers < 1:
        raise ConfigError(f"workers must be at least 1, got {workers!r}")
    trunc.interior_mask()
    triple = _triple_for(ctx, trunc, triple, params, p)
    groups: dict[str, Callable[[], list[CheckReport]]] = {
        "coefficients": lambda: check_coefficients(ctx, trunc, triple=triple, tolerance=tolerance),
        "sphere": lambda: check_sphere_relations(ctx, trunc, triple=triple, tolerance=tolerance),
        "star": lambda: check_star_structure(ctx, trunc, triple=triple, tolerance=tolerance),
        "uq": lambda: check_uq_relations(ctx, trunc, triple=triple, tolerance=tolerance),
        "action": lambda: check_action_star_compatibility(ctx, trunc, p=triple.p, z=triple.params.z, tolerance=tolerance),
        "equivariance": lambda: check_equivariance(ctx, trunc, triple=triple, tolerance=tolerance),
        "reality": lambda: check_reality(ctx, trunc, triple.p, triple=triple, tolerance=tolerance,
                                         assert_j_equivariance=assert_j_equivariance),
        "dirac": lambda: check_dirac(ctx, trunc, triple=triple, tolerance=tolerance),
    }

    def run(name: str) -> list[CheckReport]:
        reports = groups[name]()
        logger.info("%s: %d/%d checks passed", name, sum(r.passed for r in reports), len(reports))
        return reports

    if workers == 1:
        batches = [run(name) for name in groups]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            batches = list(executor.map(run, groups))
    return sorted((r for batch in batches for r in batch), key=lambda r: r.name)


# scans


@dataclass(frozen=True)
class ScanRow:
    q: float
    shells: int
    label: str
    value: float


@dataclass(frozen=True)
class SpectrumRow:
    l: HalfInt
    analytic: float
    multiplicity: int
    numeric: float
    deviation: float


def spectrum_table(ctx: QContext, trunc: Truncation, params: Optional[DiracParams] = None) -> list[SpectrumRow]:
    """Numerical eigenvalues of D matched against +-|z|[l + 1/2], one row per (l, sign)."""
    params = params or DiracParams()
    D = build_D(ctx, trunc, params)
    numeric = eigenvalues(D)
    matched = zip(analytic_spectrum(ctx, trunc, params.z), numeric)
    rows = []
    for (l, sign), block in groupby(matched, key=lambda pair: (pair[0][1], pair[0][2])):
        block = list(block)
        analytic = block[0][0][0]
        values = np.array([value for _, value in block])
        rows.append(SpectrumRow(
            l=l,
            analytic=analytic,
            multiplicity=len(block),
            numeric=float(np.mean(values)),
            deviation=float(np.max(np.abs(values - analytic))),
        ))
    return sorted(rows, key=lambda row: (row.l, row.analytic))


def _element_maxima(bracket: np.ndarray, trunc: Truncation, mask: np.ndarray) -> dict[int, float]:
    """max |<l+j, m+1, -s| [D, pi(B)] |l, m, s>| over interior columns, per shift j."""
    maxima = {1: 0.0, 0: 0.0, -1: 0.0}
    for col in np.flatnonzero(mask):
        index = trunc.basis[col]
        for j in maxima:
            l_out, m_out = index.l + j, index.m + 1
            if not trunc.contains(l_out, m_out):
                continue
            row = trunc.position(BasisIndex(l_out, m_out, index.chirality.flipped))
            maxima[j] = max(maxima[j], float(abs(bracket[row, col])))
    return maxima


def bound_scan(
    ctx: QContext,
    params: Optional[DiracParams],
    shells_list: Sequence[int],
    margin: int = DEFAULT_MARGIN,
) -> list[ScanRow]:
    """
    Norms of [D, pi(x)] on interior vectors for growing truncations.

    Saturation of these norms is the numerical face of boundedness; ``D`` rows grow like
    |z|[shells] for contrast. ``B[j=...]`` rows hold the largest matrix element of [D, pi(B)]
    per l-shift.
    """
    params = params or DiracParams()
    shells_list = [int(s) for s in shells_list]
    if not shells_list or any(b <= a for a, b in zip(shells_list, shells_list[1:])):
        raise ConfigError(f"shells list must be non-empty and strictly ascending, got {shells_list}")
    for shells in shells_list:
        check_shell_range(ctx, shells)

    rows = []
    for shells in shells_list:
        trunc = Truncation(shells, margin)
        mask = trunc.interior_mask()
        D = build_D(ctx, trunc, params)
        for x in SphereGenerator:
            bracket = commutator(D, build_sphere_gen(ctx, trunc, x)).matrix
            norm = float(scipy.linalg.svdvals(bracket[:, mask])[0])
            rows.append(ScanRow(ctx.q, shells, _GEN_LABEL[x], norm))
            if x is SphereGenerator.B:
                for j, value in _element_maxima(bracket, trunc, mask).items():
                    rows.append(ScanRow(ctx.q, shells, f"B[j={j:+d}]" if j else "B[j=0]", value))
        rows.append(ScanRow(ctx.q, shells, "D", op_norm(D)))
        logger.info("bound scan q=%s shells=%d done", ctx.q, shells)
    return rows


def classical_limit_scan(
    qs: Sequence[float],
    trunc: Truncation,
    params: Optional[DiracParams] = None,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    workers: int = 1,
) -> list[ScanRow]:
    """
    Per q: the largest deviation of the spectrum of D from the classical values +-|z|(l + 1/2), the
    largest relative deviation of the shell gaps from |z|, and the largest residual among
    the asserted checks of the full suite.
    """
    params = params or DiracParams()
    modulus = abs(params.z)
    rows = []
    for q in qs:
        ctx = QContext(float(q))
        check_shell_range(ctx, trunc.shells)
        numeric = eigenvalues(build_D(ctx, trunc, params))
        classical = np.array(sorted(
            sign * modulus * (float(l) + 0.5)
            for l in trunc.shell_values()
            for sign in (-1, 1)
            for _ in range(l.twice + 1)
        ))
        levels = [modulus * q_number(ctx, l + HALF) for l in trunc.shell_values()]
        gaps = [abs((b - a) - modulus) / modulus for a, b in zip(levels, levels[1:])]
        reports = run_suite(ctx, trunc, params, tolerance=tolerance, workers=workers)
        drift = max(r.residual for r in reports if r.expect is Expectation.HOLDS)
        rows.extend([
            ScanRow(ctx.q, trunc.shells, "spectrum_deviation", float(np.max(np.abs(numeric - classical)))),
            ScanRow(ctx.q, trunc.shells, "gap_deviation", max(gaps, default=0.0)),
            ScanRow(ctx.q, trunc.shells, "max_check_residual", drift),
        ])
        logger.info("limit scan q=%s: spectrum deviation %.3e", ctx.q, rows[-3].value)
    return rows
