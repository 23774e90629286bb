"""
Matrix realisation of the spectral triple on a truncation.

Linear operators are dense complex matrices (desk-scale dimensions). The reality
operator J is antilinear and is kept as a matrix M acting by psi -> M conj(psi);
composition with linear operators follows

    (anti) o (lin)  = anti  with M conj(L)
    (lin)  o (anti) = anti  with L M
    (anti) o (anti) = lin   with M1 conj(M2)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, TextIO, Union

import numpy as np
import scipy.linalg
import scipy.sparse

from qsphere.errors import ConfigError, DimensionMismatchError, NotSelfAdjointError
from qsphere.hilbert import BasisIndex, Chirality, Truncation
from qsphere.hopf import SphereGenerator, UqGenerator
from qsphere.qnum import HALF, HalfInt, QContext, check_shell_range, q_number, q_power, q_sqrt_product
from qsphere.repcoeffs import CoeffSet, Shift, Variant, default_coeffs

logger = logging.getLogger(__name__)

SELFADJOINT_TOLERANCE = 1e-10

# pi+ acts on the Plus block, pi- on the Minus block
BLOCK_VARIANT = {Chirality.PLUS: Variant.PI_PLUS, Chirality.MINUS: Variant.PI_MINUS}


def _check_dims(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"operator shapes differ: {a.shape} vs {b.shape}")


@dataclass(frozen=True, eq=False)
class LinearOp:
    matrix: np.ndarray
    __array_ufunc__ = None

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"operators must be square, got shape {matrix.shape}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "LinearOp":
        return cls(np.eye(dim, dtype=np.complex128))

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ vector

    def __matmul__(self, other):
        if isinstance(other, LinearOp):
            _check_dims(self.matrix, other.matrix)
            return LinearOp(self.matrix @ other.matrix)
        if isinstance(other, AntilinearOp):
            _check_dims(self.matrix, other.matrix)
            return AntilinearOp(self.matrix @ other.matrix)
        return NotImplemented

    def __add__(self, other: "LinearOp") -> "LinearOp":
        if not isinstance(other, LinearOp):
            return NotImplemented
        _check_dims(self.matrix, other.matrix)
        return LinearOp(self.matrix + other.matrix)

    def __sub__(self, other: "LinearOp") -> "LinearOp":
        if not isinstance(other, LinearOp):
            return NotImplemented
        _check_dims(self.matrix, other.matrix)
        return LinearOp(self.matrix - other.matrix)

    def __neg__(self) -> "LinearOp":
        return LinearOp(-self.matrix)

    def __mul__(self, scalar: complex) -> "LinearOp":
        if not np.isscalar(scalar):
            return NotImplemented
        return LinearOp(scalar * self.matrix)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class AntilinearOp:
    """psi -> matrix @ conj(psi)."""

    matrix: np.ndarray
    __array_ufunc__ = None

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"operators must be square, got shape {matrix.shape}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ np.conj(vector)

    def __matmul__(self, other):
        if isinstance(other, LinearOp):
            _check_dims(self.matrix, other.matrix)
            return AntilinearOp(self.matrix @ np.conj(other.matrix))
        if isinstance(other, AntilinearOp):
            _check_dims(self.matrix, other.matrix)
            return LinearOp(self.matrix @ np.conj(other.matrix))
        return NotImplemented

    def __sub__(self, other: "AntilinearOp") -> "AntilinearOp":
        if not isinstance(other, AntilinearOp):
            return NotImplemented
        _check_dims(self.matrix, other.matrix)
        return AntilinearOp(self.matrix - other.matrix)

    def __add__(self, other: "AntilinearOp") -> "AntilinearOp":
        if not isinstance(other, AntilinearOp):
            return NotImplemented
        _check_dims(self.matrix, other.matrix)
        return AntilinearOp(self.matrix + other.matrix)

    def __mul__(self, scalar: complex) -> "AntilinearOp":
        # (c J) psi = c M conj(psi)
        if not np.isscalar(scalar):
            return NotImplemented
        return AntilinearOp(scalar * self.matrix)

    __rmul__ = __mul__

    def is_unitary(self, tolerance: float = 1e-12) -> bool:
        gram = self.matrix.conj().T @ self.matrix
        return bool(np.linalg.norm(gram - np.eye(self.dim), ord=2) <= tolerance)


Operator = Union[LinearOp, AntilinearOp]

EigenLaw = Callable[[QContext, HalfInt], float]


def q_half_shift_law(ctx: QContext, l: HalfInt) -> float:
    """d_l = [l + 1/2], the eigenvalue law of the equivariant Dirac operator."""
    return q_number(ctx, l + HALF)


@dataclass(frozen=True)
class DiracParams:
    z: complex = 1.0 + 0.0j
    law: EigenLaw = field(default=q_half_shift_law, compare=False)

    def __post_init__(self) -> None:
        z = complex(self.z)
        if z == 0:
            raise ConfigError("the Dirac scale z must be nonzero")
        object.__setattr__(self, "z", z)

    def eigenvalue(self, ctx: QContext, l: HalfInt) -> float:
        return self.law(ctx, l)


def _assemble(trunc: Truncation, entries: Iterable[tuple[int, int, complex]]) -> LinearOp:
    rows, cols, data = [], [], []
    for r, c, v in entries:
        if v != 0:
            rows.append(r)
            cols.append(c)
            data.append(v)
    coo = scipy.sparse.coo_array(
        (np.asarray(data, dtype=np.complex128), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
        shape=(trunc.dim, trunc.dim),
    )
    return LinearOp(coo.toarray())


def _sphere_entries(trunc: Truncation, gen: SphereGenerator, coeffs: Mapping[Variant, CoeffSet]):
    dm = {SphereGenerator.A: 0, SphereGenerator.B: 1, SphereGenerator.BSTAR: -1}[gen]
    for col, index in enumerate(trunc.basis):
        cs = coeffs[BLOCK_VARIANT[index.chirality]]
        l, m = index.l, index.m
        m_out = m + dm
        for j in Shift:
            l_out = l + int(j)
            # terms leaving the truncation are dropped (compression)
            if not trunc.contains(l_out, m_out):
                continue
            if gen is SphereGenerator.B:
                value = cs.b(j, l, m)
            elif gen is SphereGenerator.BSTAR:
                value = cs.bstar(j, l, m)
            else:
                value = cs.a(j, l, m)
            yield trunc.position(BasisIndex(l_out, m_out, index.chirality)), col, value


def build_sphere_gen(
    ctx: QContext,
    trunc: Truncation,
    gen: SphereGenerator,
    coeffs: Optional[Mapping[Variant, CoeffSet]] = None,
) -> LinearOp:
    """pi(gen) = pi+(gen) (+) pi-(gen), compressed to the truncation."""
    check_shell_range(ctx, trunc.shells)
    coeffs = coeffs or default_coeffs(ctx)
    op = _assemble(trunc, _sphere_entries(trunc, SphereGenerator(gen), coeffs))
    logger.debug("built pi(%s): dim=%d nnz=%d", SphereGenerator(gen).value, op.dim, np.count_nonzero(op.matrix))
    return op


def build_uq_gen(ctx: QContext, trunc: Truncation, gen: UqGenerator) -> LinearOp:
    """e, f, k, k^-1 acting identically on every V_l in both chirality blocks."""
    gen = UqGenerator(gen)

    def entries():
        for col, index in enumerate(trunc.basis):
            l, m = index.l, index.m
            if gen is UqGenerator.K:
                yield col, col, q_power(ctx, m)
            elif gen is UqGenerator.KINV:
                yield col, col, q_power(ctx, -m)
            elif gen is UqGenerator.F and m < l:
                target = BasisIndex(l, m + 1, index.chirality)
                yield trunc.position(target), col, q_sqrt_product(ctx, l - m, l + m + 1)
            elif gen is UqGenerator.E and -m < l:
                target = BasisIndex(l, m - 1, index.chirality)
                yield trunc.position(target), col, q_sqrt_product(ctx, l - m + 1, l + m)

    return _assemble(trunc, entries())


def build_gamma(trunc: Truncation) -> LinearOp:
    return LinearOp(np.diag([float(index.chirality) for index in trunc.basis]).astype(np.complex128))


_I_POWERS = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


def default_phase(m: HalfInt) -> complex:
    """i^{2m}; 2m is odd on half-integer spin, so the phase is +-i."""
    return _I_POWERS[m.twice % 4]


def build_J(
    ctx: QContext,
    trunc: Truncation,
    p: Optional[float] = None,
    phase: Callable[[HalfInt], complex] = default_phase,
) -> AntilinearOp:
    """J |l,m>_+- = i^{2m} p^m |l,-m>_-+ (default p = q)."""
    p = ctx.q if p is None else float(p)
    if not p > 0:
        raise ConfigError(f"p must be positive, got {p!r}")
    log_p = float(np.log(p))
    matrix = np.zeros((trunc.dim, trunc.dim), dtype=np.complex128)
    for col, index in enumerate(trunc.basis):
        row = trunc.position(BasisIndex(index.l, -index.m, index.chirality.flipped))
        matrix[row, col] = phase(index.m) * np.exp(float(index.m) * log_p)
    return AntilinearOp(matrix)


def build_D(ctx: QContext, trunc: Truncation, params: Optional[DiracParams] = None) -> LinearOp:
    """D = [[0, conj(z) D-], [z D+, 0]] with D+- |l,m>_+- = d_l |l,m>_-+."""
    params = params or DiracParams()
    check_shell_range(ctx, trunc.shells)
    z = params.z

    def entries():
        for col, index in enumerate(trunc.basis):
            row = trunc.position(BasisIndex(index.l, index.m, index.chirality.flipped))
            scale = z if index.chirality is Chirality.PLUS else z.conjugate()
            yield row, col, scale * params.eigenvalue(ctx, index.l)

    return _assemble(trunc, entries())


def adjoint(op: LinearOp) -> LinearOp:
    return LinearOp(op.matrix.conj().T)


def commutator(a: LinearOp, b: LinearOp) -> LinearOp:
    return a @ b - b @ a


def anticommutator(a: LinearOp, b: LinearOp) -> LinearOp:
    return a @ b + b @ a


def sandwich_J(J: AntilinearOp, P: LinearOp) -> LinearOp:
    """psi -> J(P(J psi)), i.e. M conj(P) conj(M)."""
    return J @ P @ J


def op_norm(op: Operator) -> float:
    """Largest singular value of the matrix part."""
    if op.dim == 0:
        return 0.0
    return float(scipy.linalg.svdvals(op.matrix)[0])


def eigenvalues(op: LinearOp) -> np.ndarray:
    """Sorted real spectrum of a selfadjoint operator, with multiplicities."""
    scale = max(1.0, float(np.max(np.abs(op.matrix)))) if op.dim else 1.0
    asymmetry = float(np.max(np.abs(op.matrix - op.matrix.conj().T))) if op.dim else 0.0
    if asymmetry > SELFADJOINT_TOLERANCE * scale:
        raise NotSelfAdjointError(f"operator is not selfadjoint (max |X - X^*| = {asymmetry:.3g})")
    return np.sort(scipy.linalg.eigvalsh(op.matrix))


@dataclass(frozen=True, eq=False)
class SpectralTriple:
    """All operators of the triple on one truncation."""

    ctx: QContext
    trunc: Truncation
    params: DiracParams
    p: float
    pi: Mapping[SphereGenerator, LinearOp]
    uq: Mapping[UqGenerator, LinearOp]
    gamma: LinearOp
    J: AntilinearOp
    D: LinearOp
    phase: Callable[[HalfInt], complex] = default_phase
    coeffs: Optional[Mapping[Variant, CoeffSet]] = None

    @property
    def dim(self) -> int:
        return self.trunc.dim

    def identity(self) -> LinearOp:
        return LinearOp.identity(self.dim)

    def J_at(self, p: float) -> AntilinearOp:
        return build_J(self.ctx, self.trunc, p, self.phase)


def build_triple(
    ctx: QContext,
    trunc: Truncation,
    params: Optional[DiracParams] = None,
    p: Optional[float] = None,
    *,
    coeffs: Optional[Mapping[Variant, CoeffSet]] = None,
    phase: Callable[[HalfInt], complex] = default_phase,
) -> SpectralTriple:
    check_shell_range(ctx, trunc.shells)
    params = params or DiracParams()
    p = ctx.q if p is None else float(p)
    coeffs = coeffs or default_coeffs(ctx)
    triple = SpectralTriple(
        ctx=ctx,
        trunc=trunc,
        params=params,
        p=p,
        pi={gen: build_sphere_gen(ctx, trunc, gen, coeffs) for gen in SphereGenerator},
        uq={gen: build_uq_gen(ctx, trunc, gen) for gen in UqGenerator},
        gamma=build_gamma(trunc),
        J=build_J(ctx, trunc, p, phase),
        D=build_D(ctx, trunc, params),
        phase=phase,
        coeffs=coeffs,
    )
    logger.info("built triple q=%s shells=%d dim=%d p=%s z=%s", ctx.q, trunc.shells, trunc.dim, p, params.z)
    return triple


OPERATOR_NAMES = ("A", "B", "Bstar", "e", "f", "k", "kinv", "gamma", "J", "D")


def named_operator(triple: SpectralTriple, name: str) -> Operator:
    if name in ("A", "B", "Bstar"):
        return triple.pi[SphereGenerator(name)]
    if name in ("e", "f", "k", "kinv"):
        return triple.uq[UqGenerator(name)]
    if name == "gamma":
        return triple.gamma
    if name == "J":
        return triple.J
    if name == "D":
        return triple.D
    raise ConfigError(f"unknown operator {name!r}; expected one of {', '.join(OPERATOR_NAMES)}")


def export_triplets(op: Operator, stream: TextIO) -> int:
    """Write 'row col re im' lines for the nonzero entries (row-major); returns the count."""
    coo = scipy.sparse.coo_array(op.matrix)
    order = np.lexsort((coo.col, coo.row))
    for k in order:
        value = coo.data[k]
        # + 0.0 folds -0.0 into 0.0
        stream.write(f"{int(coo.row[k])} {int(coo.col[k])} {float(value.real) + 0.0!r} {float(value.imag) + 0.0!r}\n")
    return len(order)
