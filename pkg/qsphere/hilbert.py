"""
Indexing of the truncated spinor space H = H+ (+) H-.

Each chirality block carries V_{1/2} (+) V_{3/2} (+) ... (+) V_{n-1/2}; ordering is
Plus block first, shells ascending in l, m ascending from -l to l.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from qsphere.errors import ConfigError, EmptyInteriorError
from qsphere.qnum import HalfInt

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = 2


class Chirality(enum.IntEnum):
    PLUS = 1
    MINUS = -1

    @property
    def flipped(self) -> "Chirality":
        return Chirality(-self.value)

    @property
    def sign(self) -> str:
        return "+" if self is Chirality.PLUS else "-"


@dataclass(frozen=True, order=True)
class BasisIndex:
    """The basis vector |l, m>_chirality."""

    l: HalfInt
    m: HalfInt
    chirality: Chirality

    def __post_init__(self) -> None:
        l, m = HalfInt.of(self.l), HalfInt.of(self.m)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "chirality", Chirality(self.chirality))
        if l.twice < 1 or l.is_integer:
            raise ValueError(f"l must be a positive half-odd integer, got {l}")
        if abs(m.twice) > l.twice or not (l - m).is_integer:
            raise ValueError(f"m={m} is not a weight of V_{l}")

    def __str__(self) -> str:
        return f"|{self.l},{self.m}>{self.chirality.sign}"


@dataclass(frozen=True)
class Truncation:
    """Shell cutoff: l runs over 1/2, 3/2, ..., shells - 1/2 in both chirality blocks."""

    shells: int
    margin: int = DEFAULT_MARGIN

    def __post_init__(self) -> None:
        if int(self.shells) != self.shells or self.shells < 1:
            raise ConfigError(f"shells must be a positive integer, got {self.shells!r}")
        if int(self.margin) != self.margin or self.margin < 0:
            raise ConfigError(f"margin must be a non-negative integer, got {self.margin!r}")

    @property
    def block_dim(self) -> int:
        return self.shells * (self.shells + 1)

    @property
    def dim(self) -> int:
        return 2 * self.block_dim

    @property
    def l_max(self) -> HalfInt:
        return HalfInt(2 * self.shells - 1)

    def shell_values(self) -> list[HalfInt]:
        return [HalfInt(2 * s + 1) for s in range(self.shells)]

    def contains(self, l: HalfInt, m: HalfInt) -> bool:
        return 1 <= l.twice <= self.l_max.twice and abs(m.twice) <= l.twice

    def position(self, index: BasisIndex) -> int:
        """Closed-form inverse of ``enumerate_basis``."""
        if not self.contains(index.l, index.m):
            raise IndexError(f"{index} lies outside a truncation with {self.shells} shells")
        s = (index.l.twice - 1) // 2
        block = 0 if index.chirality is Chirality.PLUS else self.block_dim
        return block + s * (s + 1) + (index.m.twice + index.l.twice) // 2

    @cached_property
    def basis(self) -> tuple[BasisIndex, ...]:
        return tuple(
            BasisIndex(l, HalfInt(m2), chirality)
            for chirality in (Chirality.PLUS, Chirality.MINUS)
            for l in self.shell_values()
            for m2 in range(-l.twice, l.twice + 1, 2)
        )

    def interior_l_max(self, extra_margin: int = 0) -> HalfInt:
        return self.l_max - (self.margin + extra_margin)

    def interior_mask(self, extra_margin: int = 0) -> np.ndarray:
        if self.margin + extra_margin >= self.shells:
            raise EmptyInteriorError(
                f"no interior shells: margin {self.margin + extra_margin} >= shells {self.shells}"
            )
        top = self.interior_l_max(extra_margin).twice
        return np.fromiter((b.l.twice <= top for b in self.basis), dtype=bool, count=self.dim)


def enumerate_basis(trunc: Truncation) -> list[BasisIndex]:
    """All basis labels in matrix order; ``trunc.position`` inverts it."""
    return list(trunc.basis)


def interior_projector(trunc: Truncation, extra_margin: int = 0):
    """Orthogonal projector onto the shells l <= l_max - (margin + extra_margin)."""
    from qsphere.operators import LinearOp

    mask = trunc.interior_mask(extra_margin)
    logger.debug("interior projector: shells=%d rank=%d", trunc.shells, int(mask.sum()))
    return LinearOp(np.diag(mask.astype(np.complex128)))
