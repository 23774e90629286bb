"""
Unit tests for the indexing of the truncated spinor space.
"""
import numpy as np
import pytest

from qsphere.errors import ConfigError, EmptyInteriorError
from qsphere.hilbert import (
    BasisIndex,
    Chirality,
    Truncation,
    enumerate_basis,
    interior_projector,
)
from qsphere.hopf import UqGenerator
from qsphere.operators import DiracParams, build_D, build_gamma, build_uq_gen, commutator
from qsphere.qnum import HALF, HalfInt, QContext


@pytest.mark.unit
class TestBasisIndex:

    def test_accepts_weights_of_the_shell(self):
        index = BasisIndex(HalfInt(3), HalfInt(-1), Chirality.MINUS)
        assert str(index) == "|3/2,-1/2>-"

    def test_coerces_plain_values(self):
        index = BasisIndex("5/2", "3/2", 1)
        assert index.l == HalfInt(5)
        assert index.chirality is Chirality.PLUS

    @pytest.mark.parametrize("l,m", [("1", "0"), ("1/2", "3/2"), ("3/2", "1"), ("-1/2", "1/2")])
    def test_rejects_invalid_labels(self, l, m):
        with pytest.raises(ValueError):
            BasisIndex(l, m, Chirality.PLUS)

    def test_chirality_flip(self):
        assert Chirality.PLUS.flipped is Chirality.MINUS
        assert Chirality.MINUS.flipped is Chirality.PLUS
        assert Chirality.MINUS.sign == "-"


@pytest.mark.unit
class TestTruncation:

    @pytest.mark.parametrize("shells", range(1, 65))
    def test_dimensions(self, shells):
        trunc = Truncation(shells)
        assert trunc.block_dim == shells * (shells + 1)
        assert trunc.dim == 2 * shells * (shells + 1)
        assert len(enumerate_basis(trunc)) == trunc.dim

    @pytest.mark.parametrize("shells,margin", [(0, 2), (-3, 2), (4, -1), (2.5, 0)])
    def test_rejects_invalid_cutoffs(self, shells, margin):
        with pytest.raises(ConfigError):
            Truncation(shells, margin)

    def test_ordering_plus_block_first_then_l_then_m(self):
        basis = enumerate_basis(Truncation(2))
        assert basis[0] == BasisIndex(HALF, -HALF, Chirality.PLUS)
        assert basis[1] == BasisIndex(HALF, HALF, Chirality.PLUS)
        assert basis[2] == BasisIndex(HalfInt(3), HalfInt(-3), Chirality.PLUS)
        assert basis[5] == BasisIndex(HalfInt(3), HalfInt(3), Chirality.PLUS)
        assert basis[6] == BasisIndex(HALF, -HALF, Chirality.MINUS)

    def test_position_inverts_enumeration(self):
        trunc = Truncation(5)
        for i, index in enumerate(enumerate_basis(trunc)):
            assert trunc.position(index) == i

    def test_position_outside_truncation(self):
        with pytest.raises(IndexError):
            Truncation(2).position(BasisIndex(HalfInt(5), HALF, Chirality.PLUS))

    def test_shell_values_and_top(self):
        trunc = Truncation(3)
        assert [str(l) for l in trunc.shell_values()] == ["1/2", "3/2", "5/2"]
        assert trunc.l_max == HalfInt(5)


@pytest.mark.unit
class TestInterior:

    def test_interior_mask_counts(self):
        # shells 1/2 and 3/2 survive a margin of 2 below 7/2
        mask = Truncation(4).interior_mask()
        assert mask.dtype == bool
        assert int(mask.sum()) == 2 * (2 + 4)

    def test_extra_margin_shrinks_interior(self):
        trunc = Truncation(6)
        assert trunc.interior_l_max() == HalfInt(7)
        assert trunc.interior_l_max(1) == HalfInt(5)
        assert trunc.interior_mask(1).sum() < trunc.interior_mask().sum()

    @pytest.mark.parametrize("shells,margin,extra", [(2, 2, 0), (3, 2, 1), (1, 1, 0)])
    def test_empty_interior(self, shells, margin, extra):
        with pytest.raises(EmptyInteriorError):
            Truncation(shells, margin).interior_mask(extra)

    def test_empty_interior_is_a_config_error(self):
        with pytest.raises(ConfigError):
            Truncation(2).interior_mask()

    def test_zero_margin_keeps_everything(self):
        trunc = Truncation(3, margin=0)
        assert trunc.interior_mask().all()

    def test_projector_is_an_orthogonal_projection(self):
        trunc = Truncation(5)
        P = interior_projector(trunc).matrix
        np.testing.assert_array_equal(P @ P, P)
        np.testing.assert_array_equal(P, P.conj().T)
        assert int(np.trace(P).real) == int(trunc.interior_mask().sum())

    @pytest.mark.parametrize("extra", [0, 1])
    def test_projector_commutes_with_diagonal_operators(self, extra):
        ctx = QContext(0.5)
        trunc = Truncation(5)
        P = interior_projector(trunc, extra)
        for op in (
            build_gamma(trunc),
            build_uq_gen(ctx, trunc, UqGenerator.K),
            build_D(ctx, trunc, DiracParams(2j)),
        ):
            assert np.max(np.abs(commutator(P, op).matrix)) < 1e-12
