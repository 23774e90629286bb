"""
Unit tests for the U_q(su(2)) Hopf data acting on the sphere generators.
"""
import pytest

from qsphere.hopf import (
    UNIT,
    SphereElement,
    SphereGenerator,
    UqGenerator,
    act,
    act_on_element,
    action_star_defect,
    antipode_star,
    coproduct,
)
from qsphere.qnum import QContext

A, B, BSTAR = SphereGenerator.A, SphereGenerator.B, SphereGenerator.BSTAR
E, F, K, KINV = UqGenerator.E, UqGenerator.F, UqGenerator.K, UqGenerator.KINV


@pytest.mark.unit
class TestSphereElement:

    def test_of_drops_zero_terms(self):
        element = SphereElement.of(A=2.0, B=0.0, one=-1.0)
        assert set(element.coefficients) == {A, UNIT}

    def test_star_swaps_b_and_bstar(self):
        element = SphereElement.of(B=3.0, A=1.0).star()
        assert element.coefficient(BSTAR) == 3.0
        assert element.coefficient(B) == 0.0
        assert element.coefficient(A) == 1.0

    def test_distance(self):
        assert SphereElement.of(A=1.0).distance(SphereElement.of(A=1.5, one=0.25)) == 0.5
        assert SphereElement.of().distance(SphereElement.of()) == 0.0

    def test_generator_star(self):
        assert B.star is BSTAR
        assert A.star is A


@pytest.mark.unit
class TestAction:

    def test_k_scales_by_weight(self):
        ctx = QContext(0.5)
        assert act(ctx, K, B).coefficient(B) == 0.5
        assert act(ctx, K, BSTAR).coefficient(BSTAR) == 2.0
        assert act(ctx, KINV, B).coefficient(B) == 2.0
        assert act(ctx, K, A).coefficient(A) == 1.0

    def test_e_annihilates_bstar_and_f_annihilates_b(self):
        ctx = QContext(0.3)
        assert act(ctx, E, BSTAR).coefficients == {}
        assert act(ctx, F, B).coefficients == {}

    def test_e_and_f_constant_terms(self):
        ctx = QContext(0.25)
        e_b = act(ctx, E, B)
        assert e_b.coefficient(A) == pytest.approx(-(0.5 + 8.0), rel=1e-14)
        assert e_b.coefficient(UNIT) == pytest.approx(8.0, rel=1e-14)
        f_bstar = act(ctx, F, BSTAR)
        assert f_bstar.coefficient(A) == pytest.approx(0.125 + 2.0, rel=1e-14)
        assert f_bstar.coefficient(UNIT) == pytest.approx(-2.0, rel=1e-14)
        assert act(ctx, F, A).coefficient(B) == pytest.approx(-0.5, rel=1e-14)
        assert act(ctx, E, A).coefficient(BSTAR) == pytest.approx(2.0, rel=1e-14)

    def test_action_on_unit_is_counit(self):
        ctx = QContext(0.5)
        one = SphereElement.of(one=1.0)
        assert act_on_element(ctx, K, one).coefficient(UNIT) == 1.0
        assert act_on_element(ctx, E, one).coefficients == {}

    def test_action_is_linear(self):
        ctx = QContext(0.5)
        element = SphereElement.of(A=2.0, B=-1.0)
        image = act_on_element(ctx, F, element)
        expected = act(ctx, F, A).scaled(2.0)
        assert image.distance(expected) == pytest.approx(0.0, abs=1e-15)

    def test_k_inverts_kinv(self):
        ctx = QContext(0.7)
        for x in SphereGenerator:
            round_trip = act_on_element(ctx, K, act(ctx, KINV, x))
            assert round_trip.distance(SphereElement.generator(x)) < 1e-15


@pytest.mark.unit
class TestHopfStructure:

    def test_coproduct(self):
        assert coproduct(K) == ((K, K),)
        assert coproduct(E) == ((E, K), (KINV, E))
        assert coproduct(F) == ((F, K), (KINV, F))

    def test_antipode_star(self):
        ctx = QContext(0.5)
        assert antipode_star(ctx, K) == (1.0, KINV)
        assert antipode_star(ctx, E) == (-2.0, F)
        assert antipode_star(ctx, F) == (-0.5, E)

    @pytest.mark.parametrize("q", [0.2, 0.5, 0.9, 1.0])
    def test_action_is_star_compatible(self, q):
        ctx = QContext(q)
        for h in (K, E, F):
            for x in SphereGenerator:
                assert action_star_defect(ctx, h, x) < 1e-13
