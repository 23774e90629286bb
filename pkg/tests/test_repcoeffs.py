"""
Unit tests for the closed-form coefficients of the two sphere representations.
"""
import pytest

from qsphere.qnum import HALF, HalfInt, QContext, q_number, q_power
from qsphere.repcoeffs import (
    CoeffSet,
    Mutation,
    Shift,
    Variant,
    alpha0,
    alpha_minus,
    alpha_plus,
    coeff_a,
    coeff_b,
    coeff_bstar,
    default_coeffs,
)
from tests.data.expected_values import (
    ALPHA0_CLASSICAL_HALF,
    ALPHA_PLUS_CLASSICAL_HALF,
    ALPHA_PLUS_HALF_Q05,
)

QS = (0.3, 0.5, 0.9, 1.0)
SHELLS = [HalfInt(twice) for twice in range(1, 20, 2)]


@pytest.mark.unit
class TestRadialFunctions:

    @pytest.mark.parametrize("variant", list(Variant))
    def test_alpha0_classical_lowest_shell(self, variant):
        assert alpha0(QContext(1.0), variant, HALF) == pytest.approx(ALPHA0_CLASSICAL_HALF[variant.value], rel=1e-14)

    @pytest.mark.parametrize("variant", list(Variant))
    def test_alpha_plus_classical_lowest_shell(self, variant):
        assert alpha_plus(QContext(1.0), variant, HALF) == pytest.approx(ALPHA_PLUS_CLASSICAL_HALF, rel=1e-14)

    def test_alpha_plus_deformed_lowest_shell(self):
        assert alpha_plus(QContext(0.5), Variant.PI_PLUS, "1/2") == pytest.approx(ALPHA_PLUS_HALF_Q05, rel=1e-12)

    @pytest.mark.parametrize("q", QS)
    def test_variants_are_inequivalent(self, q):
        ctx = QContext(q)
        assert alpha0(ctx, Variant.PI_PLUS, HALF) != pytest.approx(alpha0(ctx, Variant.PI_MINUS, HALF))

    @pytest.mark.parametrize("q", QS)
    @pytest.mark.parametrize("variant", list(Variant))
    def test_alpha_minus_shift_relation(self, q, variant):
        ctx = QContext(q)
        for l in SHELLS:
            expected = -q_power(ctx, l.twice + 2) * alpha_plus(ctx, variant, l)
            assert alpha_minus(ctx, variant, l + 1) == pytest.approx(expected, rel=1e-13)

    def test_alpha_minus_vanishes_on_lowest_shell(self):
        assert alpha_minus(QContext(0.5), Variant.PI_PLUS, HALF) == 0.0

    @pytest.mark.parametrize("q", QS)
    def test_alpha_plus_positive(self, q):
        ctx = QContext(q)
        assert all(alpha_plus(ctx, variant, l) > 0 for variant in Variant for l in SHELLS)


@pytest.mark.unit
class TestMatrixElements:

    def test_selection_rules_from_vanishing_roots(self):
        ctx = QContext(0.5)
        l = HalfInt(3)
        # B raises m, so nothing leaves the top weight within the shell
        assert coeff_b(ctx, Variant.PI_PLUS, Shift.ZERO, l, l) == 0.0
        assert coeff_b(ctx, Variant.PI_PLUS, Shift.MINUS, l, l - 1) == 0.0
        assert coeff_bstar(ctx, Variant.PI_MINUS, Shift.ZERO, l, -l) == 0.0
        assert coeff_bstar(ctx, Variant.PI_MINUS, Shift.MINUS, l, -l + 1) == 0.0
        assert coeff_a(ctx, Variant.PI_PLUS, Shift.MINUS, l, l) == 0.0

    def test_b_and_bstar_are_adjoint_entries(self):
        ctx = QContext(0.5)
        for variant in Variant:
            for l in SHELLS[:5]:
                for twice in range(-l.twice, l.twice - 1, 2):
                    m = HalfInt(twice)
                    for j in Shift:
                        # <l+j, m+1| B |l, m> = <l, m| B* |l+j, m+1>
                        forward = coeff_b(ctx, variant, j, l, m)
                        backward = coeff_bstar(ctx, variant, Shift(-int(j)), l + int(j), m + 1)
                        assert forward == pytest.approx(backward, rel=1e-12, abs=1e-15)

    def test_a_is_symmetric(self):
        ctx = QContext(0.7)
        for variant in Variant:
            for l in SHELLS[:5]:
                for twice in range(-l.twice, l.twice + 1, 2):
                    m = HalfInt(twice)
                    up = coeff_a(ctx, variant, Shift.PLUS, l, m)
                    down = coeff_a(ctx, variant, Shift.MINUS, l + 1, m)
                    assert up == pytest.approx(down, rel=1e-12, abs=1e-15)

    def test_classical_a_diagonal_on_lowest_shell(self):
        # q = 1, pi+, m = 1/2: A0 = [1][1] / 2 * alpha0 + 1/2 with alpha0 = 1/3
        ctx = QContext(1.0)
        top = coeff_a(ctx, Variant.PI_PLUS, Shift.ZERO, HALF, HALF)
        assert top == pytest.approx((1.0 - 0.0) / 2.0 / 3.0 + 0.5, rel=1e-14)


@pytest.mark.unit
class TestCrossChecks:

    @pytest.mark.parametrize("q", QS)
    @pytest.mark.parametrize("variant", list(Variant))
    def test_alpha0_recurrence(self, q, variant):
        cs = CoeffSet(QContext(q), variant)
        assert max(cs.alpha0_recurrence_defect(l) for l in SHELLS) < 1e-11

    @pytest.mark.parametrize("q", QS)
    @pytest.mark.parametrize("variant", list(Variant))
    def test_quadratic_relations(self, q, variant):
        cs = CoeffSet(QContext(q), variant)
        for l in SHELLS:
            first, second = cs.quadratic_defects(l)
            assert first < 1e-11
            assert second < 1e-11

    @pytest.mark.parametrize("q", QS)
    @pytest.mark.parametrize("variant", list(Variant))
    def test_initial_value(self, q, variant):
        assert CoeffSet(QContext(q), variant).initial_value_defect() < 1e-12

    @pytest.mark.parametrize("q", (0.4, 1.0))
    def test_b_recursion(self, q):
        for cs in default_coeffs(QContext(q)).values():
            for l in SHELLS[:6]:
                for twice in range(-l.twice, l.twice - 1, 2):
                    for j in Shift:
                        assert cs.b_recursion_defect(j, l, HalfInt(twice)) < 1e-11

    def test_initial_value_uses_radical_of_four(self):
        ctx = QContext(0.5)
        expected = q_power(ctx, -5) / (q_number(ctx, 3) ** 2 * q_number(ctx, 4))
        assert alpha_plus(ctx, Variant.PI_PLUS, HALF) ** 2 == pytest.approx(expected, rel=1e-12)


@pytest.mark.unit
class TestMutations:

    def test_perturbation_at_single_shell(self):
        ctx = QContext(0.5)
        base = CoeffSet(ctx, Variant.PI_PLUS)
        mutated = base.perturbed("alpha0", 1e-3, "5/2")
        assert mutated.alpha0(HalfInt(5)) == pytest.approx(1.001 * base.alpha0(HalfInt(5)), rel=1e-14)
        assert mutated.alpha0(HalfInt(3)) == base.alpha0(HalfInt(3))

    def test_perturbation_everywhere(self):
        base = CoeffSet(QContext(0.5), Variant.PI_MINUS)
        mutated = base.perturbed("a0_constant", 1e-3)
        assert mutated.a0_constant() == pytest.approx(1.001 * base.a0_constant(), rel=1e-14)

    def test_mutation_breaks_a_cross_check(self):
        mutated = CoeffSet(QContext(0.5), Variant.PI_PLUS).perturbed("alpha0", 1e-3, "5/2")
        assert mutated.alpha0_recurrence_defect(HalfInt(3)) > 1e-6

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            Mutation("alpha_minus")
