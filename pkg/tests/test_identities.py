import math

import numpy as np
import pytest

from rmx import (
    DegenerateArguments,
    DimensionMismatch,
    IdentityReport,
    IndexOutOfRange,
    LatticeParams,
    RMatrixKind,
    RMatrixSpec,
    check_aybe,
    check_nth_order,
    check_outer_index_independence,
    check_qybe,
    check_skew_symmetry,
    check_unitarity,
    cyclic_product_sum,
    default_tolerance,
    term_sequences,
    weierstrass_p,
)

RA = LatticeParams(kind="rational")
EL = LatticeParams(kind="elliptic", tau=1j)

YANG_PTS_3 = [0.3, 1.1 + 0.4j, 2.2 - 0.3j]
YANG_PTS_4 = YANG_PTS_3 + [0.7 + 1.1j]
YANG_PTS_5 = YANG_PTS_4 + [1.7 + 0.8j]
EL_PTS_3 = [0.31 + 0.11j, 0.62 + 0.29j, 0.18 + 0.41j]
EL_PTS_4 = EL_PTS_3 + [0.47 + 0.23j]


def yang_spec(N=2, hbar=0.7 + 0.3j):
    return RMatrixSpec(kind="yang", site_dim=N, lattice=RA, hbar=hbar)


def belavin_spec(N=2, hbar=0.17 + 0.09j):
    return RMatrixSpec(kind="belavin", site_dim=N, lattice=EL, hbar=hbar)


class TestTermSequences:
    def test_counts(self):
        for n in range(2, 7):
            assert len(term_sequences(n, 1)) == math.factorial(n - 1)

    def test_four_point_layout_is_lexicographic(self):
        want = [
            (2, 3, 4),
            (2, 4, 3),
            (3, 2, 4),
            (3, 4, 2),
            (4, 2, 3),
            (4, 3, 2),
        ]
        assert term_sequences(4, 1) == want

    def test_five_point_set(self):
        want = {
            (5, 4, 3, 2), (4, 5, 3, 2), (3, 5, 4, 2), (5, 3, 4, 2),
            (3, 4, 5, 2), (4, 3, 5, 2), (2, 5, 4, 3), (2, 4, 5, 3),
            (5, 4, 2, 3), (4, 2, 5, 3), (4, 5, 2, 3), (5, 2, 4, 3),
            (2, 3, 5, 4), (2, 5, 3, 4), (3, 2, 5, 4), (5, 3, 2, 4),
            (3, 5, 2, 4), (5, 2, 3, 4), (2, 3, 4, 5), (2, 4, 3, 5),
            (3, 2, 4, 5), (4, 3, 2, 5), (3, 4, 2, 5), (4, 2, 3, 5),
        }
        got = term_sequences(5, 1)
        assert len(got) == 24
        assert set(got) == want

    def test_excludes_outer_index(self):
        assert term_sequences(3, 2) == [(1, 3), (3, 1)]

    def test_outer_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            term_sequences(4, 5)


class TestDefaultTolerance:
    def test_frozen_values(self):
        assert default_tolerance("yang") == 1e-13
        assert default_tolerance("rational") == 1e-13
        assert default_tolerance("trigonometric") == 1e-12
        assert default_tolerance("elliptic", 2, 3) == 1e-9
        assert default_tolerance("belavin", 2, 4) == 1e-9
        assert default_tolerance("belavin", 3, 5) == 5e-9

    def test_accepts_enum(self):
        assert default_tolerance(RMatrixKind.YANG) == 1e-13


class TestReport:
    def test_truthiness_follows_passed(self):
        good = IdentityReport(name="x", passed=True, residual=0.0,
                              tolerance=1.0, details={})
        bad = IdentityReport(name="x", passed=False, residual=2.0,
                             tolerance=1.0, details={})
        assert bool(good)
        assert not bool(bad)


class TestUnitarity:
    def test_elliptic(self):
        for N in (2, 3):
            rep = check_unitarity(belavin_spec(N=N), 0.41 + 0.23j)
            assert rep.passed
            assert rep.residual < 1e-9
            coeff = rep.details["coefficient"]
            assert abs(coeff - rep.details["expected"]) < 1e-9 * (1 + abs(coeff))

    def test_yang_coefficient_closed_form(self):
        N, h, z = 2, 0.7 + 0.3j, 1.3 - 0.4j
        rep = check_unitarity(yang_spec(N, h), z)
        assert rep.passed
        assert rep.residual < 1e-13
        want = 1 / h ** 2 - N * N / z ** 2
        coeff = rep.details["coefficient"]
        assert abs(coeff - want) < 1e-13 * (1 + abs(want))

    def test_second_order_delegates_to_unitarity(self):
        spec = belavin_spec()
        p0, p1 = 0.61 + 0.33j, 0.2 + 0.1j
        via_n = check_nth_order(spec, 2, [p0, p1])
        direct = check_unitarity(spec, p0 - p1)
        assert via_n.name == "order-2 (unitarity)"
        assert via_n.residual == direct.residual


class TestNthOrder:
    def test_yang_frozen_fourth_order_coefficient(self):
        rep = check_nth_order(yang_spec(2, hbar=2.0), 4, YANG_PTS_4)
        assert rep.passed
        assert rep.residual < 1e-13
        # (n-1)!/hbar^n = 6/16
        assert abs(rep.details["coefficient"] - 0.375) < 1e-12
        assert abs(rep.details["expected"] - 0.375) < 1e-15
        assert rep.details["orderings"] == 6

    def test_yang_coefficient_formula(self):
        h = 0.7 + 0.3j
        for n, pts in ((3, YANG_PTS_3), (4, YANG_PTS_4), (5, YANG_PTS_5)):
            rep = check_nth_order(yang_spec(2, h), n, pts)
            assert rep.passed
            want = math.factorial(n - 1) / h ** n
            got = rep.details["coefficient"]
            assert abs(got - want) < 1e-12 * (1 + abs(want))

    def test_elliptic_third_order(self):
        h = 0.17 + 0.09j
        rep = check_nth_order(belavin_spec(2, h), 3, EL_PTS_3)
        assert rep.passed
        assert rep.residual < 1e-9
        want = -8 * weierstrass_p(2 * h, EL, deriv_order=1)
        got = rep.details["coefficient"]
        assert abs(got - want) < 1e-9 * (1 + abs(want))
        assert rep.details["scalar_cross_residual"] < 1e-10

    def test_elliptic_fourth_order(self):
        rep = check_nth_order(belavin_spec(2), 4, EL_PTS_4)
        assert rep.passed
        assert rep.residual < 1e-9
        assert rep.details["scalar_cross_residual"] < 1e-9

    def test_first_order_is_same_site(self):
        rep = check_nth_order(belavin_spec(2), 1, [0.4 + 0.2j])
        assert rep.name == "same-site"
        assert rep.passed

    def test_point_count_validation(self):
        spec = yang_spec()
        with pytest.raises(DimensionMismatch):
            check_nth_order(spec, 1, [0.3, 0.4])
        with pytest.raises(DimensionMismatch):
            check_nth_order(spec, 2, YANG_PTS_3)
        with pytest.raises(DimensionMismatch):
            cyclic_product_sum(spec, 3, YANG_PTS_4)


class TestOuterIndependence:
    def test_yang(self):
        rep = check_outer_index_independence(yang_spec(2), 4, YANG_PTS_4)
        assert rep.passed
        assert rep.residual < 1e-13
        coeffs = rep.details["coefficients"]
        assert len(coeffs) == 4
        spread = max(abs(c - coeffs[0]) for c in coeffs)
        assert spread < 1e-12 * (1 + abs(coeffs[0]))

    def test_elliptic(self):
        rep = check_outer_index_independence(belavin_spec(2), 3, EL_PTS_3)
        assert rep.passed
        assert rep.residual < 1e-9

    def test_scalar_rank_one(self):
        spec = RMatrixSpec(kind="belavin", site_dim=1, lattice=EL,
                           hbar=0.21 + 0.13j)
        rep = check_outer_index_independence(spec, 4, EL_PTS_4)
        assert rep.passed
        assert rep.residual < 1e-12

    def test_needs_three_sites(self):
        with pytest.raises(DimensionMismatch):
            check_outer_index_independence(yang_spec(), 2, YANG_PTS_3[:2])


class TestQybe:
    def test_both_families(self):
        rep = check_qybe(yang_spec(2), YANG_PTS_3)
        assert rep.passed and rep.residual < 1e-13
        rep = check_qybe(belavin_spec(2), EL_PTS_3)
        assert rep.passed and rep.residual < 1e-9

    def test_rank_one_commutes(self):
        spec = RMatrixSpec(kind="belavin", site_dim=1, lattice=EL,
                           hbar=0.21 + 0.13j)
        rep = check_qybe(spec, EL_PTS_3)
        assert rep.residual < 1e-14

    def test_point_count(self):
        with pytest.raises(DimensionMismatch):
            check_qybe(yang_spec(), YANG_PTS_4)


class TestAybe:
    def test_both_families(self):
        rep = check_aybe(yang_spec(2, 0.7 + 0.3j), YANG_PTS_3, 0.4 - 0.1j)
        assert rep.passed and rep.residual < 1e-13
        rep = check_aybe(belavin_spec(2), EL_PTS_3, 0.07 + 0.04j)
        assert rep.passed and rep.residual < 1e-9

    def test_rank_one_is_scalar_shadow(self):
        spec = RMatrixSpec(kind="belavin", site_dim=1, lattice=EL,
                           hbar=0.21 + 0.13j)
        rep = check_aybe(spec, EL_PTS_3, 0.08 + 0.05j)
        assert rep.residual < 1e-12

    def test_equal_parameters_degenerate(self):
        spec = yang_spec(2, 0.7 + 0.3j)
        with pytest.raises(DegenerateArguments):
            check_aybe(spec, YANG_PTS_3, 0.7 + 0.3j)
        spec = belavin_spec(2)
        with pytest.raises(DegenerateArguments):
            check_aybe(spec, EL_PTS_3, spec.hbar)


class TestSkewSymmetry:
    def test_both_families(self):
        rep = check_skew_symmetry(yang_spec(2), 1.2 + 0.5j)
        assert rep.passed and rep.residual < 1e-13
        rep = check_skew_symmetry(belavin_spec(3), 0.36 + 0.21j)
        assert rep.passed and rep.residual < 1e-9
