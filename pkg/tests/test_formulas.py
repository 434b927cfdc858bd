import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitroots.errors import OutOfRange
from splitroots.formulas import (c1_coefficient, d_closed, d_first_root, d_piecewise, e_n,
                                 eulerian, identity_suite, u_volume)
from splitroots.geometry import RegionSpec, domain_volume, en_k, region_volume, trivial_basis
from splitroots.polytope import volume

F = Fraction
unit_interval = st.fractions(min_value=0, max_value=F(59, 60), max_denominator=60)

# printed branches: (upper end of the interval, polynomial coefficients low-first)
PRINTED = {
    (1, 2): [(F(1, 2), (0, 2)), (F(1), (1,))],
    (2, 2): [(F(1, 2), (0,)), (F(1), (-1, 2))],
    (1, 3): [(F(1, 3), (0, 3, -3)), (F(1, 2), (F(1, 2), 0, F(3, 2))),
             (F(2, 3), (-1, 6, F(-9, 2))), (F(1), (1,))],
    (2, 3): [(F(1, 3), (0, 0, 3)), (F(1, 2), (-1, 6, -6)), (F(2, 3), (2, -6, 6)),
             (F(1), (-2, 6, -3))],
    (3, 3): [(F(1, 3), (0,)), (F(1, 2), (F(1, 2), -3, F(9, 2))), (F(2, 3), (-1, 3, F(-3, 2))),
             (F(1), (1, -3, 3))],
}


def printed_value(i, n, a):
    for hi, coeffs in PRINTED[(i, n)]:
        if a <= hi:
            return sum(F(c) * a ** j for j, c in enumerate(coeffs))
    raise AssertionError


def descents_oracle(n):
    counts = [0] * n
    for p in itertools.permutations(range(n)):
        counts[sum(p[j] > p[j + 1] for j in range(n - 1))] += 1
    return counts


@pytest.mark.parametrize("i,n", sorted(PRINTED))
def test_printed_branches(i, n):
    for k in range(1, 100):
        a = F(k, 100)
        assert d_closed(a, i, n) == printed_value(i, n, a)


@pytest.mark.parametrize("n", range(2, 7))
def test_equidistribution(n):
    for k in range(0, 60):
        a = F(k, 60)
        assert sum(d_closed(a, i, n) for i in range(1, n + 1)) == n * a


@pytest.mark.parametrize("n", [3, 4])
def test_against_polytope_route(n):
    """Share of the sorted section with x_i < a, computed as a region volume."""
    b = trivial_basis(n)
    sigma = tuple(range(1, n + 1))
    whole = domain_volume(b, sigma)
    for i in range(1, n + 1):
        for a in (F(1, 5), F(2, 5), F(1, 2), F(3, 4)):
            region = RegionSpec.parse(n, f"x{i}<{a}")
            assert region_volume(b, sigma, region) / whole == d_closed(a, i, n)


@given(unit_interval, st.integers(2, 7))
@settings(max_examples=80)
def test_first_root_formula_agrees(a, n):
    assert d_first_root(a, n) == d_closed(a, 1, n)


@given(unit_interval, unit_interval, st.integers(2, 6), st.data())
@settings(max_examples=80)
def test_monotone_and_bounded(a, b, n, data):
    i = data.draw(st.integers(1, n))
    lo, hi = sorted((a, b))
    assert 0 <= d_closed(lo, i, n) <= d_closed(hi, i, n) <= 1


@pytest.mark.parametrize("n", range(2, 6))
def test_piecewise_matches_closed_form(n):
    for i in range(1, n + 1):
        for piece in d_piecewise(i, n):
            for t in (F(1, 3), F(1, 2), F(2, 3)):
                a = piece.lo + t * (piece.hi - piece.lo)
                assert piece(a) == d_closed(a, i, n)


def test_piecewise_quadratic_first_root_text():
    texts = [str(p) for p in d_piecewise(1, 3)]
    assert texts == ["-3*a^2 + 3*a", "3/2*a^2 + 1/2", "-9/2*a^2 + 6*a - 1", "1"]


def test_argument_checks():
    with pytest.raises(OutOfRange):
        d_closed(1, 1, 3)
    with pytest.raises(OutOfRange):
        d_closed(F(1, 2), 4, 3)
    with pytest.raises(OutOfRange):
        c1_coefficient(0, 1, 3)


class TestEulerian:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_descent_counts(self, n):
        assert [eulerian(n, k) for k in range(1, n + 1)] == descents_oracle(n)

    def test_examples(self):
        assert eulerian(3, 2) == 4
        assert all(eulerian(n, 1) == 1 for n in range(1, 12))
        assert sum(eulerian(5, k) for k in range(1, 6)) == 120

    @pytest.mark.parametrize("n", range(2, 8))
    def test_en_k_geometry_matches_eulerian(self, n):
        for k in range(1, n):
            assert en_k(n, k) == F(eulerian(n - 1, k), math.factorial(n - 1)) == e_n(n, k)


class TestUVolume:
    def test_examples(self):
        assert u_volume(2, 1) == F(1, 2)
        assert all(u_volume(n, n + s) == 1 for n in range(1, 6) for s in (0, 1, F(1, 2)))

    @given(st.integers(1, 4), st.fractions(0, 4, max_denominator=7))
    @settings(max_examples=40, deadline=None)
    def test_against_polytope_volume(self, k, x):
        rows = [(tuple(int(i == j) for j in range(k)), 1) for i in range(k)]
        rows += [(tuple(-int(i == j) for j in range(k)), 0) for i in range(k)]
        rows.append(((1,) * k, x))
        assert u_volume(k, x) == volume(rows, k)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_section_differences(self, n):
        for k in range(1, n + 1):
            assert u_volume(n, k) - u_volume(n, k - 1) == F(eulerian(n, k), math.factorial(n))


class TestFirstRootCoefficients:
    def test_zero_between_one_and_l(self):
        assert all(c1_coefficient(l, h, 6) == 0 for l in range(1, 6) for h in range(1, l + 1))

    def test_h_zero_sign(self):
        for n in range(2, 7):
            for l in range(1, n):
                expected = F((-1) ** (n + l + 1) * math.comb(n - 1, l), math.factorial(n - 1))
                assert c1_coefficient(l, 0, n) == expected


class TestIdentitySuite:
    def test_all_pass(self):
        checks = identity_suite(12)
        assert checks and all(c.passed for c in checks)

    def test_named_examples(self):
        # alternating binomial partial sum n=4, m=2: 1 - 4 + 6 = 3
        assert sum((-1) ** k * math.comb(4, k) for k in range(3)) == 3 == math.comb(3, 2)
        assert u_volume(3, 2) - u_volume(3, 1) == F(4, 6)
        names = {c.name for c in identity_suite(3)}
        assert names == {"alternating_power_sum", "cube_section_eulerian",
                         "alternating_partial_sum"}
