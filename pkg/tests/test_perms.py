import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from splitroots import golden
from splitroots.errors import DegreeTooLarge, NotClosed, NotInGhat
from splitroots.intlinalg import hnf
from splitroots.perms import (PermSet, act, compose, compute_g, compute_ghat, coset_rep,
                              coset_reps, from_cycles, identity, inverse, parse_perm, transform_k)
from splitroots.poly import IntPolynomial
from splitroots.split import SplitPrimeStream
from splitroots.survey import k_vector

from conftest import basis


def perms_of(n):
    return st.permutations(list(range(1, n + 1))).map(tuple)


def brute_stabilizer(rows, n):
    """Every permutation of the first n coordinates that maps the row lattice onto itself."""
    target = hnf(rows)
    out = set()
    for s in itertools.permutations(range(1, n + 1)):
        moved = [act(s, r[:n]) + list(r[n:]) for r in rows]
        if hnf(moved) == target:
            out.add(s)
    return out


class TestAlgebra:
    @given(perms_of(6), perms_of(6), perms_of(6))
    def test_compose_associative(self, a, b, c):
        assert compose(compose(a, b), c) == compose(a, compose(b, c))

    @given(perms_of(7))
    def test_inverse(self, s):
        assert compose(s, inverse(s)) == identity(7) == compose(inverse(s), s)

    @given(perms_of(5), perms_of(5))
    def test_action_is_compatible_with_composition(self, s, v):
        x = list("abcde")
        assert act(compose(s, v), x) == act(s, act(v, x))

    def test_cycle_notation(self):
        assert parse_perm("(1,3,6)", 6) == (3, 2, 6, 4, 5, 1)
        assert parse_perm("(2,5)(4,6)", 6) == (1, 5, 3, 6, 2, 4)
        assert parse_perm("[2,1,3]") == (2, 1, 3)
        assert from_cycles(3, []) == identity(3)
        with pytest.raises(ValueError):
            parse_perm("(1,2)")


class TestGroups:
    def test_relation_free_quadratic(self):
        b = basis(2, (1, 1, -1))
        assert len(compute_ghat(b)) == 2 and len(compute_g(b)) == 2

    def test_two_quadratics(self, two_quadratics_basis):
        assert compute_ghat(two_quadratics_basis).sorted() == list(golden.TWO_QUADRATICS_GHAT)
        assert compute_g(two_quadratics_basis).sorted() == list(golden.TWO_QUADRATICS_G)

    def test_shifted_sqrt2(self, shifted_sqrt2_basis):
        assert compute_ghat(shifted_sqrt2_basis).sorted() == list(golden.SHIFTED_SQRT2_GHAT)
        assert compute_g(shifted_sqrt2_basis).sorted() == list(golden.SHIFTED_SQRT2_G)

    def test_octic(self, octic_basis):
        assert compute_ghat(octic_basis).sorted() == list(golden.OCTIC_GROUP)

    @pytest.mark.parametrize("fixture", ["sextic_basis", "two_quadratics_basis",
                                         "shifted_sqrt2_basis"])
    def test_against_brute_force(self, fixture, request):
        b = request.getfixturevalue(fixture)
        rows = [list(r) for r in b.rows]
        ghat, g = compute_ghat(b), compute_g(b)
        assert set(ghat.elements) == brute_stabilizer(rows, b.n)
        assert set(g.elements) == brute_stabilizer(b.left, b.n)
        assert ghat.is_group() and g.is_group()
        assert ghat.elements <= g.elements

    def test_sextic_group_order(self, sextic_basis):
        # irreducible, so both groups agree
        assert compute_ghat(sextic_basis) == compute_g(sextic_basis)
        assert len(compute_ghat(sextic_basis)) == 12

    def test_degree_guard(self):
        with pytest.raises(DegreeTooLarge):
            compute_ghat(basis(11, (1,) * 11 + (0,)))


class TestCosets:
    def test_full_group_has_identity_rep(self):
        s2 = PermSet.of([(1, 2), (2, 1)])
        assert coset_reps(s2, s2).representatives == ((1, 2),)

    def test_sextic_reps(self, sextic_basis):
        ghat = compute_ghat(sextic_basis)
        first = parse_perm("(1,3,6)", 6)
        second = parse_perm("(2,5)(4,6)", 6)
        ambient = [compose(s, g) for s in (first, second) for g in ghat.elements]
        dec = coset_reps(ambient, ghat)
        assert dec.representatives == ((1, 3, 2, 6, 4, 5), (1, 4, 2, 6, 3, 5))
        assert coset_rep(first, ghat) == (1, 3, 2, 6, 4, 5)
        assert len(dec.coset(first)) == 12

    def test_not_closed(self, two_quadratics_basis):
        ghat = compute_ghat(two_quadratics_basis)
        with pytest.raises(NotClosed):
            coset_reps([(2, 1, 3, 4)], ghat)

    @given(perms_of(4))
    def test_rep_is_constant_on_cosets(self, s):
        group = PermSet.of(golden.TWO_QUADRATICS_GHAT)
        rep = coset_rep(s, group)
        assert all(coset_rep(compose(s, g), group) == rep for g in group.elements)


class TestTransformK:
    def test_identity(self, shifted_sqrt2_basis):
        assert transform_k(identity(4), shifted_sqrt2_basis, [1, 0, 1]) == [1, 0, 1]

    def test_swapping_identical_rows(self):
        b = basis(4, (1, 1, 0, 0, 0), (0, 0, 1, 1, 0))
        assert transform_k((3, 4, 1, 2), b, [5, 7]) == [7, 5]

    def test_outside_ghat(self, shifted_sqrt2_basis):
        with pytest.raises(NotInGhat):
            transform_k((2, 1, 3, 4), shifted_sqrt2_basis, [1, 0, 1])

    def test_matches_residues(self, shifted_sqrt2_basis):
        f = IntPolynomial.parse(golden.SHIFTED_SQRT2)
        nu = (3, 4, 1, 2)
        checked = 0
        for roots in SplitPrimeStream(f, 100, 2000):
            for s in golden.SHIFTED_SQRT2_GHAT:
                k = k_vector(roots, shifted_sqrt2_basis, s)
                moved = k_vector(roots, shifted_sqrt2_basis, compose(s, nu))
                assert transform_k(nu, shifted_sqrt2_basis, k) == moved
            checked += 1
            if checked == 10:
                break
        assert checked == 10
