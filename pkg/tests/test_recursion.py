import pytest
from hypothesis import given, settings, strategies as st

from fanih.examples import EXAMPLES, random_complete_fan
from fanih.fan import is_complete
from fanih.poly import ONE, T2, PoincarePoly
from fanih.recursion import (NotQuasiConvexHint, check_duality, degree_bound_audit,
                             global_poly, local_poly, local_poly_table,
                             syntactically_quasi_convex)

from conftest import QUASI_CONVEX, fan


def P(*c):
    return PoincarePoly(c)


def test_golden_global():
    assert global_poly(fan("square")) == P(1, 2, 1)
    assert global_poly(fan("cube-face-fan")) == P(1, 5, 5, 1)
    assert global_poly(fan("simplex-2")) == P(1, 1, 1)
    assert global_poly(fan("simplex-3")) == P(1, 1, 1, 1)
    assert global_poly(fan("cross-polytope")) == P(1, 3, 3, 1)


def test_golden_local():
    F = fan("cone-over-square")
    assert local_poly(F, F.max_cone_ids[0]) == P(1, 1)
    G = fan("cone-over-cube")
    assert local_poly(G, G.max_cone_ids[0]) == P(1, 4)


def test_simplicial_local_is_one():
    F = fan("simplex-3")
    assert all(local_poly(F, c.id) == ONE for c in F.cones)


def test_affine_cone_over_square():
    F = fan("cone-over-square")
    assert global_poly(F) == P(1, 1)
    assert global_poly(F, True) == P(0, 0, 1, 1)


def test_refuses_non_quasi_convex():
    F = fan("bad-boundary")
    assert not syntactically_quasi_convex(F)
    with pytest.raises(NotQuasiConvexHint):
        global_poly(F)
    # the half-plane is accepted once quasi-convexity is asserted
    H = fan("half-plane")
    assert global_poly(H, assume_quasi_convex=True) == P(1, 1)
    assert global_poly(H, True, assume_quasi_convex=True) == P(0, 1, 1)


def test_table_memoizes():
    F = fan("cube-face-fan")
    t = local_poly_table(F)
    assert len(t.table) == len(F.cones)
    assert sum(1 for c in F.cones if t[c.id] == P(1, 1)) == 6


@pytest.mark.parametrize("name", QUASI_CONVEX)
def test_duality(name):
    rep = check_duality(fan(name), assume_quasi_convex=True)
    assert rep.holds, rep.to_json()


@pytest.mark.parametrize("name", QUASI_CONVEX)
def test_degree_bound_audit(name):
    rep = degree_bound_audit(fan(name), assume_quasi_convex=True)
    assert rep.passed, rep.failures


@pytest.mark.parametrize("name", EXAMPLES)
def test_nonnegative(name):
    F = fan(name)
    for c in F.cones:
        assert local_poly(F, c.id).is_nonnegative()
    if syntactically_quasi_convex(F):
        assert global_poly(F).is_nonnegative()
        if is_complete(F):
            assert global_poly(F).is_palindromic(F.ambient_dim)


def h_from_f(F):
    n = F.ambient_dim
    f = F.f_vector()
    total = PoincarePoly()
    for k in range(n + 1):
        total = total + PoincarePoly([f[k]]) * (T2 - ONE) ** (n - k)
    return total


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10 ** 6))
def test_simplicial_h_polynomial(dim, seed):
    F = random_complete_fan(dim, seed)
    p = global_poly(F)
    assert p == h_from_f(F)
    assert p.is_palindromic(dim)
    assert p[1] == len(F.rays) - dim
