from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fanih.examples import EXAMPLES, random_complete_fan
from fanih.fan import (ConesIntersectBadly, FanError, NonPointedCone, NotARefinement,
                       RedundantGenerator, Subfan, ZeroCone, boundary_subfan, build_fan,
                       is_complete, is_simplicial_fan, orientation_data, primitive,
                       projection_fan, refinement_from, simplicial_refinement)

from conftest import fan


def test_primitive():
    assert primitive([2, -4, 6]) == (1, -2, 3)
    assert primitive([0, 3]) == (0, 1)


def test_square_fan():
    F = fan("square")
    assert len(F.cones) == 9
    assert F.f_vector() == (1, 4, 4)
    assert is_complete(F) and is_simplicial_fan(F)
    assert boundary_subfan(F).is_empty


def test_rays_are_made_primitive():
    F = build_fan([(2, 0), (0, 3)], [[0, 1]])
    assert F.rays == ((1, 0), (0, 1))


@pytest.mark.parametrize("name,f", [
    ("cube-face-fan", (1, 8, 12, 6)),
    ("cross-polytope", (1, 6, 12, 8)),
    ("cone-over-square", (1, 4, 4, 1)),
    ("cone-over-cube", (1, 8, 12, 6, 1)),
    ("simplex-3", (1, 4, 6, 4)),
    ("half-plane", (1, 3, 2)),
    ("bad-boundary", (1, 4, 2)),
])
def test_f_vectors(name, f):
    assert fan(name).f_vector() == f


def test_errors():
    with pytest.raises(NonPointedCone):
        build_fan([(1, 0), (-1, 0)], [[0, 1]])
    with pytest.raises(RedundantGenerator):
        build_fan([(1, 0), (0, 1), (1, 1)], [[0, 1, 2]])
    with pytest.raises(ConesIntersectBadly):
        build_fan([(1, 0), (0, 1), (-1, 1)], [[0, 1], [0, 2]])
    with pytest.raises(FanError):
        build_fan([(0, 0)], [[0]])
    with pytest.raises(FanError):
        build_fan([(1, 0)], [[0, 3]])


def test_error_names_cone():
    with pytest.raises(NonPointedCone, match="cone 1"):
        build_fan([(1, 0), (0, 1), (-1, 0)], [[0, 1], [0, 2]])


def test_boundary_of_cone_over_square():
    F = fan("cone-over-square")
    bd = boundary_subfan(F)
    assert len(bd) == 9
    assert F.max_cone_ids[0] not in bd


def test_subfan_must_be_closed():
    F = fan("square")
    top = F.max_cone_ids[0]
    with pytest.raises(FanError):
        Subfan(F, frozenset([top]))


@pytest.mark.parametrize("name", EXAMPLES)
def test_faces_satisfy_lattice_rules(name):
    F = fan(name)
    for c in F.cones:
        for f in c.face_ids:
            assert F.cones[f].rayset < c.rayset
        for a, b in combinations(sorted(F.closed_faces(c.id)), 2):
            meet = F.cones[a].rayset & F.cones[b].rayset
            assert meet in F.by_rays
    # every pair of cones meets in a common face
    for a, b in combinations(F.cones, 2):
        assert (a.rayset & b.rayset) in F.by_rays


@pytest.mark.parametrize("name", EXAMPLES)
def test_boundary_empty_iff_complete(name):
    F = fan(name)
    if F.is_pure():
        assert boundary_subfan(F).is_empty == is_complete(F)


@pytest.mark.parametrize("name", EXAMPLES)
def test_euler_characteristic_of_complete_fans(name):
    F = fan(name)
    if not is_complete(F):
        return
    n = F.ambient_dim
    f = F.f_vector()
    assert sum((-1) ** (k - 1) * f[k] for k in range(1, n + 1)) == 1 + (-1) ** (n - 1)


def test_projection_fan_of_cone_over_square():
    F = fan("cone-over-square")
    lam, pd = projection_fan(F, F.max_cone_ids[0])
    assert lam.ambient_dim == 2 and is_complete(lam)
    assert lam.f_vector() == (1, 4, 4)
    assert set(pd.psi_on_rays().values()) == {Fraction(1, 4)}


def test_projection_fan_errors():
    F = fan("square")
    with pytest.raises(ZeroCone):
        projection_fan(F, F.zero.id)


@pytest.mark.parametrize("name", ["cone-over-square", "cone-over-cube", "cube-face-fan", "simplex-3"])
def test_projection_fan_is_boundary(name):
    F = fan(name)
    for c in F.cones:
        if c.dim < 2:
            continue
        lam, pd = projection_fan(F, c)
        assert is_complete(lam)
        assert sorted(pd.cone_map) == sorted(c.face_ids)
        assert len(set(pd.cone_map.values())) == len(lam.cones)
        for a in c.face_ids:
            assert lam.cones[pd.cone_map[a]].dim == F.cones[a].dim
            for b in F.cones[a].face_ids:
                assert pd.cone_map[b] in lam.cones[pd.cone_map[a]].face_ids
        # lifting each projected ray by psi recovers a multiple of the original ray
        psi = pd.psi_on_rays()
        r = pd.interior_point
        for ray, i in pd.ray_map.items():
            u = c.coords(F.rays[ray])
            p = list(lam.rays[i]) if lam.ambient_dim else []
            p.insert(pd.split, Fraction(0))
            lifted = [a + psi[i] * b for a, b in zip(p, r)]
            ratio = {lifted[k] / u[k] for k in range(len(u)) if u[k] != 0}
            assert len(ratio) == 1 and all(lifted[k] == 0 for k in range(len(u)) if u[k] == 0)


def _check_refinement(F, ref):
    fine = ref.fan
    assert is_simplicial_fan(fine)
    assert fine.rays == F.rays
    for c in fine.cones:
        b = F.cones[ref.carrier[c.id]]
        assert c.rayset <= b.rayset and c.dim <= b.dim
    # pseudomanifold test: the pieces over each base cone tile it
    for sigma in F.cones:
        d = sigma.dim
        if d < 2:
            continue
        tops = [c for c in fine.cones if c.dim == d and ref.carrier[c.id] == sigma.id]
        assert tops
        for w in fine.cones:
            if w.dim != d - 1 or not w.rayset <= sigma.rayset:
                continue
            k = sum(1 for t in tops if w.rayset < t.rayset)
            interior = ref.carrier[w.id] == sigma.id
            assert k == (2 if interior else 1)


@pytest.mark.parametrize("name", EXAMPLES)
def test_simplicial_refinement(name):
    F = fan(name)
    ref = simplicial_refinement(F)
    _check_refinement(F, ref)
    assert is_complete(ref.fan) == is_complete(F)
    if is_simplicial_fan(F):
        assert ref.is_identity()


def test_refinement_of_cone_over_square():
    F = fan("cone-over-square")
    ref = simplicial_refinement(F)
    assert sorted(ref.fan.maximal_cone_rays()) == [[0, 1, 2], [0, 2, 3]]
    assert ref.fan.f_vector() == (1, 4, 5, 2)


def test_refinement_from():
    F = fan("cone-over-square")
    other = build_fan(F.rays, [[0, 1, 3], [1, 2, 3]])
    ref = refinement_from(F, other)
    _check_refinement(F, ref)
    with pytest.raises(NotARefinement):
        refinement_from(F, build_fan(F.rays, [[0, 1, 3]], check=False))


@pytest.mark.parametrize("name", EXAMPLES)
def test_incidence_signs_square_to_zero(name):
    F = fan(name)
    o = orientation_data(F)
    for c in F.cones:
        for f in F.facets_of[c.id]:
            for g in F.facets_of[f]:
                total = sum(o.sign(c.id, t) * o.sign(t, g)
                            for t in F.facets_of[c.id] if g in F.facets_of[t])
                assert total == 0
        assert all(abs(o.sign(c.id, f)) == 1 for f in F.facets_of[c.id])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_2d_fans(seed):
    F = random_complete_fan(2, seed)
    assert is_complete(F)
    assert boundary_subfan(F).is_empty
    m = len(F.rays)
    assert F.f_vector() == (1, m, m)
    # dropping one cone leaves a pure fan with a boundary of two rays and o
    cones = F.maximal_cone_rays()[1:]
    G = build_fan(F.rays, cones)
    assert not is_complete(G)
    assert len(boundary_subfan(G)) == 3
