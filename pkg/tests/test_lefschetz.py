import pytest

from fanih.fan import build_fan
from fanih.oracle.lefschetz import hard_lefschetz_check, vanishing_holds

from conftest import fan


def test_cone_over_square():
    F = fan("cone-over-square")
    rep = hard_lefschetz_check(F, F.max_cone_ids[0])
    assert rep.m == 2
    assert rep.residue_dims == [1, 2, 1]
    assert rep.ranks == [1, 1]
    assert rep.injective == {0: True} and rep.surjective == {2: True}
    assert rep.vanishing is True and rep.passed


def test_cone_over_cube():
    F = fan("cone-over-cube")
    rep = hard_lefschetz_check(F, F.max_cone_ids[0], check_vanishing=False)
    assert rep.residue_dims == [1, 5, 5, 1]
    assert rep.ranks == [1, 5, 1]
    assert rep.injective == {0: True, 2: True}
    assert rep.surjective == {2: True, 4: True}


def test_simplicial_cone():
    F = fan("simplex-3")
    rep = hard_lefschetz_check(F, F.max_cone_ids[0])
    assert rep.residue_dims == [1, 1, 1] and rep.passed


def test_octahedral_cone():
    rays = [(1, 0, 0, 1), (-1, 0, 0, 1), (0, 1, 0, 1), (0, -1, 0, 1), (0, 0, 1, 1), (0, 0, -1, 1)]
    F = build_fan(rays, [list(range(6))])
    rep = hard_lefschetz_check(F, F.max_cone_ids[0], check_vanishing=False)
    assert rep.residue_dims == [1, 3, 3, 1] and rep.passed


@pytest.mark.parametrize("name", ["cube-face-fan", "cone-over-square"])
def test_all_cones(name):
    F = fan(name)
    for c in F.cones:
        if c.dim >= 1:
            assert hard_lefschetz_check(F, c.id, check_vanishing=False).passed


def test_two_dimensional_cone():
    F = fan("square")
    rep = hard_lefschetz_check(F, F.max_cone_ids[0])
    assert rep.m == 1 and rep.residue_dims == [1, 1] and rep.ranks == [1]


def test_vanishing_holds():
    F = fan("cone-over-square")
    assert vanishing_holds(F, F.max_cone_ids[0])


def test_zero_cone_rejected():
    F = fan("square")
    with pytest.raises(ValueError):
        hard_lefschetz_check(F, F.zero.id)
