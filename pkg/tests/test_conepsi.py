from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest
from pydantic import ValidationError

from permutohedron_modules.alpha import alpha_closed_codim2, alpha_closed_codim3, alpha_table  # type: ignore
from permutohedron_modules.conepsi import (  # type: ignore
    ConeSpec,
    Polygon,
    alpha_via_psi,
    box_check,
    convex_hull,
    fcone_generators,
    pick_check,
    psi,
    psi_dim01,
    psi_dim2_general,
    psi_dim2_unimodular,
    psi_dim3_unimodular,
)
from permutohedron_modules.exact import RatVector, inner_product  # type: ignore
from permutohedron_modules.permdata import SubsetIndex, all_subsets  # type: ignore

F = Fraction


def cone(*gens) -> ConeSpec:
    return ConeSpec.standard(gens)


def test_psi_dim01() -> None:
    assert psi_dim01(ConeSpec()) == 1
    ray = RatVector.of((1, -1))
    assert psi_dim01(ConeSpec(generators=[ray], lattice_basis=[ray])) == F(1, 2)
    assert psi_dim01(cone((0, 1))) == F(1, 2)


def test_psi_dim01_rejects_non_lattice_generator() -> None:
    with pytest.raises(ValueError):
        psi_dim01(cone(("1/2", 0)))


@pytest.mark.parametrize(
    "gens, expected",
    [
        (((-2, 1), (-1, 0)), F(9, 20)),
        (((1, 0), (0, 1)), F(1, 4)),
        (((0, -1), (1, -1)), F(3, 8)),
        (((1, -1), (2, -1)), F(17, 40)),
    ],
)
def test_psi_dim2_unimodular(gens, expected) -> None:
    assert psi_dim2_unimodular(cone(*gens)) == expected
    assert psi_dim2_general(cone(*gens)) == expected


def test_psi_dim2_unimodular_rejects_index_two_cone() -> None:
    with pytest.raises(ValueError):
        psi_dim2_unimodular(cone((0, -1), (2, -1)))


def test_psi_dim2_general_decomposes_worked_cone() -> None:
    assert psi_dim2_general(cone((0, -1), (2, -1))) == F(3, 10)
    assert psi_dim2_general(cone((2, -1), (0, -1))) == F(3, 10)


def test_psi_dim2_general_accepts_non_primitive_generators() -> None:
    assert psi_dim2_general(cone((0, -3), (4, -2))) == F(3, 10)


def test_psi_dim2_general_rejects_degenerate_cones() -> None:
    with pytest.raises(ValueError):
        psi_dim2_general(cone((1, 1), (2, 2)))
    with pytest.raises(ValueError):
        psi_dim2_general(cone((1, 0), (-1, 0)))


def test_triangle_vertex_sum_checks_a_deep_cone() -> None:
    rep = pick_check(Polygon(vertices=[(0, 0), (1, 0), (1, 3)]))
    assert sum(rep.vertex_psi) == 1
    assert rep.vertex_psi[1] == psi_dim2_general(cone((0, 3), (-1, 0)))


@pytest.mark.parametrize(
    "gens, expected",
    [
        (((1, 0, 0), (0, 1, 0), (0, 0, 1)), F(1, 8)),
        (((1, 0, 0), (1, 1, 0), (0, 0, 1)), F(3, 16)),
        (((0, 0, 2), (0, "1/2", 0), (-1, 0, 0)), None),
    ],
)
def test_psi_dim3(gens, expected) -> None:
    if expected is None:
        with pytest.raises(ValueError):
            psi_dim3_unimodular(cone(*gens))
    else:
        assert psi_dim3_unimodular(cone(*gens)) == expected


def test_psi_dim3_orthogonal_basis_is_one_eighth() -> None:
    assert psi_dim3_unimodular(cone((-1, 0, 0), (0, 0, 1), (0, 1, 0))) == F(1, 8)


def test_fcone_generators_codim2_shape() -> None:
    gens, lattice = fcone_generators(4, SubsetIndex.of(4, 2, 4))
    assert gens == lattice
    assert gens[0] == RatVector.of((1, "-1/2", "-1/2", 0, 0))
    gens, _ = fcone_generators(5, SubsetIndex.complement_of(5, (2, 4)))
    assert gens[0] == RatVector.of(("1/2", "1/2", "-1/2", "-1/2", 0, 0))


def test_fcone_generators_are_orthogonal_to_the_face() -> None:
    s = SubsetIndex.complement_of(6, (2, 4, 6))
    gens, _ = fcone_generators(6, s)
    assert len(gens) == 3
    for l in s.members:
        direction = RatVector.unit_difference(7, l)
        assert all(inner_product(g, direction) == 0 for g in gens)


def test_fcone_generators_full_face_is_zero_cone() -> None:
    assert fcone_generators(3, SubsetIndex.full(3)) == ((), ())


@pytest.mark.parametrize(
    "n, members, expected",
    [
        (3, (2,), F(7, 36)),
        (5, (4, 5), F(1, 32)),
        (4, (1, 2, 3, 4), F(1)),
        (4, (1, 3, 4), F(1, 2)),
        (3, (), F(1, 24)),
    ],
)
def test_alpha_via_psi(n, members, expected) -> None:
    assert alpha_via_psi(n, SubsetIndex(n=n, members=members)) == expected


def test_alpha_via_psi_rejects_codim_four() -> None:
    with pytest.raises(ValueError):
        alpha_via_psi(4, SubsetIndex(n=4))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_alpha_via_psi_agrees_with_mixed_valuations(n) -> None:
    table = alpha_table(n)
    for s in all_subsets(n):
        if s.codim <= 3:
            assert alpha_via_psi(n, s) == table.get(s), s.render()


@pytest.mark.slow
def test_alpha_via_psi_agrees_with_mixed_valuations_n6() -> None:
    table = alpha_table(6)
    for s in all_subsets(6):
        if s.codim <= 3:
            assert alpha_via_psi(6, s) == table.get(s), s.render()


@pytest.mark.parametrize("n", range(2, 11))
def test_alpha_via_psi_agrees_with_closed_forms(n) -> None:
    for i, j in itertools.combinations(range(1, n + 1), 2):
        assert alpha_via_psi(n, SubsetIndex.complement_of(n, (i, j))) == alpha_closed_codim2(n, i, j)
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        assert alpha_via_psi(n, SubsetIndex.complement_of(n, (i, j, k))) == alpha_closed_codim3(n, i, j, k)


def test_pick_on_worked_triangle() -> None:
    rep = pick_check(Polygon(vertices=[(0, 0), (2, 0), (0, 1)]))
    assert rep.lat == 4
    assert rep.area == 1
    assert rep.boundary == 4
    assert rep.vertex_psi == [F(1, 4), F(9, 20), F(3, 10)]
    assert rep.mcmullen_sum == 4
    assert rep.all_equal


def test_pick_on_unit_square_and_big_triangle() -> None:
    square = pick_check(Polygon(vertices=[(0, 0), (1, 0), (1, 1), (0, 1)]))
    assert square.lat == 4
    assert square.vertex_psi == [F(1, 4)] * 4
    assert square.all_equal
    tri = pick_check(Polygon(vertices=[(0, 0), (3, 0), (0, 3)]))
    assert tri.lat == 10
    assert tri.all_equal


def test_polygon_orientation_and_validation() -> None:
    assert Polygon(vertices=[(0, 0), (0, 1), (2, 0)]).vertices == ((2, 0), (0, 1), (0, 0))
    with pytest.raises(ValidationError):
        Polygon(vertices=[(0, 0), (1, 1), (2, 2)])
    with pytest.raises(ValidationError):
        Polygon(vertices=[(0, 0), (1, 0)])
    with pytest.raises(ValidationError):
        Polygon(vertices=[(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)])


@pytest.mark.parametrize(
    "vertices",
    [
        [(0, 0), (2.7, 0), (0, 1)],
        [(0, 0), (2, 0), (0, F(1))],
        [(0, 0), ("2", 0), (0, 1)],
        [(0, 0), (True, 0), (0, 1)],
    ],
)
def test_polygon_rejects_non_integer_coordinates(vertices) -> None:
    with pytest.raises(ValidationError):
        Polygon(vertices=vertices)
    with pytest.raises(ValueError):
        convex_hull(vertices)


def test_convex_hull_drops_interior_and_collinear_points() -> None:
    hull = convex_hull([(0, 0), (2, 0), (1, 0), (1, 1), (2, 2), (0, 2)])
    assert set(hull.vertices) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    with pytest.raises(ValueError):
        convex_hull([(0, 0), (1, 1), (3, 3)])


def _random_polygon(rng: random.Random) -> Polygon:
    while True:
        pts = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(rng.choice((3, 4)))]
        try:
            return convex_hull(pts)
        except ValueError:
            continue


def test_vertex_psi_sums_to_one_on_random_polygons() -> None:
    rng = random.Random(3)
    for _ in range(50):
        rep = pick_check(_random_polygon(rng))
        assert sum(rep.vertex_psi) == 1
        assert rep.all_equal


def test_psi_is_symmetric_under_negation_and_coordinate_swap() -> None:
    rng = random.Random(5)
    done = 0
    while done < 40:
        a = (rng.randint(-7, 7), rng.randint(-7, 7))
        b = (rng.randint(-7, 7), rng.randint(-7, 7))
        if a[0] * b[1] - a[1] * b[0] == 0:
            continue
        c = cone(a, b)
        value = psi_dim2_general(c)
        assert psi_dim2_general(c.negated()) == value
        assert psi_dim2_general(c.permuted((1, 0))) == value
        done += 1


def test_psi_dispatch() -> None:
    assert psi(ConeSpec()) == 1
    assert psi(cone((3, 1))) == F(1, 2)
    assert psi(cone((0, -1), (2, -1))) == F(3, 10)
    assert psi(cone((1, 0, 0), (0, 1, 0), (0, 0, 1))) == F(1, 8)


@pytest.mark.parametrize("lengths", [(1,), (3, 2), (1, 2, 3), (2, 2, 5)])
def test_box_check(lengths) -> None:
    rep = box_check(lengths)
    assert rep.equal
    assert rep.direct[-1] == math.prod(lengths)


def test_box_check_validation() -> None:
    with pytest.raises(ValueError):
        box_check((1, 1, 1, 1))
    with pytest.raises(ValueError):
        box_check((0, 2))
