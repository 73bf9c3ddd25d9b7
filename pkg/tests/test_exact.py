from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from permutohedron_modules.exact import (  # type: ignore
    RatVector,
    as_rational,
    evaluate_polynomial,
    inner_product,
    is_unimodular,
    lattice_coordinates,
    project_orthogonal,
    solve_vandermonde,
)


def vec(*xs) -> RatVector:
    return RatVector.of(xs)


def test_as_rational_accepts_exact_inputs_and_rejects_floats() -> None:
    assert as_rational(3) == Fraction(3)
    assert as_rational("6/8") == Fraction(3, 4)
    assert as_rational(sympy.Rational(-2, 6)) == Fraction(-1, 3)
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_fractions_are_kept_in_lowest_terms() -> None:
    x = as_rational("-10/4")
    assert (x.numerator, x.denominator) == (-5, 2)


def test_empty_vector_is_rejected() -> None:
    with pytest.raises(ValueError):
        RatVector.of([])


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((1, 0), (0, 1), Fraction(0)),
        ((-2, 1), (-2, 1), Fraction(5)),
        (("1/2", "1/2", -1), ("1/2", "1/2", -1), Fraction(3, 2)),
    ],
)
def test_inner_product(a, b, expected) -> None:
    assert inner_product(vec(*a), vec(*b)) == expected
    assert inner_product(vec(*b), vec(*a)) == expected


def test_inner_product_dimension_mismatch() -> None:
    with pytest.raises(ValueError):
        inner_product(vec(1, 2), vec(1, 2, 3))


@pytest.mark.parametrize(
    "nodes, values, expected",
    [
        ([0, 1], [1, 6], [1, 5]),
        (
            list(range(6)),
            [1, 6, 21, 56, 126, 252],
            [1, Fraction(137, 60), Fraction(15, 8), Fraction(17, 24), Fraction(1, 8), Fraction(1, 120)],
        ),
        ([0, 1, 2], [1, 4, 9], [1, 2, 1]),
    ],
)
def test_solve_vandermonde_examples(nodes, values, expected) -> None:
    assert solve_vandermonde(nodes, values) == expected


def test_solve_vandermonde_rejects_repeated_nodes() -> None:
    with pytest.raises(ValueError):
        solve_vandermonde([0, 1, 1], [1, 2, 3])


def test_solve_vandermonde_rejects_length_mismatch() -> None:
    with pytest.raises(ValueError):
        solve_vandermonde([0, 1], [1])


def test_vandermonde_reproduces_nodes_on_random_data() -> None:
    rng = random.Random(7)
    for _ in range(25):
        nodes = rng.sample(range(-15, 15), rng.randint(1, 8))
        values = [Fraction(rng.randint(-40, 40), rng.randint(1, 7)) for _ in nodes]
        coeffs = solve_vandermonde(nodes, values)
        assert len(coeffs) == len(nodes)
        assert [evaluate_polynomial(coeffs, x) for x in nodes] == values


def test_project_orthogonal_with_empty_basis_is_identity() -> None:
    assert project_orthogonal(vec(1, -1, 0), []) == vec(1, -1, 0)


def test_project_orthogonal_in_sum_zero_plane() -> None:
    out = project_orthogonal(vec(0, 1, -1), [vec(1, -1, 0)])
    assert out == vec("1/2", "1/2", -1)
    assert inner_product(out, vec(1, -1, 0)) == 0


def test_project_orthogonal_face_direction() -> None:
    basis = [vec(0, 1, -1, 0, 0), vec(0, 0, 0, 1, -1)]
    out = project_orthogonal(vec(1, -1, 0, 0, 0), basis)
    assert out == vec(1, "-1/2", "-1/2", 0, 0)
    assert all(inner_product(out, b) == 0 for b in basis)


def test_project_orthogonal_rejects_dependent_basis() -> None:
    with pytest.raises(ValueError):
        project_orthogonal(vec(1, 0, 0), [vec(1, -1, 0), vec(2, -2, 0)])


def test_lattice_coordinates_and_unimodularity() -> None:
    e1, e2 = vec(1, 0), vec(0, 1)
    assert lattice_coordinates(vec(3, -2), [e1, e2]) == (3, -2)
    assert is_unimodular([vec(1, 0), vec(1, 1)], [e1, e2])
    assert not is_unimodular([vec(1, 0), vec(1, 2)], [e1, e2])
    assert not is_unimodular([vec("1/2", 0), vec(0, 1)], [e1, e2])


def test_lattice_coordinates_outside_span() -> None:
    with pytest.raises(ValueError):
        lattice_coordinates(vec(0, 0, 1), [vec(1, -1, 0)])


def test_rational_field_axioms_on_random_triples() -> None:
    rng = random.Random(11)
    for _ in range(100):
        a, b, c = (Fraction(rng.randint(-99, 99), rng.randint(1, 50)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
