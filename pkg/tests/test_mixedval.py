from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from pydantic import ValidationError

from permutohedron_modules.ehrhart import ehrhart_of_weights, lat_r  # type: ignore
from permutohedron_modules.mixedval import (  # type: ignore
    MixedLatQuery,
    mixed_lat,
    mixed_lat_of_weights,
    mixed_lat_via_polynomial,
)
from permutohedron_modules.permdata import WeightVector  # type: ignore


def q(n: int, *indices: int) -> MixedLatQuery:
    return MixedLatQuery(n=n, indices=indices)


def test_two_hypersimplices_in_r4() -> None:
    assert mixed_lat(q(3, 1, 3)) == Fraction(3, 2)
    assert 2 * mixed_lat(q(3, 3, 1)) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_all_hypersimplices_together_give_one(n) -> None:
    assert mixed_lat(q(n, *range(1, n + 1))) == 1


def test_degree_one_is_linear_coefficient() -> None:
    assert mixed_lat(q(5, 1)) == Fraction(137, 60)
    for n in (3, 4):
        for k in range(1, n + 1):
            expected = lat_r(ehrhart_of_weights(WeightVector.hypersimplex(n, k)), 1)
            assert mixed_lat(q(n, k)) == expected
            assert mixed_lat_via_polynomial(q(n, k)) == expected


def test_empty_query_is_one() -> None:
    assert mixed_lat(q(3)) == 1
    assert mixed_lat_via_polynomial(q(3)) == 1


def test_repeated_indices() -> None:
    assert mixed_lat(q(2, 1, 1)) == Fraction(1, 2)
    assert mixed_lat_via_polynomial(q(2, 1, 1)) == Fraction(1, 2)


def test_polynomial_fit_matches_reference_examples() -> None:
    assert mixed_lat_via_polynomial(q(3, 1, 3)) == Fraction(3, 2)
    assert mixed_lat_via_polynomial(q(2, 1, 2)) == mixed_lat(q(2, 1, 2))


def test_mobius_and_grid_fit_agree_on_small_multisets() -> None:
    for n in range(1, 5):
        for k in range(1, 4):
            for indices in itertools.combinations_with_replacement(range(1, n + 1), k):
                assert mixed_lat(q(n, *indices)) == mixed_lat_via_polynomial(q(n, *indices)), (n, indices)


def test_multilinearity_in_first_argument() -> None:
    d1, d3 = WeightVector.hypersimplex(3, 1), WeightVector.hypersimplex(3, 3)
    doubled = mixed_lat_of_weights(3, [d1.scaled(2), d3])
    assert doubled == 2 * mixed_lat(q(3, 1, 3)) == 3
    summed = mixed_lat_of_weights(3, [d1 + d3, d3])
    assert summed == mixed_lat(q(3, 1, 3)) + mixed_lat(q(3, 3, 3))


def test_argument_order_is_irrelevant() -> None:
    assert q(4, 3, 1, 2) == q(4, 1, 2, 3)


def test_query_validation_and_grid_limits() -> None:
    with pytest.raises(ValidationError):
        q(3, 4)
    with pytest.raises(ValidationError):
        q(3, 0)
    with pytest.raises(RuntimeError):
        mixed_lat_via_polynomial(q(7, *range(1, 8)))
    with pytest.raises(ValueError):
        mixed_lat_of_weights(3, [WeightVector.hypersimplex(2, 1)])
