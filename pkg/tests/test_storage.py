from __future__ import annotations

from fractions import Fraction

from permutohedron_modules import ehrhart  # type: ignore
from permutohedron_modules.permdata import WeightVector  # type: ignore
from storage import EhrhartStore  # type: ignore


def test_put_get_roundtrip(tmp_path) -> None:
    store = EhrhartStore(str(tmp_path / "cache" / "e.db"))
    assert store.get((1, 0, 1)) is None
    store.put((1, 0, 1), [Fraction(1), Fraction(11, 3), Fraction(5), Fraction(10, 3)])
    assert store.get((1, 0, 1)) == [1, Fraction(11, 3), 5, Fraction(10, 3)]
    assert store.count() == 1


def test_first_write_wins(tmp_path) -> None:
    store = EhrhartStore(str(tmp_path / "e.db"))
    store.put((1, 1), [Fraction(1), Fraction(3), Fraction(3)])
    store.put((1, 1), [Fraction(1), Fraction(9)])
    assert store.get((1, 1)) == [1, 3, 3]
    assert store.count() == 1


def test_items_include_the_point(tmp_path) -> None:
    store = EhrhartStore(str(tmp_path / "e.db"))
    store.put((), [Fraction(1)])
    store.put((2, 0), [Fraction(1), Fraction(3), Fraction(2)])
    assert store.items() == [((), [1]), ((2, 0), [1, 3, 2])]


def test_store_survives_a_cleared_memory_cache(tmp_path, isolated_caches) -> None:
    path = str(tmp_path / "e.db")
    ehrhart.attach_store(EhrhartStore(path))
    w = WeightVector.of(0, 1, 0)
    first = ehrhart.ehrhart_of_weights(w)
    ehrhart.clear_cache()

    reopened = EhrhartStore(path)
    assert reopened.get(w.weights) == list(first.coeffs)
    ehrhart.attach_store(reopened)
    assert ehrhart.ehrhart_of_weights(w) == first
    assert ehrhart.cache_size() == 1
