from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Tuple

import pytest

from permutohedron_modules import alpha, ehrhart  # type: ignore
from permutohedron_modules.reproduce import load_alpha_tables  # type: ignore


@pytest.fixture(scope="session")
def reference_tables() -> Dict[int, Dict[Tuple[int, ...], Fraction]]:
    return load_alpha_tables()


@pytest.fixture
def isolated_caches() -> Iterator[None]:
    ehrhart.attach_store(None)
    ehrhart.clear_cache()
    alpha.clear_tables()
    yield
    ehrhart.attach_store(None)
    ehrhart.clear_cache()
    alpha.clear_tables()
