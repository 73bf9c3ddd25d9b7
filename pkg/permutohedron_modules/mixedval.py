# permutohedron_modules/mixedval.py — valorações mistas de hipersimplexos (inversão de Möbius)
from __future__ import annotations

import itertools
import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

try:
    from typing import Annotated  # Py3.9+
except ImportError:  # pragma: no cover
    from typing_extensions import Annotated  # fallback

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from permutohedron_modules.counter import count_lattice_points, rank_from_weights  # type: ignore
from permutohedron_modules.ehrhart import ehrhart_of_weights, lat_r  # type: ignore
from permutohedron_modules.exact import solve_vandermonde  # type: ignore
from permutohedron_modules.permdata import WeightVector  # type: ignore

logger = logging.getLogger("mixedval")

MAX_GRID_DEGREE = 6
MAX_GRID_POINTS = 50_000


class MixedLatQuery(BaseModel):
    """MLat^k(Δ_{s_1,n+1}, ..., Δ_{s_k,n+1}); índices como multiconjunto ordenado."""

    model_config = ConfigDict(frozen=True)

    n: Annotated[int, Field(ge=1)]
    indices: Tuple[int, ...] = ()

    @field_validator("indices", mode="before")
    @classmethod
    def _sorted(cls, v: Any) -> Tuple[int, ...]:
        return tuple(sorted(v))

    @model_validator(mode="after")
    def _check_range(self) -> "MixedLatQuery":
        bad = [s for s in self.indices if not 1 <= s <= self.n]
        if bad:
            raise ValueError(f"índices fora de [1, {self.n}]: {bad}")
        return self

    @property
    def degree(self) -> int:
        return len(self.indices)

    def summands(self) -> List[WeightVector]:
        return [WeightVector.hypersimplex(self.n, s) for s in self.indices]


def _sum_weights(n: int, parts: Sequence[WeightVector]) -> WeightVector:
    out = WeightVector(weights=(0,) * n)
    for p in parts:
        out = out + p
    return out


def mixed_lat(q: MixedLatQuery) -> Fraction:
    """(1/k!) Σ_{J} (−1)^{k−|J|} Lat^k(Σ_{j∈J} Δ_{s_j,n+1}).

    J percorre subconjuntos de posições, então índices repetidos contam com multiplicidade.
    """
    k = q.degree
    if k == 0:
        return Fraction(1)
    summands = q.summands()
    acc = Fraction(0)
    for size in range(1, k + 1):
        sign = -1 if (k - size) % 2 else 1
        for pos in itertools.combinations(range(k), size):
            w = _sum_weights(q.n, [summands[p] for p in pos])
            acc += sign * lat_r(ehrhart_of_weights(w), k)
    return acc / math.factorial(k)


def mixed_lat_of_weights(n: int, summands: Sequence[WeightVector]) -> Fraction:
    """Oráculo: ajusta Lat(t_1P_1 + ... + t_kP_k) numa grade {0..n}^k e lê o
    coeficiente de t_1···t_k dividido por k!."""
    k = len(summands)
    if k == 0:
        return Fraction(1)
    if any(p.n != n for p in summands):
        raise ValueError(f"todas as parcelas devem estar em R^{n + 1}")
    if k > MAX_GRID_DEGREE:
        raise RuntimeError(f"ajuste em grade limitado a {MAX_GRID_DEGREE} parcelas (pedido: {k})")
    side = n + 1
    if side ** k > MAX_GRID_POINTS:
        raise RuntimeError(f"grade com {side ** k} pontos excede o limite {MAX_GRID_POINTS}")

    grid: Dict[Tuple[int, ...], Fraction] = {}
    for idx in itertools.product(range(side), repeat=k):
        w = _sum_weights(n, [p.scaled(t) for p, t in zip(summands, idx)])
        grid[idx] = Fraction(count_lattice_points(rank_from_weights(w, 1)))
    logger.debug("grade %s^%d avaliada", side, k)

    # interpolação tensorial, um eixo por vez
    nodes = list(range(side))
    for axis in range(k):
        for rest in itertools.product(range(side), repeat=k - 1):
            line = [rest[:axis] + (i,) + rest[axis:] for i in nodes]
            coeffs = solve_vandermonde(nodes, [grid[p] for p in line])
            for p, c in zip(line, coeffs):
                grid[p] = c

    return grid[(1,) * k] / math.factorial(k)


def mixed_lat_via_polynomial(q: MixedLatQuery) -> Fraction:
    return mixed_lat_of_weights(q.n, q.summands())
