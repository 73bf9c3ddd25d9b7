# permutohedron_modules/counter.py — contagem exata de pontos inteiros em Σ t·w_k·Δ_{k,n+1}
from __future__ import annotations

import itertools
import logging
import math
import os
from typing import Any, Dict, Tuple

try:
    from typing import Annotated  # Py3.9+
except ImportError:  # pragma: no cover
    from typing_extensions import Annotated  # fallback

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from permutohedron_modules.permdata import WeightVector  # type: ignore

logger = logging.getLogger("counter")

DEFAULT_BRUTE_FORCE_BUDGET = 2_000_000


class SymmetricRank(BaseModel):
    """Polimatroide simétrico: x(A) ≤ g(|A|) para todo A, com igualdade em [n+1].

    level_caps[m-1] = g(m), m = 1..n+1; g(0) = 0 implícito.
    """

    model_config = ConfigDict(frozen=True)

    n: Annotated[int, Field(ge=0)]
    level_caps: Tuple[Annotated[int, Field(ge=0)], ...]

    @field_validator("level_caps", mode="before")
    @classmethod
    def _as_tuple(cls, v: Any) -> Tuple[int, ...]:
        return tuple(v)

    @model_validator(mode="after")
    def _check_concave(self) -> "SymmetricRank":
        caps = self.level_caps
        if len(caps) != self.n + 1:
            raise ValueError(f"esperados {self.n + 1} níveis, recebidos {len(caps)}")
        steps = [b - a for a, b in zip((0,) + caps, caps)]
        if any(s < 0 for s in steps):
            raise ValueError(f"g deve ser não decrescente: {caps}")
        if any(b > a for a, b in zip(steps, steps[1:])):
            raise ValueError(f"g deve ser côncava: {caps}")
        return self

    @property
    def size(self) -> int:
        return self.n + 1

    @property
    def total(self) -> int:
        return self.level_caps[-1]

    def g(self, m: int) -> int:
        return 0 if m == 0 else self.level_caps[m - 1]


def rank_from_weights(w: WeightVector, dilation: int) -> SymmetricRank:
    if dilation < 0:
        raise ValueError(f"dilatação negativa: {dilation}")
    caps = tuple(
        dilation * sum(wk * min(m, k) for k, wk in enumerate(w.weights, start=1))
        for m in range(1, w.n + 2)
    )
    return SymmetricRank(n=w.n, level_caps=caps)


def count_lattice_points(r: SymmetricRank) -> int:
    """Conta x ∈ Z^{n+1}, x ≥ 0, Σx = g(n+1), soma dos m maiores ≤ g(m).

    Percorre perfis decrescentes λ_1 ≥ ... ≥ λ_{n+1} agrupando por valor (do maior
    para o menor). Estado: (posições ocupadas, soma parcial) → número de
    atribuições de posições; cada bloco de c cópias multiplica por C(livres, c),
    o que dá o multinomial do perfil sem recalcular fatoriais.
    """
    size, total = r.size, r.total
    if total == 0:
        return 1

    states: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for v in range(r.g(1), 0, -1):
        nxt: Dict[Tuple[int, int], int] = {}
        for (placed, partial), ways in states.items():
            free = size - placed
            for c in range(free + 1):
                s = partial + c * v
                # g côncava: basta testar o extremo, e uma falha vale para todo c maior
                if c and s > r.g(placed + c):
                    break
                if s > total:
                    break
                # valores seguintes são < v
                if s + (free - c) * (v - 1) < total:
                    continue
                key = (placed + c, s)
                nxt[key] = nxt.get(key, 0) + ways * math.comb(free, c)
        states = nxt
        if not states:
            return 0

    # zeros completam as posições restantes
    out = sum(ways for (_, partial), ways in states.items() if partial == total)
    logger.debug("contagem g=%s → %d", r.level_caps, out)
    return out


def brute_force_budget() -> int:
    try:
        return int(os.getenv("BRUTE_FORCE_BUDGET", DEFAULT_BRUTE_FORCE_BUDGET))
    except Exception:
        return DEFAULT_BRUTE_FORCE_BUDGET


def count_brute_force(r: SymmetricRank, budget: int | None = None) -> int:
    """Oráculo ingênuo: caixa [0, g(1)]^{n+1} filtrada pelas mesmas restrições."""
    cap = budget if budget is not None else brute_force_budget()
    side = r.g(1) + 1
    # a última coordenada é determinada pela soma
    boxes = side ** r.n
    if boxes > cap:
        raise RuntimeError(
            f"força bruta exigiria {boxes} pontos (limite {cap}); use uma instância menor"
        )
    total = r.total
    found = 0
    for head in itertools.product(range(side), repeat=r.n):
        last = total - sum(head)
        if not 0 <= last < side:
            continue
        desc = sorted(head + (last,), reverse=True)
        if all(p <= r.g(m) for m, p in enumerate(itertools.accumulate(desc), start=1)):
            found += 1
    return found
