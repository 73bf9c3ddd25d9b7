"""
ehrhart.py — Polinômios de Ehrhart por interpolação exata das contagens de dilatações.

- Nós de interpolação t = 0..d (d = dimensão); nós extras opcionais para reconferir o grau.
- Lat^r é o coeficiente de t^r; nvol é o coeficiente líder.
- Cache em memória (protegido por lock) e, opcionalmente, persistente via storage.EhrhartStore.
"""
from __future__ import annotations

import logging
import math
import threading
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from permutohedron_modules.counter import count_lattice_points, rank_from_weights  # type: ignore
from permutohedron_modules.exact import as_rational, evaluate_polynomial, render, solve_vandermonde  # type: ignore
from permutohedron_modules.permdata import SubsetIndex, WeightVector, face_factorization  # type: ignore

logger = logging.getLogger("ehrhart")


class EhrhartPolynomial(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: Tuple[Fraction, ...]

    @field_validator("coeffs", mode="before")
    @classmethod
    def _coerce(cls, v: Any) -> Tuple[Fraction, ...]:
        vals = [as_rational(x) for x in v]
        while len(vals) > 1 and vals[-1] == 0:
            vals.pop()
        if not vals:
            raise ValueError("polinômio sem coeficientes")
        if vals[0] != 1:
            raise ValueError(f"termo constante deve ser 1, veio {vals[0]}")
        if vals[-1] <= 0:
            raise ValueError(f"coeficiente líder deve ser positivo, veio {vals[-1]}")
        return tuple(vals)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def render(self) -> str:
        terms = []
        for r in range(self.degree, -1, -1):
            c = self.coeffs[r]
            if c == 0:
                continue
            if r == 0:
                terms.append(render(c))
            elif r == 1:
                terms.append(f"{render(c)} t")
            else:
                terms.append(f"{render(c)} t^{r}")
        return " + ".join(terms).replace("+ -", "- ")


_CACHE: Dict[Tuple[int, ...], Tuple[Fraction, ...]] = {}
_LOCK = threading.Lock()
_STORE: Optional[Any] = None


def attach_store(store: Optional[Any]) -> None:
    """Liga (ou desliga, com None) o cache persistente."""
    global _STORE
    with _LOCK:
        _STORE = store


def clear_cache() -> None:
    with _LOCK:
        _CACHE.clear()


def seed_cache(entries: Iterable[Tuple[Tuple[int, ...], Sequence[Fraction]]]) -> None:
    with _LOCK:
        for key, coeffs in entries:
            _CACHE.setdefault(tuple(key), tuple(coeffs))


def cache_size() -> int:
    with _LOCK:
        return len(_CACHE)


def _dimension(w: WeightVector) -> int:
    return 0 if w.is_zero() else w.n


def _interpolate(w: WeightVector, top: int) -> List[Fraction]:
    nodes = list(range(top + 1))
    values = [count_lattice_points(rank_from_weights(w, t)) for t in nodes]
    return solve_vandermonde(nodes, values)


def _compute_coeffs(weights: Tuple[int, ...]) -> Tuple[Tuple[int, ...], Tuple[Fraction, ...]]:
    # nível de módulo para ser serializável pelo ProcessPoolExecutor
    w = WeightVector(weights=weights)
    return weights, tuple(_interpolate(w, _dimension(w)))


def ehrhart_of_weights(w: WeightVector, dilations: Optional[int] = None) -> EhrhartPolynomial:
    """i(Σ w_kΔ_{k,n+1}, t).

    Com `dilations` maior que a dimensão, conta t = 0..dilations e exige que os
    coeficientes acima do grau se anulem; abaixo da dimensão é ValueError.
    """
    d = _dimension(w)
    if dilations is not None and dilations < d:
        raise ValueError(f"dilations={dilations} abaixo do grau {d}: são precisos ao menos t = 0..{d}")
    if dilations is not None and dilations > d:
        coeffs = _interpolate(w, dilations)
        if any(c != 0 for c in coeffs[d + 1:]):
            raise RuntimeError(f"reinterpolação de {w.weights} com {dilations + 1} nós excedeu o grau {d}")
        return EhrhartPolynomial(coeffs=coeffs[: d + 1])

    key = w.weights
    with _LOCK:
        hit = _CACHE.get(key)
        store = _STORE
    if hit is not None:
        return EhrhartPolynomial(coeffs=hit)

    if store is not None:
        stored = store.get(key)
        if stored is not None:
            seed_cache([(key, stored)])
            return EhrhartPolynomial(coeffs=stored)

    _, coeffs = _compute_coeffs(key)
    logger.debug("Ehrhart de %s: %s", key, [str(c) for c in coeffs])
    seed_cache([(key, coeffs)])
    if store is not None:
        store.put(key, coeffs)
    return EhrhartPolynomial(coeffs=coeffs)


def precompute(weight_list: Iterable[WeightVector], workers: int = 1) -> int:
    """Preenche o cache para vários pesos; usa processos quando workers > 1."""
    with _LOCK:
        pending = sorted({w.weights for w in weight_list if w.weights not in _CACHE})
    if not pending:
        return 0
    if workers <= 1:
        for key in pending:
            ehrhart_of_weights(WeightVector(weights=key))
        return len(pending)

    logger.info("Pré-computando %d polinômios com %d processos", len(pending), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_compute_coeffs, pending))
    seed_cache(results)
    with _LOCK:
        store = _STORE
    if store is not None:
        for key, coeffs in results:
            store.put(key, coeffs)
    return len(results)


def ehrhart_of_subset_sum(n: int, j: SubsetIndex) -> EhrhartPolynomial:
    if j.n != n:
        raise ValueError(f"J está em [{j.n}], esperado [{n}]")
    return ehrhart_of_weights(WeightVector.indicator(n, j.members))


def lat_r(p: EhrhartPolynomial, r: int) -> Fraction:
    if r < 0:
        raise ValueError(f"grau negativo: {r}")
    return p.coeffs[r] if r <= p.degree else Fraction(0)


def evaluate(p: EhrhartPolynomial, t: int) -> Fraction:
    return evaluate_polynomial(p.coeffs, t)


def nvol(w: WeightVector) -> Fraction:
    return ehrhart_of_weights(w).leading


def nvol_face(s: SubsetIndex, parent: WeightVector) -> Fraction:
    return math.prod((nvol(f) for f in face_factorization(s, parent).factors), start=Fraction(1))
