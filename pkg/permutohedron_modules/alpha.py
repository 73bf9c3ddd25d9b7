"""
alpha.py — Valores α_n(S) das órbitas de faces de Π_n.

α_n(S) = (m_1···m_l)/(n+1)! · k! · MLat^k(Δ_{s_1,n+1}, ..., Δ_{s_k,n+1}),  S = {s_1<...<s_k}.

Inclui as formas fechadas de codimensão 2 e 3, os relatórios de identidades e de
positividade e a reconstrução de Lat(Perm(v)) pela fórmula de McMullen.
"""
from __future__ import annotations

import itertools
import logging
import math
import threading
from fractions import Fraction
from typing import Any, Dict, List, Tuple

try:
    from typing import Annotated  # Py3.9+
except ImportError:  # pragma: no cover
    from typing_extensions import Annotated  # fallback

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from permutohedron_modules.counter import count_lattice_points, rank_from_weights  # type: ignore
from permutohedron_modules.ehrhart import ehrhart_of_weights, lat_r, nvol_face, precompute  # type: ignore
from permutohedron_modules.mixedval import MixedLatQuery, mixed_lat  # type: ignore
from permutohedron_modules.permdata import (  # type: ignore
    SubsetIndex,
    WeightVector,
    all_subsets,
    c_constant,
    orbit_size,
    subset_to_composition,
)

logger = logging.getLogger("alpha")


class AlphaTable(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: Annotated[int, Field(ge=1)]
    entries: Dict[Tuple[int, ...], Fraction]

    @field_validator("entries", mode="before")
    @classmethod
    def _normalize_keys(cls, v: Any) -> Dict[Tuple[int, ...], Fraction]:
        return {tuple(k): val for k, val in dict(v).items()}

    @model_validator(mode="after")
    def _check_keys(self) -> "AlphaTable":
        expected = {s.members for s in all_subsets(self.n)}
        if set(self.entries) != expected:
            raise ValueError(f"tabela α de n={self.n} precisa de exatamente {2 ** self.n} entradas")
        return self

    def get(self, s: SubsetIndex) -> Fraction:
        return self.entries[s.members]

    def rows(self) -> List[Tuple[SubsetIndex, Fraction]]:
        return [(s, self.entries[s.members]) for s in all_subsets(self.n)]


class IdentityCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class IdentityReport(BaseModel):
    n: int
    checks: List[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class PositivityReport(BaseModel):
    n: int
    checked: int
    nonpositive: List[Tuple[int, ...]]

    @property
    def passed(self) -> bool:
        return not self.nonpositive


class McMullenReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    weights: Tuple[int, ...]
    lhs: int
    rhs: Fraction
    equal: bool


class CoefficientRow(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    degree: int
    ehrhart_coeff: Fraction
    face_sum: Fraction
    equal: bool


class SecondCoefficientReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    coefficient: Fraction
    half_facet_sum: Fraction
    equal: bool


_TABLES: Dict[int, AlphaTable] = {}
_TABLES_LOCK = threading.Lock()


def clear_tables() -> None:
    with _TABLES_LOCK:
        _TABLES.clear()


def alpha_entry(n: int, s: SubsetIndex) -> Fraction:
    m = subset_to_composition(s).parts
    k = s.size
    mixed = mixed_lat(MixedLatQuery(n=n, indices=s.members))
    return Fraction(math.prod(m), math.factorial(n + 1)) * math.factorial(k) * mixed


def alpha_table(n: int, workers: int = 1) -> AlphaTable:
    """Tabela completa de α_n; o resultado não depende de `workers`."""
    if n < 1:
        raise ValueError(f"n deve ser ≥ 1 (recebido {n})")
    with _TABLES_LOCK:
        hit = _TABLES.get(n)
    if hit is not None:
        return hit

    # as 2^n somas Σ_{j∈J} Δ_j são compartilhadas por todos os S
    precompute((WeightVector.indicator(n, s.members) for s in all_subsets(n) if s.size), workers=workers)
    entries = {s.members: alpha_entry(n, s) for s in all_subsets(n)}
    table = AlphaTable(n=n, entries=entries)
    logger.info("Tabela α_%d pronta (%d entradas)", n, len(entries))
    with _TABLES_LOCK:
        _TABLES.setdefault(n, table)
    return table


def alpha_closed_codim2(n: int, i: int, j: int) -> Fraction:
    """S = [n] \\ {i, j}."""
    if not 1 <= i < j <= n:
        raise ValueError(f"esperado 1 ≤ i < j ≤ n, recebido i={i}, j={j}, n={n}")
    return Fraction(1, 4) - Fraction(1, 12) * (Fraction(i, j) + Fraction(n + 1 - j, n + 1 - i))


def alpha_closed_codim3(n: int, i: int, j: int, k: int) -> Fraction:
    """S = [n] \\ {i, j, k}."""
    if not 1 <= i < j < k <= n:
        raise ValueError(f"esperado 1 ≤ i < j < k ≤ n, recebido ({i}, {j}, {k}), n={n}")
    return Fraction(1, 8) - Fraction(1, 24) * (Fraction(i, j) + 1 + Fraction(n + 1 - k, n + 1 - j))


def closed_forms(n: int) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """Todas as formas fechadas de n: pares (complemento de S, α)."""
    out: List[Tuple[Tuple[int, ...], Fraction]] = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        out.append(((i, j), alpha_closed_codim2(n, i, j)))
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        out.append(((i, j, k), alpha_closed_codim3(n, i, j, k)))
    return out


def closed_form_positivity(n_max: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """Lista (n, complemento) com forma fechada ≤ 0, n = 2..n_max. Vazia quando tudo é positivo."""
    return [(n, comp) for n in range(2, n_max + 1) for comp, val in closed_forms(n) if val <= 0]


def verify_identities(t: AlphaTable) -> IdentityReport:
    n = t.n
    vertex = t.entries[()]
    facets = [(s, v) for s, v in t.rows() if s.size == n - 1]
    bad_facets = [s.render() for s, v in facets if v != Fraction(1, 2)]
    full = t.entries[tuple(range(1, n + 1))]
    checks = [
        IdentityCheck(
            name="soma-vertices",
            passed=math.factorial(n + 1) * vertex == 1,
            detail=f"{math.factorial(n + 1)}·{vertex}",
        ),
        IdentityCheck(
            name="facetas-meio",
            passed=not bad_facets,
            detail=";".join(bad_facets),
        ),
        IdentityCheck(name="polítopo-inteiro", passed=full == 1, detail=str(full)),
    ]
    return IdentityReport(n=n, checks=checks)


def verify_positivity(t: AlphaTable) -> PositivityReport:
    bad = [members for members, v in sorted(t.entries.items()) if v <= 0]
    return PositivityReport(n=t.n, checked=len(t.entries), nonpositive=bad)


def _require_generic(w: WeightVector) -> None:
    if w.n < 1:
        raise ValueError("Perm(v) precisa de n ≥ 1")
    if not w.is_generic():
        raise ValueError(f"pesos devem ser todos ≥ 1 (v estritamente crescente): {w.weights}")


def mcmullen_reconstruct(w: WeightVector, workers: int = 1) -> McMullenReport:
    _require_generic(w)
    table = alpha_table(w.n, workers=workers)
    lhs = count_lattice_points(rank_from_weights(w, 1))
    rhs = sum(
        (orbit_size(s) * alpha * nvol_face(s, w) for s, alpha in table.rows()),
        Fraction(0),
    )
    return McMullenReport(weights=w.weights, lhs=lhs, rhs=rhs, equal=(lhs == rhs))


def mcmullen_coefficients(w: WeightVector, workers: int = 1) -> List[CoefficientRow]:
    """Coeficiente de t^k de i(Perm(v), t) contra Σ_{|S|=k} |O_n(S)|·α_n(S)·nvol(F_S)."""
    _require_generic(w)
    table = alpha_table(w.n, workers=workers)
    poly = ehrhart_of_weights(w)
    sums = [Fraction(0)] * (w.n + 1)
    for s, alpha in table.rows():
        sums[s.size] += orbit_size(s) * alpha * nvol_face(s, w)
    return [
        CoefficientRow(degree=k, ehrhart_coeff=lat_r(poly, k), face_sum=sums[k], equal=lat_r(poly, k) == sums[k])
        for k in range(w.n + 1)
    ]


def squarefree_face_coefficient(s: SubsetIndex) -> int:
    # bloco de tamanho p: coeficiente de w_1···w_{p-1} em nvol(Perm) = (p-1)!·MLat^{p-1}(Δ_1, ..., Δ_{p-1})
    out = Fraction(1)
    for p in subset_to_composition(s).parts:
        if p < 2:
            continue
        d = p - 1
        out *= math.factorial(d) * mixed_lat(MixedLatQuery(n=d, indices=range(1, d + 1)))
    if out.denominator != 1:
        raise RuntimeError(f"coeficiente livre de quadrados não inteiro para S={s.render()}: {out}")
    return int(out)


def second_coefficient_check(n: int) -> SecondCoefficientReport:
    """Segundo coeficiente de i(Π_n, t) = metade da soma dos volumes das facetas."""
    w = WeightVector.regular(n)
    coeff = lat_r(ehrhart_of_weights(w), n - 1)
    facets = [s for s in all_subsets(n) if s.size == n - 1]
    half = Fraction(1, 2) * sum((orbit_size(s) * nvol_face(s, w) for s in facets), Fraction(0))
    return SecondCoefficientReport(n=n, coefficient=coeff, half_facet_sum=half, equal=coeff == half)


def squarefree_matches_c_constant(s: SubsetIndex) -> bool:
    return squarefree_face_coefficient(s) == c_constant(s)
