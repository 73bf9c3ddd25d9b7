"""
permdata.py — Modelo combinatório de Perm(v) e Π_n.

- Perm(v) é codificado pelos pesos w_i = v_{i+1} − v_i (soma de Minkowski Σ w_i·Δ_{i,n+1}).
- Órbitas de faces são indexadas por subconjuntos S ⊆ [n] ou por composições m de n+1.
- Faces individuais nunca são materializadas; só o representante F_S da órbita.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Any, Iterator, List, Tuple

try:
    from typing import Annotated  # Py3.9+
except ImportError:  # pragma: no cover
    from typing_extensions import Annotated  # fallback

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

NonNegInt = Annotated[int, Field(ge=0)]


class WeightVector(BaseModel):
    """Pesos (w_1..w_n) ≥ 0. n = 0 representa um ponto (fator de tamanho 1)."""

    model_config = ConfigDict(frozen=True)

    weights: Tuple[NonNegInt, ...]

    @field_validator("weights", mode="before")
    @classmethod
    def _as_tuple(cls, v: Any) -> Tuple[int, ...]:
        return tuple(v)

    @classmethod
    def of(cls, *weights: int) -> "WeightVector":
        return cls(weights=weights)

    @classmethod
    def hypersimplex(cls, n: int, k: int) -> "WeightVector":
        """Δ_{k,n+1}: indicador de k."""
        if not 1 <= k <= n:
            raise ValueError(f"hipersimplexo Δ_{{{k},{n + 1}}} fora de 1..{n}")
        return cls(weights=tuple(1 if i == k else 0 for i in range(1, n + 1)))

    @classmethod
    def indicator(cls, n: int, members: Tuple[int, ...]) -> "WeightVector":
        """Σ_{j ∈ J} Δ_{j,n+1}."""
        return cls(weights=tuple(1 if i in members else 0 for i in range(1, n + 1)))

    @classmethod
    def regular(cls, n: int) -> "WeightVector":
        """Π_n = Perm(1, 2, ..., n+1)."""
        return cls(weights=(1,) * n)

    @property
    def n(self) -> int:
        return len(self.weights)

    def is_zero(self) -> bool:
        return not any(self.weights)

    def is_generic(self) -> bool:
        return all(w >= 1 for w in self.weights)

    def scaled(self, c: int) -> "WeightVector":
        return WeightVector(weights=tuple(c * w for w in self.weights))

    def __add__(self, other: "WeightVector") -> "WeightVector":
        if self.n != other.n:
            raise ValueError(f"somas de Minkowski em ambientes diferentes: {self.n} != {other.n}")
        return WeightVector(weights=tuple(a + b for a, b in zip(self.weights, other.weights)))

    def v_vector(self) -> Tuple[int, ...]:
        """v com v_1 = 0 e diferenças consecutivas iguais aos pesos."""
        return (0,) + tuple(itertools.accumulate(self.weights))


class Composition(BaseModel):
    model_config = ConfigDict(frozen=True)

    parts: Tuple[Annotated[int, Field(ge=1)], ...]

    @field_validator("parts", mode="before")
    @classmethod
    def _as_tuple(cls, v: Any) -> Tuple[int, ...]:
        vals = tuple(v)
        if not vals:
            raise ValueError("composição vazia")
        return vals

    @property
    def n(self) -> int:
        # ambiente: Σ partes = n + 1
        return sum(self.parts) - 1

    def render(self) -> str:
        return "+".join(str(p) for p in self.parts)


class SubsetIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: Annotated[int, Field(ge=1)]
    members: Tuple[int, ...] = ()

    @field_validator("members", mode="before")
    @classmethod
    def _as_tuple(cls, v: Any) -> Tuple[int, ...]:
        return tuple(v)

    @model_validator(mode="after")
    def _check_members(self) -> "SubsetIndex":
        prev = 0
        for s in self.members:
            if s <= prev:
                raise ValueError(f"membros devem ser estritamente crescentes: {self.members}")
            if s > self.n:
                raise ValueError(f"membro {s} fora de [1, {self.n}]")
            prev = s
        return self

    @classmethod
    def of(cls, n: int, *members: int) -> "SubsetIndex":
        return cls(n=n, members=tuple(sorted(members)))

    @classmethod
    def full(cls, n: int) -> "SubsetIndex":
        return cls(n=n, members=tuple(range(1, n + 1)))

    @classmethod
    def complement_of(cls, n: int, removed: Tuple[int, ...]) -> "SubsetIndex":
        """S = [n] \\ removed."""
        return cls(n=n, members=tuple(i for i in range(1, n + 1) if i not in removed))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def codim(self) -> int:
        return self.n - len(self.members)

    def complement(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if i not in self.members)

    def render(self) -> str:
        # "1,3"; conjunto vazio vira "-"
        return ",".join(str(s) for s in self.members) or "-"


class FaceFactorization(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: Annotated[int, Field(ge=1)]
    factors: Tuple[WeightVector, ...]

    @model_validator(mode="after")
    def _check_total(self) -> "FaceFactorization":
        total = sum(f.n + 1 for f in self.factors)
        if total != self.n + 1:
            raise ValueError(f"fatores cobrem {total} coordenadas, esperado {self.n + 1}")
        return self


def all_subsets(n: int) -> Iterator[SubsetIndex]:
    """Todos os S ⊆ [n], por tamanho e depois em ordem lexicográfica."""
    for k in range(n + 1):
        for combo in itertools.combinations(range(1, n + 1), k):
            yield SubsetIndex(n=n, members=combo)


def composition_to_subset(m: Composition) -> SubsetIndex:
    n = m.n
    partial = set(itertools.accumulate(m.parts))
    return SubsetIndex(n=n, members=tuple(i for i in range(1, n + 1) if i not in partial))


def subset_to_composition(s: SubsetIndex) -> Composition:
    cuts = [t for t in range(1, s.n + 2) if t not in s.members]
    return Composition(parts=tuple(b - a for a, b in zip([0] + cuts, cuts)))


def orbit_size(s: SubsetIndex) -> int:
    out = math.factorial(s.n + 1)
    for p in subset_to_composition(s).parts:
        out //= math.factorial(p)
    return out


def c_constant(s: SubsetIndex) -> int:
    return math.prod(math.factorial(p - 1) for p in subset_to_composition(s).parts)


def face_factorization(s: SubsetIndex, parent: WeightVector) -> FaceFactorization:
    if s.n != parent.n:
        raise ValueError(f"S está em [{s.n}], mas o peso tem n={parent.n}")
    factors: List[WeightVector] = []
    start = 0
    for p in subset_to_composition(s).parts:
        # bloco com p coordenadas de v → p−1 diferenças internas
        factors.append(WeightVector(weights=parent.weights[start:start + p - 1]))
        start += p
    return FaceFactorization(n=s.n, factors=tuple(factors))


def oc_identity_check(s: SubsetIndex) -> bool:
    lhs = Fraction(1, orbit_size(s) * c_constant(s))
    rhs = Fraction(math.prod(subset_to_composition(s).parts), math.factorial(s.n + 1))
    return lhs == rhs


def total_face_count(n: int) -> int:
    """Número de faces de Π_n (partições ordenadas de [n+1])."""
    return sum(orbit_size(s) for s in all_subsets(n))
