# permutohedron_modules/exact.py — aritmética racional exata + núcleo de álgebra linear
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple, Union

import sympy
from pydantic import BaseModel, ConfigDict, field_validator

# Fraction já guarda a forma reduzida (mdc = 1, denominador > 0), então igualdade é estrutural.
Rational = Fraction
Number = Union[int, str, Fraction]


def as_rational(x: Any) -> Fraction:
    """Converte int / str "p/q" / Fraction / sympy.Rational. Float é recusado."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError(f"valor booleano não é racional: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    raise TypeError(f"valor não racional (float é proibido): {x!r}")


def to_sympy(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def render(x: Fraction) -> str:
    # "p/q" ou "p" quando q == 1
    return str(as_rational(x))


class RatVector(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: Tuple[Fraction, ...]

    @field_validator("entries", mode="before")
    @classmethod
    def _coerce(cls, v: Any) -> Tuple[Fraction, ...]:
        vals = tuple(as_rational(x) for x in v)
        if not vals:
            raise ValueError("vetor sem coordenadas")
        return vals

    @classmethod
    def of(cls, values: Iterable[Number]) -> "RatVector":
        return cls(entries=tuple(values))

    @classmethod
    def unit_difference(cls, dim: int, l: int) -> "RatVector":
        """e_l − e_{l+1} em R^dim (l 1-indexado)."""
        vals = [0] * dim
        vals[l - 1] = 1
        vals[l] = -1
        return cls.of(vals)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __add__(self, other: "RatVector") -> "RatVector":
        _check_dims(self, other)
        return RatVector(entries=tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RatVector") -> "RatVector":
        _check_dims(self, other)
        return RatVector(entries=tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "RatVector":
        return RatVector(entries=tuple(-a for a in self.entries))

    def scale(self, c: Number) -> "RatVector":
        f = as_rational(c)
        return RatVector(entries=tuple(f * a for a in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(render(a) for a in self.entries) + ")"


def _check_dims(a: RatVector, b: RatVector) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimensões diferentes: {a.dim} != {b.dim}")


def inner_product(a: RatVector, b: RatVector) -> Fraction:
    _check_dims(a, b)
    return sum((x * y for x, y in zip(a.entries, b.entries)), Fraction(0))


def evaluate_polynomial(coeffs: Sequence[Number], x: Number) -> Fraction:
    """Horner; coeficientes em grau crescente."""
    acc = Fraction(0)
    t = as_rational(x)
    for c in reversed(coeffs):
        acc = acc * t + as_rational(c)
    return acc


def solve_vandermonde(nodes: Sequence[Number], values: Sequence[Number]) -> List[Fraction]:
    """Coeficientes (grau crescente) do único polinômio de grau < len(nodes) que
    passa por todos os pares. Forma de Newton (diferenças divididas), depois expansão."""
    xs = [as_rational(x) for x in nodes]
    ys = [as_rational(y) for y in values]
    if len(xs) != len(ys):
        raise ValueError(f"{len(xs)} nós para {len(ys)} valores")
    if not xs:
        raise ValueError("interpolação sem nós")
    if len(set(xs)) != len(xs):
        raise ValueError("nós repetidos na interpolação")

    divided = list(ys)
    for level in range(1, len(xs)):
        for i in range(len(xs) - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - level])

    # p = d0 + (x - x0)(d1 + (x - x1)(d2 + ...))
    poly = [divided[-1]]
    for i in range(len(xs) - 2, -1, -1):
        shifted = [Fraction(0)] + poly
        for j, c in enumerate(poly):
            shifted[j] -= xs[i] * c
        shifted[0] += divided[i]
        poly = shifted
    return poly


def gram_schmidt(basis: Sequence[RatVector]) -> List[RatVector]:
    ortho: List[RatVector] = []
    for b in basis:
        r = b
        for q in ortho:
            r = r - q.scale(inner_product(r, q) / inner_product(q, q))
        if r.is_zero():
            raise ValueError("base linearmente dependente")
        ortho.append(r)
    return ortho


def project_orthogonal(v: RatVector, basis: Sequence[RatVector]) -> RatVector:
    """v menos sua projeção ortogonal sobre span(basis)."""
    for b in basis:
        _check_dims(v, b)
    out = v
    for q in gram_schmidt(basis):
        out = out - q.scale(inner_product(out, q) / inner_product(q, q))
    return out


def _column_matrix(vectors: Sequence[RatVector]) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(x) for x in vec.entries] for vec in vectors]).T


def lattice_coordinates(v: RatVector, basis: Sequence[RatVector]) -> Tuple[Fraction, ...]:
    """Coordenadas de v na base dada (v precisa estar no span)."""
    if not basis:
        raise ValueError("base vazia")
    for b in basis:
        _check_dims(v, b)
    mat = _column_matrix(basis)
    gram = mat.T * mat
    if gram.det() == 0:
        raise ValueError("base linearmente dependente")
    target = sympy.Matrix([to_sympy(x) for x in v.entries])
    coords = gram.LUsolve(mat.T * target)
    if mat * coords != target:
        raise ValueError(f"vetor {v} fora do span da base")
    return tuple(as_rational(c) for c in coords)


def determinant(rows: Sequence[Sequence[Number]]) -> Fraction:
    mat = sympy.Matrix([[to_sympy(as_rational(x)) for x in row] for row in rows])
    return as_rational(mat.det())


def is_unimodular(generators: Sequence[RatVector], lattice_basis: Sequence[RatVector]) -> bool:
    """Geradores formam base do reticulado: coordenadas inteiras e |det| = 1."""
    if len(generators) != len(lattice_basis):
        return False
    if not generators:
        return True
    try:
        rows = [lattice_coordinates(g, lattice_basis) for g in generators]
    except ValueError:
        return False
    if any(c.denominator != 1 for row in rows for c in row):
        return False
    return abs(determinant(rows)) == 1
