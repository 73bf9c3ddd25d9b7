"""
conepsi.py — Valoração Ψ em cones racionais apontados de dimensão ≤ 3.

- Dimensões 0 e 1: valores 1 e 1/2.
- Dimensão 2: fórmula fechada no caso unimodular; caso geral por subdivisão de
  Hirzebruch–Jung em cones unimodulares (soma dos pedaços menos 1/2 por raio interno).
- Dimensão 3: só o caso unimodular (fórmula fechada).
- Produtos internos sempre na métrica euclidiana do espaço onde os geradores vivem.

Também monta os geradores projetados de fcone^p(F_S, Π_n), a verificação de Pick
para polígonos inteiros e o exemplo das caixas.
"""
from __future__ import annotations

import itertools
import logging
import math
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from permutohedron_modules.exact import (  # type: ignore
    RatVector,
    inner_product,
    is_unimodular,
    lattice_coordinates,
    project_orthogonal,
)
from permutohedron_modules.permdata import SubsetIndex  # type: ignore

logger = logging.getLogger("conepsi")

Point = Tuple[int, int]


class ConeSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    generators: Tuple[RatVector, ...] = ()
    lattice_basis: Tuple[RatVector, ...] = ()

    @field_validator("generators", "lattice_basis", mode="before")
    @classmethod
    def _coerce(cls, v: Any) -> Tuple[RatVector, ...]:
        return tuple(x if isinstance(x, RatVector) else RatVector.of(x) for x in v)

    @model_validator(mode="after")
    def _check_dims(self) -> "ConeSpec":
        dims = {g.dim for g in self.generators + self.lattice_basis}
        if len(dims) > 1:
            raise ValueError(f"vetores de dimensões diferentes: {sorted(dims)}")
        if self.generators and not self.lattice_basis:
            raise ValueError("cone com geradores precisa de base de reticulado")
        return self

    @classmethod
    def standard(cls, generators: Sequence[Sequence[Any]]) -> "ConeSpec":
        """Cone com reticulado Z^d (d = dimensão dos geradores)."""
        gens = [RatVector.of(g) for g in generators]
        if not gens:
            raise ValueError("use ConeSpec() para o cone nulo")
        d = gens[0].dim
        basis = [RatVector.of([1 if i == j else 0 for j in range(d)]) for i in range(d)]
        return cls(generators=gens, lattice_basis=basis)

    def negated(self) -> "ConeSpec":
        return ConeSpec(generators=tuple(-g for g in self.generators), lattice_basis=self.lattice_basis)

    def permuted(self, perm: Sequence[int]) -> "ConeSpec":
        """Aplica a permutação de coordenadas perm (imagem da coordenada i em perm[i])."""
        def move(v: RatVector) -> RatVector:
            out = [Fraction(0)] * v.dim
            for i, j in enumerate(perm):
                out[j] = v[i]
            return RatVector.of(out)
        return ConeSpec(
            generators=tuple(move(g) for g in self.generators),
            lattice_basis=tuple(move(b) for b in self.lattice_basis),
        )


class Polygon(BaseModel):
    """Polígono inteiro convexo; vértices guardados em sentido anti-horário."""

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[Tuple[int, int], ...]

    @field_validator("vertices", mode="before")
    @classmethod
    def _orient(cls, v: Any) -> Tuple[Point, ...]:
        pts = [_lattice_point(p) for p in v]
        if len(pts) < 3 or len(set(pts)) != len(pts):
            raise ValueError(f"polígono precisa de ≥ 3 vértices distintos: {pts}")
        if _twice_area(pts) == 0:
            raise ValueError(f"polígono degenerado (área nula): {pts}")
        if _twice_area(pts) < 0:
            pts.reverse()
        size = len(pts)
        for i in range(size):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % size]
            if _cross(_sub(b, a), _sub(c, b)) <= 0:
                raise ValueError(f"vértices fora de posição convexa em {b}")
        return tuple(pts)


class PickReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    lat: int
    area: Fraction
    boundary: int
    vertex_psi: List[Fraction]
    mcmullen_sum: Fraction
    all_equal: bool


class BoxReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    lengths: Tuple[int, ...]
    direct: Tuple[Fraction, ...]
    via_alpha: Tuple[Fraction, ...]
    equal: bool


# --- auxiliares inteiros (coordenadas no reticulado) ---

def _lattice_point(p: Sequence[Any]) -> Point:
    x, y = p
    for c in (x, y):
        if isinstance(c, bool) or not isinstance(c, int):
            raise ValueError(f"coordenada não inteira: {c!r} em {tuple(p)}")
    return (x, y)


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _cross(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _twice_area(pts: Sequence[Point]) -> int:
    return sum(_cross(pts[i - 1], pts[i]) for i in range(len(pts)))


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _primitive(coords: Sequence[Fraction]) -> Tuple[int, ...]:
    """Menor vetor inteiro positivo-múltiplo de coords."""
    scale = math.lcm(*(Fraction(c).denominator for c in coords))
    ints = [int(Fraction(c) * scale) for c in coords]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("gerador nulo")
    return tuple(x // g for x in ints)


def _hj_rays(a: Tuple[int, int], b: Tuple[int, int]) -> List[Tuple[int, int]]:
    """Raios da subdivisão de Hirzebruch–Jung de Cone(a, b), com det(a, b) > 0."""
    rays = [a]
    cur = a
    while True:
        d = _cross(cur, b)
        if d == 1:
            rays.append(b)
            return rays
        g, x, y = _ext_gcd(cur[0], cur[1])
        if g < 0:
            x, y = -x, -y
        u = (-y, x)  # det(cur, u) = 1
        rest = (b[0] - d * u[0], b[1] - d * u[1])
        alpha = rest[0] // cur[0] if cur[0] else rest[1] // cur[1]
        k = alpha // d + 1  # menor k com det(u + k·cur, b) > 0
        cur = (u[0] + k * cur[0], u[1] + k * cur[1])
        rays.append(cur)


# --- Ψ ---

def _psi2_formula(u1: RatVector, u2: RatVector) -> Fraction:
    p = inner_product(u1, u2)
    return Fraction(1, 4) + Fraction(1, 12) * (p / inner_product(u1, u1) + p / inner_product(u2, u2))


def _psi3_formula(u: Sequence[RatVector]) -> Fraction:
    acc = Fraction(0)
    for a, b in itertools.combinations(u, 2):
        p = inner_product(a, b)
        acc += p / inner_product(a, a) + p / inner_product(b, b)
    return Fraction(1, 8) + Fraction(1, 24) * acc


def psi_dim01(c: ConeSpec) -> Fraction:
    if not c.generators:
        return Fraction(1)
    if len(c.generators) != 1:
        raise ValueError(f"psi_dim01 aceita 0 ou 1 gerador (recebidos {len(c.generators)})")
    g = c.generators[0]
    if g.is_zero():
        raise ValueError("gerador nulo")
    coords = lattice_coordinates(g, c.lattice_basis)
    if any(x.denominator != 1 for x in coords):
        raise ValueError(f"gerador {g} não pertence ao reticulado")
    return Fraction(1, 2)


def psi_dim2_unimodular(c: ConeSpec) -> Fraction:
    if len(c.generators) != 2:
        raise ValueError(f"cone 2-dim precisa de 2 geradores (recebidos {len(c.generators)})")
    if not is_unimodular(c.generators, c.lattice_basis):
        raise ValueError("cone não unimodular; use psi_dim2_general")
    return _psi2_formula(*c.generators)


def psi_dim2_general(c: ConeSpec) -> Fraction:
    if len(c.generators) != 2 or len(c.lattice_basis) != 2:
        raise ValueError("psi_dim2_general precisa de 2 geradores e base de reticulado 2-dim")
    basis = c.lattice_basis
    a, b = (_primitive(lattice_coordinates(g, basis)) for g in c.generators)
    det = _cross(a, b)
    if det == 0:
        raise ValueError(f"cone não apontado ou degenerado: geradores colineares {a}, {b}")
    if det < 0:
        a, b = b, a

    def ambient(x: Tuple[int, ...]) -> RatVector:
        return basis[0].scale(x[0]) + basis[1].scale(x[1])

    rays = _hj_rays(a, b)
    pieces = [_psi2_formula(ambient(r), ambient(s)) for r, s in zip(rays, rays[1:])]
    interior = len(rays) - 2
    logger.debug("Cone %s-%s subdividido em %d pedaços", a, b, len(pieces))
    return sum(pieces, Fraction(0)) - Fraction(interior, 2)


def psi_dim3_unimodular(c: ConeSpec) -> Fraction:
    if len(c.generators) != 3:
        raise ValueError(f"cone 3-dim precisa de 3 geradores (recebidos {len(c.generators)})")
    if not is_unimodular(c.generators, c.lattice_basis):
        raise ValueError("cone 3-dim não unimodular (decomposição 3-dim não suportada)")
    return _psi3_formula(c.generators)


def psi(c: ConeSpec) -> Fraction:
    """Despacha pela quantidade de geradores."""
    k = len(c.generators)
    if k <= 1:
        return psi_dim01(c)
    if k == 2:
        return psi_dim2_general(c)
    if k == 3:
        return psi_dim3_unimodular(c)
    raise ValueError(f"Ψ implementado só até dimensão 3 (recebido {k})")


# --- faces de Π_n ---

def fcone_generators(n: int, s: SubsetIndex) -> Tuple[Tuple[RatVector, ...], Tuple[RatVector, ...]]:
    """Projeções de e_l − e_{l+1}, l ∉ S, no complemento ortogonal de L_S.

    Os mesmos vetores geram o cone e formam a base de Λ_S.
    """
    if s.n != n:
        raise ValueError(f"S está em [{s.n}], esperado [{n}]")
    span = [RatVector.unit_difference(n + 1, i) for i in s.members]
    gens = tuple(project_orthogonal(RatVector.unit_difference(n + 1, l), span) for l in s.complement())
    return gens, gens


def alpha_via_psi(n: int, s: SubsetIndex) -> Fraction:
    if s.codim > 3:
        raise ValueError(f"codimensão {s.codim} > 3 não suportada pelo caminho Ψ")
    gens, lattice = fcone_generators(n, s)
    cone = ConeSpec(generators=gens, lattice_basis=lattice)
    if s.codim <= 1:
        return psi_dim01(cone)
    if s.codim == 2:
        return psi_dim2_unimodular(cone)
    return psi_dim3_unimodular(cone)


# --- polígonos ---

def convex_hull(points: Sequence[Sequence[int]]) -> Polygon:
    """Fecho convexo (cadeia monótona), sem pontos colineares."""
    pts = sorted({_lattice_point(p) for p in points})
    if len(pts) < 3:
        raise ValueError(f"fecho de {len(pts)} pontos é degenerado")

    def half(seq: Sequence[Point]) -> List[Point]:
        chain: List[Point] = []
        for p in seq:
            while len(chain) >= 2 and _cross(_sub(chain[-1], chain[-2]), _sub(p, chain[-1])) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower, upper = half(pts), half(list(reversed(pts)))
    return Polygon(vertices=lower[:-1] + upper[:-1])


def vertex_cone(p: Polygon, i: int) -> ConeSpec:
    verts = p.vertices
    v = verts[i]
    nxt = _sub(verts[(i + 1) % len(verts)], v)
    prv = _sub(verts[i - 1], v)
    return ConeSpec.standard([nxt, prv])


def _inside(p: Polygon, q: Point) -> bool:
    verts = p.vertices
    return all(_cross(_sub(verts[(i + 1) % len(verts)], verts[i]), _sub(q, verts[i])) >= 0 for i in range(len(verts)))


def pick_check(p: Polygon) -> PickReport:
    verts = p.vertices
    xs, ys = [v[0] for v in verts], [v[1] for v in verts]
    lat = sum(
        1
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
        if _inside(p, (x, y))
    )
    area = Fraction(_twice_area(verts), 2)
    edges = [_sub(verts[(i + 1) % len(verts)], verts[i]) for i in range(len(verts))]
    boundary = sum(math.gcd(abs(e[0]), abs(e[1])) for e in edges)
    vertex_psi = [psi_dim2_general(vertex_cone(p, i)) for i in range(len(verts))]
    # arestas: α = 1/2 e nvol = comprimento no reticulado; face 2-dim: α = 1
    mcmullen = sum(vertex_psi, Fraction(0)) + Fraction(boundary, 2) + area
    pick = area + Fraction(boundary, 2) + 1
    return PickReport(
        lat=lat,
        area=area,
        boundary=boundary,
        vertex_psi=vertex_psi,
        mcmullen_sum=mcmullen,
        all_equal=(lat == pick == mcmullen),
    )


# --- caixas ---

def box_check(lengths: Sequence[int]) -> BoxReport:
    """i(caixa, t) direto contra Σ_faces α·nvol, com α da k-face = Ψ do ortante de codimensão D−k."""
    ls = tuple(int(x) for x in lengths)
    dim = len(ls)
    if not 1 <= dim <= 3 or any(x < 1 for x in ls):
        raise ValueError(f"caixa precisa de 1 a 3 lados positivos: {ls}")

    direct = [Fraction(1)]
    for length in ls:
        direct = [a + length * b for a, b in zip(direct + [Fraction(0)], [Fraction(0)] + direct)]

    via = []
    for k in range(dim + 1):
        codim = dim - k
        orthant = ConeSpec.standard([[1 if i == j else 0 for j in range(codim)] for i in range(codim)]) if codim else ConeSpec()
        alpha = psi(orthant)
        # 2^{D−k} faces paralelas a cada escolha de k direções
        faces = sum(math.prod(ls[i] for i in dirs) for dirs in itertools.combinations(range(dim), k))
        via.append(2 ** codim * alpha * faces)
    return BoxReport(lengths=ls, direct=tuple(direct), via_alpha=tuple(via), equal=tuple(direct) == tuple(via))
