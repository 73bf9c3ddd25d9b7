"""
reproduce.py — Bateria de reprodução: todos os valores de referência + propriedades.

Cada Check tem uma tag (para filtrar com --only), um nome legível, o valor esperado
renderizado e uma função sem argumentos que calcula o valor. O resultado é comparado
pela forma canônica em texto ("p/q", "true", tuplas).
"""
from __future__ import annotations

import itertools
import logging
import os
import random
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict
from rapidfuzz import process

from permutohedron_modules.alpha import (  # type: ignore
    alpha_closed_codim2,
    alpha_closed_codim3,
    alpha_table,
    closed_form_positivity,
    mcmullen_coefficients,
    mcmullen_reconstruct,
    second_coefficient_check,
    squarefree_matches_c_constant,
    verify_identities,
    verify_positivity,
)
from permutohedron_modules.conepsi import (  # type: ignore
    ConeSpec,
    alpha_via_psi,
    box_check,
    convex_hull,
    pick_check,
    psi_dim2_general,
    psi_dim2_unimodular,
    psi_dim3_unimodular,
)
from permutohedron_modules.counter import count_brute_force, count_lattice_points, rank_from_weights  # type: ignore
from permutohedron_modules.ehrhart import ehrhart_of_weights, evaluate  # type: ignore
from permutohedron_modules.exact import evaluate_polynomial, solve_vandermonde  # type: ignore
from permutohedron_modules.mixedval import MixedLatQuery, mixed_lat  # type: ignore
from permutohedron_modules.permdata import SubsetIndex, WeightVector, all_subsets  # type: ignore

logger = logging.getLogger("reproduce")

TABLES_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "alpha_tables.txt")
PROPERTY_SEED = 20240611


class Check(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    tag: str
    name: str
    expected: str
    compute: Callable[[], Any]


class CheckResult(BaseModel):
    tag: str
    name: str
    expected: str
    computed: str
    passed: bool


class BatteryReport(BaseModel):
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]


def render_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(render_value(x) for x in v) + ")"
    return str(v)


def load_alpha_tables(path: str = TABLES_PATH) -> Dict[int, Dict[Tuple[int, ...], Fraction]]:
    """Lê linhas `n S alpha`; S em dígitos ou "-" para o vazio."""
    out: Dict[int, Dict[Tuple[int, ...], Fraction]] = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            n_txt, subset_txt, value_txt = s.split()
            members = () if subset_txt == "-" else tuple(int(ch) for ch in subset_txt)
            out.setdefault(int(n_txt), {})[members] = Fraction(value_txt)
    return out


# --- grupos de checks ---

def _alpha_checks(tables: Dict[int, Dict[Tuple[int, ...], Fraction]]) -> List[Check]:
    checks: List[Check] = []
    for n in sorted(tables):
        for members, value in sorted(tables[n].items(), key=lambda kv: (len(kv[0]), kv[0])):
            s = SubsetIndex(n=n, members=members)
            checks.append(Check(
                tag=f"alpha-n{n}",
                name=f"α_{n}({s.render()})",
                expected=str(value),
                compute=lambda n=n, s=s: alpha_table(n).get(s),
            ))
    return checks


def _ehrhart_checks() -> List[Check]:
    def coeffs(*weights: int) -> Callable[[], Any]:
        return lambda: ehrhart_of_weights(WeightVector(weights=weights)).coeffs

    tag = "ehrhart-hypersimplex"
    return [
        Check(tag=tag, name="i(Δ_{1,6}, t)", expected="(1, 137/60, 15/8, 17/24, 1/8, 1/120)", compute=coeffs(1, 0, 0, 0, 0)),
        Check(tag=tag, name="i(Δ_{2,6}, t)", expected="(1, 101/30, 5, 47/12, 3/2, 13/60)", compute=coeffs(0, 1, 0, 0, 0)),
        Check(tag=tag, name="i(Δ_{3,6}, t)", expected="(1, 37/10, 25/4, 23/4, 11/4, 11/20)", compute=coeffs(0, 0, 1, 0, 0)),
        Check(tag=tag, name="i(Δ_{1,4}+Δ_{3,4}, t)", expected="(1, 11/3, 5, 10/3)", compute=coeffs(1, 0, 1)),
        Check(tag=tag, name="i(Δ_{1,4}, t)", expected="(1, 11/6, 1, 1/6)", compute=coeffs(1, 0, 0)),
        Check(
            tag=tag,
            name="#(3·Δ_{1,6})",
            expected="56",
            compute=lambda: count_lattice_points(rank_from_weights(WeightVector.hypersimplex(5, 1), 3)),
        ),
    ]


def _mixed_checks() -> List[Check]:
    checks = [
        Check(
            tag="mixed",
            name="2!·MLat²(Δ_{1,4}, Δ_{3,4})",
            expected="3",
            compute=lambda: 2 * mixed_lat(MixedLatQuery(n=3, indices=(1, 3))),
        ),
        Check(tag="mixed", name="α_3({1,3})", expected="1/2", compute=lambda: alpha_table(3).get(SubsetIndex.of(3, 1, 3))),
    ]
    for n in range(1, 7):
        checks.append(Check(
            tag="mixed",
            name=f"MLat^{n}(Δ_1, ..., Δ_{n})",
            expected="1",
            compute=lambda n=n: mixed_lat(MixedLatQuery(n=n, indices=range(1, n + 1))),
        ))
    return checks


def _psi_checks() -> List[Check]:
    def triangle_sum() -> Fraction:
        return sum(pick_check(convex_hull([(0, 0), (2, 0), (0, 1)])).vertex_psi, Fraction(0))

    return [
        Check(tag="psi", name="Ψ(primeiro quadrante)", expected="1/4",
              compute=lambda: psi_dim2_unimodular(ConeSpec.standard([(1, 0), (0, 1)]))),
        Check(tag="psi", name="Ψ(Cone((-2,1),(-1,0)))", expected="9/20",
              compute=lambda: psi_dim2_unimodular(ConeSpec.standard([(-2, 1), (-1, 0)]))),
        Check(tag="psi", name="Ψ(Cone((0,-1),(1,-1)))", expected="3/8",
              compute=lambda: psi_dim2_unimodular(ConeSpec.standard([(0, -1), (1, -1)]))),
        Check(tag="psi", name="Ψ(Cone((1,-1),(2,-1)))", expected="17/40",
              compute=lambda: psi_dim2_unimodular(ConeSpec.standard([(1, -1), (2, -1)]))),
        Check(tag="psi", name="Ψ(Cone((0,-1),(2,-1)))", expected="3/10",
              compute=lambda: psi_dim2_general(ConeSpec.standard([(0, -1), (2, -1)]))),
        Check(tag="psi", name="Σ Ψ vértices do triângulo (0,0),(2,0),(0,1)", expected="1", compute=triangle_sum),
        Check(tag="psi", name="Ψ(ortante de Z³)", expected="1/8",
              compute=lambda: psi_dim3_unimodular(ConeSpec.standard([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))),
        Check(tag="psi", name="Pick no triângulo (0,0),(3,0),(0,3)", expected="(10, true)",
              compute=lambda: (lambda r: (r.lat, r.all_equal))(pick_check(convex_hull([(0, 0), (3, 0), (0, 3)])))),
    ]


def _cross_pipeline_mismatches(n: int) -> List[str]:
    table = alpha_table(n)
    bad = []
    for s in all_subsets(n):
        if s.codim <= 3 and alpha_via_psi(n, s) != table.get(s):
            bad.append(s.render())
        if s.codim == 2:
            i, j = s.complement()
            if alpha_closed_codim2(n, i, j) != table.get(s):
                bad.append(f"fechada:{s.render()}")
        if s.codim == 3:
            i, j, k = s.complement()
            if alpha_closed_codim3(n, i, j, k) != table.get(s):
                bad.append(f"fechada:{s.render()}")
    return bad


def _closed_vs_psi_mismatches(n: int) -> List[str]:
    bad = []
    for comp in itertools.combinations(range(1, n + 1), 2):
        s = SubsetIndex.complement_of(n, comp)
        if alpha_via_psi(n, s) != alpha_closed_codim2(n, *comp):
            bad.append(s.render())
    for comp in itertools.combinations(range(1, n + 1), 3):
        s = SubsetIndex.complement_of(n, comp)
        if alpha_via_psi(n, s) != alpha_closed_codim3(n, *comp):
            bad.append(s.render())
    return bad


def _cross_checks() -> List[Check]:
    checks = [
        Check(tag="cross-pipeline", name=f"Ψ = tabela = forma fechada, n={n}", expected="()",
              compute=lambda n=n: _cross_pipeline_mismatches(n))
        for n in range(1, 7)
    ]
    checks += [
        Check(tag="cross-pipeline", name=f"Ψ = forma fechada, n={n}", expected="()",
              compute=lambda n=n: _closed_vs_psi_mismatches(n))
        for n in range(7, 11)
    ]
    return checks


def _identity_checks() -> List[Check]:
    checks = []
    for n in range(1, 7):
        checks.append(Check(tag="identities", name=f"identidades de soma, n={n}", expected="true",
                            compute=lambda n=n: verify_identities(alpha_table(n)).passed))
        checks.append(Check(tag="identities", name=f"positividade, n={n}", expected="true",
                            compute=lambda n=n: verify_positivity(alpha_table(n)).passed))
    for n in range(1, 5):
        checks.append(Check(tag="identities", name=f"segundo coeficiente de i(Π_{n}, t)", expected="true",
                            compute=lambda n=n: second_coefficient_check(n).equal))
    for n in range(1, 6):
        checks.append(Check(tag="identities", name=f"coeficiente livre de quadrados = C_{n}(S)", expected="true",
                            compute=lambda n=n: all(squarefree_matches_c_constant(s) for s in all_subsets(n))))
    checks.append(Check(tag="identities", name="McMullen por grau em Π_3 e Perm com pesos (2,1,3)", expected="true",
                        compute=lambda: all(r.equal for w in ((1, 1, 1), (2, 1, 3))
                                            for r in mcmullen_coefficients(WeightVector(weights=w)))))
    checks.append(Check(tag="identities", name="caixas 1×2×3 e 4×1", expected="true",
                        compute=lambda: box_check((1, 2, 3)).equal and box_check((4, 1)).equal))
    return checks


def _oracle_counter_grid() -> bool:
    for n in range(1, 4):
        for weights in itertools.product(range(3), repeat=n):
            w = WeightVector(weights=weights)
            for t in range(4):
                r = rank_from_weights(w, t)
                if count_lattice_points(r) != count_brute_force(r):
                    logger.warning("Contagem divergente: pesos=%s t=%d", weights, t)
                    return False
    return True


def _oracle_mcmullen_grid() -> bool:
    for n in range(1, 5):
        for weights in itertools.product((1, 2, 3), repeat=n):
            if not mcmullen_reconstruct(WeightVector(weights=weights)).equal:
                logger.warning("McMullen divergente: pesos=%s", weights)
                return False
    return True


def _oracle_checks() -> List[Check]:
    return [
        Check(tag="oracle", name="contador = força bruta (n ≤ 3, pesos ≤ 2, t ≤ 3)", expected="true",
              compute=_oracle_counter_grid),
        Check(tag="oracle", name="reconstrução de McMullen (n ≤ 4, pesos em {1,2,3})", expected="true",
              compute=_oracle_mcmullen_grid),
    ]


def _random_polygon(rng: random.Random) -> Any:
    while True:
        pts = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(rng.choice((3, 4)))]
        try:
            return convex_hull(pts)
        except ValueError:
            continue


def _random_cone(rng: random.Random) -> ConeSpec:
    while True:
        a = (rng.randint(-6, 6), rng.randint(-6, 6))
        b = (rng.randint(-6, 6), rng.randint(-6, 6))
        if a[0] * b[1] - a[1] * b[0] != 0:
            return ConeSpec.standard([a, b])


def _property_vertex_sums() -> bool:
    rng = random.Random(PROPERTY_SEED)
    return all(sum(pick_check(_random_polygon(rng)).vertex_psi, Fraction(0)) == 1 for _ in range(50))


def _property_cone_symmetries() -> bool:
    rng = random.Random(PROPERTY_SEED + 1)
    for _ in range(30):
        c = _random_cone(rng)
        value = psi_dim2_general(c)
        if psi_dim2_general(c.negated()) != value or psi_dim2_general(c.permuted((1, 0))) != value:
            return False
    return True


def _property_vandermonde() -> bool:
    rng = random.Random(PROPERTY_SEED + 2)
    for _ in range(20):
        size = rng.randint(1, 7)
        nodes = rng.sample(range(-20, 20), size)
        values = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in nodes]
        coeffs = solve_vandermonde(nodes, values)
        if [evaluate_polynomial(coeffs, x) for x in nodes] != values:
            return False
    return True


def _property_reinterpolation() -> bool:
    for weights in ((1, 0, 1), (1, 1, 1), (2, 0, 1, 1)):
        w = WeightVector(weights=weights)
        base = ehrhart_of_weights(w)
        if ehrhart_of_weights(w, dilations=w.n + 1) != base:
            return False
        if evaluate(base, w.n + 2) != count_lattice_points(rank_from_weights(w, w.n + 2)):
            return False
    return True


def _property_checks() -> List[Check]:
    return [
        Check(tag="properties", name="Σ Ψ dos vértices = 1 em 50 polígonos aleatórios", expected="true",
              compute=_property_vertex_sums),
        Check(tag="properties", name="Ψ invariante por negação e troca de coordenadas", expected="true",
              compute=_property_cone_symmetries),
        Check(tag="properties", name="interpolação reproduz os nós", expected="true", compute=_property_vandermonde),
        Check(tag="properties", name="reinterpolação com nó extra mantém o grau", expected="true",
              compute=_property_reinterpolation),
    ]


def build_battery(tables_path: str = TABLES_PATH) -> List[Check]:
    tables = load_alpha_tables(tables_path)
    return (
        _alpha_checks(tables)
        + _ehrhart_checks()
        + _mixed_checks()
        + _psi_checks()
        + _cross_checks()
        + [Check(tag="closed-positivity", name="formas fechadas positivas, n ≤ 50", expected="()",
                 compute=lambda: closed_form_positivity(50))]
        + _identity_checks()
        + _oracle_checks()
        + _property_checks()
    )


def select(checks: List[Check], only: Optional[str]) -> List[Check]:
    """Filtra por tag (igual ou prefixo). Tag desconhecida → ValueError com sugestão."""
    if not only:
        return list(checks)
    chosen = [c for c in checks if c.tag == only or c.tag.startswith(only)]
    if chosen:
        return chosen
    tags = sorted({c.tag for c in checks})
    hint = process.extractOne(only, tags)
    suggestion = f" (você quis dizer '{hint[0]}'?)" if hint else ""
    raise ValueError(f"nenhum check com tag '{only}'{suggestion}")


def run_battery(checks: List[Check], only: Optional[str] = None) -> BatteryReport:
    results: List[CheckResult] = []
    for c in select(checks, only):
        try:
            computed = render_value(c.compute())
        except Exception as e:
            logger.exception("Falha ao calcular %s", c.name)
            computed = f"erro: {e}"
        results.append(CheckResult(tag=c.tag, name=c.name, expected=c.expected, computed=computed,
                                   passed=(computed == c.expected)))
        logger.debug("%s: %s", c.name, computed)
    logger.info("Bateria: %d/%d ok", sum(r.passed for r in results), len(results))
    return BatteryReport(results=results)
