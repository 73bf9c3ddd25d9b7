# -*- coding: utf-8 -*-
"""
bv_alpha.py — CLI: tabelas α_n(S), polinômios de Ehrhart, Ψ, verificações e a bateria de reprodução.

Saída padrão só com resultados; progresso e logs vão para stderr.
Códigos de saída: 0 sucesso, 1 divergência de verificação, 2 erro de uso.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from permutohedron_modules.alpha import (  # type: ignore
    alpha_table,
    closed_forms,
    mcmullen_coefficients,
    mcmullen_reconstruct,
    verify_identities,
    verify_positivity,
)
from permutohedron_modules.conepsi import (  # type: ignore
    ConeSpec,
    Polygon,
    alpha_via_psi,
    convex_hull,
    pick_check,
    psi_dim2_general,
    psi_dim3_unimodular,
)
from permutohedron_modules.counter import count_brute_force, count_lattice_points, rank_from_weights  # type: ignore
from permutohedron_modules.ehrhart import attach_store, ehrhart_of_weights  # type: ignore
from permutohedron_modules.permdata import (  # type: ignore
    SubsetIndex,
    WeightVector,
    all_subsets,
    orbit_size,
    subset_to_composition,
)
from permutohedron_modules.reproduce import build_battery, run_battery  # type: ignore
from storage import EhrhartStore  # type: ignore

logger = logging.getLogger("bv_alpha")

MAX_TABLE_N = 8

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def getenv_int(name: str, default: int) -> int:
    try:
        return int(os.getenv(name, default))
    except Exception:
        return default


def getenv_str(name: str, default: str = "") -> str:
    return os.getenv(name, default).strip()


class CommandResult(BaseModel):
    status: Literal["ok", "fail"] = "ok"
    payload: Dict[str, Any] = Field(default_factory=dict)
    lines: List[str] = Field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.status == "ok" else EXIT_MISMATCH


# --- parsing de argumentos ---

def parse_int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise ValueError(f"lista de inteiros inválida: {text!r}")


def parse_weights(text: str) -> WeightVector:
    vals = parse_int_list(text)
    if any(v < 0 for v in vals):
        raise ValueError(f"peso negativo em {text!r}")
    return WeightVector(weights=vals)


def parse_vectors(text: str) -> List[Tuple[Fraction, ...]]:
    """"a,b;c,d" → [(a, b), (c, d)]; aceita racionais "p/q"."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            out.append(tuple(Fraction(x.strip()) for x in chunk.split(",")))
        except ValueError:
            raise ValueError(f"vetor inválido: {chunk!r}")
    return out


def parse_points(text: str) -> List[Tuple[int, int]]:
    pts = []
    for vec in parse_vectors(text):
        if len(vec) != 2 or any(x.denominator != 1 for x in vec):
            raise ValueError(f"ponto inteiro 2-dim esperado, veio {vec}")
        pts.append((int(vec[0]), int(vec[1])))
    return pts


# --- renderização ---

def use_color() -> bool:
    return not os.getenv("NO_COLOR") and sys.stdout.isatty()


def mark(ok: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if not use_color():
        return word
    return f"\033[32m{word}\033[0m" if ok else f"\033[31m{word}\033[0m"


def dump_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


# --- comandos ---

def cmd_alpha_table(n: int, threads: int = 1) -> CommandResult:
    if not 1 <= n <= MAX_TABLE_N:
        raise ValueError(f"n deve estar em 1..{MAX_TABLE_N} (recebido {n})")
    table = alpha_table(n, workers=threads)
    entries = []
    lines = [f"{'S':<10} {'composição':<14} {'α':>14} {'órbita':>8}  positivo"]
    for s, value in table.rows():
        comp = subset_to_composition(s)
        entries.append({
            "subset": list(s.members),
            "composition": list(comp.parts),
            "alpha": str(value),
            "orbit_size": str(orbit_size(s)),
            "positive": value > 0,
        })
        lines.append(f"{s.render():<10} {comp.render():<14} {str(value):>14} {orbit_size(s):>8}  {'sim' if value > 0 else 'NÃO'}")
    status = "ok" if all(e["positive"] for e in entries) else "fail"
    return CommandResult(status=status, payload={"n": n, "entries": entries}, lines=lines)


def cmd_ehrhart(
    weights: Optional[str] = None,
    hypersimplex: Optional[int] = None,
    n: Optional[int] = None,
    dilations: Optional[int] = None,
) -> CommandResult:
    if weights is not None and hypersimplex is not None:
        raise ValueError("use --weights ou --hypersimplex, não os dois")
    if hypersimplex is not None:
        if n is None:
            raise ValueError("--hypersimplex exige --n")
        w = WeightVector.hypersimplex(n, hypersimplex)
    elif weights is not None:
        w = parse_weights(weights)
        if n is not None and w.n != n:
            raise ValueError(f"--n {n} não confere com {w.n} pesos")
    else:
        raise ValueError("informe --weights ou --hypersimplex")
    poly = ehrhart_of_weights(w, dilations=dilations)
    coeffs = [str(c) for c in poly.coeffs]
    return CommandResult(
        payload={"weights": list(w.weights), "coeffs": coeffs},
        # ponto (grau 0): só a linha de coeficientes
        lines=[" ".join(coeffs)] + ([poly.render()] if poly.degree > 0 else []),
    )


def cmd_count(weights: str, t: int, brute: bool = False) -> CommandResult:
    w = parse_weights(weights)
    r = rank_from_weights(w, t)
    fast = count_lattice_points(r)
    payload: Dict[str, Any] = {"weights": list(w.weights), "t": t, "count": str(fast)}
    lines = [str(fast)]
    status = "ok"
    if brute:
        slow = count_brute_force(r)
        payload["brute_force"] = str(slow)
        lines.append(f"força bruta: {slow} {mark(slow == fast)}")
        status = "ok" if slow == fast else "fail"
    return CommandResult(status=status, payload=payload, lines=lines)


def cmd_psi(gens: str, dim: int) -> CommandResult:
    vectors = parse_vectors(gens)
    if len(vectors) != dim:
        raise ValueError(f"esperados {dim} geradores, recebidos {len(vectors)}")
    cone = ConeSpec.standard(vectors)
    value = psi_dim2_general(cone) if dim == 2 else psi_dim3_unimodular(cone)
    return CommandResult(payload={"generators": [[str(x) for x in v] for v in vectors], "psi": str(value)},
                         lines=[str(value)])


def cmd_verify(n: int, threads: int = 1) -> CommandResult:
    if not 1 <= n <= MAX_TABLE_N:
        raise ValueError(f"n deve estar em 1..{MAX_TABLE_N} (recebido {n})")
    table = alpha_table(n, workers=threads)
    results: List[Dict[str, Any]] = []

    for check in verify_identities(table).checks:
        results.append({"name": check.name, "passed": check.passed, "detail": check.detail})

    pos = verify_positivity(table)
    results.append({"name": "positividade", "passed": pos.passed,
                    "detail": ";".join(SubsetIndex(n=n, members=m).render() for m in pos.nonpositive)})

    bad = [s.render() for s in all_subsets(n) if s.codim <= 3 and alpha_via_psi(n, s) != table.get(s)]
    results.append({"name": "Ψ = tabela (codim ≤ 3)", "passed": not bad, "detail": ";".join(bad)})

    mc = mcmullen_reconstruct(WeightVector.regular(n), workers=threads)
    results.append({"name": "McMullen em Π_n", "passed": mc.equal, "detail": f"{mc.lhs} = {mc.rhs}"})

    rows = mcmullen_coefficients(WeightVector.regular(n), workers=threads)
    results.append({"name": "McMullen por grau em Π_n", "passed": all(r.equal for r in rows),
                    "detail": ";".join(str(r.degree) for r in rows if not r.equal)})

    ok = all(r["passed"] for r in results)
    lines = [f"{mark(r['passed'])}  {r['name']}" + (f"  [{r['detail']}]" if r["detail"] and not r["passed"] else "")
             for r in results]
    return CommandResult(status="ok" if ok else "fail", payload={"n": n, "checks": results}, lines=lines)


def cmd_reproduce(only: Optional[str] = None) -> CommandResult:
    report = run_battery(build_battery(), only=only)
    lines = [f"{mark(r.passed)}  [{r.tag}] {r.name}" for r in report.results]
    for r in report.failures:
        lines.append(f"  {r.name}: esperado {r.expected}, calculado {r.computed}")
    total = len(report.results)
    if report.passed:
        lines.append(f"all {total} checks passed")
    else:
        lines.append(f"{len(report.failures)} of {total} checks failed")
    payload = {"results": [r.model_dump() for r in report.results], "passed": report.passed}
    return CommandResult(status="ok" if report.passed else "fail", payload=payload, lines=lines)


def cmd_mcmullen(weights: str) -> CommandResult:
    w = parse_weights(weights)
    rep = mcmullen_reconstruct(w)
    rows = mcmullen_coefficients(w)
    lines = [f"Lat = {rep.lhs}", f"Σ |O|·α·nvol = {rep.rhs}", mark(rep.equal)]
    lines += [f"t^{r.degree}: {r.ehrhart_coeff} vs {r.face_sum} {mark(r.equal)}" for r in rows]
    lines.append("v = (" + ", ".join(map(str, w.v_vector())) + ")")
    ok = rep.equal and all(r.equal for r in rows)
    payload = {
        "weights": list(w.weights),
        "v": list(w.v_vector()),
        "lhs": str(rep.lhs),
        "rhs": str(rep.rhs),
        "equal": rep.equal,
        "coefficients": [
            {"degree": r.degree, "ehrhart": str(r.ehrhart_coeff), "faces": str(r.face_sum), "equal": r.equal}
            for r in rows
        ],
    }
    return CommandResult(status="ok" if ok else "fail", payload=payload, lines=lines)


def cmd_pick(vertices: Optional[str] = None, points: Optional[str] = None) -> CommandResult:
    if (vertices is None) == (points is None):
        raise ValueError("use exatamente um de --vertices ou --points")
    poly = Polygon(vertices=parse_points(vertices)) if vertices is not None else convex_hull(parse_points(points or ""))
    rep = pick_check(poly)
    payload = {
        "vertices": [list(v) for v in poly.vertices],
        "lat": str(rep.lat),
        "area": str(rep.area),
        "boundary": str(rep.boundary),
        "vertex_psi": [str(x) for x in rep.vertex_psi],
        "mcmullen_sum": str(rep.mcmullen_sum),
        "all_equal": rep.all_equal,
    }
    lines = [
        f"pontos: {rep.lat}",
        f"área: {rep.area}",
        f"bordo: {rep.boundary}",
        "Ψ vértices: " + " + ".join(str(x) for x in rep.vertex_psi),
        f"Σ McMullen: {rep.mcmullen_sum}",
        mark(rep.all_equal),
    ]
    return CommandResult(status="ok" if rep.all_equal else "fail", payload=payload, lines=lines)


def cmd_closed(n: int) -> CommandResult:
    rows = closed_forms(n)
    entries = []
    lines = []
    for comp, value in rows:
        s = SubsetIndex.complement_of(n, comp)
        entries.append({"subset": list(s.members), "complement": list(comp), "alpha": str(value), "positive": value > 0})
        lines.append(f"{s.render():<12} [n]\\{{{','.join(map(str, comp))}}}  {value}")
    ok = all(e["positive"] for e in entries)
    return CommandResult(status="ok" if ok else "fail", payload={"n": n, "entries": entries}, lines=lines)


def cmd_cache(db_path: str) -> CommandResult:
    """Conteúdo do cache persistente de polinômios."""
    if not db_path:
        raise ValueError("informe --cache-db ou EHRHART_CACHE_DB")
    store = EhrhartStore(db_path)
    items = store.items()
    entries = [{"weights": list(key), "coeffs": [str(c) for c in coeffs]} for key, coeffs in items]
    lines = [f"{store.count()} polinômios em {db_path}"]
    lines += [f"{','.join(map(str, key)) or '-':<16} {' '.join(str(c) for c in coeffs)}" for key, coeffs in items]
    return CommandResult(payload={"path": db_path, "count": len(entries), "entries": entries}, lines=lines)


# --- main ---

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bv_alpha", description="α-valores de Berline–Vergne do permutoedro regular")
    ap.add_argument("--cache-db", default=getenv_str("EHRHART_CACHE_DB"),
                    help="arquivo SQLite para cache persistente de polinômios de Ehrhart")
    sub = ap.add_subparsers(dest="command", required=True)

    threads_default = max(1, getenv_int("BV_THREADS", 1))

    p = sub.add_parser("alpha-table", help="tabela α_n(S) para todo S ⊆ [n]")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=threads_default)

    p = sub.add_parser("ehrhart", help="polinômio de Ehrhart de Σ w_kΔ_{k,n+1}")
    p.add_argument("--weights")
    p.add_argument("--hypersimplex", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--dilations", type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("count", help="pontos inteiros de t·Σ w_kΔ_{k,n+1}")
    p.add_argument("--weights", required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--brute", action="store_true", help="confere com a força bruta")
    p.add_argument("--json", action="store_true")

    for name, dim in (("psi2", 2), ("psi3", 3)):
        p = sub.add_parser(name, help=f"Ψ de um cone {dim}-dim em Z^{dim}")
        p.add_argument("--gens", required=True, help='geradores "a,b;c,d"')
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="identidades, positividade, Ψ e McMullen para n")
    p.add_argument("n", type=int)
    p.add_argument("--threads", type=int, default=threads_default)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("reproduce", help="bateria completa de valores de referência")
    p.add_argument("--only", help="tag (ou prefixo) a executar, ex.: alpha-n5")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("mcmullen", help="Lat(Perm(v)) direto contra a fórmula de McMullen")
    p.add_argument("--weights", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("pick", help="Pick e McMullen num polígono inteiro")
    p.add_argument("--vertices", help='"x1,y1;x2,y2;..." em posição convexa')
    p.add_argument("--points", help="pontos quaisquer; usa o fecho convexo")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("closed", help="formas fechadas de codimensão 2 e 3")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("cache", help="lista o cache persistente (--cache-db)")
    p.add_argument("--json", action="store_true")
    return ap


def dispatch(args: argparse.Namespace) -> CommandResult:
    cmd = args.command
    if cmd == "alpha-table":
        return cmd_alpha_table(args.n, threads=args.threads)
    if cmd == "ehrhart":
        return cmd_ehrhart(args.weights, args.hypersimplex, args.n, args.dilations)
    if cmd == "count":
        return cmd_count(args.weights, args.t, brute=args.brute)
    if cmd == "psi2":
        return cmd_psi(args.gens, 2)
    if cmd == "psi3":
        return cmd_psi(args.gens, 3)
    if cmd == "verify":
        return cmd_verify(args.n, threads=args.threads)
    if cmd == "reproduce":
        return cmd_reproduce(args.only)
    if cmd == "mcmullen":
        return cmd_mcmullen(args.weights)
    if cmd == "pick":
        return cmd_pick(args.vertices, args.points)
    if cmd == "closed":
        return cmd_closed(args.n)
    if cmd == "cache":
        return cmd_cache(args.cache_db)
    raise ValueError(f"comando desconhecido: {cmd}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=os.getenv("LOG_LEVEL", "INFO"),
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)

    if args.cache_db:
        attach_store(EhrhartStore(args.cache_db))
        logger.info("Cache persistente em %s", args.cache_db)
    try:
        result = dispatch(args)
    except (ValueError, RuntimeError) as e:
        print(f"erro: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        attach_store(None)

    if getattr(args, "json", False):
        print(dump_json(result.payload))
    else:
        print("\n".join(result.lines))
    return result.exit_code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.warning("Interrompido pelo usuário.")
        sys.exit(130)
    except Exception:
        logger.exception("Falha na execução")
        sys.exit(1)
