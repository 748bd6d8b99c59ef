"""Command line front end: ``cremona {params,build,check,embed,lines,aut} ...``.

Exit status is 0 iff every requested check passes.
"""

from __future__ import annotations

import argparse
import sys
from math import comb, factorial
from pathlib import Path

from . import crspace
from .automorphisms import DEFAULT_BUDGET, DEFAULT_MAX_VERTICES, SearchBudgetExceeded, automorphism_group, find_isomorphism
from .exactalg import FieldError, FieldSpec
from .incidence import intersection_profile, levi_graph, neighborhood, point_label_strings, verify_configuration
from .realize import (
    Frame,
    canonical_points,
    dependency_dot,
    dependency_structure,
    desargues_subconfigurations,
    enumerate_dependencies,
    line_ranks,
    verify_realization,
)
from .setcomb import ParameterError


def _label(a) -> str:
    return "".join(map(str, a.elements()))


def cmd_params(args) -> int:
    pred = crspace.predicted_params(args.n, args.k, args.s)
    got = verify_configuration(crspace.build_cr(args.n, args.k, args.s).structure)
    if args.csv:
        Path(args.csv).write_text(crspace.params_table_csv([(args.n, args.k, args.s)]))
    if tuple(got) == tuple(pred):
        print(f"{got.nu} {got.r} {got.b} {got.s} OK")
        return 0
    print(f"{got.nu} {got.r} {got.b} {got.s} MISMATCH predicted {pred.nu} {pred.r} {pred.b} {pred.s}")
    return 1


def cmd_build(args) -> int:
    C = crspace.build_cr(args.n, args.k, args.s)
    S = C.structure
    if args.json:
        Path(args.json).write_text(S.to_json() + "\n")
    if args.dot:
        Path(args.dot).write_text(levi_graph(S).to_dot(point_label_strings(S)))
    print(f"points {S.num_points} blocks {S.num_blocks}")
    return 0


def _report(name: str, ok: bool, detail: str) -> bool:
    print(f"{name}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def cmd_check(args) -> int:
    C = crspace.build_cr(args.n, args.k, args.s)
    S = C.structure
    selected = args.gamma or args.weak_chain or args.neighborhood or args.axioms
    results = []
    if args.axioms or not selected:
        prof = intersection_profile(S)
        ok = max(prof, default=0) <= C.s - 2
        results.append(_report("axioms", ok, f"intersection profile {prof}"))
    if args.gamma or (not selected and C.m == 0):
        if C.m:
            raise ParameterError("--gamma needs n = k*s")
        bad = crspace.gamma_discrepancies(C)
        npairs = comb(S.num_points, 2)
        results.append(_report("gamma", not bad, f"{len(bad)} discrepancies over {npairs} pairs"))
    if args.neighborhood or (not selected and C.m == 0 and C.s > 2):
        if C.m:
            raise ParameterError("--neighborhood needs n = k*s")
        ref = crspace.build_cr(C.n - C.k, C.k, C.s - 1).structure
        fails = [a for a in range(S.num_points) if find_isomorphism(neighborhood(S, a), ref) is None]
        results.append(
            _report("neighborhood", not fails, f"{S.num_points - len(fails)}/{S.num_points} isomorphic to the (n-k, k, s-1) configuration")
        )
    if args.weak_chain or (not selected and C.s == 4 and C.m == 0):
        rep = crspace.check_weak_chain_properties(C)
        flags = [rep.triangle_closes, rep.double_meet_in_b0, rep.no_tangency]
        results.append(_report("weak-chain", all(flags), f"{sum(flags)}/3 properties hold"))
    return 0 if all(results) else 1


def cmd_embed(args) -> int:
    field = FieldSpec.parse(args.field)
    C = crspace.build_cr(args.n, args.k, args.s)
    rep = verify_realization(C, field)
    if args.report:
        Path(args.report).write_text(rep.to_json(indent=2) + "\n")
    if rep.is_embedding:
        print("EMBEDDING")
    else:
        why = []
        if C.m and not rep.characteristic["divides"]:
            why.append(f"char {field.characteristic} ∤ {C.s - 1}")
        if rep.point_collisions:
            why.append(f"{len(rep.point_collisions)} point collisions")
        if rep.incidence_violations:
            why.append(f"{len(rep.incidence_violations)} stray incidences")
        print(f"NOT-AN-EMBEDDING ({', '.join(why)})" if why else "NOT-AN-EMBEDDING")
    return 0 if rep.consistent else 1


def cmd_lines(args) -> int:
    field = FieldSpec.parse(args.field)
    F = Frame(args.n, field)
    fam = canonical_points(args.n)
    deps = enumerate_dependencies(F, fam, args.max_size)
    for d in deps:
        print(" ".join(_label(a) for a in d))
    triples = [d for d in deps if len(d) == 3]
    sizes: dict[int, int] = {}
    for d in deps:
        sizes[len(d)] = sizes.get(len(d), 0) + 1
    print("counts " + " ".join(f"{t}:{c}" for t, c in sorted(sizes.items())))
    ranks: dict[int, set[int]] = {}
    for a, r in line_ranks(fam, triples).items():
        ranks.setdefault(a.card, set()).add(r)
    print("line ranks " + " ".join(f"|a|={c}:{sorted(v)}" for c, v in sorted(ranks.items())))
    if args.desargues:
        print(f"desargues {len(desargues_subconfigurations(fam, triples))}")
    if args.aut:
        G = automorphism_group(dependency_structure(fam, triples), budget=args.budget)
        print(f"automorphism order {G.order} (|S_{args.n}| = {factorial(args.n)})")
    if args.dot:
        Path(args.dot).write_text(dependency_dot(fam, triples))
    return 0


def cmd_aut(args) -> int:
    C = crspace.build_cr(args.n, args.k, args.s)
    G = automorphism_group(C.structure, budget=args.budget, max_vertices=args.max_vertices)
    print(f"order {G.order} generators {len(G.generators)}")
    nfact = factorial(C.n)
    if G.order > nfact:
        witness = next(g for g in G.generators if crspace.ground_permutation_of(g, C) is None)
        print(f"order exceeds |S_{C.n}| = {nfact}; non-induced automorphism:")
        print(" ".join(f"{_label(C.points[i])}->{_label(C.points[j])}" for i, j in enumerate(witness) if i != j))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cremona", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def nks(p):
        p.add_argument("n", type=int)
        p.add_argument("k", type=int)
        p.add_argument("s", type=int)

    p = sub.add_parser("params", help="predicted vs enumerated (nu, r, b, s)")
    nks(p)
    p.add_argument("--csv", help="write the parameter row as CSV")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("build", help="write configuration JSON and Levi graph DOT")
    nks(p)
    p.add_argument("--json")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="run invariant suites (all applicable when no flag is given)")
    nks(p)
    p.add_argument("--axioms", action="store_true")
    p.add_argument("--gamma", action="store_true")
    p.add_argument("--weak-chain", action="store_true")
    p.add_argument("--neighborhood", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("embed", help="realize the configuration through the frame point map")
    nks(p)
    p.add_argument("--field", default="q", help="'q' or 'p:PRIME'")
    p.add_argument("--report", help="write the realization report as JSON")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("lines", help="minimal dependencies among all frame-derived points")
    p.add_argument("n", type=int)
    p.add_argument("--field", default="q")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--desargues", action="store_true", help="count Desargues subconfigurations")
    p.add_argument("--aut", action="store_true", help="automorphism order of the collinear-triple structure")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--dot")
    p.set_defaults(func=cmd_lines)

    p = sub.add_parser("aut", help="automorphism group order")
    nks(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p.set_defaults(func=cmd_aut)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, FieldError, SearchBudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
