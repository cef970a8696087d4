"""Command-line surface: per-task subcommands plus an aggregated
reproducibility report.

Exit codes: 0 success, 1 violated invariant or failed report row,
2 usage error.  JSON output is schema-stable: keys are sorted and wall
times are omitted so repeated seeded runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from importlib import resources

from . import __version__
from .graph import (FamilyParseError, Graph, add_pendant, build_family_text,
                    build_theta, core_class, from_graph6, join)
from .counting import (ListAssignment, count_list_colorings,
                       count_proper_colorings, cycle_poly, falling_factorial,
                       k2n_poly, theta222k_poly, tree_poly)
from .dp import dp_color_function, theta_dp_formula
from .search import (DEFAULT_BUDGET, classify_bipartite, is_ecc,
                     is_weakly_ecc, list_color_function, nu_tau)
from .witness import (k224_witness, random_connected_graph, run_lemma_trials,
                      theta_witness_assignment, LEMMA_IDS)

PROBE_BUDGET = 100_000


def assignment_to_text(L: ListAssignment) -> str:
    """One line per vertex: ``v<i>: {c1,c2,...}``."""
    return "\n".join(
        f"v{v}: {{{','.join(str(c) for c in sorted(L.list_of(v)))}}}"
        for v in range(L.n))


def assignment_from_text(text: str) -> ListAssignment:
    sets = {}
    for line in text.strip().splitlines():
        head, _, body = line.partition(":")
        v = int(head.strip().lstrip("v"))
        sets[v] = {int(c) for c in body.strip().strip("{}").split(",")}
    return ListAssignment.from_sets(sets[v] for v in sorted(sets))


def _assignment_json(L: ListAssignment) -> list[list[int]]:
    return [sorted(L.list_of(v)) for v in range(L.n)]


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("CHROMACOUNT_THREADS", "1"))


def _build(spec: str) -> Graph:
    return build_family_text(spec)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_chrompoly(args) -> int:
    g = _build(args.spec)
    value = count_proper_colorings(g, args.m)
    _emit(args, {"command": "chrompoly", "spec": args.spec, "m": args.m,
                 "value": value},
          f"P({args.spec}, {args.m}) = {value}")
    return 0


def cmd_listcf(args) -> int:
    g = _build(args.spec)
    mode = "heuristic" if args.heuristic else "exact"
    rep = list_color_function(g, args.m, mode=mode, budget=args.budget,
                              seed=args.seed, threads=_threads(args))
    payload = {"command": "listcf", "spec": args.spec, "m": args.m,
               "mode": mode, "status": rep.status,
               "lo": rep.lo, "hi": rep.hi, "seed": args.seed}
    lines = []
    if rep.exact:
        lines.append(f"P_l({args.spec}, {args.m}) = {rep.hi}")
    else:
        lines.append(f"P_l({args.spec}, {args.m}) in [{rep.lo}, {rep.hi}]"
                     f" (status: {rep.status})")
    if args.witness and rep.witness is not None:
        payload["witness"] = _assignment_json(rep.witness)
        lines.append(assignment_to_text(rep.witness))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_dpcf(args) -> int:
    g = _build(args.spec)
    rep = dp_color_function(g, args.m, budget=args.budget)
    payload = {"command": "dpcf", "spec": args.spec, "m": args.m,
               "status": rep.status, "lo": rep.lo, "hi": rep.hi,
               "covers": rep.stats["covers"]}
    if rep.exact:
        text = (f"P_DP({args.spec}, {args.m}) = {rep.hi}"
                f"  ({rep.stats['covers']} covers)")
    else:
        text = (f"P_DP({args.spec}, {args.m}) in [{rep.lo}, {rep.hi}]"
                f" (status: {rep.status})")
    if args.witness and rep.witness is not None:
        payload["witness"] = {f"{u},{v}": list(p)
                              for (u, v), p in sorted(rep.witness.perms.items())}
        text += "\n" + "\n".join(
            f"e({u},{v}): {list(p)}"
            for (u, v), p in sorted(rep.witness.perms.items()))
    _emit(args, payload, text)
    return 0


def cmd_nu_tau(args) -> int:
    g = _build(args.spec)
    rep = nu_tau(g, seed=args.seed, threads=_threads(args))
    points = [{"m": pt.m, "p": pt.p, "pl_lo": pt.pl_lo, "pl_hi": pt.pl_hi,
               "status": pt.status} for pt in rep.points]
    payload = {"command": "nu-tau", "spec": args.spec, "chi": rep.chi,
               "nu": list(rep.nu), "tau": list(rep.tau), "points": points,
               "note": rep.note, "seed": args.seed}

    def fmt(iv):
        return str(iv[0]) if iv[0] == iv[1] else f"[{iv[0]}, {iv[1]}]"

    lines = [f"chi = {rep.chi}, nu = {fmt(rep.nu)}, tau = {fmt(rep.tau)}"]
    if rep.note:
        lines.append(rep.note)
    for pt in rep.points:
        pl = (str(pt.pl_lo) if pt.pl_lo == pt.pl_hi
              else f"[{pt.pl_lo}, {pt.pl_hi}]")
        lines.append(f"  m={pt.m}: P={pt.p}, P_l={pl} ({pt.status})")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_check_ecc(args) -> int:
    g = _build(args.spec)
    if args.weak:
        dec = is_weakly_ecc(g, seed=args.seed, threads=_threads(args))
        kind = "weakly-ecc"
    else:
        dec = is_ecc(g, seed=args.seed, threads=_threads(args))
        kind = "ecc"
    verdict = {True: "True", False: "False", None: "Unknown"}[dec.verdict]
    payload = {"command": "check-ecc", "spec": args.spec, "kind": kind,
               "verdict": verdict, "reason": dec.reason, "seed": args.seed}
    lines = [f"{kind}({args.spec}) = {verdict}", dec.reason]
    if dec.witness is not None:
        payload["witness"] = _assignment_json(dec.witness)
        lines.append(assignment_to_text(dec.witness))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_classify(args) -> int:
    records = []
    lines = []
    with open(args.infile) as fh:
        for i, raw in enumerate(fh):
            raw = raw.strip()
            if not raw:
                continue
            g = from_graph6(raw)
            res = classify_bipartite(g)
            rec = {"line": i + 1, "graph6": raw, "n": g.n,
                   "core": res.core.kind, "ecc": res.ecc,
                   "reason": res.reason}
            if res.witness is not None:
                rec["witness"] = _assignment_json(res.witness)
                rec["witness_count"] = res.witness_count
            records.append(rec)
            verdict = "ECC" if res.ecc else "NotECC"
            lines.append(f"{raw}\tn={g.n}\tcore={res.core.kind}\t{verdict}")
    _emit(args, {"command": "classify", "infile": args.infile,
                 "graphs": records}, "\n".join(lines))
    return 0


def cmd_witness(args) -> int:
    if args.kind == "theta":
        if args.k is None or args.k < 2:
            print("witness theta requires --k K with K >= 2", file=sys.stderr)
            return 2
        g = build_theta((2, 2, 2 * args.k))
        L = theta_witness_assignment(args.k)
        expect = 1
        spec = f"theta:2,2,{2 * args.k}"
    else:
        g, L = k224_witness()
        expect = 4
        spec = "multipartite:2,2,4"
    count = count_list_colorings(g, L)
    payload = {"command": "witness", "kind": args.kind, "spec": spec,
               "count": count, "witness": _assignment_json(L)}
    text = f"{spec}: count = {count}\n" + assignment_to_text(L)
    _emit(args, payload, text)
    if count != expect:
        print(f"invariant violated: expected count {expect}, got {count}",
              file=sys.stderr)
        return 1
    return 0


def cmd_validate(args) -> int:
    ids = LEMMA_IDS if args.lemma == "all" else (args.lemma,)
    worst = 0
    rows = []
    lines = []
    for lid in ids:
        reports = run_lemma_trials(lid, args.trials, args.seed)
        bad = [r for r in reports if not r.holds]
        rows.append({"id": lid, "trials": len(reports),
                     "violated": len(bad),
                     "counterexamples": [
                         {"instance": r.instance, "lhs": str(r.lhs),
                          "rhs": str(r.rhs), "detail": r.detail}
                         for r in bad[:5]]})
        status = "holds" if not bad else f"VIOLATED ({len(bad)}/{len(reports)})"
        lines.append(f"{lid}: {status} over {len(reports)} instances")
        if bad:
            worst = 1
            for r in bad[:5]:
                lines.append(f"  {r.instance}: lhs={r.lhs} rhs={r.rhs}"
                             f" ({r.detail})")
    _emit(args, {"command": "validate", "seed": args.seed,
                 "results": rows}, "\n".join(lines))
    return worst


# ---------------------------------------------------------------------------
# aggregated report
# ---------------------------------------------------------------------------

def _row_theta_unique_witness(seed, threads):
    g = build_theta((2, 2, 4))
    count = count_list_colorings(g, theta_witness_assignment(2))
    return count == 1, {"count": count}


def _row_theta_witness_family(seed, threads):
    counts = {}
    for k in range(2, 9):
        g = build_theta((2, 2, 2 * k))
        counts[str(k)] = count_list_colorings(g, theta_witness_assignment(k))
    return all(c == 1 for c in counts.values()), {"counts": counts}


def _row_theta_exact_min(seed, threads):
    g = build_theta((2, 2, 4))
    rep = list_color_function(g, 2, threads=threads)
    p = count_proper_colorings(g, 2)
    ok = rep.exact and rep.value == 1 and p == 2
    return ok, {"pl": rep.hi, "p": p, "status": rep.status,
                "leaves": rep.stats.get("leaves")}


def _row_closed_forms(seed, threads):
    checks = 0
    ok = True
    for n in range(3, 11):
        for m in range(0, 7):
            ok &= count_proper_colorings(_build(f"cycle:{n}"), m) == cycle_poly(n, m)
            checks += 1
    for n in range(1, 7):
        for m in range(0, 7):
            ok &= (count_proper_colorings(_build(f"complete:{n}"), m)
                   == falling_factorial(m, n))
            checks += 1
    for n in range(2, 11):
        for m in range(1, 7):
            ok &= count_proper_colorings(_build(f"path:{n}"), m) == tree_poly(n, m)
            checks += 1
    for n in range(1, 7):
        for m in range(0, 7):
            ok &= (count_proper_colorings(_build(f"bipartite:2,{n}"), m)
                   == k2n_poly(n, m))
            checks += 1
    for k in range(1, 5):
        for m in range(0, 7):
            ok &= (count_proper_colorings(_build(f"theta:2,2,{2 * k}"), m)
                   == theta222k_poly(k, m))
            checks += 1
    v102 = count_proper_colorings(build_theta((2, 2, 4)), 3)
    ok &= v102 == 102
    return ok, {"checks": checks, "theta224_at_3": v102}


def _row_dp_theta(seed, threads):
    rep = dp_color_function(build_theta((2, 2, 4)), 3)
    formula = theta_dp_formula(2, 3)
    ok = rep.exact and rep.hi == 78 == formula and rep.stats["covers"] == 36
    return ok, {"value": rep.hi, "formula": formula,
                "covers": rep.stats["covers"]}


def _row_dp_sandwich(seed, threads):
    rng = random.Random(f"sandwich|{seed}")
    ok = True
    rows = 0
    for _ in range(50):
        g = random_connected_graph(rng, rng.randint(2, 5))
        p = count_proper_colorings(g, 2)
        pl = list_color_function(g, 2, threads=threads).value
        pdp = dp_color_function(g, 2).value
        ok &= pdp <= pl <= p
        rows += 1
    return ok, {"instances": rows}


def _row_k224_witness(seed, threads):
    g, L = k224_witness()
    p3 = count_proper_colorings(g, 3)
    count = count_list_colorings(g, L)
    # every proper coloring must give the size-4 part (vertices 4..7) the
    # shared color 1
    z_ok = True
    lists = [sorted(L.list_of(v)) for v in range(g.n)]

    def colorings(v, chosen):
        nonlocal z_ok
        if v == g.n:
            if any(chosen[u] != 1 for u in range(4, 8)):
                z_ok = False
            return
        for c in lists[v]:
            if all(chosen[w] != c for w in g.neighbors(v) if w < v):
                chosen[v] = c
                colorings(v + 1, chosen)
        chosen[v] = -1

    colorings(0, [-1] * g.n)
    ok = p3 == 6 and count == 4 and z_ok
    return ok, {"p3": p3, "count": count, "part_z_forced": z_ok}


def _row_bipartite_corpus(seed, threads):
    data = (resources.files("chromacount") / "data" / "bipartite7.g6")
    graphs = [from_graph6(line) for line in data.read_text().split()]
    equal_kinds = {"K1", "even-cycle", "K23"}
    choosable_kinds = {"K1", "even-cycle", "K23", "theta-2-2-2k"}
    ok = True
    n_equal = n_choosable = 0
    for g in graphs:
        kind = core_class(g).kind
        if g.edge_count == 0:
            pl = 2
        else:
            pl = list_color_function(g, 2, threads=threads).value
        p = count_proper_colorings(g, 2)
        equal = pl == p == 2
        choosable = pl >= 1
        ok &= equal == (kind in equal_kinds)
        ok &= choosable == (kind in choosable_kinds)
        n_equal += equal
        n_choosable += choosable
    return ok, {"graphs": len(graphs), "with_equality": n_equal,
                "choosable": n_choosable}


def _row_pendant_identity(seed, threads):
    rng = random.Random(f"pendant|{seed}")
    ok = True
    rows = 0
    for _ in range(50):
        g = random_connected_graph(rng, rng.randint(2, 6))
        g2 = add_pendant(g, rng.randrange(g.n))
        lhs = list_color_function(g2, 2, threads=threads).value
        rhs = list_color_function(g, 2, threads=threads).value
        ok &= lhs == rhs
        rows += 1
    for _ in range(10):
        g = random_connected_graph(rng, rng.randint(2, 4))
        g2 = add_pendant(g, rng.randrange(g.n))
        lhs = list_color_function(g2, 3, threads=threads).value
        rhs = 2 * list_color_function(g, 3, threads=threads).value
        ok &= lhs == rhs
        rows += 1
    return ok, {"instances": rows}


def _row_join_identity(seed, threads):
    rng = random.Random(f"join|{seed}")
    ok = True
    for _ in range(50):
        g = random_connected_graph(rng, rng.randint(2, 6))
        m = rng.choice((3, 4, 5))
        h = join(_build("complete:1"), g)
        ok &= count_proper_colorings(h, m) == m * count_proper_colorings(g, m - 1)
    return ok, {"instances": 50}


def _row_validators(seed, threads):
    ids = ("C3.2", "L3.3ii", "L3.4", "L3.5", "L3.7", "L3.8", "L4.1", "O4.3",
           "L3.1")
    violated = {}
    for lid in ids:
        reports = run_lemma_trials(lid, 1000, seed)
        violated[lid] = sum(1 for r in reports if not r.holds)
    return all(v == 0 for v in violated.values()), {"violated": violated}


def _probe_row(g, m, floor, seed):
    rep = list_color_function(g, m, mode="heuristic", budget=PROBE_BUDGET,
                              seed=seed)
    ok = rep.hi >= floor
    detail = ("no violation found" if ok
              else f"assignment with {rep.hi} < {floor} colorings")
    return ok, {"evals": rep.stats["evals"], "min_found": rep.hi,
                "floor": floor, "detail": detail}


def _row_theta_3_probe(seed, threads):
    g = build_theta((2, 2, 4))
    return _probe_row(g, 3, count_proper_colorings(g, 3), seed)


def _row_join_3_probe(seed, threads):
    g = join(_build("complete:1"), build_theta((2, 2, 4)))
    return _probe_row(g, 3, count_proper_colorings(g, 3), seed)


REPORT_ROWS = [
    ("theta-unique-witness",
     "hand-built 2-assignment of theta:2,2,4 has exactly one coloring",
     _row_theta_unique_witness),
    ("theta-witness-family",
     "the construction keeps count 1 for theta:2,2,2k, k = 2..8",
     _row_theta_witness_family),
    ("theta-exact-min",
     "exhaustive minimum: P_l(theta:2,2,4, 2) = 1 < 2 = P",
     _row_theta_exact_min),
    ("closed-forms",
     "backtracking counts match closed forms on standard families",
     _row_closed_forms),
    ("dp-theta",
     "cover enumeration: P_DP(theta:2,2,4, 3) = 78 over 36 covers",
     _row_dp_theta),
    ("dp-sandwich",
     "P_DP <= P_l <= P on 50 seeded graphs (n <= 5, m = 2)",
     _row_dp_sandwich),
    ("k224-witness",
     "K_{2,2,4}: P(G,3) = 6, witness count 4, big part forced to one color",
     _row_k224_witness),
    ("bipartite-corpus",
     "core patterns decide equality at m=2 and 2-choosability (n <= 7)",
     _row_bipartite_corpus),
    ("pendant-identity",
     "P_l(G + pendant, m) = (m-1) P_l(G, m) on seeded graphs",
     _row_pendant_identity),
    ("join-identity",
     "P(K_1 v G, m) = m P(G, m-1) on 50 seeded graphs",
     _row_join_identity),
    ("validators",
     "1000 seeded admissible instances per inequality validator",
     _row_validators),
    ("theta-3-probe",
     "heuristic search finds no 3-assignment of theta:2,2,4 below 102",
     _row_theta_3_probe),
    ("join-3-probe",
     "heuristic search finds no 3-assignment of K_1 v theta:2,2,4 below 6",
     _row_join_3_probe),
]


def cmd_reproduce_paper(args) -> int:
    threads = _threads(args)
    only = set(args.only or [])
    known = {rid for rid, _, _ in REPORT_ROWS}
    unknown = only - known
    if unknown:
        print(f"unknown row ids: {', '.join(sorted(unknown))}", file=sys.stderr)
        return 2
    rows = []
    all_ok = True
    for rid, desc, fn in REPORT_ROWS:
        if only and rid not in only:
            continue
        ok, values = fn(args.seed, threads)
        all_ok &= ok
        rows.append({"id": rid, "description": desc,
                     "pass": bool(ok), "values": values})
    report = {"tool": "chromacount", "version": __version__,
              "command": "reproduce-paper", "seed": args.seed,
              "rows": rows, "pass": bool(all_ok)}
    doc = json.dumps(report, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc + "\n")
    if args.format == "json":
        print(doc)
    else:
        width = max(len(r["id"]) for r in rows)
        for r in rows:
            mark = "pass" if r["pass"] else "FAIL"
            print(f"{r['id']:<{width}}  {mark}  {r['description']}")
        print(f"overall: {'pass' if all_ok else 'FAIL'}")
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p, threads=True, jsonable=True, seed=False):
    if threads:
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: CHROMACOUNT_THREADS or 1)")
    if jsonable:
        p.add_argument("--json", action="store_true", help="emit JSON")
    if seed:
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chromacount",
        description="Exact chromatic, list-color, and DP-color counting "
                    "on small graphs")
    ap.add_argument("--version", action="version",
                    version=f"chromacount {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chrompoly", help="proper m-coloring count")
    p.add_argument("spec")
    p.add_argument("--m", type=int, required=True)
    _add_common(p, threads=False)
    p.set_defaults(fn=cmd_chrompoly)

    p = sub.add_parser("listcf", help="list color function P_l(G,m)")
    p.add_argument("spec")
    p.add_argument("--m", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--heuristic", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="leaf-evaluation budget (not wall time)")
    p.add_argument("--witness", action="store_true")
    _add_common(p, seed=True)
    p.set_defaults(fn=cmd_listcf)

    p = sub.add_parser("dpcf", help="DP color function P_DP(G,m)")
    p.add_argument("spec")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, default=None,
                   help="cover-evaluation budget")
    p.add_argument("--witness", action="store_true")
    _add_common(p, threads=False)
    p.set_defaults(fn=cmd_dpcf)

    p = sub.add_parser("nu-tau", help="probe nu(G) and tau(G)")
    p.add_argument("spec")
    _add_common(p, seed=True)
    p.set_defaults(fn=cmd_nu_tau)

    p = sub.add_parser("check-ecc",
                       help="decide enumerative chromatic-choosability")
    p.add_argument("spec")
    p.add_argument("--weak", action="store_true",
                   help="check only m = chi(G)")
    _add_common(p, seed=True)
    p.set_defaults(fn=cmd_check_ecc)

    p = sub.add_parser("classify",
                       help="classify a graph6 stream of connected "
                            "bipartite graphs")
    p.add_argument("--in", dest="infile", required=True)
    _add_common(p, threads=False)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("witness", help="print a constructed assignment")
    p.add_argument("kind", choices=("theta", "k224"))
    p.add_argument("--k", type=int, default=None)
    _add_common(p, threads=False)
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("validate", help="run an inequality validator")
    p.add_argument("--lemma", required=True,
                   choices=LEMMA_IDS + ("all",))
    p.add_argument("--trials", type=int, default=100)
    _add_common(p, threads=False, seed=True)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("reproduce-paper",
                       help="run the aggregated reproducibility report")
    p.add_argument("--out", default=None, help="also write JSON to this file")
    p.add_argument("--only", action="append", default=None,
                   help="restrict to a row id (repeatable)")
    p.add_argument("--format", choices=("json", "table"), default="table")
    _add_common(p, jsonable=False, seed=True)
    p.set_defaults(fn=cmd_reproduce_paper)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except FamilyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
