"""Command-line entry point: ``inducibility <command> [options]``.

Every report echoes its configuration so a run can be repeated exactly.
Exit codes: 0 success, 1 a verified failure (e.g. a certificate check failed),
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Any, Callable

from . import asymmetry, blowup, counting, enumeration, extremal, formulas, rolecalc
from .graph import Graph, Graph6Error, graph6_decode, graph6_encode

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class Report:
    """Result payload plus how to render it."""

    def __init__(self, result: Any, text: str | None = None, rows: list[dict] | None = None,
                 columns: tuple[str, ...] | None = None, ok: bool = True):
        self.result = result
        self.text = text
        self.rows = rows
        self.columns = columns
        self.ok = ok


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= 1 << 53 else x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return [_jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def write_report(command: str, config: dict, report: Report, fmt: str) -> str:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": command, "config": _jsonable(config),
               "result": _jsonable(report.result)}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# schema_version={SCHEMA_VERSION} command={command} config={json.dumps(_jsonable(config))}\n")
        w = csv.writer(buf, lineterminator="\n")
        if report.rows is not None:
            cols = report.columns or (tuple(report.rows[0]) if report.rows else ())
            w.writerow(cols)
            for r in report.rows:
                w.writerow([_jsonable(r[c]) for c in cols])
        else:
            w.writerow(("key", "value"))
            for k, v in _jsonable(report.result).items():
                w.writerow((k, json.dumps(v) if isinstance(v, (list, dict)) else v))
        return buf.getvalue()
    body = report.text
    if body is None:
        body = "\n".join(f"{k}={json.dumps(v) if isinstance(v, (list, dict)) else v}"
                         for k, v in _jsonable(report.result).items())
    return body + "\n" + f"# config {json.dumps(_jsonable(config))}\n"


# --- argument helpers --------------------------------------------------------


def _graph(s: str) -> Graph:
    if os.path.isfile(s):
        with open(s, encoding="ascii") as fh:
            s = fh.read().strip()
    try:
        return graph6_decode(s)
    except Graph6Error as e:
        raise UsageError(f"bad graph6 {s!r}: {e}") from e


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as e:
        raise UsageError(f"expected comma-separated integers, got {s!r}") from e


def _threads(args) -> int:
    return args.threads if args.threads else (os.cpu_count() or 1)


# --- commands ----------------------------------------------------------------


def cmd_fg(a) -> Report:
    f, g = formulas.f_value(a.n, a.h), formulas.g_value(a.n, a.h)
    return Report({"n": a.n, "h": a.h, "f": f, "g": g}, text=f"f={f} g={g}")


def cmd_blowup(a) -> Report:
    spec = blowup.make_blowup(_graph(a.base), _ints(a.sizes))
    return Report({"graph6": graph6_encode(spec.realized), "parts": list(spec.parts)})


def cmd_nested(a) -> Report:
    base = _graph(a.base)
    if a.all:
        try:
            ms = blowup.enumerate_nested(base, a.n, a.cap)
        except blowup.NestedCapExceeded as e:
            raise UsageError(str(e)) from e
        g6 = [graph6_encode(g) for g in ms]
        return Report({"count": len(g6), "members": g6}, rows=[{"graph6": s} for s in g6], columns=("graph6",))
    g = blowup.nested_blowup(base, a.n)
    return Report({"graph6": graph6_encode(g)})


def cmd_count(a) -> Report:
    r = counting.count_induced_copies(_graph(a.pattern), _graph(a.host))
    return Report({"embeddings": r.embeddings, "aut": r.aut, "copies": r.copies},
                  text=f"copies={r.copies} embeddings={r.embeddings} aut={r.aut}")


def cmd_distance(a) -> Report:
    if a.mode == "search" and a.seed is None:
        raise UsageError("--seed is required in search mode")
    spec = blowup.make_blowup(_graph(a.base), _ints(a.sizes))
    r = blowup.blowup_distance(spec, _graph(a.target), a.mode, a.budget, a.seed or 0)
    return Report({"distance": r.value, "exact": r.exact, "mapping": list(r.mapping)})


def cmd_ph_check(a) -> Report:
    g = _graph(a.graph)
    rep = asymmetry.check_ph(g, a.mode, a.budget, a.seed, a.trials)
    for c, r in rep.conditions.items():
        if r.status == asymmetry.REFUTED and not asymmetry.verify_witness(g, c, r):
            raise AssertionError(f"condition {c} witness failed re-verification")
    d = rep.as_dict()
    rows = [{"condition": c, "status": v["status"], "budget": v["budget"]} for c, v in d["conditions"].items()]
    return Report(d, rows=rows, columns=("condition", "status", "budget"))


def cmd_mc(a) -> Report:
    rows = asymmetry.mc_theorem1(a.h, a.trials, a.seed, a.deep_budget)
    return Report({"rows": rows}, rows=rows, columns=asymmetry.CSV_COLUMNS,
                  text="\n".join(",".join(str(r[c]) for c in asymmetry.CSV_COLUMNS) for r in rows) or "")


def _family(a) -> rolecalc.CopyFamily:
    return rolecalc.all_embeddings(_graph(a.pattern), _graph(a.host))


def cmd_roles(a) -> Report:
    fam = _family(a)
    if a.q:
        classes = rolecalc.q_partition(fam, _ints(a.q))
        flags = [rolecalc.is_role_consistent(c)[0] for c in classes.values()]
        return Report({"members": len(fam), "classes": len(classes), "all_consistent": all(flags),
                       "inconsistent_classes": flags.count(False)})
    ok, wit = rolecalc.is_role_consistent(fam)
    out: dict[str, Any] = {"members": len(fam), "consistent": ok}
    if ok:
        rp = rolecalc.role_partition(fam)
        out["redundant"] = sorted(rp.redundant)
        out["parts"] = [sorted(p) for p in rp.parts]
    else:
        out["witness"] = {"vertex": wit[0], "member1": list(wit[1]), "member2": list(wit[2])}
    return Report(out)


def cmd_core(a) -> Report:
    fam = _family(a)
    if a.threshold == "preset":
        thr = rolecalc.preset_threshold(fam.host.n, fam.pattern.n)
    else:
        try:
            thr = Fraction(a.threshold)
        except ValueError as e:
            raise UsageError(f"bad threshold {a.threshold!r}") from e
    core, left = rolecalc.core_production(fam, thr)
    return Report({"threshold": thr, "members": len(fam), "core": len(core), "leftover": len(left),
                   "fixpoint": rolecalc.is_core_fixpoint(core, thr)})


def cmd_extremal(a) -> Report:
    r = extremal.exhaustive_extremal(_graph(a.pattern), a.n, _threads(a))
    return Report(r.as_dict())


def cmd_hillclimb(a) -> Report:
    cfg = extremal.HillclimbConfig(a.restarts, a.max_steps, a.plateau, a.seed)
    return Report(extremal.hillclimb_extremal(_graph(a.pattern), a.n, cfg).as_dict())


def cmd_recognize(a) -> Report:
    r = extremal.recognize_blowup_plus(_graph(a.graph), _graph(a.pattern))
    if r is None:
        return Report({"found": False})
    return Report({"found": True, "balanced": r.balanced, "parts": [sorted(p) for p in r.parts]})


def _default_parts(q: int, r: int) -> list[Graph]:
    if q > enumeration.MAX_ENUM_ORDER:
        raise UsageError("pass --parts explicitly for q above the enumeration bound")
    out = []
    for g in enumeration.enumerate_graphs(q):
        if counting.automorphism_count(g) == 1:
            out.append(g)
            if len(out) == r:
                return out
    raise UsageError(f"fewer than {r} asymmetric graphs on {q} vertices")


def cmd_counterexample(a) -> Report:
    parts = [_graph(s) for s in a.parts.split(",")] if a.parts else _default_parts(a.q, a.r)
    cert = extremal.build_counterexample(a.q, a.r, parts)
    d = cert.as_dict()
    text = "\n".join([f"h={a.q * a.r} n={a.q * a.q * a.r} g={cert.g_value}",
                      *(f"{k}={'pass' if v else 'FAIL'}" for k, v in cert.checks.items()),
                      f"lower_bound={cert.g_value + 1}" if cert.ok else "certificate FAILED"])
    return Report(d, text=text, ok=cert.ok)


def cmd_bounds(a) -> Report:
    r = formulas.inducibility_bounds(a.h, _ints(a.k))
    return Report(r.as_dict())


def cmd_enumerate(a) -> Report:
    g6 = [graph6_encode(g) for g in enumeration.enumerate_graphs(a.n, _threads(a))]
    if a.count_only:
        return Report({"n": a.n, "count": len(g6)}, text=f"count={len(g6)}")
    return Report({"n": a.n, "count": len(g6), "graphs": g6}, text="\n".join(g6),
                  rows=[{"graph6": s} for s in g6], columns=("graph6",))


# --- parser ------------------------------------------------------------------

RANDOMIZED = {"ph-check", "mc-theorem1", "hillclimb"}


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="inducibility", description="Maximum induced densities of pattern graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--threads", type=_positive, default=None, help="worker processes (default: all cores)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, helptext: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=helptext, description=helptext)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("fg", cmd_fg, "Equitable partition product f(n,h) and its nested recursion g(n,h).")
    sp.add_argument("--n", type=_nonneg, required=True)
    sp.add_argument("--h", type=_positive, required=True)

    sp = add("blowup", cmd_blowup, "Blowup H(a_1..a_h) with empty parts.")
    sp.add_argument("--base", required=True)
    sp.add_argument("--sizes", required=True, help="comma-separated part sizes")

    sp = add("nested", cmd_nested, "Nested balanced blowup H*(n); --all lists every member up to isomorphism.")
    sp.add_argument("--base", required=True)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--cap", type=_positive, default=10_000)

    sp = add("count", cmd_count, "Induced copies i_H(G), with embeddings and |Aut(H)|.")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--host", required=True)

    sp = add("distance", cmd_distance, "Blowup distance: fewest cross-part edits from a blowup to a target.")
    sp.add_argument("--base", required=True)
    sp.add_argument("--sizes", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--mode", choices=("exact", "search"), default="exact")
    sp.add_argument("--budget", type=_positive, default=20_000)
    sp.add_argument("--seed", type=int)

    sp = add("ph-check", cmd_ph_check, "Strong-asymmetry conditions 1-5 with re-verified witnesses.")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--mode", choices=("exact", "refute"), default="exact")
    sp.add_argument("--budget", type=_nonneg, default=2000)
    sp.add_argument("--trials", type=_nonneg, default=200, help="random subsets tried for condition 3")
    sp.add_argument("--seed", type=int)

    sp = add("mc-theorem1", cmd_mc, "Monte Carlo pass rates of the asymmetry conditions on G(h,1/2).")
    sp.add_argument("--h", type=_positive, required=True)
    sp.add_argument("--trials", type=_nonneg, required=True)
    sp.add_argument("--deep-budget", type=_nonneg, default=0)
    sp.add_argument("--seed", type=int)

    sp = add("roles", cmd_roles, "Role consistency and role partition of all copies; --q groups them by images of Q.")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--host", required=True)
    sp.add_argument("--q", help="comma-separated pattern vertices")

    sp = add("core", cmd_core, "Core production on all copies of a pattern in a host.")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--host", required=True)
    sp.add_argument("--threshold", required=True, help="rational like 3/2, or 'preset'")

    sp = add("extremal", cmd_extremal, "Exhaustive i_H(n) with every maximizer (n <= 9).")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n", type=_positive, required=True)

    sp = add("hillclimb", cmd_hillclimb, "Edge-flip hill climbing lower bound for i_H(n).")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--restarts", type=_nonneg, default=4)
    sp.add_argument("--max-steps", type=_nonneg, default=200)
    sp.add_argument("--plateau", type=_nonneg, default=20)
    sp.add_argument("--seed", type=int)

    sp = add("recognize", cmd_recognize, "Find a blowup of the pattern with extra edges inside parts.")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--pattern", required=True)

    sp = add("counterexample", cmd_counterexample, "Certified graph with i_H(n) > g(n,h).")
    sp.add_argument("--q", type=_positive, default=6)
    sp.add_argument("--r", type=_positive, default=4)
    sp.add_argument("--parts", help="comma-separated graph6 part graphs (default: first r asymmetric)")

    sp = add("bounds", cmd_bounds, "Inducibility lower bound, g(h^k,h)/C(h^k,h), and the upper factor.")
    sp.add_argument("--h", type=_positive, required=True)
    sp.add_argument("--k", default="1,2,3")

    sp = add("enumerate", cmd_enumerate, "All graphs on n vertices up to isomorphism, in graph6.")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--count-only", action="store_true")
    return p


def run_command(argv: list[str], stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.command in RANDOMIZED and args.seed is None:
        print(f"{args.command}: --seed is required", file=sys.stderr)
        return 2
    config = {k: v for k, v in vars(args).items() if k not in ("fn", "output", "format", "command", "threads")}
    try:
        report = args.fn(args)
    except (UsageError, ValueError, formulas.BudgetExceeded) as e:
        print(f"{args.command}: {e}", file=sys.stderr)
        return 2
    text = write_report(args.command, config, report, args.format)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            print(f"cannot write {args.output}: {e}", file=sys.stderr)
            return 2
    else:
        stdout.write(text)
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
