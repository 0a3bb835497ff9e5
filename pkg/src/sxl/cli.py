"""``sxl`` command line: construct, measure, test freeness, enumerate, scan, audit.

Exit codes: 0 success, 1 usage or parse error, 2 a mathematical violation
(the counterexample is printed as graph6 on stdout).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterator, Sequence

from .enumeration import MAX_ENUM_EDGES, EnumSpec, enumerate_graphs, parse_graph6, read_graph6_lines, to_graph6_str
from .errors import BoundViolation, SxlError
from .families import make, parse_family
from .graph import Graph
from .patterns import contains, parse_pattern
from .spectral import full_spectrum, parse_bound, spectral_radius
from .verify import (
    ScanSpec, audit_eigen_identity, check_bn, check_erdos_gallai, check_rst_lemma, compute_eta,
    rotation_suite, scan,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for violations here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def fmt(x: float) -> str:
    """10 significant digits."""
    return format(float(x), ".10g")


def _threads(args) -> int:
    env = os.environ.get("SXL_THREADS")
    value = env if env else args.threads
    if value is None:
        return os.cpu_count() or 1
    try:
        n = int(value)
    except ValueError:
        raise UsageError(f"bad thread count {value!r}") from None
    if n < 1:
        raise UsageError("threads must be >= 1")
    return n


def _graphs(source: str, stdin=None) -> Iterator[Graph]:
    if source == "-":
        yield from read_graph6_lines(stdin or sys.stdin)
        return
    try:
        spec = parse_family(source)
    except SxlError:
        yield parse_graph6(source)
        return
    yield make(spec)


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad m range {text!r}; expected a..b") from None
    return a, b


def _parse_predict(text: str | None) -> int | None:
    if text is None:
        return None
    key, sep, val = text.partition("=")
    if key.strip() != "k" or not sep or not val.strip().isdigit():
        raise UsageError(f"bad --predict {text!r}; expected k=<int>")
    return int(val)


# ---------------------------------------------------------------- commands

def cmd_construct(args, out) -> int:
    for g in _graphs(args.spec):
        print(to_graph6_str(g), file=out)
    return 0


def cmd_lambda(args, out) -> int:
    for g in _graphs(args.source):
        res = spectral_radius(g)
        spec = full_spectrum(g).eigenvalues if args.spectrum else None
        if args.format == "json":
            doc = {"lambda": res.lam, "residual": res.residual, "iterations": res.iterations}
            if spec is not None:
                doc["spectrum"] = [float(v) for v in spec]
            print(json.dumps(doc, sort_keys=True), file=out)
        else:
            print(f"lambda: {fmt(res.lam)}", file=out)
            print(f"residual: {fmt(res.residual)}", file=out)
            print(f"iterations: {res.iterations}", file=out)
            if spec is not None:
                print("spectrum: " + " ".join(fmt(v) for v in spec), file=out)
    return 0


def cmd_free(args, out) -> int:
    pattern = parse_pattern(args.forbid)
    for g in _graphs(args.source):
        w = contains(g, pattern)
        if args.format == "json":
            doc = {"free": w is None}
            if args.witness:
                doc["witness"] = None if w is None else list(w.mapping)
            print(json.dumps(doc, sort_keys=True), file=out)
        else:
            print(f"free: {'true' if w is None else 'false'}", file=out)
            if args.witness and w is not None:
                print("witness: " + " ".join(map(str, w.mapping)), file=out)
    return 0


def cmd_enumerate(args, out, threads: int) -> int:
    if not 1 <= args.m <= MAX_ENUM_EDGES:
        raise UsageError(f"--m must be in 1..{MAX_ENUM_EDGES}")
    spec = EnumSpec(args.m, require_connected=not args.all_graphs)
    if args.count_only:
        print(enumerate_graphs(spec, threads=threads), file=out)
    else:
        enumerate_graphs(spec, lambda g: print(to_graph6_str(g), file=out), threads=threads)
    return 0


def cmd_scan(args, out, threads: int) -> int:
    spec = ScanSpec(
        forbid=parse_pattern(args.forbid),
        bound=parse_bound(args.bound),
        m_range=_parse_range(args.m),
        predicted_extremal=_parse_predict(args.predict),
        mode="report_only" if args.report_only else "assert",
    )
    report = scan(spec, threads=threads)
    if args.format == "json":
        print(report.to_json(), file=out)
    elif args.format == "csv":
        out.write(report.to_csv())
    else:
        for r in report.records:
            best = "-" if r.max_lambda is None else fmt(r.max_lambda)
            margin = "-" if r.margin is None else fmt(r.margin)
            print(
                f"m={r.m} free={r.free_count}/{r.graph_count} max_lambda={best} bound={fmt(r.bound)} "
                f"margin={margin} equality={str(r.equality_achieved).lower()} "
                f"argmax={','.join(r.argmax_canonical_forms)}",
                file=out,
            )
    return 2 if report.records and not report.ok and spec.mode == "assert" else 0


def cmd_audit(args, out) -> int:
    for g in _graphs(args.source):
        residual = audit_eigen_identity(g)
        eta = compute_eta(g)
        comps = [
            {"vertices": list(c.vertices), "eta1": c.eta1, "eta2": c.eta2, "kind": c.kind}
            for c in eta.components
        ]
        if args.format == "json":
            print(json.dumps({"residual": residual, "center": eta.center, "components": comps}, sort_keys=True), file=out)
        else:
            print(f"residual: {fmt(residual)}", file=out)
            print(f"center: {eta.center}", file=out)
            for c in comps:
                verts = " ".join(map(str, c["vertices"]))
                print(f"component [{verts}] kind={c['kind']} eta1={fmt(c['eta1'])} eta2={fmt(c['eta2'])}", file=out)
    return 0


def cmd_check(args, out) -> int:
    lemma = args.lemma
    if lemma == "rst":
        report = check_rst_lemma(args.max or 200, t_min=args.t_min).to_dict()
    elif lemma == "eg":
        report = check_erdos_gallai(args.max or 8).to_dict()
    elif lemma.startswith("bn:"):
        try:
            r = int(lemma[3:])
        except ValueError:
            raise UsageError(f"bad lemma {lemma!r}; expected bn:<r>") from None
        report = check_bn(args.max or 8, r).to_dict()
    elif lemma == "rotation":
        rot = rotation_suite(trials=args.trials, n_max=args.max or 12, seed=args.seed)
        report = {"name": "rotation", "checked": rot.trials, "min_increase": rot.min_increase,
                  "violations": rot.failures}
    else:
        raise UsageError(f"unknown lemma {lemma!r}; expected rst, eg, bn:<r> or rotation")
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True), file=out)
    else:
        for key in sorted(report):
            val = report[key]
            if isinstance(val, float):
                val = fmt(val)
            elif isinstance(val, list):
                val = len(val) if key == "violations" else " ".join(map(str, val))
            print(f"{key}: {val}", file=out)
    if report["violations"]:
        for v in report["violations"]:
            if "graph" in v:
                print(v["graph"], file=out)
        return 2
    return 0


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: logical cores)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    p = _Parser(prog="sxl", description="Spectral extremal checks for F-free graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="print a family member as graph6")
    c.add_argument("spec")

    c = sub.add_parser("lambda", parents=[common], help="spectral radius of a graph")
    c.add_argument("source")
    c.add_argument("--spectrum", action="store_true", help="also print every eigenvalue")

    c = sub.add_parser("free", parents=[common], help="test whether a graph avoids a pattern")
    c.add_argument("--forbid", required=True)
    c.add_argument("--witness", action="store_true")
    c.add_argument("source")

    c = sub.add_parser("enumerate", parents=[common], help="isomorphism classes with m edges")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--all-graphs", action="store_true", help="include disconnected graphs")
    c.add_argument("--count-only", action="store_true")

    c = sub.add_parser("scan", parents=[common], help="exhaustive bound scan")
    c.add_argument("--forbid", required=True)
    c.add_argument("--bound", required=True)
    c.add_argument("--m", required=True, help="edge range a..b")
    c.add_argument("--predict", help="k=<int>: predicted extremal K_k v bK_1")
    c.add_argument("--report-only", action="store_true")

    c = sub.add_parser("audit", parents=[common], help="eigen identity residual and eta report")
    c.add_argument("source")

    c = sub.add_parser("check", parents=[common], help="lemma checks")
    c.add_argument("--lemma", required=True)
    c.add_argument("--max", type=int, default=None)
    c.add_argument("--trials", type=int, default=500, help="rotation trials")
    c.add_argument("--t-min", type=int, default=1, help="smallest t for the R_{s,t} sweep")
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        threads = _threads(args)
        if args.command == "enumerate":
            return cmd_enumerate(args, out, threads)
        if args.command == "scan":
            return cmd_scan(args, out, threads)
        handler = {
            "construct": cmd_construct, "lambda": cmd_lambda, "free": cmd_free,
            "audit": cmd_audit, "check": cmd_check,
        }[args.command]
        return handler(args, out)
    except BoundViolation as exc:
        print(f"violation: {exc}", file=err)
        if exc.counterexample:
            print(exc.counterexample, file=out)
        return 2
    except (UsageError, SxlError) as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
