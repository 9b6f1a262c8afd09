"""Command-line entry point: ``dkq {spectrum,verify,report,export}``.

Exit status is 0 when every asserted bound or equality in the run held, 1 when
one failed and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from dkq import graphs, oracle, spectra
from dkq.gf import FieldError, field_of_order
from dkq.suites import SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def fmt(x: float) -> float:
    """Round to 12 significant digits for serialisation."""
    if x is None or not math.isfinite(x):
        return x
    return float(f"{x:.12g}")


def _field(q: int):
    try:
        return field_of_order(q)
    except FieldError as exc:
        raise SystemExit(_usage(f"invalid q={q}: {exc}"))


def _usage(msg: str) -> int:
    print(f"dkq: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _q_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# spectrum ------------------------------------------------------------------------

def spectrum_record(s: spectra.Spectrum, q: int, k: int, graph: str, method: str) -> dict:
    degree = q if graph == "bipartite" else q * (q - 1)
    b = spectra.bounds_from_spectrum(s, degree)
    if graph == "bipartite":
        bound_ok = b.lambda2 <= 2 * math.sqrt(q) + s.bucket_tol
    else:
        bound_ok = b.lambda2 <= 3 * q + s.bucket_tol
    return {
        "q": q, "k": k, "graph": graph, "method": method,
        "eigenvalues": [{"value": fmt(v), "multiplicity": m} for v, m in s.entries],
        "lambda2": fmt(b.lambda2),
        "bound_2sqrtq": bool(bound_ok),
        "ramanujan": bool(b.ramanujan),
        "spectral_gap": fmt(b.spectral_gap),
        "cheeger_lower": fmt(b.cheeger_lower),
        "cheeger_upper": fmt(b.cheeger_upper),
    }


def _brute(F, k: int, graph: str, tol: float, allow_large: bool) -> spectra.Spectrum:
    limit = None if allow_large else oracle.DEFAULT_LIMIT
    if graph == "point":
        g = graphs.cayley_graph(F) if k == 5 else graphs.halved_graph(graphs.d_graph(k, F))
        return oracle.dense_spectrum(g, tol, limit=limit)
    return oracle.bipartite_spectrum(graphs.d_graph(k, F), tol, limit=limit)


def _repr(F, graph: str, tol: float) -> spectra.Spectrum:
    s = spectra.assemble_point_spectrum(F, tol)
    return s if graph == "point" else spectra.lift_to_bipartite(s, F.q)


def cmd_spectrum(args) -> int:
    F = _field(args.q)
    if args.k not in (2, 3, 4, 5):
        return _usage(f"k={args.k} not in 2..5")
    if args.method in ("repr", "both") and args.k != 5:
        return _usage("the representation method is only available for k=5")
    if args.graph == "point" and args.k != 5 and args.method != "brute":
        return _usage("point graphs for k<5 need --method brute")
    tol = args.bucket_tol if args.bucket_tol is not None else spectra.default_bucket_tol(F.q)
    try:
        brute = _brute(F, args.k, args.graph, tol, args.allow_large) if args.method != "repr" else None
    except oracle.OracleSizeError as exc:
        return _usage(f"{exc}; pass --allow-large to override")
    rep = _repr(F, args.graph, tol) if args.method != "brute" else None

    main = rep if rep is not None else brute
    record = spectrum_record(main, F.q, args.k, args.graph, args.method)
    ok = record["bound_2sqrtq"]
    if args.method == "both":
        cmp = oracle.compare_spectra(brute, rep, args.compare_tol)
        record["comparison"] = cmp.as_dict()
        ok = ok and cmp.equal

    if args.format == "json":
        _emit(json.dumps(record, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        buf.write(f"# q={F.q} k={args.k} graph={args.graph} method={args.method}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "multiplicity"])
        for e in record["eigenvalues"]:
            w.writerow([f"{e['value']:.12g}", e["multiplicity"]])
        _emit(buf.getvalue(), args.out)
        if args.method == "both" and args.out:
            Path(args.out).with_suffix(".compare.json").write_text(
                json.dumps(record["comparison"], indent=2) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# verify --------------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        return _usage(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    for q in args.q:
        _field(q)
    kwargs = {"allow_large": True} if args.suite == "assembly" and args.allow_large else {}
    checks = SUITES[args.suite](args.q, seed=args.seed, **kwargs)
    passed = all(c.passed for c in checks)
    payload = {"suite": args.suite, "passed": passed,
               "checks": [{**c.as_dict(), "worst": fmt(c.worst)} for c in checks]}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK if passed else EXIT_FAIL


# report --------------------------------------------------------------------------

REPORT_COLUMNS = ["q", "lambda2", "two_sqrt_q", "two_sqrt_q_minus_1", "spectral_gap",
                  "cheeger_lower", "cheeger_upper", "bound_2sqrtq", "ramanujan"]


def report_rows(qs, bucket_tol=None) -> list[dict]:
    rows = []
    for q in qs:
        b = spectra.bounds_report(_field(q), bucket_tol)
        rows.append({"q": q, "lambda2": fmt(b.lambda2), "two_sqrt_q": fmt(b.two_sqrt_q),
                     "two_sqrt_q_minus_1": fmt(b.ramanujan_threshold),
                     "spectral_gap": fmt(b.spectral_gap), "cheeger_lower": fmt(b.cheeger_lower),
                     "cheeger_upper": fmt(b.cheeger_upper), "bound_2sqrtq": b.bound_2sqrtq,
                     "ramanujan": b.ramanujan})
    return rows


def cmd_report(args) -> int:
    rows = report_rows(args.q, args.bucket_tol)
    buf = io.StringIO()
    w = csv.DictWriter(buf, REPORT_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (f"{v:.12g}" if isinstance(v, float) else v) for k, v in r.items()})
    if args.out:
        stem = Path(args.out)
        stem.with_suffix(".csv").write_text(buf.getvalue())
        stem.with_suffix(".json").write_text(json.dumps(rows, indent=2) + "\n")
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK if all(r["bound_2sqrtq"] for r in rows) else EXIT_FAIL


# export --------------------------------------------------------------------------

def cmd_export(args) -> int:
    F = _field(args.q)
    if args.k not in (2, 3, 4, 5):
        return _usage(f"k={args.k} not in 2..5")
    g = graphs.d_graph(args.k, F)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            graphs.write_edge_csv(g, fh)
    else:
        graphs.write_edge_csv(g, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dkq", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="spectrum of D(k,q) or its point graph")
    sp.add_argument("--k", type=int, default=5)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--method", choices=["repr", "brute", "both"], default="repr")
    sp.add_argument("--graph", choices=["bipartite", "point"], default="bipartite")
    sp.add_argument("--bucket-tol", type=float, default=None)
    sp.add_argument("--compare-tol", type=float, default=1e-6)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--out", default=None)
    sp.add_argument("--allow-large", action="store_true",
                    help="allow brute force beyond 4000 vertices per side (q=7 takes minutes)")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_spectrum)

    vp = sub.add_parser("verify", help="run a verification suite")
    vp.add_argument("--suite", required=True)
    vp.add_argument("--q", type=_q_list, default=[3, 5])
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--out", default=None)
    vp.add_argument("--allow-large", action="store_true")
    vp.set_defaults(func=cmd_verify)

    rp = sub.add_parser("report", help="lambda2, spectral gap and Cheeger interval of D(5,q)")
    rp.add_argument("--q", type=_q_list, default=[3, 5, 7, 9, 11, 13])
    rp.add_argument("--bucket-tol", type=float, default=None)
    rp.add_argument("--out", default=None, help="path stem; writes <stem>.csv and <stem>.json")
    rp.set_defaults(func=cmd_report)

    ep = sub.add_parser("export", help="edge list of D(k,q) as CSV")
    ep.add_argument("--k", type=int, default=5)
    ep.add_argument("--q", type=int, required=True)
    ep.add_argument("--out", default=None)
    ep.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
