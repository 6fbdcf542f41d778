"""``spectral-spread`` command-line interface.

Exit status: 0 on success, 1 when an asserted check fails, 2 on usage or
input errors. Probe checks never change the exit status.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from . import __version__
from .campaign import CHECK_IDS, DEFAULT_CHECKS, CampaignConfig, default_jobs, parse_dims, run_campaign
from .checks import (
    conjtru_counterexample,
    hat_witness_deviation,
    negation_pair_deviation,
    planar_rotation_deviation,
)
from .ensemble import gen_structured
from .errors import SpectralSpreadError
from .linalg import direct_sum, eigvals_hermitian, hermitian, load_matrix, svd_values
from .majorization import entrywise_leq
from .spread import spread, spread_plus
from .subspaces import angle_spread_check, as_isometry, principal_angles, rotated

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SHARP_TOL = 1e-10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- formatting


class Formatter:
    def __init__(self, full_precision: bool = False):
        self.full = full_precision

    def num(self, x) -> str:
        x = float(x)
        return repr(x) if self.full else f"{x:.6g}"

    def vec(self, v) -> str:
        return "(" + ", ".join(self.num(x) for x in np.asarray(v, dtype=float).reshape(-1)) + ")"


def _emit(args, doc: dict, text: str, csv_rows=None) -> None:
    """Print human text, or the report in ``--format``; write ``--out`` when given."""
    fmt = args.format or "json"
    if fmt == "json":
        body = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows or [])
        body = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    if args.format and not args.out:
        sys.stdout.write(body)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ commands


def cmd_spread(args) -> int:
    A = hermitian(load_matrix(args.matrix), rtol=args.tol if args.tol is not None else 1e-12)
    sv = spread(A)
    lam = eigvals_hermitian(A)
    f = Formatter(args.full_precision)
    doc = {"n": int(lam.size), "eigenvalues": lam.tolist(), "eigenvalues_ascending": lam[::-1].tolist(),
           "spread": sv.full.tolist(), "spread_plus": sv.plus.tolist()}
    text = (f"lambda      = {f.vec(lam)}\n"
            f"lambda_asc  = {f.vec(lam[::-1])}\n"
            f"Spr         = {f.vec(sv.full)}\n"
            f"Spr+        = {f.vec(sv.plus)}\n")
    rows = [["quantity", "index", "value"]]
    for name in ("eigenvalues", "eigenvalues_ascending", "spread", "spread_plus"):
        rows += [[name, i + 1, v] for i, v in enumerate(doc[name])]
    _emit(args, doc, text, rows)
    return EXIT_OK


def _build_config(args) -> CampaignConfig:
    doc = {}
    if args.config:
        try:
            with open(args.config) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(doc, dict):
            raise UsageError("config must be a JSON object")
    try:
        cfg = CampaignConfig.from_dict(doc)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.checks:
        cfg.checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    if args.trials is not None:
        cfg.trials = args.trials
    if args.dims is not None:
        cfg.dims = args.dims
    if args.seed is not None:
        cfg.seed = args.seed
    if args.tol is not None:
        cfg.rtol = args.tol
    if args.out is not None:
        cfg.out = args.out
    cfg.jobs = args.jobs if args.jobs is not None else default_jobs()
    try:
        return cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify(args) -> int:
    cfg = _build_config(args)
    report = run_campaign(cfg)
    f = Formatter(args.full_precision)
    lines = []
    rows = [["check", "kind", "trials", "failures", "counterexamples", "min_margin",
             "worst_seed", "worst_trial", "worst_dim"]]
    for cid, s in report["checks"].items():
        w = s["worst"] or {}
        mm = "-" if s["min_margin"] is None else f.num(s["min_margin"])
        status = "PROBE" if s["kind"] == "probe" else ("PASS" if s["failures"] == 0 else "FAIL")
        extra = f" counterexamples={s['counterexamples']}" if s["kind"] == "probe" else f" failures={s['failures']}"
        lines.append(f"{status:5s} {cid:24s} trials={s['trials']}{extra} min_margin={mm}")
        rows.append([cid, s["kind"], s["trials"], s["failures"], s.get("counterexamples", ""),
                     s["min_margin"], w.get("seed", ""), w.get("trial", ""), w.get("dim", "")])
    lines.append(f"{'PASSED' if report['passed'] else 'FAILED'} in {report['wall_time_s']} s")
    text = "\n".join(lines) + "\n"
    args.out = cfg.out
    _emit(args, report, text, rows)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _compare(name, reference, computed, tol, f: Formatter):
    reference = np.asarray(reference, dtype=float)
    computed = np.asarray(computed, dtype=float)
    dev = float(np.abs(reference - computed).max()) if reference.shape == computed.shape else float("inf")
    ok = dev <= tol
    line = f"  {name:22s} reference={f.vec(reference)}  computed={f.vec(computed)}  max|diff|={f.num(dev)} tol={tol:g} {'ok' if ok else 'MISMATCH'}"
    return ok, line, {"quantity": name, "reference": reference.tolist(), "computed": computed.tolist(),
                      "max_abs_diff": dev, "tolerance": tol, "reproduced": ok}


def counterexample_report(full_precision: bool = False) -> tuple[dict, str]:
    """Reproduce the three fixed instances; returns ``(report, text)``."""
    f = Formatter(full_precision)
    start = time.perf_counter()
    instances = {}
    lines = []

    # 4x4 instance where the entrywise strengthening fails at index 2
    blk = gen_structured("paper_tao_4x4")
    A = blk.assembled
    lam, sB, plus = eigvals_hermitian(A), svd_values(blk.B), spread_plus(A)
    rows = [_compare("lambda(A)", [4.61, 2.61, 2.38, 0.39], lam, 0.005, f),
            _compare("s(B)", [1.0, 1.0], sB, 1e-12, f)]
    ew = entrywise_leq(2 * sB, plus)
    fails_at_2 = ew.first_violation == 1
    lines.append("tao_4x4:")
    lines += [r[1] for r in rows]
    lines.append(f"  2 s(B) = {f.vec(2 * sB)} vs Spr+(A) = {f.vec(plus)}: entrywise failure at index "
                 f"{'-' if ew.first_violation is None else ew.first_violation + 1} (expected 2) "
                 f"{'ok' if fails_at_2 else 'MISMATCH'}")
    instances["tao_4x4"] = {"comparisons": [r[2] for r in rows], "entrywise_failure_index":
                            None if ew.first_violation is None else ew.first_violation + 1,
                            "expected_failure_observed": fails_at_2,
                            "reproduced": all(r[0] for r in rows) and fails_at_2}

    # 2x2 pair: entrywise bound false even for PSD inputs
    A1, A2 = gen_structured("paper_2x2_pair")
    S = direct_sum(A1, A2)
    s_diff, plus = svd_values(A1 - A2), spread_plus(S)
    rows = [_compare("lambda(A1+A2 direct)", [5, 3, 3, 1], eigvals_hermitian(S), 1e-10, f),
            _compare("s(A1-A2)", [2, 2], s_diff, 1e-10, f),
            _compare("Spr+(A1+A2 direct)", [4, 0], plus, 1e-10, f)]
    ew = entrywise_leq(s_diff, plus)
    fails = not ew.verdict
    lines.append("pair_2x2:")
    lines += [r[1] for r in rows]
    lines.append(f"  s(A1-A2) <= Spr+ entrywise: {'violated' if fails else 'holds'} (expected violated) "
                 f"{'ok' if fails else 'MISMATCH'}")
    instances["pair_2x2"] = {"comparisons": [r[2] for r in rows], "expected_failure_observed": fails,
                             "reproduced": all(r[0] for r in rows) and fails}

    # 4x4 instance refuting the square-root strengthening
    oc = conjtru_counterexample()
    v = oc.values
    rows = [_compare("Spr+(A)", [6.2714, 1.6339], v["spread_plus"], 1e-3, f),
            _compare("rhs spectrum", [4.7599, 3.3680], v["rhs_spectrum"], 1e-3, f),
            _compare("traces", [7.9053, 8.1279], [v["trace_spread_plus"], v["trace_rhs"]], 1e-3, f)]
    violated = v["trace_rhs"] > v["trace_spread_plus"] and not oc.reports["conj_tru"].verdict
    lines.append("conjtru_4x4:")
    lines += [r[1] for r in rows]
    lines.append(f"  trace {f.num(v['trace_spread_plus'])} < {f.num(v['trace_rhs'])}: strict violation "
                 f"{'detected ok' if violated else 'NOT detected MISMATCH'}")
    instances["conjtru_4x4"] = {"comparisons": [r[2] for r in rows], "expected_failure_observed": violated,
                                "weak_square_holds": oc.reports["weak_square"].verdict,
                                "reproduced": all(r[0] for r in rows) and violated}

    passed = all(i["reproduced"] for i in instances.values())
    lines.append("REPRODUCED" if passed else "NOT REPRODUCED")
    report = {"schema": 1, "tool": "spectral-spread", "version": __version__, "instances": instances,
              "passed": passed, "wall_time_s": round(time.perf_counter() - start, 3)}
    return report, "\n".join(lines) + "\n"


def cmd_counterexamples(args) -> int:
    report, text = counterexample_report(args.full_precision)
    rows = [["instance", "quantity", "reference", "computed", "max_abs_diff", "tolerance", "reproduced"]]
    for name, inst in report["instances"].items():
        for c in inst["comparisons"]:
            rows.append([name, c["quantity"], " ".join(map(repr, c["reference"])), " ".join(map(repr, c["computed"])),
                         c["max_abs_diff"], c["tolerance"], c["reproduced"]])
    _emit(args, report, text, rows)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_angles(args) -> int:
    S = as_isometry(load_matrix(args.S), args.orthonormalize)
    f = Formatter(args.full_precision)
    doc = {}
    if args.exp is not None:
        if args.T is not None:
            raise UsageError("give either T or --exp X, not both")
        X = hermitian(load_matrix(args.exp))
        T = rotated(S, X)
        rep = angle_spread_check(S, X, None if args.tol is None else args.tol)
        doc["angle_spread"] = rep.to_dict()
    elif args.T is not None:
        T = as_isometry(load_matrix(args.T), args.orthonormalize)
        rep = None
    else:
        raise UsageError("angles needs a second subspace T or --exp X")
    theta = principal_angles(S, T)
    doc.update(radians=theta.tolist(), degrees=np.degrees(theta).tolist())
    text = f"theta (rad) = {f.vec(theta)}\ntheta (deg) = {f.vec(np.degrees(theta))}\n"
    rows = [["index", "radians", "degrees"]] + [[i + 1, t, d] for i, (t, d) in enumerate(zip(theta, np.degrees(theta)))]
    if rep is not None:
        text += f"Theta <=_w 1/2 Spr+(X): {'holds' if rep.verdict else 'FAILS'} (min margin {f.num(rep.min_margin)})\n"
    _emit(args, doc, text, rows)
    return EXIT_OK if rep is None or rep.verdict else EXIT_FAIL


def sharpness_report(seed: int = 0, dims=range(2, 9)) -> dict:
    cases = []
    for n in dims:
        cases.append(("hat_witness", n, hat_witness_deviation(gen_structured("hat_witness", n, seed))))
        cases.append(("negation_pair", n, negation_pair_deviation(*gen_structured("negation_pair", n, seed))))
    for theta in (0.1, 0.5, 1.0, 1.5):
        cases.append(("planar_rotation", theta, planar_rotation_deviation(theta)))
    out = {}
    for name, param, dev in cases:
        entry = out.setdefault(name, {"cases": 0, "max_deviation": 0.0})
        entry["cases"] += 1
        entry["max_deviation"] = max(entry["max_deviation"], dev)
    for entry in out.values():
        entry["passed"] = entry["max_deviation"] <= SHARP_TOL
    return {"schema": 1, "tool": "spectral-spread", "version": __version__, "seed": seed, "tolerance": SHARP_TOL,
            "witnesses": out, "passed": all(e["passed"] for e in out.values())}


def cmd_sharpness(args) -> int:
    lo, hi = args.dims or (2, 8)
    report = sharpness_report(args.seed or 0, range(max(lo, 2), hi + 1))
    f = Formatter(args.full_precision)
    text = "".join(f"{'PASS' if e['passed'] else 'FAIL'} {name:16s} cases={e['cases']} max_deviation={f.num(e['max_deviation'])}\n"
                   for name, e in report["witnesses"].items())
    rows = [["witness", "cases", "max_deviation", "passed"]] + [
        [n, e["cases"], e["max_deviation"], e["passed"]] for n, e in report["witnesses"].items()]
    _emit(args, report, text, rows)
    return EXIT_OK if report["passed"] else EXIT_FAIL


# --------------------------------------------------------------------- parser


def _dims(text: str):
    try:
        lo, hi = parse_dims(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    return lo, hi


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), help="emit the report in this format instead of text")
    common.add_argument("--out", metavar="PATH", help="write the report to PATH")
    common.add_argument("--full-precision", action="store_true", help="print shortest round-trip decimals")
    common.add_argument("--tol", type=float, help="relative tolerance (campaigns) or Hermitian check tolerance")

    p = _Parser(prog="spectral-spread", description="Spectral spread computations and inequality verification.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spread", parents=[common], help="eigenvalues and spread of a Hermitian matrix")
    sp.add_argument("matrix", help="matrix file (JSON or whitespace-separated text)")
    sp.set_defaults(func=cmd_spread)

    vp = sub.add_parser("verify", parents=[common], help="run a seeded verification campaign")
    vp.add_argument("--config", help="JSON campaign config; flags override its fields")
    vp.add_argument("--checks", help=f"comma-separated check ids (default: {','.join(DEFAULT_CHECKS)}); "
                                     f"available: {','.join(CHECK_IDS)}")
    vp.add_argument("--seed", type=_seed)
    vp.add_argument("--trials", type=int)
    vp.add_argument("--dims", type=_dims, metavar="LO..HI")
    vp.add_argument("--jobs", type=int)
    vp.set_defaults(func=cmd_verify)

    cp = sub.add_parser("counterexamples", parents=[common], help="reproduce the fixed counterexamples")
    cp.set_defaults(func=cmd_counterexamples)

    ap = sub.add_parser("angles", parents=[common], help="principal angles between two subspaces")
    ap.add_argument("S", help="basis of the first subspace")
    ap.add_argument("T", nargs="?", help="basis of the second subspace")
    ap.add_argument("--exp", metavar="X", help="Hermitian X; compare S with exp(iX) S")
    ap.add_argument("--orthonormalize", action="store_true", help="orthonormalize spanning sets first")
    ap.set_defaults(func=cmd_angles)

    hp = sub.add_parser("sharpness", parents=[common], help="check the equality witnesses")
    hp.add_argument("--seed", type=_seed)
    hp.add_argument("--dims", type=_dims, metavar="LO..HI")
    hp.set_defaults(func=cmd_sharpness)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SpectralSpreadError, OSError) as exc:
        print(f"spectral-spread: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
