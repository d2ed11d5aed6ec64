"""Command-line entry point.

Exit status: 0 when every check passed, 1 when at least one failed, 2 on a
usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import identities as ids
from . import montecarlo as mc
from . import reporting as rep
from . import specfun as sf
from .exact import as_rational

DEFAULT_TOL = 1e-8
DEFAULT_P_LIST = "1/3,1/2,1,5/2"


class UsageError(Exception):
    pass


def parse_rational(s: str) -> Fraction:
    try:
        return as_rational(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed rational {s!r}; use 'a/b' or an integer") from None


def parse_rational_list(s: str) -> list:
    return [parse_rational(x) for x in s.split(",") if x.strip()]


def parse_int(s: str) -> int:
    try:
        return int(s, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None


def _identity(s: str) -> str:
    try:
        return ids.IdentityId.parse(s).value
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="probident", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(sp, default_format="text"):
        sp.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
        sp.add_argument("--output", dest="output_path")

    sp = sub.add_parser("verify", help="verify one identity at one n")
    sp.add_argument("--identity", type=_identity, required=True)
    sp.add_argument("--n", type=parse_int, required=True)
    sp.add_argument("--p", type=parse_rational, help="p, or m for multi-convolution")
    add_output(sp)

    sp = sub.add_parser("sweep", help="verify one identity for n = 1..n-max")
    sp.add_argument("--identity", type=_identity, required=True)
    sp.add_argument("--n-max", type=parse_int, required=True)
    sp.add_argument("--p-list", type=parse_rational_list,
                    help="comma-separated p values (m values for multi-convolution)")
    add_output(sp)

    sp = sub.add_parser("sample", help="Monte Carlo even-moment z-test")
    sp.add_argument("--statistic", choices=mc.STATISTICS + ("factorization",), required=True)
    sp.add_argument("--n", type=parse_int, required=True)
    sp.add_argument("--p", type=parse_rational)
    sp.add_argument("--samples", type=parse_int, default=1_000_000)
    sp.add_argument("--seed", type=parse_int, default=mc.DEFAULT_SEED)
    add_output(sp)

    sp = sub.add_parser("series", help="partial sums of the corrected pi-series")
    sp.add_argument("--n", type=parse_int, required=True)
    sp.add_argument("--terms", type=parse_int, required=True)
    add_output(sp)

    sp = sub.add_parser("density", help="numeric checks of the arcsine-difference and T densities")
    sp.add_argument("--points", type=parse_int, default=50)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--seed", type=parse_int, default=mc.DEFAULT_SEED)
    add_output(sp)

    sp = sub.add_parser("report", help="verify every identity")
    sp.add_argument("--all", action="store_true", help="cover every identity (default)")
    sp.add_argument("--n-max", type=parse_int, default=10)
    sp.add_argument("--terms", type=parse_int, default=1000, help="series terms for remark2-series")
    add_output(sp, default_format="json")
    return parser


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("MIL_THREADS", "1")))
    except ValueError:
        return 1


def _fan_out(jobs):
    """Run zero-argument callables, possibly in parallel; results keep job order."""
    if _workers() == 1 or len(jobs) < 2:
        return [j() for j in jobs]
    with ThreadPoolExecutor(max_workers=_workers()) as ex:
        return list(ex.map(lambda j: j(), jobs))


def _sweep_reports(identity: str, n_max: int, p_list) -> list:
    iid = ids.IdentityId.parse(identity)
    if n_max < 1:
        raise UsageError("--n-max must be at least 1")
    if iid in ids.PARAMETRIC:
        if p_list:
            jobs = [lambda n=n, p=p: ids.verify(iid, n, p) for p in p_list for n in range(1, n_max + 1)]
        elif iid is ids.IdentityId.MULTI_CONVOLUTION:
            raise UsageError("multi-convolution sweep needs --p-list with the m values")
        else:
            jobs = [lambda n=n: ids.verify_in_p(iid, n) for n in range(1, n_max + 1)]
            return [r for batch in _fan_out(jobs) for r in batch]
    else:
        jobs = [lambda n=n: ids.verify(iid, n) for n in range(1, n_max + 1)]
    reports = _fan_out(jobs)
    return sorted(reports, key=lambda r: (r.n, r.p or 0))


def _emit_reports(reports, fmt: str) -> str:
    if fmt == "json":
        payload = [rep.report_to_dict(r) for r in reports]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2)
    if fmt == "csv":
        return rep.reports_to_csv(reports)
    return "\n".join(rep.report_to_text(r) for r in reports)


def _emit_obj(obj, fmt: str) -> str:
    rows = obj if isinstance(obj, list) else [obj]
    if fmt == "json":
        return json.dumps(obj, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        cols = list(dict.fromkeys(k for r in rows for k in r))
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return buf.getvalue()
    return "\n".join("  ".join(f"{k}={v}" for k, v in r.items()) for r in rows)


def cmd_verify(a) -> tuple[str, bool]:
    r = ids.verify(a.identity, a.n, a.p)
    return _emit_reports([r], a.format), r.equal


def cmd_sweep(a) -> tuple[str, bool]:
    reports = _sweep_reports(a.identity, a.n_max, a.p_list)
    return _emit_reports(reports, a.format), all(r.equal for r in reports)


def cmd_sample(a) -> tuple[str, bool]:
    rng = mc.RngStream(a.seed, 0)
    if a.statistic == "factorization":
        s = mc.factorization_check(a.n, a.samples, rng)
    else:
        s = mc.estimate_even_moment(a.statistic, a.n, a.p, a.samples, rng)
    d = rep.plain_dict(s)
    d["passed"] = s.passed
    return _emit_obj(d, a.format), s.passed


def cmd_series(a) -> tuple[str, bool]:
    t = ids.series_partial_sum(a.n, a.terms)
    bracket = t.bracket()
    d = rep.tally_to_dict(t, bracket)
    if a.format == "text":
        # exact fractions run to thousands of digits; keep the float view
        d = {k: v for k, v in d.items() if k not in ("partial_sum", "last_term", "tail_bound", "target")}
    return _emit_obj(d, a.format), all(bracket)


def density_checks(points: int, tol: float, seed: int) -> list[dict]:
    """Normalization, moments, symmetry and the F1 -> 2F1 reduction."""
    rows = []
    for n in range(7):
        q = sf.moment_by_quadrature(n, tol=min(tol, 1e-10))
        exact = float(sf.exact_beta_diff_moment(n))
        rows.append({"check": "beta-diff-moment", "n": n, "value": q.value, "exact": exact,
                     "error": abs(q.value - exact), "passed": bool(abs(q.value - exact) <= max(tol, 1e-12))})
    for p in parse_rational_list(DEFAULT_P_LIST):
        for n in range(6):
            q = sf.t_density_moment(n, p, tol=min(tol, 1e-12))
            exact = float(sf.exact_t_moment(n, p))
            rows.append({"check": "t-moment", "n": n, "p": rep.rational_to_str(p), "value": q.value,
                         "exact": exact, "error": abs(q.value - exact),
                         "passed": bool(abs(q.value - exact) <= max(tol, 1e-12))})
    rng = np.random.default_rng(seed)
    worst_sym = worst_red = 0.0
    for x in rng.uniform(0.0, 1.0, points):
        if x == 0.0:
            continue
        f = sf.beta_diff_density(x)
        worst_sym = max(worst_sym, abs(f - sf.beta_diff_density(-x)) / f)
        worst_red = max(worst_red,
                        abs(sf.beta_diff_density_appell(x) - f) / f,
                        abs(sf.beta_diff_density_appell(-x) - f) / f)
    rows.append({"check": "symmetry", "points": points, "max_rel_error": worst_sym, "passed": bool(worst_sym <= 1e-12)})
    rows.append({"check": "appell-reduction", "points": points, "max_rel_error": worst_red,
                 "passed": bool(worst_red <= 1e-9)})
    return rows


def cmd_density(a) -> tuple[str, bool]:
    if a.points < 1:
        raise UsageError("--points must be at least 1")
    rows = density_checks(a.points, a.tol, a.seed)
    return _emit_obj(rows, a.format), all(r["passed"] for r in rows)


def full_report(n_max: int, terms: int = 1000) -> dict:
    """Verify every identity; each IdentityId appears exactly once in ``identities``."""
    if n_max < 1:
        raise UsageError("--n-max must be at least 1")
    sections = []
    for iid in ids.IdentityId:
        if iid is ids.IdentityId.MULTI_CONVOLUTION:
            reports = _sweep_reports(iid.value, min(n_max, 30), [Fraction(m) for m in range(1, 7)])
        elif iid in ids.PARAMETRIC:
            reports = _sweep_reports(iid.value, min(n_max, 10), None)
        else:
            reports = _sweep_reports(iid.value, n_max, None)
        section = {
            "identity": iid.value,
            "checks": len(reports),
            "passed": all(r.equal for r in reports),
            "note": ids.NOTES.get(iid),
            "reports": [rep.report_to_dict(r) for r in reports],
        }
        if iid is ids.IdentityId.REMARK2_SERIES:
            tallies = []
            for n in range(1, min(n_max, 5) + 1):
                t = ids.series_partial_sum(n, terms)
                tallies.append(rep.tally_to_dict(t, t.bracket()))
            section["series"] = tallies
            section["passed"] = section["passed"] and all(
                t["partial_le_target"] and t["target_le_partial_plus_tail"] for t in tallies)
        sections.append(section)
    return {"all_passed": all(s["passed"] for s in sections), "identities": sections}


def cmd_report(a) -> tuple[str, bool]:
    report = full_report(a.n_max, a.terms)
    if a.format == "json":
        return json.dumps(report, indent=2), report["all_passed"]
    flat = [rep.report_from_dict(r) for s in report["identities"] for r in s["reports"]]
    if a.format == "csv":
        return rep.reports_to_csv(flat), report["all_passed"]
    lines = [f"{s['identity']}: {s['checks']} checks, {'pass' if s['passed'] else 'FAIL'}"
             for s in report["identities"]]
    return "\n".join(lines), report["all_passed"]


COMMANDS = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "sample": cmd_sample,
    "series": cmd_series,
    "density": cmd_density,
    "report": cmd_report,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        text, ok = COMMANDS[args.command](args)
    except (UsageError, ValueError, TypeError) as e:
        print(f"probident: error: {e}", file=sys.stderr)
        return 2
    if args.output_path:
        try:
            with open(args.output_path, "w") as fh:
                fh.write(text + "\n")
        except OSError as e:
            print(f"probident: error: cannot write {args.output_path}: {e}", file=sys.stderr)
            return 2
    else:
        print(text)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
