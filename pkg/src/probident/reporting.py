"""Lossless JSON/CSV encoding of identity reports and numeric results.

Rationals are written as ``"num/den"`` strings and PiGraded values as lists
of ``[half_exponent, "num/den"]`` pairs, so a report file can be read back
into exactly the values that produced it.  Float ``approx_*`` fields are a
convenience only and are ``null`` when the value overflows a double.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict
from fractions import Fraction
from typing import Any, Iterable, Optional

import gmpy2

from .exact import PiGraded
from .identities import IdentityId, IdentityReport, SeriesTally

REPORT_COLUMNS = [
    "identity", "n", "p", "lhs", "rhs", "residual", "equal", "approx_lhs", "approx_rhs", "note",
]


# gmpy2 converts big integers to and from decimal without the interpreter's
# digit limit, which long series partial sums exceed.

def rational_to_str(q: Fraction) -> str:
    return f"{gmpy2.mpz(q.numerator)}/{gmpy2.mpz(q.denominator)}"


def rational_from_str(s: str) -> Fraction:
    num, _, den = s.strip().partition("/")
    return Fraction(int(gmpy2.mpz(num)), int(gmpy2.mpz(den or "1")))


def pigraded_to_json(v: PiGraded) -> list:
    return [[m, rational_to_str(q)] for m, q in v.items()]


def pigraded_from_json(data) -> PiGraded:
    return PiGraded((int(m), rational_from_str(q)) for m, q in data)


def _approx(v: PiGraded) -> Optional[float]:
    try:
        x = float(v)
    except OverflowError:
        return None
    return x if math.isfinite(x) else None


def report_to_dict(r: IdentityReport) -> dict:
    d = {
        "identity": str(r.id),
        "n": r.n,
        "p": None if r.p is None else rational_to_str(r.p),
        "lhs": pigraded_to_json(r.lhs),
        "rhs": pigraded_to_json(r.rhs),
        "residual": pigraded_to_json(r.residual),
        "equal": r.equal,
        "approx_lhs": _approx(r.lhs),
        "approx_rhs": _approx(r.rhs),
    }
    if r.note:
        d["note"] = r.note
    return d


def report_from_dict(d: dict) -> IdentityReport:
    return IdentityReport(
        id=IdentityId(d["identity"]),
        n=int(d["n"]),
        p=None if d.get("p") in (None, "") else rational_from_str(d["p"]),
        lhs=pigraded_from_json(d["lhs"]),
        rhs=pigraded_from_json(d["rhs"]),
        equal=bool(d["equal"]),
        residual=pigraded_from_json(d["residual"]),
        note=d.get("note") or None,
    )


def reports_to_csv(reports: Iterable[IdentityReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        d = report_to_dict(r)
        row = {k: d.get(k) for k in REPORT_COLUMNS}
        for k in ("lhs", "rhs", "residual"):
            row[k] = json.dumps(row[k])
        row["equal"] = "true" if r.equal else "false"
        for k in ("p", "approx_lhs", "approx_rhs", "note"):
            if row[k] is None:
                row[k] = ""
        w.writerow(row)
    return buf.getvalue()


def reports_from_csv(text: str) -> list[IdentityReport]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        d = dict(row)
        for k in ("lhs", "rhs", "residual"):
            d[k] = json.loads(d[k])
        d["equal"] = d["equal"] == "true"
        out.append(report_from_dict(d))
    return out


def report_to_text(r: IdentityReport) -> str:
    p = "" if r.p is None else f" p={r.p}"
    line = f"{r.id} n={r.n}{p}: lhs={_fmt(r.lhs)} rhs={_fmt(r.rhs)} equal={'true' if r.equal else 'false'}"
    if r.note:
        line += f"\n  note: {r.note}"
    return line


def _fmt(v: PiGraded) -> str:
    if v.is_rational:
        return str(gmpy2.mpq(v.as_rational()))
    return repr(v)[len("PiGraded("):-1]


def tally_to_dict(t: SeriesTally, bracket: Optional[tuple[bool, bool]] = None) -> dict:
    d = {
        "n": t.n,
        "terms_used": t.terms_used,
        "partial_sum": rational_to_str(t.partial_sum),
        "last_term": rational_to_str(t.last_term),
        "tail_bound": rational_to_str(t.tail_bound),
        "target": pigraded_to_json(t.target),
        "approx_partial_sum": float(t.partial_sum),
        "approx_target": float(t.target),
        "approx_ratio": t.ratio(),
        "approx_tail_bound": float(t.tail_bound),
        "note": (
            "corrected series: term_k = (1/2)_k^2 Gamma(n+1/2) / (k! Gamma(n+k+3/2)); "
            "the form without 1/k! diverges"
        ),
    }
    if bracket is not None:
        d["partial_le_target"], d["target_le_partial_plus_tail"] = bracket
    return d


def plain_dict(obj: Any) -> dict:
    """asdict() with Fractions rendered as num/den strings."""
    d = asdict(obj)
    return {k: rational_to_str(v) if isinstance(v, Fraction) else v for k, v in d.items()}
