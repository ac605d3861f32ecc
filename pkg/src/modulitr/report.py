"""Machine-readable reports for the verification harness.

A report is a list of :class:`CheckRecord` plus the configuration it was
produced under.  Serialization is fully deterministic: records are sorted
by check name and canonicalized parameters, rationals are rendered as
``p/q`` strings, and no timestamps or environment data are embedded, so
byte-identical reports across runs and thread counts are guaranteed by
construction.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

REPORT_VERSION = "1"

PASS = "pass"
FAIL = "fail"
SKIP = "skipped"


def frac_str(v: Fraction) -> str:
    """Exact ``p/q`` rendering (always with a denominator)."""
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def qpoly_str(poly: dict) -> str:
    """Render ``{q_exponent: Fraction}`` as ``Q^d*p/q`` terms joined by
    ``+``; the empty polynomial is ``0``."""
    if not poly:
        return "0"
    return " + ".join(f"Q^{d}*{frac_str(v)}" for d, v in sorted(poly.items()))


def tpoly_str(poly: dict) -> str:
    """Render ``{t_exponent: Fraction}`` analogously with base T."""
    if not poly:
        return "0"
    return " + ".join(f"T^{d}*{frac_str(v)}" for d, v in sorted(poly.items()))


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one verification: parameters plus exact value strings.

    Failures always carry both the expected and the actual value; skipped
    records always carry a reason.
    """

    check: str
    params: dict
    status: str
    expected: str = ""
    actual: str = ""
    skip_reason: str = ""

    def __post_init__(self):
        if self.status == FAIL:
            assert self.expected and self.actual
        if self.status == SKIP:
            assert self.skip_reason

    def sort_key(self):
        return (self.check, sorted((k, str(v)) for k, v in self.params.items()))

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "status": self.status,
        }
        if self.expected:
            out["expected"] = self.expected
        if self.actual:
            out["actual"] = self.actual
        if self.skip_reason:
            out["skip_reason"] = self.skip_reason
        return out


@dataclass
class Report:
    config: dict
    records: list = field(default_factory=list)

    def sort(self):
        self.records.sort(key=CheckRecord.sort_key)

    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for r in self.records:
            if r.status == PASS:
                out["pass"] += 1
            elif r.status == FAIL:
                out["fail"] += 1
            else:
                out["skip"] += 1
        return out

    def exit_code(self) -> int:
        return 1 if self.summary()["fail"] else 0

    def to_json(self) -> str:
        self.sort()
        doc = {
            "version": REPORT_VERSION,
            "config": {k: self.config[k] for k in sorted(self.config)},
            "summary": self.summary(),
            "records": [r.to_dict() for r in self.records],
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        """Summary table: one row per check name."""
        self.sort()
        per = {}
        for r in self.records:
            row = per.setdefault(r.check, {"pass": 0, "fail": 0, "skip": 0})
            key = "skip" if r.status == SKIP else r.status
            row[key] += 1
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "pass", "fail", "skip"])
        for name in sorted(per):
            row = per[name]
            w.writerow([name, row["pass"], row["fail"], row["skip"]])
        return buf.getvalue()
