"""Row-level results and aggregated verification reports.

Rows serialize to CSV with a fixed column order and repr() floats
(shortest round-trip form), so a report is byte-identical across runs
with the same seed.  Aggregation normalizes each row's error by its own
tolerance; a report therefore passes exactly when max_violation <= 1,
and exact rows (tolerance zero) pass only at error zero.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field


@dataclass(frozen=True)
class ReportRow:
    claim_id: str
    trial: int
    quantity: str
    expected: float
    measured: float
    abs_err: float
    passed: bool
    tolerance: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    trials: int
    max_violation: float
    tolerance: float
    passed: bool
    details: tuple = ()

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.claim_id}: trials={self.trials} "
            f"max_violation={self.max_violation:.6g} tolerance={self.tolerance:.6g}"
        )


def row(claim_id, trial, quantity, expected, measured, tolerance) -> ReportRow:
    """Tolerance row; expected/measured must agree to within tolerance."""
    err = abs(float(measured) - float(expected))
    return ReportRow(
        claim_id, int(trial), quantity, float(expected), float(measured), err,
        err <= tolerance, float(tolerance),
    )


def bound_row(claim_id, trial, quantity, bound, measured, tolerance, side="upper") -> ReportRow:
    """One-sided row: measured <= bound (+tol) or measured >= bound (-tol)."""
    bound = float(bound)
    measured = float(measured)
    err = max(0.0, measured - bound) if side == "upper" else max(0.0, bound - measured)
    return ReportRow(
        claim_id, int(trial), quantity, bound, measured, err,
        err <= tolerance, float(tolerance),
    )


def exact_row(claim_id, trial, quantity, ok: bool) -> ReportRow:
    """Bit-exact claim; abs_err is 0 or 1 and the tolerance is zero."""
    return ReportRow(claim_id, int(trial), quantity, 1.0, 1.0 if ok else 0.0,
                     0.0 if ok else 1.0, bool(ok), 0.0)


def digest(text: str) -> str:
    return hashlib.sha1(text.encode()).hexdigest()[:10]


def rows_to_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    buf.write("claim_id,trial,quantity,expected,measured,abs_err,passed\n")
    for r in rows:
        buf.write(
            f"{r.claim_id},{r.trial},{r.quantity},{r.expected!r},"
            f"{r.measured!r},{r.abs_err!r},{str(r.passed).lower()}\n"
        )
    return buf.getvalue()


def summarize(claim_id: str, rows: list[ReportRow], trials: int | None = None,
              detail_cap: int = 50) -> VerificationReport:
    """Aggregate rows into one report with tolerance-normalized violation."""
    worst = 0.0
    for r in rows:
        if r.tolerance > 0.0:
            ratio = r.abs_err / r.tolerance
        else:
            ratio = 0.0 if r.abs_err == 0.0 else float("inf")
        worst = max(worst, ratio)
    ranked = sorted(rows, key=lambda r: (r.passed, -r.abs_err))[:detail_cap]
    details = tuple(
        (digest(f"{r.claim_id}|{r.trial}|{r.quantity}"), r.measured) for r in ranked
    )
    return VerificationReport(
        claim_id=claim_id,
        trials=len(rows) if trials is None else trials,
        max_violation=worst,
        tolerance=1.0,
        passed=all(r.passed for r in rows),
        details=details,
    )
