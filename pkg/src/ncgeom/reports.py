"""Machine-readable verification reports.

Every suite is a list of named checks; a check callable returns a
(status, witness, details) triple with status in {"pass", "fail", "warn"}
("warn" marks a documented discrepancy that is reported rather than
corrected, and does not fail the run).  Reports are serialised to JSON with
a stable ordering so that identical invocations produce byte-identical
output apart from the wall-time fields.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
from dataclasses import dataclass, field

SCHEMA_VERSION = "1"

PASS = "pass"
FAIL = "fail"
WARN = "warn"


@dataclass
class Check:
    check_id: str
    identity: str
    ops: tuple
    fn: object  # () -> (status, witness, details)


@dataclass
class CheckReport:
    suite: str
    check_id: str
    identity: str
    params: dict
    status: str
    witness: str | None
    time_ms: float
    details: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "suite": self.suite,
            "id": self.check_id,
            "identity": self.identity,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "time_ms": round(self.time_ms, 3),
        }
        if self.details:
            out["details"] = self.details
        return out


def ok():
    return (PASS, None, {})


def passed(details=None):
    return (PASS, None, details or {})


def failed(witness, details=None):
    return (FAIL, str(witness), details or {})


def warned(witness, details=None):
    return (WARN, str(witness), details or {})


def run_suite(suite_name, checks, params):
    """Run every check (no silent skips); a crash is a failure with the
    exception text as witness."""
    reports = []
    for check in checks:
        start = time.perf_counter()
        try:
            status, witness, details = check.fn()
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            status, witness, details = FAIL, f"{type(exc).__name__}: {exc}", {}
        elapsed = (time.perf_counter() - start) * 1000.0
        reports.append(
            CheckReport(
                suite=suite_name,
                check_id=check.check_id,
                identity=check.identity,
                params=dict(params),
                status=status,
                witness=witness,
                time_ms=elapsed,
                details=details,
            )
        )
    return reports


def summarize(reports):
    summary = {PASS: 0, FAIL: 0, WARN: 0}
    for r in reports:
        summary[r.status] += 1
    return summary


def assemble(invocation, reports):
    reports = sorted(reports, key=lambda r: (r.suite, r.check_id))
    return {
        "version": SCHEMA_VERSION,
        "invocation": invocation,
        "checks": [r.to_json() for r in reports],
        "summary": summarize(reports),
    }


def write_atomic(path, document):
    """Serialise with sorted keys and replace the target atomically."""
    text = json.dumps(document, sort_keys=True, indent=2) + "\n"
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
