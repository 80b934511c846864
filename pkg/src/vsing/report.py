"""Check reports shared by the verification ops and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

from .state import FockState, format_rational, serialize

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class Case:
    key: tuple
    ok: bool
    witness: FockState | None = None
    note: str = ""


@dataclass
class CheckReport:
    """Per-case outcomes of one verification op."""

    name: str
    params: dict = field(default_factory=dict)
    cases: list = field(default_factory=list)
    note: str = ""

    def add(self, key, ok, witness=None, note=""):
        self.cases.append(Case(tuple(key), bool(ok), witness, note))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self):
        return [c for c in self.cases if not c.ok]

    def __bool__(self):
        return self.passed


@dataclass
class CheckResult:
    name: str
    params: dict
    status: str
    details: str
    witness: str | None = None

    def __post_init__(self):
        if self.status == FAIL and self.witness is None:
            raise ValueError("a failing check must carry a witness")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": _jsonable(self.params),
            "status": self.status,
            "details": self.details,
            "witness": self.witness,
        }


def _jsonable(x):
    from fractions import Fraction
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def to_result(report: CheckReport, empty_status=PASS) -> CheckResult:
    n = len(report.cases)
    if n == 0:
        return CheckResult(report.name, report.params, empty_status,
                           report.note or "no cases in sample grid")
    bad = report.failures
    if not bad:
        details = f"{n}/{n} cases exact"
        if report.note:
            details += "; " + report.note
        return CheckResult(report.name, report.params, PASS, details)
    first = bad[0]
    witness = serialize(first.witness) if first.witness is not None else _null_witness(report)
    details = f"{len(bad)}/{n} cases failed; first at {first.key}"
    if first.note:
        details += ": " + first.note
    return CheckResult(report.name, report.params, FAIL, details, witness)


def _null_witness(report):
    # some failures are scalar mismatches; serialize an empty marker state
    return "no state witness for " + report.name
