import json
from dataclasses import dataclass, field

import jsonschema

from utilities.utils import check_references, check_value

PASS = "pass"
FAIL = "fail"

CHECK_SCHEMA = {
    "type": "object",
    "required": ["name", "paper_ref", "status", "detail"],
    "properties": {
        "name": {"type": "string"},
        "paper_ref": {"type": "string"},
        "status": {"enum": [PASS, FAIL]},
        "detail": {"type": "string"},
        "data": {"type": "object"},
    },
}
REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "algebra", "order", "parameters", "status", "checks"],
    "properties": {
        "suite": {"type": "string"},
        "algebra": {"type": "string"},
        "order": {"type": ["integer", "null"]},
        "parameters": {"type": "object", "additionalProperties": {"type": "string"}},
        "status": {"enum": [PASS, FAIL]},
        "checks": {"type": "array", "items": CHECK_SCHEMA},
    },
}
RMATRIX_SCHEMA = {
    "type": "object",
    "required": ["check", "algebra", "order", "xi", "status", "first_failing_order", "failing_term_count"],
    "properties": {
        "check": {"type": "string"},
        "algebra": {"type": "string"},
        "order": {"type": "integer"},
        "xi": {"type": ["string", "null"]},
        "status": {"enum": [PASS, FAIL]},
        "first_failing_order": {"type": ["integer", "null"]},
        "failing_term_count": {"type": "integer"},
    },
}


@dataclass
class CheckResult:
    """
    Outcome of one verification
    """
    name: str
    status: str
    detail: str = ""
    paper_ref: str = ""
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.paper_ref:
            base = self.name.split(':')[0]
            self.paper_ref = str(check_value(check_references, base))

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        entry = {"name": self.name, "paper_ref": self.paper_ref, "status": self.status, "detail": self.detail}
        if self.data:
            entry["data"] = self.data
        return entry


def residual_summary(residual):
    """
    Locates the failing part of a residual element or tensor
    :param residual: AlgebraElement or TensorElement expected to vanish
    :return: dict with first_failing_order and failing_term_count
    """
    if residual.is_zero():
        return {"first_failing_order": None, "failing_term_count": 0}
    return {"first_failing_order": residual.valuation(), "failing_term_count": len(residual.terms)}


def compare(name, residual, detail_pass="exact", paper_ref=""):
    """
    CheckResult for a residual that must vanish
    """
    summary = residual_summary(residual)
    if residual.is_zero():
        return CheckResult(name, PASS, detail_pass, paper_ref, summary)
    detail = "residual has {} terms, first at ħ^{}".format(summary["failing_term_count"],
                                                          summary["first_failing_order"])
    return CheckResult(name, FAIL, detail, paper_ref, summary)


def merge(name, results, paper_ref=""):
    """
    Folds several results into one; fails with the list of failing parts
    """
    failures = [r for r in results if not r.passed]
    if not failures:
        return CheckResult(name, PASS, "{} identities hold".format(len(results)), paper_ref)
    detail = "; ".join("{}: {}".format(r.name, r.detail) for r in failures)
    return CheckResult(name, FAIL, detail, paper_ref, {"failures": [r.name for r in failures]})


def build_report(suite, algebra, order, parameters, results):
    """
    Assembles a report with checks sorted by name and validates it against REPORT_SCHEMA
    :return: dict
    """
    checks = [r.to_dict() for r in sorted(results, key=lambda r: r.name)]
    report = {
        "suite": suite,
        "algebra": algebra,
        "order": order,
        "parameters": {k: str(v) for k, v in parameters.items()},
        "status": PASS if all(c["status"] == PASS for c in checks) else FAIL,
        "checks": checks,
    }
    jsonschema.validate(report, REPORT_SCHEMA)
    return report


def rmatrix_entry(check, algebra, order, xi, result):
    """
    Structured R-matrix check record
    """
    entry = {
        "check": check,
        "algebra": algebra,
        "order": order,
        "xi": None if xi is None else str(xi),
        "status": result.status,
        "first_failing_order": result.data.get("first_failing_order"),
        "failing_term_count": result.data.get("failing_term_count", 0),
    }
    jsonschema.validate(entry, RMATRIX_SCHEMA)
    return entry


def dump_report(report, path=None):
    text = json.dumps(report, indent=2, sort_keys=False)
    if path:
        with open(path, 'w') as f:
            f.write(text + "\n")
    return text
