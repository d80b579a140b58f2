"""Check results and their JSON, text and LaTeX renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .polymat import LegOp, RingMatrix

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    identity_id: str
    formula: str
    spins: tuple[str, ...]
    status: str
    witness: dict | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["spins"] = list(self.spins)
        return d


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def extend(self, other: "CheckReport | Iterable[CheckResult]") -> "CheckReport":
        items = other.results if isinstance(other, CheckReport) else other
        self.results.extend(items)
        return self

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    def by_id(self, identity_id: str) -> list[CheckResult]:
        return [r for r in self.results if r.identity_id == identity_id]

    def status_of(self, identity_id: str) -> str:
        """Aggregate status of every result with this id."""
        rs = self.by_id(identity_id)
        if not rs:
            raise KeyError(identity_id)
        if any(r.status == FAIL for r in rs):
            return FAIL
        if all(r.status == SKIPPED for r in rs):
            return SKIPPED
        return PASS

    def sorted(self) -> "CheckReport":
        return CheckReport(sorted(self.results, key=lambda r: (r.identity_id, r.spins)))

    def to_json(self) -> str:
        rs = self.sorted().results
        summary = {s: sum(r.status == s for r in rs) for s in (PASS, FAIL, SKIPPED)}
        return json.dumps({"summary": summary, "results": [r.to_dict() for r in rs]}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CheckReport":
        data = json.loads(text)
        return cls([CheckResult(r["identity_id"], r["formula"], tuple(r["spins"]), r["status"], r["witness"])
                    for r in data["results"]])

    def to_text(self) -> str:
        lines = []
        for r in self.sorted().results:
            line = f"{r.status.upper():7} {r.identity_id:34} ({', '.join(r.spins)})"
            if r.witness:
                line += "  " + json.dumps(r.witness)
            lines.append(line)
        return "\n".join(lines)

    def to_latex(self) -> str:
        rows = [
            f"\\texttt{{{_tex_escape(r.identity_id)}}} & ${', '.join(r.spins)}$ & {r.status} \\\\"
            for r in self.sorted().results
        ]
        return "\\begin{tabular}{lll}\n\\hline\nidentity & spins & status \\\\\n\\hline\n" + \
            "\n".join(rows) + "\n\\hline\n\\end{tabular}"


def _tex_escape(s: str) -> str:
    return s.replace("_", "\\_")


def _matrix(x) -> RingMatrix:
    return x.mat if isinstance(x, LegOp) else x


def compare(identity_id: str, formula: str, spins, lhs, rhs) -> CheckResult:
    """Exact equality of two operators; the witness is the first differing entry."""
    spins = tuple(str(s) for s in spins)
    a, b = _matrix(lhs), _matrix(rhs)
    if a.dim != b.dim:
        return CheckResult(identity_id, formula, spins, FAIL, {"reason": f"dimension {a.dim} vs {b.dim}"})
    diff = a.first_difference(b)
    if diff is None:
        return CheckResult(identity_id, formula, spins, PASS)
    i, j, x, y = diff
    return CheckResult(identity_id, formula, spins, FAIL,
                       {"row": i, "col": j, "lhs": str(x), "rhs": str(y)})


def boolean(identity_id: str, formula: str, spins, ok: bool, witness: dict | None = None) -> CheckResult:
    spins = tuple(str(s) for s in spins)
    return CheckResult(identity_id, formula, spins, PASS if ok else FAIL, None if ok else witness)


def skipped(identity_id: str, formula: str, spins, reason: str) -> CheckResult:
    return CheckResult(identity_id, formula, tuple(str(s) for s in spins), SKIPPED, {"reason": reason})
