"""Check results and deterministic report emission.

Every verification operation returns one or more ``CheckResult`` rows.  A
``Report`` collects the rows of a run, orders them by check name and can
render itself as stable text or JSON (identical inputs give identical
bytes).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
UNVERIFIED = "unverified"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    order: int | None = None  # h-order up to which equality was certified; None = exact
    witness: str | None = None
    notes: tuple[str, ...] = ()

    def ok(self) -> bool:
        return self.status != FAIL

    def order_label(self) -> str:
        return "exact" if self.order is None else f"order {self.order}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "order": self.order,
            "witness": self.witness,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckResult":
        return cls(
            name=d["name"],
            status=d["status"],
            order=d["order"],
            witness=d["witness"],
            notes=tuple(d["notes"]),
        )


@dataclass
class Report:
    scenario: str = ""
    description: str = ""
    results: list[CheckResult] = field(default_factory=list)

    def add(self, *results: CheckResult) -> None:
        self.results.extend(results)

    def sorted_results(self) -> list[CheckResult]:
        return sorted(self.results, key=lambda r: r.name)

    def overall(self) -> str:
        return PASS if all(r.ok() for r in self.results) else FAIL

    def passed(self) -> bool:
        return self.overall() == PASS

    def to_text(self) -> str:
        lines = []
        header = f"SCENARIO {self.scenario}" if self.scenario else "SCENARIO"
        if self.description:
            header += f": {self.description}"
        lines.append(header)
        for r in self.sorted_results():
            line = f"CHECK {r.name}: {r.status.upper()} [{r.order_label()}]"
            if r.witness is not None:
                line += f" (witness: {r.witness})"
            lines.append(line)
            for note in r.notes:
                lines.append(f"  note: {note}")
        n_ok = sum(1 for r in self.results if r.ok())
        lines.append(f"OVERALL: {self.overall().upper()} ({n_ok}/{len(self.results)})")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "description": self.description,
            "checks": [r.to_dict() for r in self.sorted_results()],
            "overall": self.overall(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        rep = cls(scenario=d["scenario"], description=d["description"])
        rep.results = [CheckResult.from_dict(c) for c in d["checks"]]
        return rep

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))
