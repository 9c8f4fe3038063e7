"""Versioned run reports.  The JSON form is byte-stable for a given config;
timing lives only in the text form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .. import __version__

SCHEMA = "qvir.report/1"


@dataclass
class Report:
    command: str
    config: dict
    records: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def summary(self) -> dict:
        passed = sum(r.status == "pass" for r in self.records)
        return {"total": len(self.records), "passed": passed, "failed": len(self.records) - passed}

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "summary": self.summary(),
            "records": [r.to_json() for r in self.records],
            "data": self.data,
        }


def emit(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n"
    lines = [f"qvir {report.command}: {report.summary()['passed']}/{report.summary()['total']} checks passed "
             f"in {report.elapsed:.2f}s"]
    for r in report.records:
        lines.append(f"  [{r.status.upper():4}] {r.name} ({r.tag})")
        if r.status != "pass" and r.detail:
            lines.append(f"         {json.dumps(r.detail, ensure_ascii=False)}")
    for key, value in report.data.items():
        text = value if isinstance(value, str) else json.dumps(value, ensure_ascii=False)
        if len(text) > 400:
            text = text[:400] + " ..."
        lines.append(f"  {key}: {text}")
    return "\n".join(lines) + "\n"
