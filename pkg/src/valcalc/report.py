"""Verification reports shared by every suite."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .scalar import ExactScalar, render_scalar

__all__ = ["VerificationItem", "VerificationReport", "PASS", "FAIL"]

PASS = "pass"
FAIL = "fail"


def _text(x) -> str:
    if x is None:
        return ""
    if isinstance(x, ExactScalar):
        return render_scalar(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _sort_key(item: "VerificationItem"):
    i = item.id
    return (i.get("n", 0), i.get("r", 0), i.get("k", 0), i.get("m", 0), item.suite, item.label)


@dataclass
class VerificationItem:
    id: dict
    suite: str
    label: str = ""
    expected: str = ""
    computed: str = ""
    status: str = PASS
    detail: str = ""

    @classmethod
    def make(cls, id, suite: str, label: str, expected, computed, ok: bool | None = None,
             detail: str = "") -> "VerificationItem":
        if ok is None:
            ok = expected == computed
        if not isinstance(id, dict):
            id = dict(zip("nrkm", tuple(id)))
        return cls(dict(id), suite, label, _text(expected), _text(computed),
                   PASS if ok else FAIL, detail)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        d = {"id": self.id, "suite": self.suite, "expected": self.expected,
             "computed": self.computed, "status": self.status}
        if self.label:
            d["label"] = self.label
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class VerificationReport:
    command: str = ""
    params: dict = field(default_factory=dict)
    items: list[VerificationItem] = field(default_factory=list)
    elapsed_ms: int = 0

    def add(self, item: VerificationItem) -> None:
        self.items.append(item)

    def extend(self, other: "VerificationReport") -> None:
        self.items.extend(other.items)

    def sort(self) -> None:
        self.items.sort(key=_sort_key)

    @property
    def passed(self) -> int:
        return sum(1 for i in self.items if i.passed)

    @property
    def failed(self) -> int:
        return len(self.items) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def failures(self) -> list[VerificationItem]:
        return [i for i in self.items if not i.passed]

    def summary(self) -> dict:
        return {"pass": self.passed, "fail": self.failed}

    def as_dict(self, with_time: bool = True) -> dict:
        d = {"command": self.command, "params": self.params,
             "items": [i.as_dict() for i in self.items], "summary": self.summary()}
        if with_time:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    def to_json(self, with_time: bool = True) -> str:
        return json.dumps(self.as_dict(with_time), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "r", "k", "m", "suite", "label", "expected", "computed", "status"])
        for it in self.items:
            w.writerow([it.id.get(key, "") for key in "nrkm"]
                       + [it.suite, it.label, it.expected, it.computed, it.status])
        return buf.getvalue()

    def table(self) -> str:
        rows = [("n", "r", "k", "m", "suite", "label", "expected", "computed", "status")]
        for it in self.items:
            rows.append(tuple(str(it.id.get(key, "")) for key in "nrkm")
                        + (it.suite, it.label, it.expected, it.computed, it.status))
        widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        lines.append(f"{self.passed} passed, {self.failed} failed")
        return "\n".join(lines)
