"""Machine-readable verification reports.

A report is a list of named check entries. Overall status is pass iff
no entry fails; every failing entry must carry a witness. Entries with
status skipped-bound record checks that were run in a reduced mode (or
not at all) because of an exhaustion bound, together with the note
explaining the bound.
"""

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-bound"


@dataclass
class CheckEntry:
    name: str
    status: str
    witness: object = None
    bound_note: str | None = None


@dataclass
class Report:
    subject: str
    entries: list = field(default_factory=list)

    def check(self, name, ok, witness=None, bound_note=None):
        if ok:
            self.entries.append(CheckEntry(name, PASS, None, bound_note))
        else:
            if witness is None:
                witness = "unwitnessed failure"
            self.entries.append(CheckEntry(name, FAIL, witness, bound_note))
        return ok

    def skip(self, name, bound_note):
        self.entries.append(CheckEntry(name, SKIPPED, None, bound_note))

    def extend(self, other, prefix=""):
        for e in other.entries:
            self.entries.append(
                CheckEntry(prefix + e.name, e.status, e.witness, e.bound_note)
            )

    def entry(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def overall(self):
        return PASS if all(e.status != FAIL for e in self.entries) else FAIL

    def ok(self):
        return self.overall == PASS

    def failures(self):
        return [e for e in self.entries if e.status == FAIL]

    def to_dict(self):
        return {
            "format": "report",
            "version": 1,
            "subject": self.subject,
            "overall": self.overall,
            "entries": [
                {
                    "name": e.name,
                    "status": e.status,
                    **({"witness": _plain(e.witness)} if e.status == FAIL else {}),
                    **({"bound_note": e.bound_note} if e.bound_note else {}),
                }
                for e in self.entries
            ],
        }

    def to_structured(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self):
        lines = [f"subject: {self.subject}"]
        for e in self.entries:
            mark = {"pass": "ok", "fail": "FAIL", "skipped-bound": "skip"}[e.status]
            line = f"  [{mark:4}] {e.name}"
            if e.status == FAIL:
                line += f"  witness={e.witness!r}"
            if e.bound_note:
                line += f"  ({e.bound_note})"
            lines.append(line)
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines) + "\n"


def _plain(x):
    """Make witnesses JSON-serialisable without losing information."""
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return repr(x)
