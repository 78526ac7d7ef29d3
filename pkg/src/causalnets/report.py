"""Validation reports.

Every validator returns a Report instead of a bare bool so that callers (and
the CLI) can show which condition failed and on which witness.  Condition
identifiers are stable kebab-case strings.
"""
from dataclasses import dataclass, field


def _as_jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(_as_jsonable(v) for v in x)
    if isinstance(x, (tuple, list)):
        return [_as_jsonable(v) for v in x]
    return x


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: tuple = ()
    message: str = ""

    def to_json(self):
        return {
            "condition": self.condition,
            "witness": _as_jsonable(self.witness),
            "message": self.message,
        }


@dataclass
class Report:
    subject: str
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def fail(self, condition, witness=(), message=""):
        self.violations.append(Violation(condition, tuple(witness), message))

    def note(self, message):
        self.notes.append(message)

    def merge(self, other, prefix):
        """Absorb a nested report, prefixing its condition ids."""
        for v in other.violations:
            self.violations.append(
                Violation(f"{prefix}:{v.condition}", v.witness, v.message))
        for n in other.notes:
            self.notes.append(f"{prefix}: {n}")

    def conditions(self):
        return {v.condition for v in self.violations}

    def to_json(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
            "notes": list(self.notes),
        }
