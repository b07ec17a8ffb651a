"""Certificates: a verdict tied to per-condition evidence."""
from dataclasses import dataclass, field

from .. import __version__

PASS = "pass"
FAIL = "fail"
ORACLE = "oracle-assumed"
INCONCLUSIVE = "inconclusive"
STATUSES = (PASS, FAIL, ORACLE, INCONCLUSIVE)

CERTIFIED = "certified-mu-zero"
VERDICTS = (CERTIFIED, INCONCLUSIVE)

CONDITIONAL_TAG = " [conditional]"


@dataclass(frozen=True)
class Condition:
    name: str
    status: str
    evidence: str

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown condition status {self.status!r}")

    def to_dict(self):
        return {"name": self.name, "status": self.status, "evidence": self.evidence}


@dataclass(frozen=True)
class Certificate:
    subject: str
    theorem: str
    conditions: tuple
    verdict: str
    interpretation_notes: tuple = field(default_factory=tuple)

    @classmethod
    def assemble(cls, subject, theorem, conditions, notes=()):
        """Derive the verdict from the conditions; flag oracle-dependent subjects."""
        conditions = tuple(conditions)
        ok = bool(conditions) and all(c.status in (PASS, ORACLE) for c in conditions)
        if any(c.status == ORACLE for c in conditions) and not subject.endswith(CONDITIONAL_TAG):
            subject += CONDITIONAL_TAG
        return cls(subject, theorem, conditions, CERTIFIED if ok else INCONCLUSIVE, tuple(notes))

    @property
    def certified(self):
        return self.verdict == CERTIFIED

    def condition(self, name):
        return next(c for c in self.conditions if c.name == name)

    def failed(self):
        return [c for c in self.conditions if c.status == FAIL]

    def is_sound(self):
        if self.verdict not in VERDICTS:
            return False
        if self.verdict == CERTIFIED and any(c.status in (FAIL, INCONCLUSIVE) for c in self.conditions):
            return False
        if any(c.status == ORACLE for c in self.conditions) and CONDITIONAL_TAG.strip() not in self.subject:
            return False
        return True

    def to_dict(self, timestamp=None):
        out = {
            "subject": self.subject,
            "theorem": self.theorem,
            "conditions": [c.to_dict() for c in self.conditions],
            "verdict": self.verdict,
            "interpretation_notes": list(self.interpretation_notes),
            "toolkit_version": __version__,
        }
        if timestamp is not None:
            out["timestamp"] = timestamp
        return out

    @classmethod
    def from_dict(cls, data):
        return cls(
            data["subject"],
            data["theorem"],
            tuple(Condition(c["name"], c["status"], c["evidence"]) for c in data["conditions"]),
            data["verdict"],
            tuple(data.get("interpretation_notes", ())),
        )
