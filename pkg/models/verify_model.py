from dataclasses import dataclass, field
from typing import List


@dataclass
class Check:
    criterion: int
    name: str
    deviation: float
    limit: float
    passed: bool
    gating: bool = True
    detail: str = ''


@dataclass
class VerificationReport:
    checks: List[Check] = field(default_factory=list)

    def add(self, criterion: int, name: str, deviation: float, limit: float,
            gating: bool = True, detail: str = '') -> Check:
        check = Check(criterion, name, float(deviation), float(limit), bool(deviation <= limit), gating, detail)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks if check.gating)

    @property
    def failures(self) -> List[Check]:
        return [check for check in self.checks if check.gating and not check.passed]
