import enum
import math
from dataclasses import dataclass, field
from typing import Dict, Optional


class Status(enum.Enum):
    HOLDS = "holds"
    FAILED = "failed"
    SKIPPED = "skipped"
    NOT_APPLICABLE = "not_applicable"


DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Verdict:
    """
    One checked inequality. `slack` is oriented so that the statement holds
    exactly when slack >= -tol: lhs - rhs for lower bounds ("lhs >= rhs"),
    rhs - lhs for upper bounds ("lhs <= rhs").
    """

    name: str
    anchor: str
    lhs: Optional[float]
    rhs: Optional[float]
    slack: Optional[float]
    status: Status
    tol: float = DEFAULT_TOL
    direction: str = ">="
    reason: str = ""
    dependencies: Dict[str, str] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAILED

    @classmethod
    def _judged(cls, name, anchor, lhs, rhs, slack, tol, direction, deps):
        lhs, rhs, slack = float(lhs), float(rhs), float(slack)
        ok = not math.isnan(slack) and slack >= -tol
        return cls(
            name=name,
            anchor=anchor,
            lhs=lhs,
            rhs=rhs,
            slack=slack,
            status=Status.HOLDS if ok else Status.FAILED,
            tol=tol,
            direction=direction,
            dependencies={k: str(v) for k, v in deps.items()},
        )

    @classmethod
    def lower_bound(
        cls, name, anchor, lhs, rhs, tol=DEFAULT_TOL, **deps
    ) -> "Verdict":
        """lhs >= rhs"""
        return cls._judged(name, anchor, lhs, rhs, lhs - rhs, tol, ">=", deps)

    @classmethod
    def upper_bound(
        cls, name, anchor, lhs, rhs, tol=DEFAULT_TOL, **deps
    ) -> "Verdict":
        """lhs <= rhs"""
        return cls._judged(name, anchor, lhs, rhs, rhs - lhs, tol, "<=", deps)

    @classmethod
    def skipped(
        cls, name, anchor, reason, tol=DEFAULT_TOL, **deps
    ) -> "Verdict":
        return cls(
            name=name,
            anchor=anchor,
            lhs=None,
            rhs=None,
            slack=None,
            status=Status.SKIPPED,
            tol=tol,
            reason=reason,
            dependencies={k: str(v) for k, v in deps.items()},
        )

    @classmethod
    def not_applicable(
        cls, name, anchor, reason, tol=DEFAULT_TOL, **deps
    ) -> "Verdict":
        return cls(
            name=name,
            anchor=anchor,
            lhs=None,
            rhs=None,
            slack=None,
            status=Status.NOT_APPLICABLE,
            tol=tol,
            reason=reason,
            dependencies={k: str(v) for k, v in deps.items()},
        )
