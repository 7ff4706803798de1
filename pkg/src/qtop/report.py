from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any


def _jsonable(value: Any) -> Any:
    if isinstance(value, float):
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if hasattr(value, "item"):  # numpy scalar
        return _jsonable(value.item())
    return value


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one axiom.

    For finite quandles ``max_residual`` counts violating tuples and the
    witness is the lexicographically first one. For continuum specs it is the
    largest absolute defect seen on the grid and the witness is the point tuple
    attaining it.
    """

    axiom: str
    grid: str
    max_residual: float
    witness: tuple | None
    passed: bool
    tol: float = 0.0
    cases: tuple["VerificationReport", ...] = ()
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["cases"] = [c.to_dict() for c in self.cases]
        return _jsonable(out)


@dataclass(frozen=True)
class FiniteReport:
    label: str
    size: int
    axioms: tuple[VerificationReport, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.axioms)

    def __getitem__(self, axiom: str) -> VerificationReport:
        for r in self.axioms:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def first_failure(self) -> VerificationReport | None:
        return next((r for r in self.axioms if not r.passed), None)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "size": self.size,
            "passed": self.passed,
            "axioms": [r.to_dict() for r in self.axioms],
        }


@dataclass(frozen=True)
class LocusReport:
    """Trivial (or nontrivial) locus of a continuum quandle sampled on a grid.

    ``intervals`` holds positive-length components as closed ``(lo, hi)``
    pairs; ``points`` holds components that are a single grid point.
    """

    kind: str
    grid: int
    tol: float
    intervals: tuple[tuple[float, float], ...] = ()
    points: tuple[float, ...] = ()
    component_count: int = 0
    whole_domain: bool = False

    @property
    def interval_count(self) -> int:
        return len(self.intervals)

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))
