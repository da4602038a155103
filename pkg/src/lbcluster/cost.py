"""Cost functions, feasibility predicates and center snapping."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    AmountOutOfRange,
    DanglingCenter,
    GuaranteeViolated,
    MultiplyAssignedPoint,
    SolutionError,
)
from .instance import Instance

REL_TOL = 1e-9

MultiAssignment = tuple[tuple[int, ...], ...]
FractionalAssignment = tuple[tuple[tuple[int, Fraction], ...], ...]


class Kind(str, enum.Enum):
    WEAK = "weak"
    BWEAK = "bweak"
    LB = "lb"
    BICRITERIA = "bicriteria"
    PLAIN = "plain"
    FCOST = "fcost"
    FRACTIONAL = "fractional"


@dataclass(frozen=True)
class Solution:
    """Open centers plus an integral or a fractional assignment.

    Exactly one of ``assignment`` / ``amounts`` is set. ``params`` carries the
    kind parameters: ``b`` for BWEAK, ``beta`` for BICRITERIA, ``eps`` for
    FRACTIONAL.
    """

    centers: tuple[int, ...]
    assignment: MultiAssignment | None = None
    amounts: FractionalAssignment | None = None
    kind: Kind = Kind.WEAK
    params: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "centers", tuple(sorted(set(self.centers))))
        if (self.assignment is None) == (self.amounts is None):
            raise SolutionError("exactly one of assignment / amounts is required")
        if self.assignment is not None:
            object.__setattr__(
                self, "assignment", tuple(tuple(a) for a in self.assignment)
            )
        else:
            object.__setattr__(
                self,
                "amounts",
                tuple(tuple((int(c), Fraction(v)) for c, v in row) for row in self.amounts),
            )

    @property
    def is_fractional(self) -> bool:
        return self.amounts is not None

    def with_kind(self, kind: Kind, **params) -> "Solution":
        return Solution(self.centers, self.assignment, self.amounts, kind, params)

    def clusters(self) -> dict[int, list[int]]:
        """Center -> sorted list of points connected to it."""
        out: dict[int, list[int]] = {c: [] for c in self.centers}
        rows = self.assignment if self.assignment is not None else (
            tuple(c for c, _ in row) for row in self.amounts
        )
        for x, row in enumerate(rows):
            for c in row:
                out.setdefault(c, []).append(x)
        return out


def single(centers: Sequence[int], labels: Sequence[int], kind: Kind = Kind.PLAIN, **params) -> Solution:
    """Build a single-assignment solution from one label per point."""
    return Solution(tuple(centers), tuple((int(c),) for c in labels), kind=kind, params=params)


def nearest_labels(inst: Instance, centers: Sequence[int]) -> np.ndarray:
    """Nearest open center per point; ties go to the smallest center id."""
    cs = np.array(sorted(centers), dtype=int)
    sub = inst.dist[: inst.n][:, cs]
    return cs[np.argmin(sub, axis=1)]


def _check_dangling(sol: Solution) -> None:
    open_ = set(sol.centers)
    rows = sol.assignment if sol.assignment is not None else [
        [c for c, _ in row] for row in sol.amounts
    ]
    for x, row in enumerate(rows):
        for c in row:
            if c not in open_:
                raise DanglingCenter(f"point {x} assigned to non-open center {c}")


def cost_multi(inst: Instance, sol: Solution) -> float:
    """Sum over points of the distances to every assigned center."""
    if sol.assignment is None:
        raise SolutionError("cost_multi needs an integral assignment")
    _check_dangling(sol)
    D = inst.dist
    return float(sum(D[x, c] for x, row in enumerate(sol.assignment) for c in row))


def cost_fractional(inst: Instance, sol: Solution) -> float:
    """Amount-weighted assignment cost."""
    if sol.amounts is None:
        return cost_multi(inst, sol)
    _check_dangling(sol)
    D = inst.dist
    total = 0.0
    for x, row in enumerate(sol.amounts):
        for c, amt in row:
            if not 0 < amt <= 1:
                raise AmountOutOfRange(f"amount {amt} for ({x}, {c}) outside (0, 1]")
            total += float(amt) * D[x, c]
    return total


def cost_with_center_costs(inst: Instance, sol: Solution, f: Mapping[int, float]) -> float:
    """Assignment cost plus the opening cost of every open center."""
    if sol.assignment is None:
        raise SolutionError("center-cost objective needs an integral assignment")
    for x, row in enumerate(sol.assignment):
        if len(row) != 1:
            raise MultiplyAssignedPoint(f"point {x} has {len(row)} centers")
    return cost_multi(inst, sol) + float(sum(f[c] for c in sol.centers))


def cost(inst: Instance, sol: Solution) -> float:
    return cost_fractional(inst, sol) if sol.is_fractional else cost_multi(inst, sol)


@dataclass
class FeasibilityReport:
    kind: Kind
    feasible: bool
    loads: dict[int, float]
    multiplicity: list[float]
    violations: list[str]

    def __bool__(self) -> bool:
        return self.feasible


def check_feasibility(inst: Instance, sol: Solution, kind: Kind | str | None = None, *,
                      ignore_k: bool = False, **params) -> FeasibilityReport:
    """Check ``sol`` against the constraints of ``kind`` (default: ``sol.kind``).

    Never raises for constraint violations; they are listed in the report.
    ``ignore_k`` skips the cardinality check (facility-location style input).
    """
    kind = Kind(kind) if kind is not None else sol.kind
    params = {**sol.params, **params} if kind is sol.kind else dict(params)
    violations: list[str] = []
    open_ = set(sol.centers)
    n = inst.n

    if sol.amounts is not None:
        rows = [dict(row) for row in sol.amounts]
    else:
        rows = [{c: 1 for c in row} for row in sol.assignment]
        for x, row in enumerate(sol.assignment):
            if len(set(row)) != len(row):
                violations.append(f"point {x} assigned twice to the same center")
    if len(rows) != n:
        violations.append(f"assignment covers {len(rows)} points, expected {n}")

    loads: dict[int, float] = {c: 0 for c in sol.centers}
    mult: list[float] = []
    for x, row in enumerate(rows):
        for c, amt in row.items():
            if c not in open_:
                violations.append(f"point {x} assigned to non-open center {c}")
                continue
            loads[c] += amt
        mult.append(sum(row.values()))

    if kind is not Kind.FRACTIONAL:
        for x, m in enumerate(mult):
            if m < 1:
                violations.append(f"point {x} unassigned")
    if not ignore_k and len(sol.centers) > inst.k:
        violations.append(f"{len(sol.centers)} centers exceed k={inst.k}")

    def need(c: int):
        if kind is Kind.BICRITERIA:
            return math.ceil(Fraction(str(params["beta"])) * inst.B(c))
        return inst.B(c)

    if kind in (Kind.BWEAK,):
        b = int(params.get("b", 2))
        for x, m in enumerate(mult):
            if m > b:
                violations.append(f"point {x} multiplicity {m} > {b}")
    if kind in (Kind.LB, Kind.BICRITERIA, Kind.PLAIN, Kind.FCOST):
        for x, m in enumerate(mult):
            if m != 1:
                violations.append(f"point {x} multiplicity {m} != 1")
    if kind is Kind.FRACTIONAL:
        eps = Fraction(str(params["eps"]))
        for x, m in enumerate(mult):
            if not 1 <= m <= 1 + eps:
                violations.append(f"point {x} total amount {m} outside [1, 1+eps]")
    if kind not in (Kind.PLAIN, Kind.FCOST):
        for c in sol.centers:
            if loads[c] < need(c):
                violations.append(f"center {c} load {loads[c]} < {need(c)}")

    return FeasibilityReport(kind, not violations, loads, mult, violations)


def snap_centers_to_points(inst: Instance, mapping: Sequence[int]) -> MultiAssignment:
    """Replace each external center by its nearest input point.

    ``mapping[x]`` is the metric id serving point ``x``. The result maps every
    point to a point id; its cost is at most ``2 * alpha`` times the original.
    """
    if len(mapping) != inst.n:
        raise SolutionError("mapping must cover every point")
    D = inst.dist
    snapped: dict[int, int] = {}
    out = []
    for x, a in enumerate(mapping):
        if a not in snapped:
            snapped[a] = int(np.argmin(D[: inst.n, a]))
        out.append((snapped[a],))
    before = float(sum(D[x, a] for x, a in enumerate(mapping)))
    after = float(sum(D[x, row[0]] for x, row in enumerate(out)))
    if after > 2 * inst.alpha * before * (1 + REL_TOL) + REL_TOL:
        raise GuaranteeViolated(f"snapped cost {after} > 2*alpha*{before}")
    return tuple(out)


def leq(a: float, b: float) -> bool:
    """``a <= b`` up to the library-wide relative tolerance."""
    return a <= b + REL_TOL * max(1.0, abs(b))
