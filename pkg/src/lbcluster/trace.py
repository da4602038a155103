"""Trace logs and the charging audit shared by both reassignment reductions.

Every connection ``(y, c)`` created by a swap is paid for through three
original connections: ``(x, c)`` (type 1), and ``(y, d)`` / ``(x, d)``
(type 2), where ``x`` is the point freed at ``c`` and ``d`` the center both
``x`` and ``y`` were attached to. Final connections that were not created this
way are type 0. The audit counts how often each point-center pair is charged
and checks it against the original assignment.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .instance import Instance

TOL = 1e-9


@dataclass(frozen=True)
class NewConnection:
    y: int
    c: int
    d: int
    x: int
    step: int
    amount: Fraction = Fraction(1)


@dataclass
class ChargeAudit:
    type0: set
    type1: Counter
    type2: Counter
    charged_total: float
    final_unit_cost: float
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class TraceLog:
    events: list[dict] = field(default_factory=list)
    new_connections: list[NewConnection] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    audit: ChargeAudit | None = None

    def log(self, op: str, **kw) -> None:
        self.events.append({"step": len(self.events), "op": op, **kw})

    def flag(self, msg: str) -> None:
        self.violations.append(msg)

    @property
    def closures(self) -> int:
        return sum(1 for e in self.events if e["op"] == "close")

    @property
    def ok(self) -> bool:
        return not self.violations and (self.audit is None or self.audit.ok)

    def to_json(self) -> dict:
        out = {
            "events": self.events,
            "new_connections": [asdict(nc) for nc in self.new_connections],
            "violations": self.violations,
        }
        if self.audit is not None:
            out["audit"] = {
                "type1_max": max(self.audit.type1.values(), default=0),
                "type2_max": max(self.audit.type2.values(), default=0),
                "charged_total": self.audit.charged_total,
                "final_unit_cost": self.audit.final_unit_cost,
                "violations": self.audit.violations,
            }
        return out


def audit_charges(
    inst: Instance,
    original: Sequence[Iterable[int]],
    final: Sequence[Iterable[int]],
    final_centers: Iterable[int],
    new: Sequence[NewConnection],
    limit: int = 1,
    check_triple_intersection: bool = True,
    split_type2: bool = False,
) -> ChargeAudit:
    """Classify charged pairs and check the per-pair charge counts.

    ``final`` lists the centers each point is connected to at the end (any
    positive amount); every final connection is paid at full distance.
    ``limit`` caps type-1 and type-2 occurrences per pair (1 for the two-weak
    reduction, ceil(1/eps) for the fractional one). With ``split_type2`` the
    cap applies to type 2.2 (``(x, d)``) alone and type 2.1 (``(y, d)``) is
    capped at one.
    """
    D = inst.dist
    a = inst.alpha
    orig = [set(r) for r in original]
    open_ = set(final_centers)
    fin = {(y, c) for y, row in enumerate(final) for c in row if c in open_}
    created = {(nc.y, nc.c) for nc in new}
    v: list[str] = []

    t0 = fin - created
    t1: Counter = Counter()
    t21: Counter = Counter()
    t22: Counter = Counter()
    for nc in new:
        t1[(nc.x, nc.c)] += 1
        t21[(nc.y, nc.d)] += 1
        t22[(nc.x, nc.d)] += 1
        if (nc.y, nc.c) not in fin:
            v.append(f"created connection {(nc.y, nc.c)} missing from final assignment")
        bound = a * a * (D[nc.y, nc.d] + D[nc.d, nc.x]) + a * D[nc.x, nc.c]
        if D[nc.y, nc.c] > bound * (1 + TOL) + TOL:
            v.append(f"relaxed triangle bound fails for {(nc.y, nc.c)}")
    t2 = t21 + t22

    def cap(counter, lim, name):
        for pair, cnt in sorted(counter.items()):
            if cnt > lim:
                v.append(f"pair {pair} charged {cnt} times as type {name} (limit {lim})")

    cap(t1, limit, "1")
    if split_type2:
        cap(t21, 1, "2.1")
        cap(t22, limit, "2.2")
    else:
        cap(t2, limit, "2")
    if check_triple_intersection:
        triple = t0 & set(t1) & set(t2)
        if triple:
            v.append(f"pairs of all three types: {sorted(triple)}")
    for z, f in t0 | set(t1) | set(t2):
        if f not in orig[z]:
            v.append(f"charged pair {(z, f)} not in the original assignment")

    charged = (
        sum(D[p] for p in t0)
        + a * sum(cnt * D[p] for p, cnt in t1.items())
        + a * a * sum(cnt * D[p] for p, cnt in t2.items())
    )
    unit = float(sum(D[p] for p in fin))
    if unit > charged * (1 + TOL) + TOL:
        v.append(f"final cost {unit} exceeds charged total {charged}")
    return ChargeAudit(t0, t1, t2, float(charged), unit, v)
