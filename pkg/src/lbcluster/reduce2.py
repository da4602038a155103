"""Reduce a weak lower-bound solution to one assigning every point at most twice.

Centers are processed in ascending id. While the current center ``c`` still
serves points attached to three or more centers, the smallest other center
``d`` touching those points donates one of its exclusive points ``y`` to
``c``, which lets one triple-assigned point ``x`` drop ``c``. When ``d`` has no
eligible exclusive point, ``d`` is closed and its exclusive points fall back
to their smallest still-open original center. The cost grows by at most
``alpha * (alpha + 1)``.
"""

from __future__ import annotations

from .cost import Kind, Solution, check_feasibility, cost_multi, leq
from .errors import GuaranteeViolated, InfeasibleInput
from .instance import Instance
from .trace import NewConnection, TraceLog, audit_charges


def reduce_to_two(inst: Instance, sol: Solution, *, audit: bool = True) -> tuple[Solution, TraceLog]:
    if sol.assignment is None:
        raise InfeasibleInput("two-weak reduction needs an integral assignment")
    rep = check_feasibility(inst, sol, Kind.WEAK)
    if not rep:
        raise InfeasibleInput("; ".join(rep.violations[:3]))

    order = list(sol.centers)
    pos = {c: i for i, c in enumerate(order)}
    orig = [frozenset(r) for r in sol.assignment]
    assign = [set(r) for r in sol.assignment]
    members = {c: set() for c in order}
    for q, row in enumerate(assign):
        for c in row:
            members[c].add(q)
    snapshot = {c: frozenset(m) for c, m in members.items()}
    open_ = set(order)
    trace = TraceLog()

    def add(q, c):
        if len(assign[q]) != 1:
            trace.flag(f"connection added to point {q} with multiplicity {len(assign[q])}")
        assign[q].add(c)
        members[c].add(q)

    for i, c in enumerate(order):
        if c not in open_:
            continue
        trace.log("process", c=c)
        if members[c] != snapshot[c]:
            trace.flag(f"P_{c} changed before {c} was processed")
        while True:
            p3 = sorted(q for q in members[c] if len(assign[q]) >= 3)
            if not p3:
                break
            touched = set().union(*(assign[q] for q in p3)) - {c}
            d = min(touched, key=pos.__getitem__)
            if pos[d] <= i:
                trace.flag(f"chose d={d} not larger than current c={c}")
            smaller_open = {e for e in order[:i] if e in open_}
            p1_d = sorted(q for q in members[d] if len(assign[q]) == 1)
            barred = {q for q in p1_d if len(orig[q]) >= 3 and orig[q] & smaller_open}
            free = [q for q in p1_d if q not in barred]

            if not free:
                if members[d] != snapshot[d]:
                    trace.flag(f"P_{d} changed before {d} was closed")
                trace.log("close", c=c, d=d, reconnected=len(p1_d))
                for q in p1_d:
                    e = min(orig[q] & open_ - {d}, key=pos.__getitem__)
                    if pos[e] >= i:
                        trace.flag(f"reconnection of {q} to {e} not below c={c}")
                    assign[q] = {e}
                    members[d].discard(q)
                    members[e].add(q)
                    trace.log("reconnect", q=q, e=e, d=d)
                for q in members[d]:
                    assign[q].discard(d)
                members[d] = set()
                open_.discard(d)
            else:
                x = min(q for q in p3 if d in assign[q])
                y = free[0]
                assign[x].discard(c)
                members[c].discard(x)
                add(y, c)
                step = len(trace.events)
                trace.log("swap", c=c, d=d, x=x, y=y)
                trace.new_connections.append(NewConnection(y, c, d, x, step))

    out = Solution(
        tuple(sorted(open_)),
        tuple(tuple(sorted(r)) for r in assign),
        kind=Kind.BWEAK,
        params={"b": 2},
    )
    before, after = cost_multi(inst, sol), cost_multi(inst, out)
    a = inst.alpha
    if not leq(after, a * (a + 1) * before):
        raise GuaranteeViolated(f"two-weak cost {after} > alpha(alpha+1) * {before}")
    rep = check_feasibility(inst, out)
    if not rep:
        raise GuaranteeViolated("two-weak output infeasible: " + "; ".join(rep.violations[:3]))
    for ev in trace.events:
        if ev["op"] == "reconnect" and ev["e"] not in out.assignment[ev["q"]]:
            trace.flag(f"reconnection ({ev['q']}, {ev['e']}) did not survive")
    if audit:
        trace.audit = audit_charges(
            inst, orig, out.assignment, out.centers, trace.new_connections, limit=1
        )
    return out, trace
