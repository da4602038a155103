"""Reduce a weak lower-bound solution to a fractional one with totals in [1, 1+eps].

Same processing order as the two-weak reduction, but a point may only be lent
to another center by an amount of ``eps``. Freeing one multiply-assigned point
``x`` at ``c`` therefore takes ``ceil(1/eps)`` exclusive points of ``d``. If
``d`` has fewer eligible points it is closed, and everything that depended on
it is reattached at full amount.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cost import Kind, Solution, check_feasibility, cost_fractional, cost_multi, leq
from .errors import EpsOutOfRange, GuaranteeViolated, InfeasibleInput
from .instance import Instance
from .trace import NewConnection, TraceLog, audit_charges

ONE = Fraction(1)


def as_fraction(eps) -> Fraction:
    """Exact rational for ``eps``; floats go through their shortest repr."""
    if isinstance(eps, Fraction):
        return eps
    if isinstance(eps, float):
        return Fraction(repr(eps))
    return Fraction(eps)


def _structure_ok(row: dict[int, Fraction], eps: Fraction) -> bool:
    total = sum(row.values())
    if total == 1 + eps:
        return sorted(row.values()) == [eps, ONE]
    return total.denominator == 1 and all(v == 1 for v in row.values())


def reduce_to_one_plus_eps(inst: Instance, sol: Solution, eps, *, audit: bool = True) -> tuple[Solution, TraceLog]:
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise EpsOutOfRange(f"eps={eps} outside (0, 1)")
    if sol.assignment is None:
        raise InfeasibleInput("fractional reduction needs an integral weak solution")
    rep = check_feasibility(inst, sol, Kind.WEAK)
    if not rep:
        raise InfeasibleInput("; ".join(rep.violations[:3]))

    need = math.ceil(1 / eps)
    order = list(sol.centers)
    pos = {c: i for i, c in enumerate(order)}
    orig = [frozenset(r) for r in sol.assignment]
    amt: list[dict[int, Fraction]] = [{c: ONE for c in r} for r in sol.assignment]
    members = {c: set() for c in order}
    for q, row in enumerate(amt):
        for c in row:
            members[c].add(q)
    snapshot = {c: frozenset(m) for c, m in members.items()}
    open_ = set(order)
    trace = TraceLog()

    def total(q):
        return sum(amt[q].values())

    def p1(c):
        return sorted(q for q in members[c] if amt[q][c] == 1 and total(q) == 1)

    def q_eps(c):
        return sorted(q for q in members[c] if amt[q][c] == 1 and total(q) == 1 + eps)

    def p2(c):
        return sorted(q for q in members[c] if amt[q][c] == 1 and total(q) >= 2)

    def set_amount(q, c, v):
        if v == 0:
            amt[q].pop(c, None)
            members[c].discard(q)
        else:
            amt[q][c] = v
            members[c].add(q)

    def check_structure(step):
        for q, row in enumerate(amt):
            if not _structure_ok(row, eps):
                trace.flag(f"point {q} breaks the amount structure after step {step}: {row}")

    for i, c in enumerate(order):
        if c not in open_:
            continue
        trace.log("process", c=c)
        if members[c] != snapshot[c] or any(amt[q][c] != 1 for q in members[c]):
            trace.flag(f"P_{c} changed or lost unit amounts before {c} was processed")
        while True:
            p2c = p2(c)
            if not p2c:
                break
            touched = set().union(*(amt[q].keys() for q in p2c)) - {c}
            d = min(touched, key=pos.__getitem__)
            if pos[d] <= i:
                trace.flag(f"chose d={d} not larger than current c={c}")
            smaller_open = {e for e in order[:i] if e in open_}
            p1_d = p1(d)
            barred = [q for q in p1_d if len(orig[q]) >= 2 and orig[q] & smaller_open]
            free = [q for q in p1_d if q not in set(barred)]

            if len(free) < need:
                if members[d] != snapshot[d]:
                    trace.flag(f"P_{d} changed before {d} was closed")
                x = min(q for q in p2c if d in amt[q]) if free else None
                x_total = total(x) if x is not None else None
                qd = q_eps(d)
                trace.log("close", c=c, d=d, free=len(free), barred=len(barred))
                for q in list(members[d]):
                    set_amount(q, d, 0)
                open_.discard(d)
                for q in barred:
                    e = min(orig[q] & open_, key=pos.__getitem__)
                    set_amount(q, e, ONE)
                    trace.log("reconnect", q=q, e=e, d=d)
                for q in qd:
                    (e,) = [e for e, v in amt[q].items() if v == eps]
                    set_amount(q, e, ONE)
                    trace.log("raise", q=q, e=e, d=d)
                if free:
                    if x_total >= 3:
                        set_amount(x, c, 0)
                        trace.log("drop", x=x, c=c)
                    for q in free:
                        set_amount(q, c, ONE)
                        step = len(trace.events)
                        trace.log("attach", y=q, c=c, d=d, x=x)
                        trace.new_connections.append(NewConnection(q, c, d, x, step))
                for q in qd + barred + free:
                    if total(q) < 1:
                        trace.flag(f"point {q} under-assigned after closing {d}")
            else:
                x = min(q for q in p2c if d in amt[q])
                A = free[:need]
                set_amount(x, c, 0)
                for y in A:
                    set_amount(y, c, eps)
                    step = len(trace.events)
                    trace.new_connections.append(NewConnection(y, c, d, x, step, eps))
                trace.log("swap", c=c, d=d, x=x, A=A)
            check_structure(len(trace.events))

    centers = tuple(sorted(open_))
    amounts = tuple(tuple(sorted(row.items())) for row in amt)
    out = Solution(centers, amounts=amounts, kind=Kind.FRACTIONAL, params={"eps": eps})
    for q, row in enumerate(amt):
        if total(q) > 1 + eps:
            trace.flag(f"point {q} total {total(q)} exceeds 1+eps")
    a = inst.alpha
    before, after = cost_multi(inst, sol), cost_fractional(inst, out)
    factor = need * a * (a + 1) + 1
    if not leq(after, factor * before):
        raise GuaranteeViolated(f"fractional cost {after} > {factor} * {before}")
    rep = check_feasibility(inst, out)
    if not rep:
        raise GuaranteeViolated("fractional output infeasible: " + "; ".join(rep.violations[:3]))
    if audit:
        final = [list(row) for row in amt]
        trace.audit = audit_charges(
            inst, orig, final, centers, trace.new_connections,
            limit=need, check_triple_intersection=False, split_type2=True,
        )
    return out, trace
