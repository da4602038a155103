"""Two-weak solution to a single-assignment bicriteria solution.

Centers are visited in ascending id. A center opens when at least
``ceil(beta * B(c))`` of its points are still unassigned and takes all of
them; otherwise it closes, and its unassigned points that have no later
center are sent to the nearest center opened so far.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cost import Kind, Solution, check_feasibility, cost_multi, leq
from .errors import BetaOutOfRange, GuaranteeViolated, InfeasibleInput, NoOpenCenterForOrphan
from .instance import Instance
from .reduce_eps import as_fraction

TOL = 1e-9


def bicriteria_factor(alpha: float, beta) -> float:
    r = float(beta) / (1 - float(beta))
    return max(alpha * r + 1, alpha * alpha * r)


def _witness(inst, A, B_i, open_before, beta, a_rows, c_i):
    """Greedy fractional spread of orphans over open centers within capacity.

    Returns a list of problems; empty when the witness exists and the cost
    inequality behind the bicriteria bound holds for this closure.
    """
    problems = []
    if not B_i:
        return problems
    r = beta / (1 - beta)
    caps = {f: r * sum(1 for p in A if f in a_rows[p]) for f in open_before}
    if sum(caps.values()) < len(B_i):
        problems.append(f"closing {c_i}: witness capacity {float(sum(caps.values()))} < {len(B_i)} orphans")
        return problems
    D = inst.dist
    left = dict(caps)
    spent = 0.0
    for p in B_i:
        rest = Fraction(1)
        for f in open_before:
            if rest == 0:
                break
            take = min(rest, left[f])
            if take > 0:
                left[f] -= take
                rest -= take
                spent += float(take) * D[p, f]
        if rest != 0:
            problems.append(f"closing {c_i}: orphan {p} not fully covered by witness")
    a = inst.alpha
    rf = float(r)
    bound = a * rf * sum(D[x, f] for f in open_before for x in A if f in a_rows[x])
    bound += a * a * rf * sum(D[x, c_i] for x in A)
    nearest = sum(min(D[p, f] for f in open_before) for p in B_i)
    if nearest > bound * (1 + TOL) + TOL or nearest > spent * (1 + TOL) + TOL:
        problems.append(f"closing {c_i}: orphan cost {nearest} above witness bound {bound}")
    return problems


def to_bicriteria(inst: Instance, sol: Solution, beta=0.5, *, debug: bool = False) -> Solution:
    beta = as_fraction(beta)
    if not Fraction(1, 2) <= beta < 1:
        raise BetaOutOfRange(f"beta={beta} outside [1/2, 1)")
    if sol.assignment is None:
        raise InfeasibleInput("bicriteria conversion needs an integral assignment")
    rep = check_feasibility(inst, sol, Kind.BWEAK, b=2)
    if not rep:
        raise InfeasibleInput("; ".join(rep.violations[:3]))

    order = list(sol.centers)
    pos = {c: i for i, c in enumerate(order)}
    rows = sol.assignment
    unassigned = set(range(inst.n))
    label: list[int | None] = [None] * inst.n
    opened: list[int] = []
    problems: list[str] = []
    D = inst.dist

    for i, c in enumerate(order):
        A = [x for x in range(inst.n) if c in rows[x]]
        free = [x for x in A if x in unassigned]
        if len(free) >= math.ceil(beta * inst.B(c)):
            for x in free:
                label[x] = c
            unassigned.difference_update(free)
            opened.append(c)
            continue
        orphans = [x for x in free if max(pos[e] for e in rows[x]) <= i]
        if orphans and not opened:
            raise NoOpenCenterForOrphan(f"center {c} closed with no open center before it")
        if debug:
            problems += _witness(inst, A, orphans, list(opened), beta, rows, c)
        for x in orphans:
            label[x] = min(opened, key=lambda f: (D[x, f], f))
        unassigned.difference_update(orphans)

    if unassigned:
        raise GuaranteeViolated(f"points left unassigned: {sorted(unassigned)}")
    if problems:
        raise GuaranteeViolated("; ".join(problems[:3]))
    out = Solution(tuple(opened), tuple((c,) for c in label), kind=Kind.BICRITERIA, params={"beta": beta})
    rep = check_feasibility(inst, out)
    if not rep:
        raise GuaranteeViolated("bicriteria output infeasible: " + "; ".join(rep.violations[:3]))
    before, after = cost_multi(inst, sol), cost_multi(inst, out)
    factor = bicriteria_factor(inst.alpha, beta)
    if not leq(after, factor * before):
        raise GuaranteeViolated(f"bicriteria cost {after} > {factor} * {before}")
    return out
