"""Weak lower bounds through k-median with center costs.

Each candidate center is charged the cost of serving its ``B(c)`` nearest
points. A center-cost solution is then patched: every open center short of its
bound additionally takes the missing number of points from that nearest set.
The patched solution never costs more than the center-cost objective.
"""

from __future__ import annotations

import numpy as np

from .cost import Kind, Solution, cost_multi, cost_with_center_costs, leq
from .errors import GuaranteeViolated, InfeasibleBound
from .instance import Instance
from .subsolver import DEFAULT_RESTARTS, local_search_center_costs


def nearest_set(inst: Instance, c: int) -> list[int]:
    """The ``B(c)`` points nearest to ``c``, ordered by (distance, id)."""
    b = inst.B(c)
    if b > inst.n:
        raise InfeasibleBound(f"B({c})={b} > n={inst.n}")
    # stable sort keeps the smaller id first on equal distance
    order = np.argsort(inst.dist[c, : inst.n], kind="stable")
    return [int(p) for p in order[:b]]


def compute_center_costs(inst: Instance) -> dict[int, float]:
    return {c: float(sum(inst.dist[p, c] for p in nearest_set(inst, c))) for c in inst.centers}


def augment_to_weak(inst: Instance, sol: Solution, f: dict[int, float] | None = None) -> Solution:
    """Top up every open center to its lower bound from its nearest set."""
    if f is None:
        f = compute_center_costs(inst)
    rows = [list(r) for r in sol.assignment]
    clusters = sol.clusters()
    for c in sol.centers:
        missing = inst.B(c) - len(clusters[c])
        if missing <= 0:
            continue
        members = set(clusters[c])
        # nearest_set is already ordered by distance then id
        pool = [p for p in nearest_set(inst, c) if p not in members]
        for p in pool[:missing]:
            rows[p].append(c)
    out = Solution(sol.centers, tuple(tuple(sorted(r)) for r in rows), kind=Kind.WEAK)
    lhs = cost_multi(inst, out)
    rhs = cost_with_center_costs(inst, sol, f)
    if not leq(lhs, rhs):
        raise GuaranteeViolated(f"augmented cost {lhs} > center-cost objective {rhs}")
    return out


def solve_weak_lb(inst: Instance, seed: int = 0, restarts: int = DEFAULT_RESTARTS) -> Solution:
    """Center costs, then local search, then augmentation."""
    f = compute_center_costs(inst)
    fsol = local_search_center_costs(inst, f, seed=seed, restarts=restarts)
    return augment_to_weak(inst, fsol, f)
