"""Nesting a fine lower-bounded clustering into a k-center budget.

A solution ``s1`` that satisfies the lower bounds (but may use too many
centers) is coarsened with the help of an unconstrained solution ``s2`` with
at most ``k`` centers. Every ``s1`` cluster moves as a whole, so any
constraint preserved under merging clusters survives.
"""

from __future__ import annotations

from typing import Callable

from .cost import Kind, Solution, check_feasibility, cost_multi, leq
from .errors import GuaranteeViolated, InfeasibleBounds, SizePreconditionViolated, SolutionError
from .instance import Instance
from .subsolver import DEFAULT_RESTARTS, local_search_kmedian


def _labels(sol: Solution) -> list[int]:
    if sol.assignment is None or any(len(r) != 1 for r in sol.assignment):
        raise SolutionError("nesting needs single-assignment solutions")
    return [r[0] for r in sol.assignment]


def _precondition(s1: Solution, s2: Solution) -> None:
    if len(s1.centers) <= len(s2.centers):
        raise SizePreconditionViolated(
            f"need |C1| > |C2|, got {len(s1.centers)} and {len(s2.centers)}"
        )


def _closest(inst: Instance, src: int, targets) -> int:
    D = inst.dist
    return min(targets, key=lambda t: (D[src, t], t))


def nesting_factors(alpha: float, into: str) -> tuple[float, float]:
    a = alpha
    if into == "c2":
        return a + a * a, a * a
    return a**3 + 2 * a * a, a**3 + a * a


def _check_bound(inst, out, s1, s2, into):
    g, d = nesting_factors(inst.alpha, into)
    lhs = cost_multi(inst, out)
    rhs = g * cost_multi(inst, s1) + d * cost_multi(inst, s2)
    if not leq(lhs, rhs):
        raise GuaranteeViolated(f"nested cost {lhs} > {g}*cost(S1) + {d}*cost(S2) = {rhs}")


def is_hierarchically_compatible(s1: Solution, out: Solution) -> bool:
    """Every cluster of ``s1`` lands inside a single cluster of ``out``."""
    lab1, lab = _labels(s1), _labels(out)
    image: dict[int, int] = {}
    return all(image.setdefault(c1, c) == c for c1, c in zip(lab1, lab))


def nest_into_c2(inst: Instance, s1: Solution, s2: Solution) -> Solution:
    """Send each ``s1`` cluster to the ``s2`` center nearest its own center."""
    _precondition(s1, s2)
    lab1 = _labels(s1)
    _labels(s2)
    target = {c: _closest(inst, c, s2.centers) for c in set(lab1)}
    labels = [target[c] for c in lab1]
    out = Solution(tuple(set(labels)), tuple((c,) for c in labels), kind=s1.kind, params=dict(s1.params))
    _check_bound(inst, out, s1, s2, "c2")
    return out


def nest_into_c1(inst: Instance, s1: Solution, s2: Solution) -> Solution:
    """Like :func:`nest_into_c2`, then pull each group back onto an ``s1`` center.

    Among the ``s1`` centers routed to the same ``s2`` center, the one closest
    to it hosts the whole group, so it keeps every point it had in ``s1``.
    """
    _precondition(s1, s2)
    lab1 = _labels(s1)
    _labels(s2)
    used = sorted(set(lab1))
    via = {c: _closest(inst, c, s2.centers) for c in used}
    groups: dict[int, list[int]] = {}
    for c in used:
        groups.setdefault(via[c], []).append(c)
    host = {}
    for o, cs in groups.items():
        h = _closest(inst, o, cs)
        for c in cs:
            host[c] = h
    labels = [host[c] for c in lab1]
    out = Solution(tuple(set(labels)), tuple((c,) for c in labels), kind=s1.kind, params=dict(s1.params))
    _check_bound(inst, out, s1, s2, "c1")
    return out


def greedy_lb_partition(inst: Instance, seed: int = 0) -> Solution:
    """Heuristic lower-bounded partition with no limit on the number of centers.

    Repeatedly opens the candidate whose ``B(c)`` nearest unclustered points
    are cheapest to serve and lets it claim them; leftovers join their
    nearest open center. ``seed`` is accepted for interface parity only.
    """
    D = inst.dist
    n = inst.n
    unclustered = set(range(n))
    opened: dict[int, list[int]] = {}
    while True:
        best = None
        for c in inst.centers:
            if c in opened or (c < n and c not in unclustered):
                continue
            b = inst.B(c)
            if b > len(unclustered):
                continue
            near = sorted(unclustered, key=lambda p: (D[c, p], p))[:b]
            score = sum(D[c, p] for p in near)
            if best is None or (score, c) < (best[0], best[1]):
                best = (score, c, near)
        if best is None:
            break
        _, c, near = best
        opened[c] = near
        unclustered.difference_update(near)
    if not opened:
        raise InfeasibleBounds("no candidate center can meet its lower bound")
    labels = [0] * n
    for c, pts in opened.items():
        for p in pts:
            labels[p] = c
    for p in unclustered:
        labels[p] = min(opened, key=lambda c: (D[p, c], c))
    return Solution(tuple(opened), tuple((c,) for c in labels), kind=Kind.LB)


def solve_lb_via_nesting(
    inst: Instance,
    seed: int = 0,
    *,
    constrained: Callable[[Instance], Solution] | None = None,
    restarts: int = DEFAULT_RESTARTS,
) -> Solution:
    """Lower-bounded k-median: constrained partition nested into local search.

    ``constrained`` plugs in any lower-bound feasible solver without a
    cardinality limit (facility costs treated as zero); the greedy heuristic is
    the default.
    """
    s1 = constrained(inst) if constrained is not None else greedy_lb_partition(inst, seed)
    rep = check_feasibility(inst, s1, Kind.LB, ignore_k=True)
    if not rep:
        raise GuaranteeViolated("constrained solution infeasible: " + "; ".join(rep.violations[:3]))
    if len(s1.centers) <= inst.k:
        return s1.with_kind(Kind.LB)
    s2 = local_search_kmedian(inst, seed=seed, restarts=restarts)
    if inst.bounds.is_uniform:
        out = nest_into_c2(inst, s1, s2)
    else:
        out = nest_into_c1(inst, s1, s2)
    out = out.with_kind(Kind.LB)
    rep = check_feasibility(inst, out)
    if not rep:
        raise GuaranteeViolated("nested solution infeasible: " + "; ".join(rep.violations[:3]))
    return out
