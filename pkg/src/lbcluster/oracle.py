"""Exact optima for tiny instances.

Center sets of size at most ``k`` are enumerated. For each set the best
assignment comes from a min-cost circulation with arc lower bounds: every
point sends between 1 and ``u`` units over unit arcs to distinct centers
(``u = 1`` for standard bounds, ``b`` for b-weak, ``|C|`` for weak) and every
center must absorb at least ``B(c)``. Flow integrality turns the optimum into
a distinct-center multi-assignment.

:func:`enumerate_opt` is an independent second oracle for cross-checking: an
exact dynamic program over each point's admissible center subsets, with loads
capped at the lower bounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import networkx as nx
import numpy as np

from .cost import Kind, Solution, nearest_labels
from .errors import BadParams, TooLarge
from .instance import Instance

MAX_N = 10
MAX_K = 3
MAX_F = 10
MAX_N_ENUM = 6


@dataclass(frozen=True)
class OracleResult:
    solution: Solution | None
    cost: float
    centers: tuple[int, ...] | None

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def _guard(inst: Instance, max_n: int, max_k: int, max_f: int) -> None:
    if inst.n > max_n or inst.k > max_k or len(inst.centers) > max_f:
        raise TooLarge(
            f"oracle limited to n<={max_n}, k<={max_k}, |F|<={max_f}; "
            f"got n={inst.n}, k={inst.k}, |F|={len(inst.centers)}"
        )


def integer_weights(inst: Instance) -> np.ndarray:
    """Exact integer rescaling of the distance matrix (object dtype)."""
    D = inst.dist
    if np.all(D == np.round(D)):
        return np.vectorize(int, otypes=[object])(D)
    fr = [[Fraction(float(v)) for v in row] for row in D]
    lcm = 1
    for row in fr:
        for v in row:
            lcm = math.lcm(lcm, v.denominator)
    return np.array([[int(v * lcm) for v in row] for row in fr], dtype=object)


def _subsets(inst: Instance):
    for size in range(1, inst.k + 1):
        yield from itertools.combinations(inst.centers, size)


def _cap(mode: Kind, b: int, C) -> int:
    if mode is Kind.LB:
        return 1
    if mode is Kind.BWEAK:
        return min(b, len(C))
    return len(C)


def flow_assignment(inst: Instance, C, mode: Kind, b: int = 2, W=None):
    """Optimal assignment for a fixed center set, or ``None`` if infeasible."""
    if W is None:
        W = integer_weights(inst)
    n = inst.n
    u = _cap(mode, b, C)
    G = nx.DiGraph()
    demand: dict = {"s": 0, "t": 0}

    def arc(a, z, lo, hi, w=0):
        G.add_edge(a, z, capacity=hi - lo, weight=w)
        demand[a] = demand.get(a, 0) + lo
        demand[z] = demand.get(z, 0) - lo

    for x in range(n):
        arc("s", ("p", x), 1, u)
        for c in C:
            arc(("p", x), ("c", c), 0, 1, W[x, c])
    for c in C:
        arc(("c", c), "t", inst.B(c), n)
    arc("t", "s", 0, n * len(C))
    for node, dem in demand.items():
        G.nodes[node]["demand"] = dem
    try:
        flow = nx.min_cost_flow(G)
    except nx.NetworkXUnfeasible:
        return None
    rows = []
    for x in range(n):
        out = flow[("p", x)]
        rows.append(tuple(sorted(c for c in C if out[("c", c)] > 0)))
    return tuple(rows)


def _score(inst: Instance, rows, C, f) -> float:
    D = inst.dist
    val = float(sum(D[x, c] for x, row in enumerate(rows) for c in row))
    if f is not None:
        val += float(sum(f[c] for c in C))
    return val


def brute_force_opt(
    inst: Instance,
    mode: Kind | str,
    *,
    f: Mapping[int, float] | None = None,
    b: int = 2,
    max_n: int = MAX_N,
    max_k: int = MAX_K,
    max_f: int = MAX_F,
) -> OracleResult:
    """Exact optimum for ``mode`` in {plain, fcost, weak, bweak, lb}."""
    mode = Kind(mode)
    if mode not in (Kind.PLAIN, Kind.FCOST, Kind.WEAK, Kind.BWEAK, Kind.LB):
        raise BadParams(f"no oracle for mode {mode.value}")
    if mode is Kind.FCOST and f is None:
        raise BadParams("fcost mode needs center costs f")
    _guard(inst, max_n, max_k, max_f)
    W = integer_weights(inst) if mode in (Kind.WEAK, Kind.BWEAK, Kind.LB) else None

    best = None
    for C in _subsets(inst):
        if mode in (Kind.PLAIN, Kind.FCOST):
            rows = tuple((int(c),) for c in nearest_labels(inst, C))
        else:
            rows = flow_assignment(inst, C, mode, b, W)
            if rows is None:
                continue
        val = _score(inst, rows, C, f if mode is Kind.FCOST else None)
        if best is None or (val, C) < (best[0], best[1]):
            best = (val, C, rows)
    if best is None:
        return OracleResult(None, math.inf, None)
    val, C, rows = best
    params = {"b": b} if mode is Kind.BWEAK else {}
    return OracleResult(Solution(C, rows, kind=mode, params=params), val, C)


def enumerate_opt(
    inst: Instance,
    mode: Kind | str,
    *,
    f: Mapping[int, float] | None = None,
    b: int = 2,
    max_n: int = MAX_N_ENUM,
) -> OracleResult:
    """Cross-check oracle without flows (see module docstring)."""
    mode = Kind(mode)
    _guard(inst, max_n, MAX_K, MAX_F)
    D = inst.dist
    best = None
    for C in _subsets(inst):
        u = _cap(mode, b, C) if mode not in (Kind.PLAIN, Kind.FCOST) else 1
        choices = [
            S for r in range(1, u + 1) for S in itertools.combinations(C, r)
        ]
        caps = tuple(
            inst.B(c) if mode not in (Kind.PLAIN, Kind.FCOST) else 0 for c in C
        )
        # state: loads capped at the bounds -> (cost, assignment so far)
        states: dict[tuple, tuple[float, tuple]] = {tuple(0 for _ in C): (0.0, ())}
        for x in range(inst.n):
            nxt: dict[tuple, tuple[float, tuple]] = {}
            for load, (val, rows) in states.items():
                for S in choices:
                    new = tuple(
                        min(l + (c in S), cap) for l, c, cap in zip(load, C, caps)
                    )
                    v = val + sum(D[x, c] for c in S)
                    if new not in nxt or v < nxt[new][0]:
                        nxt[new] = (v, rows + (S,))
            states = nxt
        if caps not in states:
            continue
        _, rows = states[caps]
        val = _score(inst, rows, C, f if mode is Kind.FCOST else None)
        if best is None or (val, C) < (best[0], best[1]):
            best = (val, C, rows)
    if best is None:
        return OracleResult(None, math.inf, None)
    val, C, rows = best
    params = {"b": b} if mode is Kind.BWEAK else {}
    return OracleResult(Solution(C, rows, kind=mode, params=params), val, C)
