"""Local search for k-median, with and without center opening costs.

These play the role of the gamma-approximate black box in the weak
lower-bound pipeline and in the nesting reduction. Any constant-factor solver
would do; single-swap local search is simple and deterministic per seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .cost import Kind, Solution, nearest_labels, single
from .instance import Instance

IMPROVE_TOL = 1e-12
DEFAULT_RESTARTS = 5


@dataclass(frozen=True)
class LocalSearchConfig:
    restarts: int = DEFAULT_RESTARTS
    seed: int = 0
    max_iters: int | None = None


def _objective(D: np.ndarray, fvec: np.ndarray | None, S: Sequence[int]) -> float:
    cols = list(S)
    val = float(D[:, cols].min(axis=1).sum())
    if fvec is not None:
        val += float(fvec[cols].sum())
    return val


def _farthest_first(DF: np.ndarray, start: int, k: int) -> list[int]:
    """Greedy farthest-first traversal over candidate indices."""
    chosen = [start]
    gap = DF[start].copy()
    while len(chosen) < k:
        gap[chosen] = -1.0
        nxt = int(np.argmax(gap))
        if gap[nxt] < 0:
            break
        chosen.append(nxt)
        gap = np.minimum(gap, DF[nxt])
    return sorted(chosen)


def _moves(S: list[int], m: int, k: int, open_close: bool):
    """Neighborhood in a fixed order: swaps, then opens, then closes."""
    inside = set(S)
    for i in S:
        for j in range(m):
            if j not in inside:
                yield sorted((inside - {i}) | {j})
    if open_close:
        if len(S) < k:
            for j in range(m):
                if j not in inside:
                    yield sorted(inside | {j})
        if len(S) > 1:
            for i in S:
                yield sorted(inside - {i})


def _improves(new: float, cur: float) -> bool:
    return new < cur - IMPROVE_TOL * abs(cur)


def _descend(D, fvec, S, k, open_close, max_iters):
    cur = _objective(D, fvec, S)
    m = D.shape[1]
    for _ in range(max_iters):
        for T in _moves(S, m, k, open_close):
            val = _objective(D, fvec, T)
            if _improves(val, cur):
                S, cur = T, val
                break
        else:
            return S, cur
    return S, cur


def _search(inst: Instance, fvec, cfg: LocalSearchConfig, open_close: bool):
    F = np.array(inst.centers)
    D = inst.dist[: inst.n][:, F]
    DF = inst.dist[np.ix_(F, F)]
    m = len(F)
    k = min(inst.k, m)
    max_iters = cfg.max_iters or 10 * inst.n * k
    rng = np.random.default_rng(cfg.seed)
    starts = rng.permutation(m)[: max(1, cfg.restarts)]
    best = None
    for s in starts:
        S0 = _farthest_first(DF, int(s), k)
        S, val = _descend(D, fvec, S0, k, open_close, max_iters)
        if best is None or _improves(val, best[1]):
            best = (S, val)
    return [int(F[j]) for j in best[0]]


def local_search_kmedian(inst: Instance, seed: int = 0, restarts: int = DEFAULT_RESTARTS,
                         max_iters: int | None = None) -> Solution:
    """Unconstrained k-median by single-swap local search."""
    cfg = LocalSearchConfig(restarts, seed, max_iters)
    C = _search(inst, None, cfg, open_close=False)
    return single(C, nearest_labels(inst, C), Kind.PLAIN)


def local_search_center_costs(inst: Instance, f: Mapping[int, float], seed: int = 0,
                              restarts: int = DEFAULT_RESTARTS,
                              max_iters: int | None = None) -> Solution:
    """k-median with center opening costs ``f``; open/close/swap moves."""
    cfg = LocalSearchConfig(restarts, seed, max_iters)
    fvec = np.array([float(f[c]) for c in inst.centers])
    C = _search(inst, fvec, cfg, open_close=True)
    return single(C, nearest_labels(inst, C), Kind.FCOST)


def is_local_optimum(inst: Instance, centers: Sequence[int], f: Mapping[int, float] | None = None) -> bool:
    """True when no move of the local search improves the objective."""
    F = list(inst.centers)
    idx = {c: j for j, c in enumerate(F)}
    D = inst.dist[: inst.n][:, F]
    fvec = None if f is None else np.array([float(f[c]) for c in F])
    S = sorted(idx[c] for c in centers)
    cur = _objective(D, fvec, S)
    k = min(inst.k, len(F))
    return not any(
        _improves(_objective(D, fvec, T), cur)
        for T in _moves(S, len(F), k, open_close=f is not None)
    )
