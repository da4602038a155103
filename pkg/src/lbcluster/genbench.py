"""Seeded instance and solution generators plus the benchmark harness.

Benchmark config (JSON)::

    {"seed": 0, "workers": 1,
     "runs": [{"family": "line", "n": 8, "k": 2, "bounds": 2, "count": 20,
               "dim": 2, "eps": [0.5], "beta": [0.5], "oracle": true}]}

``bounds`` is an int (uniform), ``[lo, hi]`` (per-center, drawn uniformly)
or a bounds JSON object. ``family`` "fig1" ignores ``n`` and reads ``B`` and
``delta``. Each instance yields one JSON line per algorithm.
"""

from __future__ import annotations

import enum
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping

import networkx as nx
import numpy as np

from .bicriteria import bicriteria_factor, to_bicriteria
from .cost import Kind, Solution, cost, cost_with_center_costs, leq
from .errors import BadParams, LBClusterError
from .instance import Instance, LowerBounds, build_instance, fig1_instance
from .io import dumps
from .nesting import solve_lb_via_nesting
from .oracle import MAX_F, MAX_K, MAX_N, brute_force_opt
from .reduce2 import reduce_to_two
from .reduce_eps import as_fraction, reduce_to_one_plus_eps
from .subsolver import local_search_center_costs
from .weaklb import augment_to_weak, compute_center_costs

SCHEMA = 1


class Family(str, enum.Enum):
    LINE = "line"
    SQEUCLIDEAN = "sqeuclidean"
    RANDOM_METRIC = "random_metric"
    FIG1 = "fig1"


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _bounds(desc, n: int, centers, rng) -> LowerBounds:
    if isinstance(desc, Mapping):
        return LowerBounds.from_json(desc)
    if isinstance(desc, (list, tuple)):
        lo, hi = (min(int(v), n) for v in desc)
        if lo < 1 or hi < lo:
            raise BadParams(f"bad bounds range {desc}")
        return LowerBounds(per_center={c: int(rng.integers(lo, hi + 1)) for c in centers})
    return LowerBounds(uniform=min(int(desc), n))


def random_metric_matrix(n: int, rng, p_extra: float = 0.3, wmax: int = 20) -> np.ndarray:
    """Shortest-path closure of a random connected graph with integer weights."""
    G = nx.Graph()
    G.add_nodes_from(range(n))
    perm = rng.permutation(n)
    for i in range(1, n):
        j = int(rng.integers(0, i))
        G.add_edge(int(perm[i]), int(perm[j]), weight=int(rng.integers(1, wmax + 1)))
    for u in range(n):
        for v in range(u + 1, n):
            if not G.has_edge(u, v) and rng.random() < p_extra:
                G.add_edge(u, v, weight=int(rng.integers(1, wmax + 1)))
    D = nx.floyd_warshall_numpy(G, nodelist=range(n), weight="weight")
    return np.asarray(D, dtype=float)


def generate_instance(
    family: Family | str,
    n: int,
    k: int,
    bounds=2,
    seed=0,
    *,
    dim: int = 2,
    B: int = 5,
    delta: float = 1,
) -> Instance:
    """Deterministic random instance for ``family``; candidate centers = points."""
    family = Family(family)
    if family is Family.FIG1:
        return fig1_instance(B, delta, k)
    if n < 1 or k < 1 or k > n or dim < 1:
        raise BadParams(f"invalid sizes n={n}, k={k}, dim={dim}")
    rng = _rng(seed)
    if family is Family.LINE:
        data = rng.integers(0, 100 * n + 1, size=n)
        metric = "line"
    elif family is Family.SQEUCLIDEAN:
        data = rng.random((n, dim))
        metric = "sqeuclidean"
    else:
        data = random_metric_matrix(n, rng)
        metric = "matrix"
    lb = _bounds(bounds, n, range(n), rng)
    return build_instance(data, k, lb, metric)


def _sample(rng, pool, size) -> list[int]:
    return [int(p) for p in rng.choice(sorted(pool), size=size, replace=False)]


def random_weak_solution(inst: Instance, seed=0, *, overlap: float = 0.0,
                         n_centers: int | None = None) -> Solution:
    """Random weak-feasible solution.

    Each open center draws ``B(c)`` distinct points; with probability
    ``overlap`` a draw comes from a small shared pool, which produces points
    of multiplicity three and more. Uncovered points join a random center.
    ``n_centers`` fixes the number of open centers (default: random in 1..k).
    """
    rng = _rng(seed)
    m = int(rng.integers(1, inst.k + 1)) if n_centers is None else min(n_centers, inst.k)
    C = sorted(_sample(rng, inst.centers, m))
    pool_size = max(max(inst.B(c) for c in C), min(inst.n, 3))
    shared = _sample(rng, range(inst.n), min(pool_size, inst.n))
    rows: list[set[int]] = [set() for _ in range(inst.n)]
    for c in C:
        src = shared if rng.random() < overlap and len(shared) >= inst.B(c) else range(inst.n)
        for p in _sample(rng, src, inst.B(c)):
            rows[p].add(c)
    for p in range(inst.n):
        if not rows[p]:
            rows[p].add(int(rng.choice(C)))
    return Solution(tuple(C), tuple(tuple(sorted(r)) for r in rows), kind=Kind.WEAK)


def random_two_weak_solution(inst: Instance, seed=0) -> Solution:
    """Random solution with multiplicity at most two and every load >= B(c)."""
    rng = _rng(seed)
    for _ in range(100):
        m = int(rng.integers(1, inst.k + 1))
        C = sorted(_sample(rng, inst.centers, m))
        if sum(inst.B(c) for c in C) <= 2 * inst.n:
            break
    else:
        C = [min(inst.centers, key=inst.B)]
    mult = [0] * inst.n
    rows: list[set[int]] = [set() for _ in range(inst.n)]
    for c in C:
        # prefer uncovered points so the draw cannot run dry
        zero = [p for p in range(inst.n) if mult[p] == 0]
        one = [p for p in range(inst.n) if mult[p] == 1]
        take = min(inst.B(c), len(zero))
        chosen = _sample(rng, zero, take) if rng.random() < 0.5 or take == inst.B(c) else []
        rest = [p for p in zero + one if p not in chosen]
        chosen += _sample(rng, rest, inst.B(c) - len(chosen))
        for p in chosen:
            rows[p].add(c)
            mult[p] += 1
    for p in range(inst.n):
        if not rows[p]:
            rows[p].add(int(rng.choice(C)))
    return Solution(tuple(C), tuple(tuple(sorted(r)) for r in rows), kind=Kind.BWEAK, params={"b": 2})


def random_solution_pair(inst: Instance, seed=0) -> tuple[Solution, Solution]:
    """Single-assignment pair with ``|C1| > |C2|`` and every center used."""
    rng = _rng(seed)
    if inst.n < 2 or len(inst.centers) < 2:
        raise BadParams("need at least two points and two candidate centers")
    m1 = int(rng.integers(2, min(len(inst.centers), inst.n) + 1))
    m2 = int(rng.integers(1, m1))
    out = []
    for m in (m1, m2):
        C = _sample(rng, inst.centers, m)
        labels = list(C) + [int(rng.choice(C)) for _ in range(inst.n - m)]
        labels = [labels[i] for i in rng.permutation(inst.n)]
        out.append(Solution(tuple(C), tuple((c,) for c in labels), kind=Kind.PLAIN))
    return out[0], out[1]


@dataclass
class Record:
    instance: int
    family: str
    algorithm: str
    cost: float | None
    reference: float | None = None
    ratio: float | None = None
    bound: float | None = None
    ok: bool = True
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"schema": SCHEMA, **self.__dict__}


def _in_guardrails(inst: Instance) -> bool:
    return inst.n <= MAX_N and inst.k <= MAX_K and len(inst.centers) <= MAX_F


def _ratio(a: float, b: float) -> float:
    if b == 0:
        return 1.0 if a == 0 else math.inf
    return a / b


def _evaluate(task) -> list[dict]:
    idx, run, seed = task
    family = Family(run.get("family", "line"))
    rng = np.random.default_rng(seed)
    inst = generate_instance(
        family, run.get("n", 8), run.get("k", 2), run.get("bounds", 2), rng,
        dim=run.get("dim", 2), B=run.get("B", 5), delta=run.get("delta", 1),
    )
    fam = family.value
    a = inst.alpha
    recs: list[Record] = []

    def guarded(name, fn):
        try:
            return fn()
        except LBClusterError as e:
            recs.append(Record(idx, fam, name, None, ok=False, detail={"error": f"{type(e).__name__}: {e}"}))
            return None

    opt = {}
    if run.get("oracle", True) and _in_guardrails(inst):
        for mode in ("plain", "weak", "bweak", "lb"):
            r = brute_force_opt(inst, mode)
            opt[mode] = r.cost
            recs.append(Record(idx, fam, f"oracle_{mode}", r.cost))

    ls_seed = int(run.get("solver_seed", 0))
    f = compute_center_costs(inst)
    fsol = local_search_center_costs(inst, f, seed=ls_seed)
    weak = guarded("weak", lambda: augment_to_weak(inst, fsol, f))
    if weak is None:
        return [r.to_json() for r in recs]
    wc = cost(inst, weak)
    rec = Record(idx, fam, "weak", wc, detail={"cost_f": cost_with_center_costs(inst, fsol, f)})
    if "weak" in opt:
        rec.reference = opt["weak"]
        rec.ratio = _ratio(wc, opt["weak"])
        gamma = _ratio(rec.detail["cost_f"], brute_force_opt(inst, "fcost", f=f).cost)
        rec.bound = 2 * gamma
        rec.ok = leq(wc, rec.bound * opt["weak"])
    recs.append(rec)

    two = guarded("two", lambda: reduce_to_two(inst, weak))
    if two is not None:
        sol2, trace = two
        c2 = cost(inst, sol2)
        recs.append(Record(
            idx, fam, "two", c2, wc, _ratio(c2, wc), a * (a + 1),
            ok=trace.ok and leq(c2, a * (a + 1) * wc),
            detail={"closures": trace.closures, "audit_violations": trace.violations
                    + (trace.audit.violations if trace.audit else [])},
        ))
        for beta in run.get("beta", [0.5]):
            beta_f = as_fraction(beta)
            bi = guarded(f"bicriteria_{beta}", lambda: to_bicriteria(inst, sol2, beta_f))
            if bi is not None:
                cb = cost(inst, bi)
                bound = bicriteria_factor(a, beta_f)
                recs.append(Record(idx, fam, f"bicriteria_{beta}", cb, c2, _ratio(cb, c2), bound,
                                   ok=leq(cb, bound * c2)))

    for eps in run.get("eps", [0.5]):
        eps_f = as_fraction(eps)
        res = guarded(f"eps_{eps}", lambda: reduce_to_one_plus_eps(inst, weak, eps_f))
        if res is not None:
            sol, trace = res
            ce = cost(inst, sol)
            bound = math.ceil(1 / eps_f) * a * (a + 1) + 1
            recs.append(Record(idx, fam, f"eps_{eps}", ce, wc, _ratio(ce, wc), bound,
                               ok=trace.ok and leq(ce, bound * wc)))

    lb = guarded("nesting", lambda: solve_lb_via_nesting(inst, seed=ls_seed))
    if lb is not None:
        cl = cost(inst, lb)
        rec = Record(idx, fam, "nesting", cl, detail={"centers": len(lb.centers)})
        if "lb" in opt:
            rec.reference = opt["lb"]
            rec.ratio = _ratio(cl, opt["lb"])
        recs.append(rec)
    return [r.to_json() for r in recs]


def _tasks(config: Mapping) -> list[tuple]:
    base = int(config.get("seed", 0))
    tasks = []
    idx = 0
    for ri, run in enumerate(config.get("runs", [])):
        try:
            Family(run.get("family", "line"))
        except ValueError:
            raise BadParams(f"unknown family {run.get('family')!r}") from None
        for j in range(int(run.get("count", 1))):
            seed = np.random.SeedSequence([base, ri, j])
            tasks.append((idx, dict(run), seed))
            idx += 1
    return tasks


@dataclass
class Report:
    records: list[dict]

    @property
    def violations(self) -> list[dict]:
        return [r for r in self.records if not r["ok"]]

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0

    def jsonl(self) -> str:
        return "".join(dumps(r) + "\n" for r in self.records)

    def summary(self) -> str:
        rows: dict[str, list[dict]] = {}
        for r in self.records:
            rows.setdefault(r["algorithm"], []).append(r)
        lines = [f"{'algorithm':<18}{'n':>6}{'max ratio':>12}{'mean ratio':>12}{'bound':>10}{'bad':>6}"]
        for name in sorted(rows):
            rs = rows[name]
            ratios = [r["ratio"] for r in rs if r["ratio"] is not None and math.isfinite(r["ratio"])]
            bounds = [r["bound"] for r in rs if r["bound"] is not None]
            mx = f"{max(ratios):.4f}" if ratios else "-"
            mean = f"{sum(ratios) / len(ratios):.4f}" if ratios else "-"
            bd = f"{max(bounds):.4g}" if bounds else "-"
            bad = sum(1 for r in rs if not r["ok"])
            lines.append(f"{name:<18}{len(rs):>6}{mx:>12}{mean:>12}{bd:>10}{bad:>6}")
        return "\n".join(lines)


def run_benchmark(config: Mapping) -> Report:
    tasks = _tasks(config)
    workers = int(config.get("workers", 1))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_evaluate, tasks))
    else:
        results = [_evaluate(t) for t in tasks]
    return Report([r for rs in results for r in rs])


def main_bench(config: Mapping, out_path: str | None, stream=None) -> int:
    stream = stream or sys.stdout
    report = run_benchmark(config)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(report.jsonl())
    if report.records:
        print(report.summary(), file=stream)
    print(f"{len(report.records)} records, {len(report.violations)} violations", file=stream)
    return report.exit_code
