"""Seeded corpora shared by the property and acceptance tests."""

from functools import lru_cache

import numpy as np

from lbcluster.genbench import (
    generate_instance,
    random_solution_pair,
    random_two_weak_solution,
    random_weak_solution,
)
from lbcluster.weaklb import solve_weak_lb

FAMILIES = ("line", "random_metric", "sqeuclidean")


def random_instance(seed, n_max=30, k_max=6, family=None):
    rng = np.random.default_rng(seed)
    fam = family or FAMILIES[seed % 3]
    n = int(rng.integers(3, n_max + 1))
    k = int(rng.integers(1, min(n, k_max) + 1))
    hi = int(rng.integers(1, max(2, n // k) + 1))
    bounds = hi if rng.random() < 0.5 else [1, hi]
    return generate_instance(fam, n, k, bounds, rng), rng


@lru_cache(maxsize=None)
def weak_inputs(count=510):
    """Weak-feasible inputs: pipeline outputs and adversarial triple-heavy ones."""
    out = []
    seed = 0
    while len(out) < count:
        kind = seed % 3
        if kind == 1:
            # adversarial: at least three centers drawing from one shared pool
            inst, rng = random_instance(seed, k_max=8)
            while inst.k < 3:
                seed += 3
                inst, rng = random_instance(seed, k_max=8)
            sol = random_weak_solution(inst, rng, overlap=1.0, n_centers=int(rng.integers(3, inst.k + 1)))
        else:
            inst, rng = random_instance(seed)
            sol = solve_weak_lb(inst, seed=seed, restarts=1) if kind == 0 else random_weak_solution(inst, rng, overlap=0.4)
        out.append((inst, sol))
        seed += 1
    return tuple(out)


@lru_cache(maxsize=None)
def two_weak_inputs(count=510):
    out = []
    for seed in range(count):
        inst, rng = random_instance(10_000 + seed)
        out.append((inst, random_two_weak_solution(inst, rng)))
    return tuple(out)


@lru_cache(maxsize=None)
def solution_pairs(count=510):
    out = []
    for seed in range(count):
        inst, rng = random_instance(20_000 + seed)
        s1, s2 = random_solution_pair(inst, rng)
        out.append((inst, s1, s2))
    return tuple(out)


@lru_cache(maxsize=None)
def oracle_instances(count=120):
    """Oracle-scale instances: n <= 8, k <= 3, B <= 3."""
    out = []
    for seed in range(count):
        rng = np.random.default_rng(30_000 + seed)
        fam = FAMILIES[seed % 3]
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, min(n, 3) + 1))
        B = int(rng.integers(1, min(n, 3) + 1))
        out.append(generate_instance(fam, n, k, B, rng))
    return tuple(out)
