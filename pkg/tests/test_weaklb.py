import pytest

from corpus import oracle_instances, random_instance
from lbcluster.cost import Kind, check_feasibility, cost_multi, cost_with_center_costs, single
from lbcluster.instance import LowerBounds, build_instance, fig1_instance
from lbcluster.oracle import brute_force_opt
from lbcluster.subsolver import local_search_center_costs
from lbcluster.weaklb import augment_to_weak, compute_center_costs, nearest_set, solve_weak_lb


def test_b1_center_cost_zero():
    inst = build_instance([0, 1, 3], 1, LowerBounds(uniform=1))
    assert compute_center_costs(inst) == {0: 0, 1: 0, 2: 0}


def test_line3_center_costs():
    inst = build_instance([0, 1, 3], 1, LowerBounds(uniform=2))
    assert compute_center_costs(inst) == {0: 1, 1: 1, 2: 2}


def test_fig1_center_costs():
    assert set(compute_center_costs(fig1_instance()).values()) == {1.0}


def test_nearest_set_ties_by_id():
    inst = build_instance([5, 4, 6, 5], 1, LowerBounds(uniform=3))
    assert nearest_set(inst, 0) == [0, 3, 1]


def test_augment_noop_when_loads_suffice():
    inst = build_instance([0, 1, 10, 11], 2, LowerBounds(uniform=2))
    sol = single([0, 2], [0, 0, 2, 2], Kind.FCOST)
    out = augment_to_weak(inst, sol)
    assert out.assignment == sol.assignment and out.kind is Kind.WEAK


def test_augment_fig1_adds_one_cross_point_each():
    inst = fig1_instance()
    sol = single([0, 4], [0] * 4 + [4] * 4, Kind.FCOST)
    out = augment_to_weak(inst, sol)
    assert cost_multi(inst, out) == 2
    assert sorted(len(r) for r in out.assignment) == [1] * 6 + [2] * 2


def test_solve_weak_fig1():
    inst = fig1_instance()
    sol = solve_weak_lb(inst)
    assert cost_multi(inst, sol) == 2 and len(sol.centers) == 2


def test_k1_picks_center_cost_argmin():
    # with one center the local search is exhaustive, so it lands on the
    # argmin of cost^f; the result is within 2x of the best single-center weak cost
    for seed in range(30):
        inst, _ = random_instance(seed, n_max=10, k_max=1)
        sol = solve_weak_lb(inst)
        f = compute_center_costs(inst)
        D = inst.dist[: inst.n]
        costf = {c: D[:, c].sum() + f[c] for c in inst.centers}
        (c,) = sol.centers
        assert costf[c] == min(costf.values())
        best = brute_force_opt(inst, "weak").cost
        assert cost_multi(inst, sol) <= 2 * best + 1e-9


def test_k1_line5_equals_best_single_center():
    inst = build_instance([0, 1, 2, 10, 11], 1, LowerBounds(uniform=2))
    assert cost_multi(inst, solve_weak_lb(inst)) == brute_force_opt(inst, "weak").cost


@pytest.mark.parametrize("seed", range(40))
def test_augmentation_never_exceeds_center_cost_objective(seed):
    inst, _ = random_instance(seed)
    f = compute_center_costs(inst)
    fsol = local_search_center_costs(inst, f, seed=seed, restarts=1)
    out = augment_to_weak(inst, fsol, f)
    assert cost_multi(inst, out) <= cost_with_center_costs(inst, fsol, f) * (1 + 1e-9) + 1e-9
    assert check_feasibility(inst, out, Kind.WEAK)


def test_center_cost_optimum_at_most_twice_weak_optimum():
    for inst in oracle_instances()[:40]:
        f = compute_center_costs(inst)
        assert brute_force_opt(inst, "fcost", f=f).cost <= 2 * brute_force_opt(inst, "weak").cost + 1e-9
