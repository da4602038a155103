import pytest

from corpus import oracle_instances
from lbcluster.cost import cost_multi, cost_with_center_costs
from lbcluster.instance import LowerBounds, build_instance, fig1_instance
from lbcluster.oracle import brute_force_opt
from lbcluster.subsolver import is_local_optimum, local_search_center_costs, local_search_kmedian
from lbcluster.weaklb import compute_center_costs

LINE5 = [0, 1, 2, 10, 11]


def test_n_equals_k_gives_zero():
    inst = build_instance([3, 8, 20], 3, LowerBounds(uniform=1))
    sol = local_search_kmedian(inst)
    assert cost_multi(inst, sol) == 0 and len(sol.centers) == 3


def test_line5_matches_brute_force():
    inst = build_instance(LINE5, 2, LowerBounds(uniform=1))
    sol = local_search_kmedian(inst)
    # centers {1, 10} or {1, 11}: 1 + 0 + 1 + 0 + 1
    assert cost_multi(inst, sol) == 3
    assert sol.centers in ((1, 3), (1, 4))
    assert brute_force_opt(inst, "plain").cost == 3


def test_fig1_unconstrained_is_free():
    inst = fig1_instance()
    assert cost_multi(inst, local_search_kmedian(inst)) == 0


def test_zero_center_costs_match_plain_search():
    inst = build_instance([0, 4, 5, 9, 30, 31], 2, LowerBounds(uniform=1))
    f = dict.fromkeys(inst.centers, 0.0)
    a = local_search_center_costs(inst, f, seed=3)
    b = local_search_kmedian(inst, seed=3)
    assert cost_with_center_costs(inst, a, f) == cost_multi(inst, b)


def test_dominant_penalty_opens_the_cheap_center():
    inst = build_instance([0, 4, 5, 9, 30, 31], 3, LowerBounds(uniform=1))
    f = {c: 1e9 for c in inst.centers}
    f[2] = 0.0
    assert local_search_center_costs(inst, f).centers == (2,)


def test_line5_center_costs_within_two_of_optimum():
    inst = build_instance(LINE5, 2, LowerBounds(uniform=2))
    f = compute_center_costs(inst)
    got = cost_with_center_costs(inst, local_search_center_costs(inst, f), f)
    assert got <= 2 * brute_force_opt(inst, "fcost", f=f).cost


def test_deterministic_given_seed():
    inst = build_instance([0, 4, 5, 9, 30, 31, 60, 61], 3, LowerBounds(uniform=1))
    assert local_search_kmedian(inst, seed=7) == local_search_kmedian(inst, seed=7)


def test_outputs_are_local_optima_on_corpus():
    worst = 0.0
    for inst in oracle_instances():
        f = compute_center_costs(inst)
        sol = local_search_center_costs(inst, f)
        assert len(sol.centers) <= inst.k
        assert is_local_optimum(inst, sol.centers, f)
        assert is_local_optimum(inst, local_search_kmedian(inst).centers)
        opt = brute_force_opt(inst, "fcost", f=f).cost
        got = cost_with_center_costs(inst, sol, f)
        worst = max(worst, got / opt if opt else 1.0)
    assert worst <= 5.0


@pytest.mark.parametrize("restarts", [1, 5])
def test_nearest_assignment(restarts):
    inst = build_instance([0, 4, 5, 9, 30, 31], 2, LowerBounds(uniform=1))
    sol = local_search_kmedian(inst, restarts=restarts)
    D = inst.dist
    for x, (c,) in enumerate(sol.assignment):
        assert D[x, c] == min(D[x, o] for o in sol.centers)
