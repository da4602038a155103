from fractions import Fraction

import pytest

from corpus import two_weak_inputs, weak_inputs
from lbcluster.bicriteria import bicriteria_factor, to_bicriteria
from lbcluster.cost import Kind, Solution, check_feasibility, cost_multi, single
from lbcluster.errors import BetaOutOfRange, InfeasibleInput
from lbcluster.instance import LowerBounds, build_instance, fig1_instance
from lbcluster.reduce2 import reduce_to_two


def fig1_two_weak():
    rows = [(0,)] * 4 + [(4,)] * 4
    rows[0] = rows[4] = (0, 4)
    return Solution((0, 4), tuple(rows), kind=Kind.BWEAK, params={"b": 2})


def test_factor_values():
    assert bicriteria_factor(1, Fraction(1, 2)) == 2
    assert bicriteria_factor(2, Fraction(1, 2)) == 4
    assert bicriteria_factor(1, Fraction(3, 4)) == 4


def test_disjoint_clusters_all_open():
    inst = build_instance([0, 1, 10, 11], 2, LowerBounds(uniform=2))
    sol = single([0, 2], [0, 0, 2, 2], Kind.BWEAK, b=2)
    out = to_bicriteria(inst, sol, 0.5)
    assert out.centers == (0, 2) and out.assignment == sol.assignment


def test_fig1_hand_trace():
    inst = fig1_instance()
    out = to_bicriteria(inst, fig1_two_weak(), Fraction(1, 2), debug=True)
    # center 0 opens with 0..4; center 4 still has 5, 6, 7 unassigned and ceil(2.5) = 3
    assert out.centers == (0, 4)
    assert [r[0] for r in out.assignment] == [0] * 5 + [4] * 3
    assert cost_multi(inst, out) == 1
    assert check_feasibility(inst, out).loads == {0: 5, 4: 3}


@pytest.mark.parametrize("beta", [0.4, 1.0, 0.0])
def test_beta_out_of_range(beta):
    with pytest.raises(BetaOutOfRange):
        to_bicriteria(fig1_instance(), fig1_two_weak(), beta)


def test_rejects_multiplicity_three():
    inst = build_instance([0, 0, 0], 3, LowerBounds(uniform=1))
    sol = Solution((0, 1, 2), ((0, 1, 2), (0,), (1,)), kind=Kind.WEAK)
    with pytest.raises(InfeasibleInput):
        to_bicriteria(inst, sol)


@pytest.mark.parametrize("beta", [Fraction(1, 2), Fraction(3, 4)])
def test_property_suite_subset(beta):
    inputs = list(two_weak_inputs()[:100])
    inputs += [(inst, reduce_to_two(inst, sol)[0]) for inst, sol in weak_inputs()[:60]]
    for inst, sol in inputs:
        out = to_bicriteria(inst, sol, beta, debug=True)
        rep = check_feasibility(inst, out)
        assert rep and all(m == 1 for m in rep.multiplicity)
        factor = bicriteria_factor(inst.alpha, beta)
        assert cost_multi(inst, out) <= factor * cost_multi(inst, sol) * (1 + 1e-9) + 1e-9
