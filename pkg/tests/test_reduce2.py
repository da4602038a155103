import json

import pytest

from corpus import weak_inputs
from lbcluster.cost import Kind, Solution, check_feasibility, cost_multi
from lbcluster.errors import InfeasibleInput
from lbcluster.instance import LowerBounds, build_instance, fig1_instance
from lbcluster.io import dumps
from lbcluster.reduce2 import reduce_to_two
from lbcluster.weaklb import solve_weak_lb


def triple_instance():
    # three co-located centers 0,1,2 share points 0..2; points 3..8 are singletons elsewhere
    coords = [0, 0, 0, 10, 11, 12, 20, 21, 22]
    inst = build_instance(coords, 3, LowerBounds(uniform=3))
    rows = [(0, 1, 2)] * 3 + [(0,)] * 3 + [(1,)] * 3
    rows[6] = (2,)
    return inst, Solution((0, 1, 2), tuple(rows), kind=Kind.WEAK)


def test_two_weak_input_is_a_noop():
    inst = fig1_instance()
    sol = solve_weak_lb(inst)
    out, trace = reduce_to_two(inst, sol)
    assert out.assignment == sol.assignment and out.centers == sol.centers
    assert not [e for e in trace.events if e["op"] != "process"]


def test_triples_resolved():
    inst, sol = triple_instance()
    assert check_feasibility(inst, sol, Kind.WEAK)
    out, trace = reduce_to_two(inst, sol)
    assert max(len(r) for r in out.assignment) <= 2
    assert check_feasibility(inst, out, Kind.BWEAK, b=2)
    assert set(out.centers) <= set(sol.centers)
    assert cost_multi(inst, out) <= 2 * cost_multi(inst, sol)
    assert trace.ok, trace.violations


def test_infeasible_input_rejected():
    inst = fig1_instance()
    # center 4 is open with no points
    with pytest.raises(InfeasibleInput):
        reduce_to_two(inst, Solution((0, 4), ((0,),) * 8, kind=Kind.WEAK))


def test_trace_serializes():
    inst, sol = triple_instance()
    _, trace = reduce_to_two(inst, sol)
    obj = json.loads(dumps(trace.to_json()))
    assert obj["audit"]["type1_max"] <= 1 and obj["audit"]["type2_max"] <= 1
    assert obj["violations"] == []


def test_property_suite_subset():
    closures = 0
    for inst, sol in weak_inputs()[:150]:
        out, trace = reduce_to_two(inst, sol)
        a = inst.alpha
        assert check_feasibility(inst, out, Kind.BWEAK, b=2)
        assert cost_multi(inst, out) <= a * (a + 1) * cost_multi(inst, sol) * (1 + 1e-9) + 1e-9
        assert trace.ok, (trace.violations, trace.audit.violations)
        closures += trace.closures
    # the closure branch is exercised by the corpus
    assert closures > 0
