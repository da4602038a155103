import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lbcluster.errors import (
    BoundExceedsN,
    IndexOutOfRange,
    KOutOfRange,
    NegativeDistance,
    NonSymmetricMatrix,
    RelaxedTriangleViolated,
)
from lbcluster.instance import LowerBounds, build_instance, distance, fig1_instance, with_external_centers


def test_line_defaults():
    inst = build_instance([0, 1, 3], 2, LowerBounds(uniform=1))
    assert inst.alpha == 1
    assert inst.centers == (0, 1, 2)
    assert list(inst.points) == [0, 1, 2]
    assert distance(inst, 0, 2) == 3


def test_fig1_is_valid():
    inst = fig1_instance(5, 1)
    assert inst.n == 8 and inst.k == 2 and inst.B(0) == 5
    assert distance(inst, 0, 4) == 1
    assert distance(inst, 0, 1) == 0


def test_sqeuclidean_distance_and_alpha():
    inst = build_instance([[0, 0], [1, 1]], 1, LowerBounds(uniform=1), "sqeuclidean")
    assert inst.alpha == 2
    assert distance(inst, 0, 1) == 2


def test_distance_to_self_is_zero():
    inst = build_instance([4, 9, 2], 1, LowerBounds(uniform=1))
    assert all(distance(inst, x, x) == 0 for x in inst.points)


def test_non_symmetric_matrix():
    with pytest.raises(NonSymmetricMatrix):
        build_instance([[0, 1], [2, 0]], 1, LowerBounds(uniform=1), "matrix")


def test_negative_distance():
    with pytest.raises(NegativeDistance):
        build_instance([[0, -1], [-1, 0]], 1, LowerBounds(uniform=1), "matrix")


def test_bound_exceeds_n():
    with pytest.raises(BoundExceedsN):
        build_instance([0, 1, 3], 1, LowerBounds(uniform=4))


@pytest.mark.parametrize("k", [0, 4])
def test_k_out_of_range(k):
    with pytest.raises(KOutOfRange):
        build_instance([0, 1, 3], k, LowerBounds(uniform=1))


def test_relaxed_triangle_checked_for_matrix():
    M = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
    with pytest.raises(RelaxedTriangleViolated):
        build_instance(M, 1, LowerBounds(uniform=1), "matrix")
    inst = build_instance(M, 1, LowerBounds(uniform=1), "matrix", alpha=2.5)
    assert inst.alpha == 2.5


def test_sampled_triangle_check_above_64():
    rng = np.random.default_rng(0)
    D = rng.integers(10, 20, size=(80, 80)).astype(float)
    D = np.minimum(D, D.T)
    np.fill_diagonal(D, 0)
    build_instance(D, 2, LowerBounds(uniform=1), "matrix")
    D[0, 1] = D[1, 0] = 1000
    with pytest.raises(RelaxedTriangleViolated):
        build_instance(D, 2, LowerBounds(uniform=1), "matrix")


def test_index_out_of_range():
    inst = build_instance([0, 1, 3], 1, LowerBounds(uniform=1))
    with pytest.raises(IndexOutOfRange):
        distance(inst, 0, 3)


def test_instance_is_read_only():
    inst = fig1_instance()
    with pytest.raises(ValueError):
        inst.dist[0, 1] = 7


def test_per_center_bounds_roundtrip():
    lb = LowerBounds(per_center={0: 2, 1: 1, 2: 3})
    assert LowerBounds.from_json(lb.to_json()).of(2) == 3
    assert not lb.is_uniform


def test_external_centers_extend_metric_only():
    inst = build_instance([0, 2], 1, LowerBounds(uniform=1))
    ext, ids = with_external_centers(inst, [1])
    assert ids == [2] and ext.n == 2 and ext.size == 3
    assert distance(ext, 0, 2) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=3, max_size=12), st.integers(0, 2**31))
def test_random_triples_satisfy_relaxed_inequality(coords, seed):
    for metric, data in (("line", coords), ("sqeuclidean", [[c, c % 7] for c in coords])):
        inst = build_instance(data, 1, LowerBounds(uniform=1), metric)
        D, a = inst.dist, inst.alpha
        rng = np.random.default_rng(seed)
        x, y, z = (rng.integers(0, inst.n, 1000) for _ in range(3))
        assert np.all(D[x, y] <= a * (D[x, z] + D[y, z]) + 1e-9)
        assert np.array_equal(D, D.T)
