"""Clustering instances, metrics and lower bounds."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    BoundExceedsN,
    IndexOutOfRange,
    InstanceError,
    KOutOfRange,
    NegativeDistance,
    NonSymmetricMatrix,
    RelaxedTriangleViolated,
)

FULL_TRIPLE_CHECK_MAX_N = 64
REL_TOL = 1e-9


class MetricKind(str, enum.Enum):
    MATRIX = "matrix"
    LINE = "line"
    SQEUCLIDEAN = "sqeuclidean"


@dataclass(frozen=True)
class MetricDescriptor:
    kind: MetricKind
    alpha: float
    coords: np.ndarray | None = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class LowerBounds:
    """Either a uniform bound or a bound per candidate center."""

    uniform: int | None = None
    per_center: Mapping[int, int] | None = None

    def __post_init__(self):
        if (self.uniform is None) == (self.per_center is None):
            raise InstanceError("give exactly one of uniform / per_center")
        if self.uniform is not None and int(self.uniform) < 1:
            raise InstanceError("lower bound must be >= 1")
        if self.per_center is not None:
            clean = {int(c): int(b) for c, b in self.per_center.items()}
            if any(b < 1 for b in clean.values()):
                raise InstanceError("lower bound must be >= 1")
            object.__setattr__(self, "per_center", clean)

    @property
    def is_uniform(self) -> bool:
        return self.uniform is not None

    def of(self, c: int) -> int:
        if self.uniform is not None:
            return self.uniform
        try:
            return self.per_center[c]
        except KeyError:
            raise InstanceError(f"no lower bound for center {c}") from None

    def to_json(self) -> dict:
        if self.uniform is not None:
            return {"uniform": self.uniform}
        return {"per_center": {str(c): b for c, b in sorted(self.per_center.items())}}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LowerBounds":
        if "uniform" in obj:
            return cls(uniform=int(obj["uniform"]))
        return cls(per_center={int(c): int(b) for c, b in obj["per_center"].items()})


@dataclass(frozen=True, eq=False)
class Instance:
    """An immutable clustering instance.

    Points are the ids ``0..n-1``; the metric may cover extra indices beyond
    ``n`` (used for external centers when snapping). ``dist`` is the full
    distance matrix over every metric index.
    """

    n: int
    centers: tuple[int, ...]
    metric: MetricDescriptor
    k: int
    bounds: LowerBounds
    dist: np.ndarray = field(repr=False)

    @property
    def points(self) -> range:
        return range(self.n)

    @property
    def alpha(self) -> float:
        return self.metric.alpha

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    def B(self, c: int) -> int:
        return self.bounds.of(c)

    def distance(self, x: int, y: int) -> float:
        return distance(self, x, y)

    def is_integral(self) -> bool:
        return bool(np.all(self.dist == np.round(self.dist)))


def distance(inst: Instance, x: int, y: int) -> float:
    m = inst.size
    if not (0 <= x < m and 0 <= y < m):
        raise IndexOutOfRange(f"ids ({x}, {y}) outside 0..{m - 1}")
    return float(inst.dist[x, y])


def _coordinate_matrix(kind: MetricKind, coords: np.ndarray) -> np.ndarray:
    if kind is MetricKind.LINE:
        c = coords.reshape(-1)
        return np.abs(c[:, None] - c[None, :])
    diff = coords[:, None, :] - coords[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _check_relaxed_triangle(dist: np.ndarray, alpha: float, rng_seed: int = 0) -> None:
    m = dist.shape[0]
    if m <= FULL_TRIPLE_CHECK_MAX_N:
        # via[x, y] = min_z d(x, z) + d(z, y)
        via = np.min(dist[:, :, None] + dist[None, :, :], axis=1)
        bad = dist > alpha * via * (1 + REL_TOL) + REL_TOL
        if np.any(bad):
            x, y = map(int, np.argwhere(bad)[0])
            raise RelaxedTriangleViolated(f"d({x},{y}) exceeds alpha-relaxed bound")
        return
    rng = np.random.default_rng(rng_seed)
    t = 10 * m * m
    x, y, z = (rng.integers(0, m, size=t) for _ in range(3))
    lhs = dist[x, y]
    rhs = alpha * (dist[x, z] + dist[y, z])
    bad = lhs > rhs * (1 + REL_TOL) + REL_TOL
    if np.any(bad):
        i = int(np.argmax(bad))
        raise RelaxedTriangleViolated(f"d({x[i]},{y[i]}) exceeds alpha-relaxed bound via {z[i]}")


def build_instance(
    data,
    k: int,
    bounds: LowerBounds,
    metric: str | MetricKind = "line",
    *,
    centers: Sequence[int] | None = None,
    alpha: float | None = None,
    n_points: int | None = None,
) -> Instance:
    """Validate input and build an :class:`Instance`.

    ``data`` is a coordinate list (line), an ``(m, d)`` array (sqeuclidean) or
    an ``m x m`` distance matrix. ``n_points`` lets the first ``n_points``
    indices be the point set with the remainder usable only as centers.
    """
    kind = MetricKind(metric)
    arr = np.asarray(data, dtype=float)
    coords = None
    if kind is MetricKind.MATRIX:
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InstanceError("distance matrix must be square")
        if np.any(arr < 0):
            raise NegativeDistance("distance matrix has negative entries")
        if not np.array_equal(arr, arr.T):
            raise NonSymmetricMatrix("distance matrix is not symmetric")
        if np.any(np.diag(arr) != 0):
            raise InstanceError("distance matrix must have a zero diagonal")
        dist = arr.copy()
        default_alpha = 1.0
    else:
        if kind is MetricKind.LINE:
            if arr.ndim == 2 and arr.shape[1] == 1:
                arr = arr[:, 0]
            if arr.ndim != 1:
                raise InstanceError("line metric takes a flat coordinate list")
            coords = arr.reshape(-1, 1)
            default_alpha = 1.0
        else:
            if arr.ndim == 1:
                arr = arr.reshape(-1, 1)
            if arr.ndim != 2:
                raise InstanceError("sqeuclidean metric takes an (m, d) array")
            coords = arr
            default_alpha = 2.0
        dist = _coordinate_matrix(kind, coords)
    m = dist.shape[0]
    if m == 0:
        raise InstanceError("empty point set")
    n = m if n_points is None else int(n_points)
    if not 1 <= n <= m:
        raise InstanceError(f"n_points={n} outside 1..{m}")

    a = default_alpha if alpha is None else float(alpha)
    if a < 1:
        raise InstanceError("alpha must be >= 1")
    if alpha is not None or kind is MetricKind.MATRIX:
        _check_relaxed_triangle(dist, a)

    F = tuple(range(n)) if centers is None else tuple(sorted(set(int(c) for c in centers)))
    if not F:
        raise InstanceError("empty candidate center set")
    if F[0] < 0 or F[-1] >= m:
        raise IndexOutOfRange("candidate center outside metric index range")
    k = int(k)
    if not 1 <= k <= len(F):
        raise KOutOfRange(f"k={k} outside 1..{len(F)}")
    for c in F:
        if bounds.of(c) > n:
            raise BoundExceedsN(f"B({c})={bounds.of(c)} exceeds n={n}")

    dist.setflags(write=False)
    return Instance(
        n=n,
        centers=F,
        metric=MetricDescriptor(kind, a, coords),
        k=k,
        bounds=bounds,
        dist=dist,
    )


def with_external_centers(inst: Instance, coords) -> tuple[Instance, list[int]]:
    """Append external center locations to a coordinate instance.

    Returns the extended instance and the metric ids of the new locations. The
    point set is unchanged.
    """
    if inst.metric.coords is None:
        raise InstanceError("external centers need a coordinate metric")
    extra = np.asarray(coords, dtype=float).reshape(-1, inst.metric.coords.shape[1])
    allc = np.vstack([inst.metric.coords, extra])
    ext = build_instance(
        allc if inst.metric.kind is MetricKind.SQEUCLIDEAN else allc[:, 0],
        inst.k,
        inst.bounds,
        inst.metric.kind,
        centers=inst.centers,
        n_points=inst.n,
    )
    first = inst.size
    return ext, list(range(first, first + len(extra)))


def fig1_instance(B: int = 5, delta: float = 1, k: int = 2) -> Instance:
    """Two locations ``delta`` apart with ``B - 1`` co-located points each."""
    coords = [0] * (B - 1) + [delta] * (B - 1)
    return build_instance(coords, k, LowerBounds(uniform=B), "line")
