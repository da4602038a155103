"""JSON formats for instances and solutions.

Instance::

    {"metric": "line" | "sqeuclidean" | "matrix",
     "points": [...], "matrix": [[...]],      # one of the two
     "k": 2, "bounds": {"uniform": 3} | {"per_center": {"0": 2, ...}},
     "alpha": 1.0, "centers": [...], "n_points": 8}   # optional

Solution::

    {"centers": [...], "kind": "weak", "params": {...},
     "assignment": [[c, ...], ...]                 # integral
                 | [[{"c": id, "amt": x}, ...], ...]}  # fractional
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cost import Kind, Solution
from .errors import InstanceError, SolutionError
from .instance import Instance, LowerBounds, MetricKind, build_instance


def _num(x: Fraction | float | int) -> float | int:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    return x


def _frac(x) -> Fraction:
    return Fraction(repr(x)) if isinstance(x, float) else Fraction(x)


def instance_to_json(inst: Instance) -> dict[str, Any]:
    kind = inst.metric.kind
    out: dict[str, Any] = {"metric": kind.value}
    if kind is MetricKind.MATRIX:
        out["matrix"] = inst.dist.tolist()
    elif kind is MetricKind.LINE:
        out["points"] = inst.metric.coords[:, 0].tolist()
    else:
        out["points"] = inst.metric.coords.tolist()
    out["k"] = inst.k
    out["bounds"] = inst.bounds.to_json()
    out["alpha"] = inst.alpha
    if inst.centers != tuple(range(inst.n)):
        out["centers"] = list(inst.centers)
    if inst.n != inst.size:
        out["n_points"] = inst.n
    return out


def instance_from_json(obj: dict[str, Any]) -> Instance:
    try:
        metric = obj.get("metric", "line")
        data = obj["matrix"] if metric == "matrix" else obj["points"]
        bounds = LowerBounds.from_json(obj["bounds"])
        k = obj["k"]
    except KeyError as e:
        raise InstanceError(f"instance JSON missing field {e}") from None
    alpha = obj.get("alpha")
    default = 2.0 if metric == "sqeuclidean" else 1.0
    return build_instance(
        data, k, bounds, metric,
        centers=obj.get("centers"),
        alpha=None if alpha is None or float(alpha) == default else alpha,
        n_points=obj.get("n_points"),
    )


def _params_to_json(params) -> dict:
    return {k: _num(v) if isinstance(v, Fraction) else v for k, v in params.items()}


def solution_to_json(sol: Solution) -> dict[str, Any]:
    if sol.amounts is not None:
        rows = [[{"c": c, "amt": _num(a)} for c, a in row] for row in sol.amounts]
    else:
        rows = [list(r) for r in sol.assignment]
    return {
        "centers": list(sol.centers),
        "assignment": rows,
        "kind": sol.kind.value,
        "params": _params_to_json(sol.params),
    }


def solution_from_json(obj: dict[str, Any]) -> Solution:
    try:
        rows = obj["assignment"]
        centers = obj["centers"]
    except KeyError as e:
        raise SolutionError(f"solution JSON missing field {e}") from None
    kind = Kind(obj.get("kind", "weak"))
    params = dict(obj.get("params", {}))
    for key in ("eps", "beta"):
        if key in params:
            params[key] = _frac(params[key])
    fractional = any(isinstance(e, dict) for row in rows for e in row)
    if fractional:
        amounts = tuple(tuple((int(e["c"]), _frac(e["amt"])) for e in row) for row in rows)
        return Solution(tuple(centers), amounts=amounts, kind=kind, params=params)
    return Solution(tuple(centers), tuple(tuple(int(c) for c in row) for row in rows), kind=kind, params=params)


def _default(o):
    if isinstance(o, Fraction):
        return _num(o)
    if hasattr(o, "item"):
        return o.item()
    if isinstance(o, (set, frozenset, tuple)):
        return sorted(o) if isinstance(o, (set, frozenset)) else list(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_default, sort_keys=True)


def load_json(path: str | Path):
    with open(path) as fh:
        return json.load(fh)


def save_json(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def read_instance(path) -> Instance:
    return instance_from_json(load_json(path))


def read_solution(path) -> Solution:
    return solution_from_json(load_json(path))
