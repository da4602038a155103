"""Approximation algorithms for k-median and k-means with lower bounds on cluster sizes."""

from .bicriteria import bicriteria_factor, to_bicriteria
from .cost import (
    FeasibilityReport,
    Kind,
    Solution,
    check_feasibility,
    cost,
    cost_fractional,
    cost_multi,
    cost_with_center_costs,
    snap_centers_to_points,
)
from .errors import (
    GuaranteeViolated,
    InfeasibleInput,
    InstanceError,
    LBClusterError,
    SolutionError,
    TooLarge,
)
from .genbench import generate_instance, run_benchmark
from .instance import Instance, LowerBounds, MetricKind, build_instance, distance, fig1_instance, with_external_centers
from .nesting import greedy_lb_partition, nest_into_c1, nest_into_c2, solve_lb_via_nesting
from .oracle import brute_force_opt, enumerate_opt
from .reduce2 import reduce_to_two
from .reduce_eps import reduce_to_one_plus_eps
from .subsolver import local_search_center_costs, local_search_kmedian
from .weaklb import augment_to_weak, compute_center_costs, solve_weak_lb

__version__ = "0.1.0"
