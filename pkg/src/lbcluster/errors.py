"""Exception hierarchy for lbcluster."""


class LBClusterError(Exception):
    """Base class for all library errors."""


class InstanceError(LBClusterError, ValueError):
    pass


class NonSymmetricMatrix(InstanceError):
    pass


class NegativeDistance(InstanceError):
    pass


class BoundExceedsN(InstanceError):
    pass


class KOutOfRange(InstanceError):
    pass


class RelaxedTriangleViolated(InstanceError):
    pass


class IndexOutOfRange(LBClusterError, IndexError):
    pass


class SolutionError(LBClusterError, ValueError):
    pass


class DanglingCenter(SolutionError):
    pass


class AmountOutOfRange(SolutionError):
    pass


class MultiplyAssignedPoint(SolutionError):
    pass


class InfeasibleInput(SolutionError):
    pass


class InfeasibleBound(SolutionError):
    pass


class InfeasibleBounds(SolutionError):
    pass


class EpsOutOfRange(LBClusterError, ValueError):
    pass


class BetaOutOfRange(LBClusterError, ValueError):
    pass


class NoOpenCenterForOrphan(LBClusterError):
    pass


class SizePreconditionViolated(LBClusterError, ValueError):
    pass


class TooLarge(LBClusterError, ValueError):
    pass


class BadParams(LBClusterError, ValueError):
    pass


class GuaranteeViolated(LBClusterError, AssertionError):
    """A proven cost or feasibility guarantee failed at runtime."""
