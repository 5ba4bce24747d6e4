"""Exception taxonomy shared by every boxplan module."""


class BoxplanError(Exception):
    """Base class for every error raised by this package."""


class MismatchedIntervals(BoxplanError):
    """Trajectories in a schedule do not agree on their time window."""


class NotCommonlyOrdered(BoxplanError):
    """A configuration pair does not share the required ordering."""


class DBelowDiameter(BoxplanError):
    """Requested duration is shorter than the configuration diameter."""


class StateInfeasible(BoxplanError):
    """A planning state admits no feasible configuration."""


class InfeasibleConfiguration(BoxplanError):
    """A configuration violates pairwise separation."""


class NotInDomain(BoxplanError):
    """A robot placement leaves its workspace domain."""


class NotReachable(BoxplanError):
    """Two placements fall in different connectivity components."""


class ResourceBound(BoxplanError):
    """Input exceeds a documented size limit of an exact algorithm."""


class BudgetExceeded(BoxplanError):
    """A search exhausted its node or edge budget before finishing."""


class Unreachable(BoxplanError):
    """Grid search proved the target unreachable at this resolution."""


class NoRepresentative(BoxplanError):
    """A graph vertex admits no representative configuration."""


class EmptyErosion(BoxplanError):
    """A domain is too small to contain the robot at all."""


class NotLatticeExact(BoxplanError):
    """Instance coordinates do not lie on the requested grid step."""
