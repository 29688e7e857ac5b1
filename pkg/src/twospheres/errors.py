"""Exceptions raised when an evaluation falls outside its well-defined domain."""


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class EmptyClusterError(DomainError):
    """One side of a partition carries no mass (or no sample points)."""


class DegeneratePartitionError(DomainError):
    """The cutoff leaves a single cluster, so the two-cluster quantity is undefined."""


class EndpointError(DomainError):
    """Derivative requested at an endpoint of the cutoff range."""


class SingularPrefactorError(EndpointError):
    """The derivative prefactor diverges (dimension 2, cutoff at the tangency point)."""


class CoincidentCentroidsError(DomainError):
    """Voronoi assignment needs two distinct centroids."""


class ConvergenceError(RuntimeError):
    """An iterative evaluation exceeded its iteration budget."""
