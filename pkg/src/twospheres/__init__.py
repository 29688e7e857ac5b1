"""Two-means clustering of two touching unit spheres."""
from .errors import (
    CoincidentCentroidsError,
    ConvergenceError,
    DegeneratePartitionError,
    DomainError,
    EmptyClusterError,
    EndpointError,
    SingularPrefactorError,
)
from .measure import (
    centroids,
    first_moment_minus,
    mass_minus,
    mass_series,
    normalization_constant,
)

__version__ = "0.1.0"
