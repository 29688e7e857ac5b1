"""Four-point line example: two 1-spheres {-2-eps, -eps} and {eps, 2+eps}.

Every two-cluster labelling is enumerated; this is the brute-force oracle
for the dimension-one analogue of the sphere problem.
"""
from dataclasses import dataclass
from itertools import product
import math

from .errors import DomainError

TIE_TOL = 1e-12
THRESHOLD = (math.sqrt(3.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FourPointConfig:
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def points(self):
        e = self.epsilon
        return (-2.0 - e, -e, e, 2.0 + e)

    @property
    def weights(self):
        return (0.25, 0.25, 0.25, 0.25)


@dataclass(frozen=True)
class DiscretePartition:
    """Labels are 0/1 per point, in the order of ``FourPointConfig.points``."""

    labels: tuple[int, ...]
    mse: float
    means: tuple[float, float]

    def clusters(self, config):
        pts = config.points
        return tuple(tuple(x for x, l in zip(pts, self.labels) if l == c) for c in (0, 1))

    @property
    def kind(self):
        """"symmetric" (one sphere per cluster), "cannibal" (an outer point alone) or "other"."""
        if self.labels in ((0, 0, 1, 1), (1, 1, 0, 0)):
            return "symmetric"
        singles = [i for i, l in enumerate(self.labels) if self.labels.count(l) == 1]
        return "cannibal" if singles in ([0], [3]) else "other"


def partition_mse(config, labels):
    """Weighted squared distance to the cluster means; both clusters must be nonempty."""
    pts, wts = config.points, config.weights
    means = []
    total = 0.0
    for c in (0, 1):
        members = [(x, w) for x, l, w in zip(pts, labels, wts) if l == c]
        if not members:
            raise DomainError("both clusters must be nonempty")
        mass = sum(w for _, w in members)
        mean = sum(x * w for x, w in members) / mass
        total += sum(w * (x - mean) ** 2 for x, w in members)
        means.append(mean)
    return DiscretePartition(tuple(labels), total, tuple(means))


def all_partitions(config):
    """The seven labellings with the first point in cluster 0 (one per complement pair)."""
    out = []
    for rest in product((0, 1), repeat=3):
        labels = (0,) + rest
        if 1 in labels:
            out.append(partition_mse(config, labels))
    return out


def enumerate_optimal(epsilon, tie_tol=TIE_TOL):
    """All minimum-error labellings for the given spacing, ties included."""
    parts = all_partitions(FourPointConfig(epsilon))
    best = min(p.mse for p in parts)
    return [p for p in parts if p.mse <= best + tie_tol]


def cannibal_mse(epsilon):
    return 2.0 * (1.0 + epsilon + epsilon**2) / 3.0


def separation_threshold(tol=1e-10):
    """Spacing at which the cannibal and symmetric partitions have equal error.

    Bisection on the brute-force errors of the two partitions, not on the
    analytic formula.
    """
    if not 1e-12 <= tol <= 1e-3:
        raise DomainError(f"tol must lie in [1e-12, 1e-3], got {tol}")

    def gap(eps):
        config = FourPointConfig(eps)
        return partition_mse(config, (0, 1, 1, 1)).mse - partition_mse(config, (0, 0, 1, 1)).mse

    lo, hi = 1e-6, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
