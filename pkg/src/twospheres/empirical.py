"""Finite-sample counterpart: points on the two touching spheres and Lloyd's algorithm.

Points are in the symmetric frame (sphere centers at -e1 and +e1).  Labels
are int8 arrays with 0 for the first cluster and 1 for the second; a point
equidistant from both centroids goes to the first cluster.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from . import kernels
from .errors import CoincidentCentroidsError, DomainError, EmptyClusterError
from .measure import check_dimension

AXIS_ANGLE_THRESHOLD = 0.05
INIT_MODES = ("random_points", "antipodal", "given")


@dataclass(frozen=True, eq=False)
class SampleCloud:
    n: int
    count: int
    points: np.ndarray = field(repr=False)
    source_labels: np.ndarray = field(repr=False)
    seed: int


@dataclass(eq=False)
class LloydRun:
    cloud: SampleCloud
    centroids: np.ndarray
    labels: np.ndarray = field(repr=False)
    mse_trace: list
    iterations: int
    converged: bool
    extracted_cutoff: float | None
    axis_deviation_angle: float
    backend: str = kernels.BACKEND

    def summary(self):
        return {
            "n": self.cloud.n,
            "count": self.cloud.count,
            "seed": self.cloud.seed,
            "iterations": self.iterations,
            "converged": self.converged,
            "final_mse": self.mse_trace[-1],
            "extracted_cutoff": self.extracted_cutoff,
            "axis_deviation_angle": self.axis_deviation_angle,
            "centroids": self.centroids.tolist(),
            "cluster_sizes": np.bincount(self.labels, minlength=2).tolist(),
            "mse_trace": list(self.mse_trace),
            "backend": self.backend,
        }


def make_rng(seed):
    """Counter-based generator: the stream depends on the seed alone."""
    return np.random.Generator(np.random.Philox(int(seed)))


def sample_spheres(n, count, seed=0):
    """Uniform points on the union of the unit spheres centered at -e1 and +e1.

    Each point is a normalized standard Gaussian vector shifted to a sphere
    picked with probability 1/2.
    """
    n = check_dimension(n)
    if count < 2:
        raise DomainError(f"count must be >= 2, got {count}")
    rng = make_rng(seed)
    g = rng.standard_normal((count, n))
    points = g / np.linalg.norm(g, axis=1, keepdims=True)
    source = rng.integers(0, 2, size=count, dtype=np.int8)
    points[:, 0] += 2.0 * source - 1.0
    return SampleCloud(n, count, np.ascontiguousarray(points), source, int(seed))


def _as_points(cloud):
    pts = cloud.points if isinstance(cloud, SampleCloud) else cloud
    return np.ascontiguousarray(pts, dtype=np.float64)


def _as_labels(labels, count):
    lab = np.ascontiguousarray(labels, dtype=np.int8)
    if lab.shape != (count,):
        raise DomainError(f"expected {count} labels, got shape {lab.shape}")
    return lab


def cluster_means(points, labels):
    sizes = np.bincount(labels, minlength=2)
    if sizes[0] == 0 or sizes[1] == 0:
        raise EmptyClusterError(f"cluster sizes {sizes.tolist()}")
    first = labels == 0
    return points[first].mean(axis=0), points[~first].mean(axis=0)


def empirical_mse(cloud, labels):
    """Mean squared distance of each point to the mean of its cluster."""
    points = _as_points(cloud)
    labels = _as_labels(labels, len(points))
    c1, c2 = cluster_means(points, labels)
    return kernels.cluster_sse(points, labels, c1, c2) / len(points)


def squared_distances(cloud, labels):
    """Per-point squared distance to the own-cluster mean (for standard errors)."""
    points = _as_points(cloud)
    labels = _as_labels(labels, len(points))
    c1, c2 = cluster_means(points, labels)
    centers = np.where(labels[:, None] == 0, c1, c2)
    return np.einsum("ij,ij->i", points - centers, points - centers)


def hyperplane_labels(cloud, a, axis=0):
    """First cluster is {x_axis <= -a}, the convention of E(n, a)."""
    points = _as_points(cloud)
    return (points[:, axis] > -a).astype(np.int8)


def best_axis_split(cloud):
    """Best split of the form {x1 <= t} over every threshold between sample values.

    Returns ``(t, mse)``; uses prefix sums over the points sorted by x1.
    """
    points = _as_points(cloud)
    order = np.argsort(points[:, 0], kind="stable")
    sp = points[order]
    count = len(sp)
    k = np.arange(1, count)
    sums = np.cumsum(sp, axis=0)[:-1]
    sq = np.cumsum(np.einsum("ij,ij->i", sp, sp))[:-1]
    tot_sum = sp.sum(axis=0)
    tot_sq = float(np.einsum("ij,ij->", sp, sp))
    left = sq - np.einsum("ij,ij->i", sums, sums) / k
    rsum = tot_sum - sums
    right = (tot_sq - sq) - np.einsum("ij,ij->i", rsum, rsum) / (count - k)
    sse = left + right
    i = int(np.argmin(sse))
    t = 0.5 * (sp[i, 0] + sp[i + 1, 0])
    return float(t), float(sse[i] / count)


def voronoi_reassign(cloud, centroids):
    """Label each point by its nearer centroid; ties go to the first."""
    c1, c2 = (np.ascontiguousarray(c, dtype=np.float64) for c in centroids)
    if np.array_equal(c1, c2):
        raise CoincidentCentroidsError("centroids coincide")
    labels, _, _ = kernels.assign_accumulate(_as_points(cloud), c1, c2)
    return np.asarray(labels)


def axis_alignment(c1, c2):
    """Angle between c2 - c1 and the e1 axis (sign ignored), and where the bisector meets that axis."""
    d = c2 - c1
    norm = float(np.linalg.norm(d))
    if norm == 0.0:
        raise CoincidentCentroidsError("centroids coincide")
    angle = math.acos(min(1.0, abs(d[0]) / norm))
    mid = 0.5 * (c1 + c2)
    crossing = float(np.dot(mid, d) / d[0]) if d[0] != 0.0 else None
    return angle, crossing


def _initial_centroids(cloud, init, centroids, init_seed):
    n = cloud.n
    if init == "given":
        if centroids is None:
            raise DomainError("init='given' needs centroids")
        c = np.array(centroids, dtype=np.float64).reshape(2, n)
    elif init == "antipodal":
        c = np.zeros((2, n))
        c[0, 0], c[1, 0] = -1.0, 1.0
    elif init == "random_points":
        rng = make_rng(cloud.seed if init_seed is None else init_seed)
        i, j = rng.choice(cloud.count, size=2, replace=False)
        c = cloud.points[[i, j]].copy()
    else:
        raise DomainError(f"unknown init {init!r}")
    if np.array_equal(c[0], c[1]):
        raise CoincidentCentroidsError("initial centroids coincide")
    return c


def lloyd(cloud, init="antipodal", max_iter=300, move_tol=1e-10, centroids=None,
          init_seed=None, angle_threshold=AXIS_ANGLE_THRESHOLD):
    """Two-cluster Lloyd iteration on a sample cloud.

    ``init`` is one of "antipodal" (the sphere centers -e1, +e1),
    "random_points" (two distinct sample points drawn with ``init_seed``,
    default the cloud seed) or "given" (``centroids``).  Each iteration
    reassigns points to the nearer centroid, moves the centroids to the
    cluster means and records the resulting error; it stops once no centroid
    moves by ``move_tol`` or more.  An emptied cluster raises
    :class:`EmptyClusterError`; retry with another initialization.

    ``extracted_cutoff`` is where the bisecting hyperplane crosses the e1
    axis (the offset is its absolute value), reported only when the
    centroid axis is within ``angle_threshold`` radians of e1.
    """
    if max_iter < 1:
        raise DomainError("max_iter must be >= 1")
    if not move_tol > 0:
        raise DomainError("move_tol must be positive")
    points = _as_points(cloud)
    c = _initial_centroids(cloud, init, centroids, init_seed)
    trace = []
    converged = False
    labels = None
    it = 0
    for it in range(1, max_iter + 1):
        labels, sums, counts = kernels.assign_accumulate(points, c[0], c[1])
        labels = np.asarray(labels)
        counts = np.asarray(counts)
        if counts[0] == 0 or counts[1] == 0:
            raise EmptyClusterError(f"cluster emptied at iteration {it}")
        new = np.asarray(sums) / counts[:, None]
        trace.append(kernels.cluster_sse(points, labels, new[0], new[1]) / len(points))
        move = float(np.max(np.linalg.norm(new - c, axis=1)))
        c = new
        if move < move_tol:
            converged = True
            break
    angle, crossing = axis_alignment(c[0], c[1])
    cutoff = crossing if angle < angle_threshold else None
    return LloydRun(cloud, c, labels, trace, it, converged, cutoff, angle)
