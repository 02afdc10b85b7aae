"""Finite point clouds and the greedy thinning shared by deduplication and
omega clustering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .errors import DimensionMismatchError, EmptyCloudError, GeometryValidationError

# Points closer than this are treated as one point when clouds are built.
DEDUP_TOL = 1e-12


def greedy_thin(points, eps, block=2048):
    """Arrival-order greedy thinning: keep a point iff it lies strictly farther
    than ``eps`` from every point kept so far.

    Equivalent to the naive one-point-at-a-time scan but vectorized per block;
    kept points come back in arrival order.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise GeometryValidationError(f"expected (k, d) points, got shape {pts.shape}")
    if len(pts) == 0:
        return pts.copy()
    kept = []
    for start in range(0, len(pts), block):
        blk = pts[start:start + block]
        if kept:
            dmin = cdist(blk, np.asarray(kept)).min(axis=1)
        else:
            dmin = np.full(len(blk), np.inf)
        while True:
            idx = np.nonzero(dmin > eps)[0]
            if idx.size == 0:
                break
            i = int(idx[0])
            rep = blk[i]
            kept.append(rep)
            dmin[i:] = np.minimum(dmin[i:], np.linalg.norm(blk[i:] - rep, axis=1))
    return np.asarray(kept)


@dataclass(frozen=True, eq=False)
class PointCloud:
    """A finite set of points, deduplicated to ``DEDUP_TOL`` at construction."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] == 0:
            raise GeometryValidationError(f"point cloud needs shape (k, d), got {pts.shape}")
        if len(pts) == 0:
            raise EmptyCloudError("point cloud must be nonempty")
        if not np.all(np.isfinite(pts)):
            raise GeometryValidationError("point cloud coordinates must be finite")
        object.__setattr__(self, "points", greedy_thin(pts, DEDUP_TOL))

    @classmethod
    def of(cls, *points):
        return cls(np.asarray(points, dtype=float))

    @property
    def size(self):
        return len(self.points)

    @property
    def dim(self):
        return self.points.shape[1]

    def distance_to(self, x):
        """Distance from each query point to this cloud (min over members)."""
        q = np.atleast_2d(np.asarray(x, dtype=float))
        if q.shape[1] != self.dim:
            raise DimensionMismatchError(self.dim, q.shape[1], "query points")
        return cdist(q, self.points).min(axis=1)

    def sample_points(self):
        """Finite stand-in used by checks that need concrete points of the set."""
        return self.points

    def to_list(self):
        return [[float(c) for c in p] for p in self.points]
