"""Euclidean primitives: hyperplanes, affine subspaces, simple convex bodies,
and their metric projections.

Everything works on float64 numpy arrays. Projection functions accept a
single point of shape ``(d,)`` or a stack of points of shape ``(k, d)`` and
return the matching shape. All functions are pure; the geometric objects are
immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, GeometryValidationError

# Normals shorter than this are rejected at construction time, so projections
# never have to handle a degenerate direction.
MIN_NORMAL_NORM = 1e-12

# Basis rows of an AffineSubspace must satisfy |<e_i, e_j> - delta_ij| below this.
ORTHONORMAL_TOL = 1e-10

# Gram-Schmidt drops an input whose residual after deflation is below this.
DEPENDENT_RESIDUAL_TOL = 1e-10


def as_vector(x, dim=None, what="vector"):
    """Coerce to a finite 1-d float64 array, optionally checking its dimension."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise GeometryValidationError(f"{what}: expected a 1-d coordinate array, got shape {v.shape}")
    if v.shape[0] == 0:
        raise GeometryValidationError(f"{what}: dimension must be positive")
    if not np.all(np.isfinite(v)):
        raise GeometryValidationError(f"{what}: coordinates must be finite")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatchError(dim, v.shape[0], what)
    return v


def _as_points(x, dim, what="point"):
    """Coerce to ``(d,)`` or ``(k, d)`` float64 with the expected dimension."""
    p = np.asarray(x, dtype=float)
    if p.ndim not in (1, 2):
        raise GeometryValidationError(f"{what}: expected shape (d,) or (k, d), got {p.shape}")
    if p.shape[-1] != dim:
        raise DimensionMismatchError(dim, p.shape[-1], what)
    if not np.all(np.isfinite(p)):
        raise GeometryValidationError(f"{what}: coordinates must be finite")
    return p


def distance(x, y):
    """Euclidean distance between two points of the same dimension."""
    a = as_vector(x)
    b = as_vector(y, dim=a.shape[0])
    return float(np.linalg.norm(a - b))


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """The set ``{x : normal . x = offset}``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = as_vector(self.normal, what="hyperplane normal")
        if float(np.linalg.norm(n)) < MIN_NORMAL_NORM:
            raise GeometryValidationError("hyperplane normal is numerically zero")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def dim(self):
        return self.normal.shape[0]


@dataclass(frozen=True, eq=False)
class AffineSubspace:
    """``anchor + span(rows of basis)`` with orthonormal basis rows.

    An empty basis (shape ``(0, d)``) denotes the single point ``anchor``.
    """

    anchor: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        a = as_vector(self.anchor, what="subspace anchor")
        b = np.asarray(self.basis, dtype=float)
        if b.size == 0:
            b = b.reshape(0, a.shape[0])
        if b.ndim != 2 or b.shape[1] != a.shape[0]:
            raise DimensionMismatchError(a.shape[0], b.shape[-1] if b.ndim else 0, "subspace basis")
        if not np.all(np.isfinite(b)):
            raise GeometryValidationError("subspace basis must be finite")
        gram = b @ b.T
        if gram.size and np.max(np.abs(gram - np.eye(b.shape[0]))) > ORTHONORMAL_TOL:
            raise GeometryValidationError("subspace basis rows are not orthonormal")
        object.__setattr__(self, "anchor", a)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self):
        return self.anchor.shape[0]

    @classmethod
    def single_point(cls, point):
        p = as_vector(point)
        return cls(p, np.empty((0, p.shape[0])))

    @classmethod
    def spanned_by(cls, anchor, directions):
        """Subspace through ``anchor`` spanned by raw (possibly dependent)
        directions; no directions means the single point ``anchor``."""
        a = as_vector(anchor)
        directions = list(directions)
        ortho = orthonormalize([as_vector(v, dim=a.shape[0]) for v in directions]) \
            if directions else []
        basis = np.asarray(ortho) if ortho else np.empty((0, a.shape[0]))
        return cls(a, basis)

    @classmethod
    def from_constraints(cls, normals, offsets):
        """Solution set of the stack ``normals @ x = offsets``.

        The constraints must be consistent; the basis is the orthonormal
        complement of the span of the normals.
        """
        A = np.atleast_2d(np.asarray(normals, dtype=float))
        b = np.atleast_1d(np.asarray(offsets, dtype=float))
        if A.shape[0] != b.shape[0]:
            raise GeometryValidationError("constraint count mismatch between normals and offsets")
        x0, *_ = np.linalg.lstsq(A, b, rcond=None)
        if np.linalg.norm(A @ x0 - b) > 1e-9 * (1.0 + np.linalg.norm(b)):
            raise GeometryValidationError("inconsistent constraint stack")
        u, s, vt = np.linalg.svd(A)
        rank = int(np.sum(s > max(A.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)))
        return cls(x0, vt[rank:])


@dataclass(frozen=True, eq=False)
class Halfspace:
    """The set ``{x : normal . x <= offset}``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = as_vector(self.normal, what="halfspace normal")
        if float(np.linalg.norm(n)) < MIN_NORMAL_NORM:
            raise GeometryValidationError("halfspace normal is numerically zero")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def dim(self):
        return self.normal.shape[0]


@dataclass(frozen=True, eq=False)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = as_vector(self.center, what="ball center")
        r = float(self.radius)
        if not (r > 0.0 and np.isfinite(r)):
            raise GeometryValidationError("ball radius must be positive and finite")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)

    @property
    def dim(self):
        return self.center.shape[0]


@dataclass(frozen=True, eq=False)
class Box:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = as_vector(self.lower, what="box lower corner")
        hi = as_vector(self.upper, dim=lo.shape[0], what="box upper corner")
        if np.any(lo > hi):
            raise GeometryValidationError("box lower corner exceeds upper corner")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self):
        return self.lower.shape[0]


#: Convex bodies accepted by :func:`project_convex`.
ConvexBody = (Halfspace, Ball, Box)


def project_hyperplane(x, plane):
    """Orthogonal projection onto a hyperplane: ``x - ((a.x - b)/|a|^2) a``."""
    p = _as_points(x, plane.dim)
    a = plane.normal
    t = (p @ a - plane.offset) / (a @ a)
    if p.ndim == 1:
        return p - t * a
    return p - t[:, None] * a


def project_affine_subspace(x, subspace):
    """Orthogonal projection onto an affine subspace given by point + orthonormal basis."""
    p = _as_points(x, subspace.dim)
    basis = subspace.basis
    if basis.shape[0] == 0:
        if p.ndim == 1:
            return subspace.anchor.copy()
        return np.broadcast_to(subspace.anchor, p.shape).copy()
    rel = p - subspace.anchor
    return subspace.anchor + (rel @ basis.T) @ basis


def project_convex(x, body):
    """Metric projection onto a halfspace, ball, or box."""
    p = _as_points(x, body.dim)
    if isinstance(body, Halfspace):
        a = body.normal
        t = (p @ a - body.offset) / (a @ a)
        t = np.maximum(t, 0.0)
        if p.ndim == 1:
            return p - t * a
        return p - t[:, None] * a
    if isinstance(body, Ball):
        rel = p - body.center
        dist = np.linalg.norm(rel, axis=-1)
        scale = np.ones_like(dist)
        outside = dist > body.radius
        np.divide(body.radius, dist, out=scale, where=outside)
        if p.ndim == 1:
            return body.center + float(scale) * rel
        return body.center + scale[:, None] * rel
    if isinstance(body, Box):
        return np.clip(p, body.lower, body.upper)
    raise GeometryValidationError(f"not a convex body: {type(body).__name__}")


def orthonormalize(vectors):
    """Gram-Schmidt with deflation; drops inputs dependent on earlier ones.

    Returns a list of pairwise orthonormal vectors spanning the same subspace
    as the input. Dependence is detected by a residual norm below
    ``DEPENDENT_RESIDUAL_TOL`` after (repeated) deflation.
    """
    vecs = list(vectors)
    if not vecs:
        raise GeometryValidationError("orthonormalize needs a nonempty list")
    dim = as_vector(vecs[0]).shape[0]
    out = []
    for v in vecs:
        w = as_vector(v, dim=dim).copy()
        # Two deflation passes keep the result orthonormal well below tolerance.
        for _ in range(2):
            for q in out:
                w -= (q @ w) * q
        nrm = float(np.linalg.norm(w))
        if nrm < DEPENDENT_RESIDUAL_TOL:
            continue
        out.append(w / nrm)
    return out
