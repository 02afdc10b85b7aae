"""Iterated function systems of nonexpansive generators: orbit evolution, the
Hutchinson operator on finite clouds, and Lipschitz diagnostics for
composition words.

Symbols are 1-based: the driver value ``i`` selects ``maps[i - 1]``. A word
``(u_1, ..., u_l)`` denotes the composition that applies ``u_1`` first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import geometry
from .clouds import PointCloud
from .errors import (
    DegenerateTreeError,
    DimensionMismatchError,
    DriverExhaustedError,
    EmptyCloudError,
    GeometryValidationError,
    SymbolRangeError,
)

# Affine generators may exceed spectral norm 1 by at most this much, absorbing
# rounding in user-supplied matrices.
NONEXPANSIVE_SLACK = 1e-9

# Pairs closer than this carry no usable Lipschitz quotient.
DEGENERATE_PAIR_TOL = 1e-12


def spectral_norm(matrix, tol=1e-12, max_iter=10000):
    """Largest singular value by power iteration on ``M^T M``.

    Deterministic: two fixed start vectors are tried and the larger Rayleigh
    estimate wins, which guards against a start orthogonal to the top singular
    space. The estimate never exceeds the true norm.
    """
    m = np.asarray(matrix, dtype=float)
    gram = m.T @ m
    d = gram.shape[0]
    best = 0.0
    for start in (np.ones(d), 1.0 + np.arange(d, dtype=float)):
        v = start / np.linalg.norm(start)
        prev = np.inf
        for _ in range(max_iter):
            w = gram @ v
            est = float(v @ w)
            nw = float(np.linalg.norm(w))
            if nw == 0.0:
                est = 0.0
                break
            v = w / nw
            if abs(est - prev) <= tol * max(1.0, abs(est)):
                break
            prev = est
        best = max(best, est)
    return float(np.sqrt(max(best, 0.0)))


@dataclass(frozen=True, eq=False)
class HyperplaneProjection:
    plane: geometry.Hyperplane

    @property
    def dim(self):
        return self.plane.dim

    def apply(self, x):
        return geometry.project_hyperplane(x, self.plane)

    def linear_part(self):
        a = self.plane.normal
        return np.eye(self.dim) - np.outer(a, a) / (a @ a)


@dataclass(frozen=True, eq=False)
class SubspaceProjection:
    subspace: geometry.AffineSubspace

    @property
    def dim(self):
        return self.subspace.dim

    def apply(self, x):
        return geometry.project_affine_subspace(x, self.subspace)

    def linear_part(self):
        basis = self.subspace.basis
        return basis.T @ basis


@dataclass(frozen=True, eq=False)
class ConvexProjection:
    body: object

    def __post_init__(self):
        if not isinstance(self.body, geometry.ConvexBody):
            raise GeometryValidationError(f"not a convex body: {type(self.body).__name__}")

    @property
    def dim(self):
        return self.body.dim

    def apply(self, x):
        return geometry.project_convex(x, self.body)

    def linear_part(self):
        # Metric projections onto general convex bodies are only piecewise
        # affine; there is no global linear part.
        return None


@dataclass(frozen=True, eq=False)
class AffineMap:
    """``x -> matrix @ x + shift`` with spectral norm of ``matrix`` at most
    ``1 + NONEXPANSIVE_SLACK`` (validated at construction)."""

    matrix: np.ndarray
    shift: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        s = geometry.as_vector(self.shift, what="affine shift")
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise GeometryValidationError(f"affine matrix must be square, got {m.shape}")
        if m.shape[0] != s.shape[0]:
            raise DimensionMismatchError(s.shape[0], m.shape[0], "affine matrix")
        if not np.all(np.isfinite(m)):
            raise GeometryValidationError("affine matrix must be finite")
        norm = spectral_norm(m)
        if norm > 1.0 + NONEXPANSIVE_SLACK:
            raise GeometryValidationError(
                f"affine map is expansive: spectral norm {norm:.12g} > 1"
            )
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "shift", s)

    @property
    def dim(self):
        return self.shift.shape[0]

    def apply(self, x):
        p = geometry._as_points(x, self.dim)
        if p.ndim == 1:
            return self.matrix @ p + self.shift
        return p @ self.matrix.T + self.shift

    def linear_part(self):
        return self.matrix


#: Generator variants accepted by IFSystem.
MapSpec = (HyperplaneProjection, SubspaceProjection, ConvexProjection, AffineMap)


def _compile_step(map_spec):
    """Single-point stepper mirroring the arithmetic of ``map_spec.apply`` so
    orbit points match the public projection functions bit for bit."""
    if isinstance(map_spec, HyperplaneProjection):
        a = map_spec.plane.normal
        b = map_spec.plane.offset
        aa = a @ a

        def step(v, a=a, b=b, aa=aa):
            return v - ((v @ a - b) / aa) * a

        return step
    if isinstance(map_spec, SubspaceProjection):
        anchor = map_spec.subspace.anchor
        basis = map_spec.subspace.basis
        if basis.shape[0] == 0:
            return lambda v, anchor=anchor: anchor.copy()

        def step(v, anchor=anchor, basis=basis):
            rel = v - anchor
            return anchor + (rel @ basis.T) @ basis

        return step
    if isinstance(map_spec, AffineMap):
        m = map_spec.matrix
        c = map_spec.shift
        return lambda v, m=m, c=c: m @ v + c
    body = map_spec.body
    return lambda v, body=body: geometry.project_convex(v, body)


@dataclass(frozen=True, eq=False)
class IFSystem:
    """A finite tuple of nonexpansive generators acting on R^dim."""

    maps: tuple
    dim: int

    def __post_init__(self):
        maps = tuple(self.maps)
        if len(maps) == 0:
            raise GeometryValidationError("an IFS needs at least one generator")
        for k, m in enumerate(maps):
            if not isinstance(m, MapSpec):
                raise GeometryValidationError(f"map {k + 1} is not a generator: {type(m).__name__}")
            if m.dim != self.dim:
                raise DimensionMismatchError(self.dim, m.dim, f"map {k + 1}")
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "dim", int(self.dim))

    @property
    def n_maps(self):
        return len(self.maps)

    def map_for(self, symbol):
        if not 1 <= symbol <= self.n_maps:
            raise SymbolRangeError(symbol, self.n_maps)
        return self.maps[symbol - 1]

    def steppers(self):
        cached = getattr(self, "_steppers", None)
        if cached is None:
            cached = tuple(_compile_step(m) for m in self.maps)
            object.__setattr__(self, "_steppers", cached)
        return cached


@dataclass(frozen=True, eq=False)
class Orbit:
    """Points ``x_0 .. x_n`` together with the driving symbols ``i_1 .. i_n``
    that produced them (``points[k+1] = f_{symbols[k]}(points[k])``)."""

    points: np.ndarray
    symbols: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        syms = np.asarray(self.symbols, dtype=np.int64)
        if pts.ndim != 2 or len(pts) == 0:
            raise GeometryValidationError(f"orbit points need shape (n+1, d), got {pts.shape}")
        if syms.ndim != 1 or len(syms) != len(pts) - 1:
            raise GeometryValidationError("orbit needs exactly one symbol per step")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "symbols", syms)

    @property
    def n_steps(self):
        return len(self.symbols)

    @property
    def dim(self):
        return self.points.shape[1]

    @property
    def x0(self):
        return self.points[0]

    def tail(self, burn_in):
        return self.points[burn_in:]


def symbols_from(driver, n, n_symbols):
    """Materialize ``n`` symbols from a driver spec, stream, or plain sequence."""
    if hasattr(driver, "stream"):
        driver = driver.stream()
    if hasattr(driver, "take"):
        syms = driver.take(n)
    else:
        syms = np.asarray(list(itertools.islice(iter(driver), n)), dtype=np.int64)
        if len(syms) < n:
            raise DriverExhaustedError(f"driver supplied {len(syms)} of {n} requested symbols")
    syms = np.asarray(syms, dtype=np.int64)
    if len(syms) and (syms.min() < 1 or syms.max() > n_symbols):
        bad = syms[(syms < 1) | (syms > n_symbols)][0]
        raise SymbolRangeError(int(bad), n_symbols)
    return syms


def apply_map(system, symbol, x):
    """One step ``f_symbol(x)`` of the system."""
    return system.map_for(symbol).apply(geometry.as_vector(x, dim=system.dim))


def run_orbit(system, x0, driver, n):
    """Iterate the system for ``n`` steps from ``x0`` under the given driver.

    Deterministic: repeated calls with equal inputs reproduce the points bit
    for bit.
    """
    start = geometry.as_vector(x0, dim=system.dim)
    if n < 0:
        raise ValueError("step count must be nonnegative")
    syms = symbols_from(driver, n, system.n_maps)
    steps = system.steppers()
    pts = np.empty((n + 1, system.dim))
    pts[0] = start
    for k in range(n):
        pts[k + 1] = steps[syms[k] - 1](pts[k])
    return Orbit(pts, syms)


def hutchinson(system, cloud):
    """One application of ``S -> union_i f_i(S)`` on a finite cloud.

    Exact duplicates (within the cloud merge tolerance) are merged; no closure
    is taken.
    """
    pts = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise EmptyCloudError("hutchinson needs a nonempty cloud")
    if pts.shape[1] != system.dim:
        raise DimensionMismatchError(system.dim, pts.shape[1], "cloud")
    images = np.vstack([m.apply(pts) for m in system.maps])
    return PointCloud(images)


def validate_word(system, word):
    syms = [int(u) for u in word]
    if not syms:
        raise ValueError("composition word must be nonempty")
    for u in syms:
        if not 1 <= u <= system.n_maps:
            raise SymbolRangeError(u, system.n_maps)
    return syms


def composition_lipschitz_exact(system, word):
    """Spectral norm of the linear part of ``f_w = f_{u_l} o ... o f_{u_1}``.

    Returns ``None`` when some map along the word is a general convex-body
    projection, which has no global linear part.
    """
    syms = validate_word(system, word)
    m = np.eye(system.dim)
    for u in syms:
        lin = system.maps[u - 1].linear_part()
        if lin is None:
            return None
        m = lin @ m
    return spectral_norm(m, tol=1e-12, max_iter=10000)


def composition_lipschitz_on_tree(system, word, x0, depth, samples, seed):
    """Sampled lower bound for the Lipschitz constant of ``f_w`` restricted to
    the orbit tree ``union_n Phi^n({x0})``.

    Pairs of tree nodes are drawn by picking random words of length at most
    ``depth`` (deterministically from ``seed``); the returned value is the
    largest quotient ``d(f_w(p), f_w(q)) / d(p, q)`` over sampled pairs, pairs
    closer than ``DEGENERATE_PAIR_TOL`` being skipped. Raises
    :class:`DegenerateTreeError` when every sampled pair collapses.
    """
    syms = validate_word(system, word)
    start = geometry.as_vector(x0, dim=system.dim)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if samples < 2:
        raise ValueError("need at least 2 sampled pairs")

    # Deterministic sample plan first, evaluation second, so the result does
    # not depend on evaluation order.
    rng = np.random.Generator(np.random.Philox(seed))
    n_nodes = 2 * samples
    lengths = rng.integers(0, depth + 1, size=n_nodes)
    choices = rng.integers(1, system.n_maps + 1, size=(n_nodes, max(depth, 1)))

    steps = system.steppers()
    nodes = np.empty((n_nodes, system.dim))
    for j in range(n_nodes):
        v = start
        for u in choices[j, : lengths[j]]:
            v = steps[u - 1](v)
        nodes[j] = v

    def f_w(v):
        for u in syms:
            v = steps[u - 1](v)
        return v

    best = None
    for j in range(samples):
        p, q = nodes[2 * j], nodes[2 * j + 1]
        gap = float(np.linalg.norm(p - q))
        if gap < DEGENERATE_PAIR_TOL:
            continue
        quot = float(np.linalg.norm(f_w(p) - f_w(q))) / gap
        best = quot if best is None else max(best, quot)
    if best is None:
        raise DegenerateTreeError(samples)
    return best
