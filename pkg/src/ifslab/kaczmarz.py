"""The Kaczmarz projection method viewed as a nonexpansive IFS on the row
hyperplanes of a linear system.

A consistent system converges to a solution; an inconsistent one never
converges and instead carries an omega estimate of the late orbit, the set the
row projections keep revisiting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DriverExhaustedError, GeometryValidationError
from .geometry import Hyperplane, as_vector
from .ifs import IFSystem, HyperplaneProjection, Orbit
from .omega import OmegaEstimate, describe_driver, estimate_omega

MIN_ROW_NORM = 1e-12

# Normals count as parallel when their unit vectors differ (up to sign) by
# less than this.
PARALLEL_ANGLE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """Rows ``a_i . x = b_i`` with nonzero coefficient vectors."""

    coefficients: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.coefficients, dtype=float))
        b = np.atleast_1d(np.asarray(self.rhs, dtype=float))
        if a.ndim != 2 or len(a) == 0 or a.shape[1] == 0:
            raise GeometryValidationError(f"coefficients need shape (m, d), got {a.shape}")
        if b.shape != (len(a),):
            raise GeometryValidationError("need exactly one right-hand side per row")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise GeometryValidationError("system entries must be finite")
        norms = np.linalg.norm(a, axis=1)
        if np.any(norms < MIN_ROW_NORM):
            raise GeometryValidationError("zero row in linear system")
        object.__setattr__(self, "coefficients", a)
        object.__setattr__(self, "rhs", b)

    @classmethod
    def from_rows(cls, rows):
        """Build from ``[(a_1, b_1), ...]`` pairs."""
        return cls(np.asarray([a for a, _ in rows], dtype=float),
                   np.asarray([b for _, b in rows], dtype=float))

    @property
    def dim(self):
        return self.coefficients.shape[1]

    @property
    def n_rows(self):
        return len(self.coefficients)

    def row_hyperplane(self, row):
        """Hyperplane of the 1-based row index."""
        if not 1 <= row <= self.n_rows:
            raise GeometryValidationError(f"row {row} outside 1..{self.n_rows}")
        return Hyperplane(self.coefficients[row - 1], self.rhs[row - 1])

    def residual(self, x):
        """Row-normalized max violation: ``max_i |a_i . x - b_i| / |a_i|``."""
        x = as_vector(x, dim=self.dim)
        norms = np.linalg.norm(self.coefficients, axis=1)
        return float(np.max(np.abs(self.coefficients @ x - self.rhs) / norms))


def system_to_ifs(system):
    """One hyperplane projection per row, row order preserved."""
    maps = tuple(HyperplaneProjection(system.row_hyperplane(i + 1))
                 for i in range(system.n_rows))
    return IFSystem(maps, system.dim)


@dataclass(frozen=True, eq=False)
class SolveReport:
    final_point: np.ndarray
    residual: float
    iterations: int
    converged: bool
    max_norm: float
    tol: float
    max_iter: int
    driver: object
    omega: OmegaEstimate = None  # populated when the run stopped at max_iter
    orbit: Orbit = None

    def to_dict(self):
        return {
            "final_point": [float(c) for c in self.final_point],
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "max_norm": self.max_norm,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "driver": describe_driver(self.driver),
            "omega": self.omega.to_dict() if self.omega is not None else None,
        }


def solve(system, driver, tol, max_iter, x0=None, chunk=4096):
    """Project onto row hyperplanes in driver order until the row-normalized
    residual drops to ``tol`` or ``max_iter`` steps have run.

    A run stopped at ``max_iter`` gets an omega estimate of the final 20% of
    its orbit with ``cluster_eps = max(tol, 1e-9)``.
    """
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    if max_iter < 1:
        raise ValueError("need at least one iteration")
    ifs_system = system_to_ifs(system)
    steps = ifs_system.steppers()
    x = np.zeros(system.dim) if x0 is None else as_vector(x0, dim=system.dim)

    norms = np.linalg.norm(system.coefficients, axis=1)
    a_unit = system.coefficients / norms[:, None]
    b_unit = system.rhs / norms

    pts = np.empty((max_iter + 1, system.dim))
    pts[0] = x
    symbols = np.empty(max_iter, dtype=np.int64)

    res = float(np.max(np.abs(a_unit @ x - b_unit)))
    converged = res <= tol
    if hasattr(driver, "stream"):
        stream, preset = driver.stream(), None
    else:
        stream = None
        preset = np.asarray(list(itertools.islice(iter(driver), max_iter)), dtype=np.int64)
    k = 0
    while not converged and k < max_iter:
        want = min(chunk, max_iter - k)
        if stream is not None:
            block = np.asarray(stream.take_upto(want), dtype=np.int64)
        else:
            block = preset[k:k + want]
        if len(block) == 0:
            raise DriverExhaustedError(f"driver exhausted after {k} of {max_iter} steps")
        if block.min() < 1 or block.max() > system.n_rows:
            bad = block[(block < 1) | (block > system.n_rows)][0]
            raise GeometryValidationError(f"driver symbol {bad} outside 1..{system.n_rows}")
        for s in block:
            x = steps[s - 1](pts[k])
            pts[k + 1] = x
            symbols[k] = s
            k += 1
            res = float(np.max(np.abs(a_unit @ x - b_unit)))
            if res <= tol:
                converged = True
                break
        if not converged and len(block) < want:
            raise DriverExhaustedError(f"driver exhausted after {k} of {max_iter} steps")

    orbit = Orbit(pts[:k + 1], symbols[:k])
    max_norm = float(np.linalg.norm(orbit.points, axis=1).max())
    omega = None
    if not converged:
        n_pts = len(orbit.points)
        burn_in = (4 * n_pts) // 5
        omega = estimate_omega(orbit, burn_in=burn_in,
                               cluster_eps=max(tol, 1e-9), driver=driver)
    return SolveReport(
        final_point=orbit.points[-1].copy(),
        residual=res,
        iterations=k,
        converged=converged,
        max_norm=max_norm,
        tol=float(tol),
        max_iter=int(max_iter),
        driver=driver,
        omega=omega,
        orbit=orbit,
    )


def gap_between(system, row_i, row_j):
    """Infimum distance between two row hyperplanes: zero unless the normals
    are parallel, then the offset difference along the common normal."""
    hi = system.row_hyperplane(row_i)
    hj = system.row_hyperplane(row_j)
    u = hi.normal / np.linalg.norm(hi.normal)
    v = hj.normal / np.linalg.norm(hj.normal)
    sign = 1.0 if float(u @ v) >= 0.0 else -1.0
    if float(np.linalg.norm(u - sign * v)) > PARALLEL_ANGLE_TOL:
        return 0.0
    ci = hi.offset / np.linalg.norm(hi.normal)
    cj = hj.offset / np.linalg.norm(hj.normal)
    return float(abs(ci - sign * cj))
