"""Kaczmarz iteration: consistent convergence, inconsistent omega structure,
hyperplane gaps, boundedness."""

import numpy as np
import pytest

from ifslab import (
    Custom,
    Cyclic,
    DriverExhaustedError,
    GeometryValidationError,
    IidRandom,
    LinearSystem,
    gap_between,
    project_hyperplane,
    solve,
    system_to_ifs,
)

PARALLEL_PAIR = LinearSystem([[0, 1], [0, 1]], [0, 1])  # y=0 and y=1


def seeded_well_conditioned_system(seed, n=20):
    # A = Q1 diag(1..5) Q2^T with rows normalized afterwards; stays well
    # conditioned and consistent by construction
    rng = np.random.Generator(np.random.Philox(seed))
    q1, _ = np.linalg.qr(rng.standard_normal((n, n)))
    q2, _ = np.linalg.qr(rng.standard_normal((n, n)))
    a = q1 @ np.diag(np.linspace(1.0, 5.0, n)) @ q2.T
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    x_true = rng.standard_normal(n)
    return LinearSystem(a, a @ x_true), x_true


def test_system_validation():
    with pytest.raises(GeometryValidationError):
        LinearSystem([[0.0, 0.0]], [1.0])
    with pytest.raises(GeometryValidationError):
        LinearSystem(np.empty((0, 2)), np.empty(0))


def test_system_to_ifs_maps_rows_in_order():
    sys_lin = LinearSystem([[1, 0], [0, 1], [1, 1]], [1, 2, 3])
    ifs_sys = system_to_ifs(sys_lin)
    assert ifs_sys.n_maps == 3 and ifs_sys.dim == 2
    for i in range(3):
        assert np.array_equal(ifs_sys.maps[i].plane.normal, sys_lin.coefficients[i])


def test_row_projection_onto_axis():
    sys_lin = LinearSystem([[0, 1]], [0])
    ifs_sys = system_to_ifs(sys_lin)
    assert np.allclose(ifs_sys.maps[0].apply([5.0, 3.0]), [5, 0])


def test_solve_orthogonal_system_converges_fast():
    report = solve(LinearSystem([[1, 0], [0, 1]], [1, 2]), Cyclic((1, 2)),
                   tol=1e-12, max_iter=100)
    assert report.converged
    assert report.iterations <= 3
    assert report.residual <= 1e-12
    assert np.allclose(report.final_point, [1, 2], atol=1e-12)
    assert report.omega is None


def test_solve_inconsistent_pair_recovers_gap_points():
    report = solve(PARALLEL_PAIR, Cyclic((1, 2)), tol=1e-9, max_iter=200,
                   x0=[0.0, 0.3])
    assert not report.converged
    assert report.omega is not None
    reps = report.omega.representatives.points
    assert len(reps) == 2
    p = reps[np.argmin(np.abs(reps[:, 1]))]      # the point on y=0
    q = reps[np.argmax(np.abs(reps[:, 1]))]      # the point on y=1
    assert abs(p[1] - 0.0) <= 1e-12 and abs(q[1] - 1.0) <= 1e-12
    gap = gap_between(PARALLEL_PAIR, 1, 2)
    assert gap == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.norm(p - q) == pytest.approx(gap, abs=1e-9)
    # mutual nearest-point pair
    h1 = PARALLEL_PAIR.row_hyperplane(1)
    h2 = PARALLEL_PAIR.row_hyperplane(2)
    assert np.linalg.norm(project_hyperplane(p, h2) - q) <= 1e-9
    assert np.linalg.norm(project_hyperplane(q, h1) - p) <= 1e-9


def test_solve_seeded_system_matches_direct_solver():
    sys_lin, _ = seeded_well_conditioned_system(2024, n=10)
    oracle = np.linalg.solve(sys_lin.coefficients, sys_lin.rhs)
    report = solve(sys_lin, IidRandom.uniform(7, 10), tol=1e-8, max_iter=100_000)
    assert report.converged
    assert np.linalg.norm(report.final_point - oracle) <= 1e-6
    assert np.linalg.cond(sys_lin.coefficients) <= 100


def test_converged_implies_residual_within_tol():
    for tol in (1e-4, 1e-8, 1e-12):
        report = solve(LinearSystem([[1, 0], [1, 1]], [1, 3]), Cyclic((1, 2)),
                       tol=tol, max_iter=10_000)
        assert report.converged
        assert report.residual <= tol


def test_solve_starts_at_origin_by_default():
    report = solve(PARALLEL_PAIR, Cyclic((1, 2)), tol=1e-9, max_iter=5)
    assert np.array_equal(report.orbit.points[0], [0.0, 0.0])
    shifted = solve(PARALLEL_PAIR, Cyclic((1, 2)), tol=1e-9, max_iter=5, x0=[4.0, 0.3])
    assert np.array_equal(shifted.orbit.points[0], [4.0, 0.3])
    # cyclic driver on parallel lines: omega follows the start (negative control)
    assert np.allclose(shifted.orbit.points[-1][0], 4.0)


def test_solve_zero_iterations_when_start_satisfies():
    report = solve(LinearSystem([[1, 0]], [0]), Cyclic((1,)), tol=1e-9, max_iter=10)
    assert report.converged and report.iterations == 0


def test_row_residual_is_zero_right_after_projection():
    sys_lin = LinearSystem([[1, 0], [1, 1], [0, 1]], [1, 2, 1])
    report = solve(sys_lin, Cyclic((1, 2, 3)), tol=1e-15, max_iter=50)
    norms = np.linalg.norm(sys_lin.coefficients, axis=1)
    for k, s in enumerate(report.orbit.symbols):
        x = report.orbit.points[k + 1]
        row_res = abs(sys_lin.coefficients[s - 1] @ x - sys_lin.rhs[s - 1]) / norms[s - 1]
        assert row_res <= 1e-12


def test_min_so_far_residual_is_nonincreasing():
    sys_lin, _ = seeded_well_conditioned_system(5, n=6)
    report = solve(sys_lin, IidRandom.uniform(3, 6), tol=1e-10, max_iter=5000)
    res = [sys_lin.residual(x) for x in report.orbit.points]
    best = np.minimum.accumulate(res)
    assert np.all(np.diff(best) <= 0.0)


def test_bounded_orbit_with_stabilizing_max():
    # three lines with empty common intersection
    sys_lin = LinearSystem([[0, 1], [0, 1], [1, 0]], [0, 1, 0])
    report = solve(sys_lin, IidRandom.uniform(17, 3), tol=1e-12, max_iter=10_000,
                   x0=[3.0, -2.0])
    assert not report.converged
    norms = np.linalg.norm(report.orbit.points, axis=1)
    # static bound: |x0| + 2 d(x0, H1) + sum of pairwise gaps + 10
    x0 = report.orbit.points[0]
    d0 = abs(x0[1])  # distance to H1 = {y=0}
    gaps = sum(gap_between(sys_lin, i, j)
               for i in range(1, 4) for j in range(i + 1, 4))
    assert report.max_norm <= np.linalg.norm(x0) + 2 * d0 + gaps + 10
    # the running max stabilizes: first half max equals full max
    half = norms[: len(norms) // 2].max()
    assert abs(half - norms.max()) <= 1e-6


def test_gap_between_examples():
    assert gap_between(PARALLEL_PAIR, 1, 2) == pytest.approx(1.0, abs=1e-12)
    crossing = LinearSystem([[1, 0], [0, 1]], [1, 2])
    assert gap_between(crossing, 1, 2) == 0.0
    scaled = LinearSystem([[0, 1], [0, 2]], [0, 0])  # y=0 twice
    assert gap_between(scaled, 1, 2) == 0.0
    antiparallel = LinearSystem([[0, 1], [0, -1]], [0, 1])  # y=0 and y=-1
    assert gap_between(antiparallel, 1, 2) == pytest.approx(1.0, abs=1e-12)


def test_solve_custom_driver_exhaustion():
    with pytest.raises(DriverExhaustedError):
        solve(PARALLEL_PAIR, Custom((1, 2, 1)), tol=1e-15, max_iter=10)


def test_solve_report_serializes():
    report = solve(PARALLEL_PAIR, Cyclic((1, 2)), tol=1e-9, max_iter=50)
    payload = report.to_dict()
    assert payload["converged"] is False
    assert payload["omega"] is not None
    assert payload["driver"]["kind"] == "Cyclic"
    import json
    json.dumps(payload)
