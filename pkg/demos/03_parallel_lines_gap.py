"""Projections onto two parallel lines: the inconsistent case.

With empty intersection there is nothing to converge to. The orbit settles
into a two-point cycle instead, and those two points are exactly the nearest
pair realizing the gap between the lines. The same run through the Kaczmarz
surface reports non-convergence and attaches the omega estimate.
"""

import numpy as np

from ifslab import (
    Cyclic,
    LinearSystem,
    estimate_omega,
    gap_between,
    project_hyperplane,
    solve,
    system_to_ifs,
    run_orbit,
)

# rows y = 0 and y = 1: a 2x2 system with no solution
system = LinearSystem([[0, 1], [0, 1]], [0, 1])
print(f"gap between the rows: {gap_between(system, 1, 2)}")

orbit = run_orbit(system_to_ifs(system), [0.0, 0.3], Cyclic((1, 2)), 100)
est = estimate_omega(orbit, burn_in=10, cluster_eps=1e-6)
print(f"omega representatives: {est.representatives.points.tolist()}")

p, q = est.representatives.points
h1, h2 = system.row_hyperplane(1), system.row_hyperplane(2)
print(f"p projected onto the other line gives q: "
      f"{np.allclose(project_hyperplane(p, h2), q) or np.allclose(project_hyperplane(p, h1), q)}")

report = solve(system, Cyclic((1, 2)), tol=1e-9, max_iter=200, x0=[0.0, 0.3])
print(f"\nkaczmarz solve: converged={report.converged} "
      f"residual={report.residual:.3f} (points on one line stay a full gap "
      f"away from the other)")
print(f"attached omega: {report.omega.representatives.points.tolist()}")

# The omega set follows the start here: no composition word contracts, so the
# theory's uniqueness hypotheses fail, and they are genuinely needed.
shifted = run_orbit(system_to_ifs(system), [5.0, 0.3], Cyclic((1, 2)), 100)
est_shifted = estimate_omega(shifted, burn_in=10, cluster_eps=1e-6)
print(f"\nsame run started at (5, 0.3): {est_shifted.representatives.points.tolist()}")
