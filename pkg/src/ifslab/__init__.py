"""ifslab: a numerical laboratory for nonexpansive iterated function systems.

Orbits of projection-type generators under controllable driving sequences,
omega-limit estimation, invariance and minimality checks, and the Kaczmarz
iteration as the motivating special case.
"""

from .clouds import PointCloud, greedy_thin
from .drivers import (
    Custom,
    Cyclic,
    DisjunctiveEnumeration,
    IidRandom,
    check_disjunctive,
    check_repetitive,
    enumeration_prefix_length,
    generate,
)
from .errors import (
    DegenerateTreeError,
    DimensionMismatchError,
    DriverExhaustedError,
    EmptyCloudError,
    GeometryValidationError,
    IfsLabError,
    SymbolRangeError,
)
from .geometry import (
    AffineSubspace,
    Ball,
    Box,
    Halfspace,
    Hyperplane,
    distance,
    orthonormalize,
    project_affine_subspace,
    project_convex,
    project_hyperplane,
)
from .ifs import (
    AffineMap,
    ConvexProjection,
    HyperplaneProjection,
    IFSystem,
    Orbit,
    SubspaceProjection,
    apply_map,
    composition_lipschitz_exact,
    composition_lipschitz_on_tree,
    hutchinson,
    run_orbit,
    spectral_norm,
)
from .kaczmarz import LinearSystem, SolveReport, gap_between, solve, system_to_ifs
from .omega import (
    OmegaEstimate,
    SegmentSet,
    check_invariance,
    check_minimality,
    check_monotone_distance,
    compare_omegas,
    directed_hausdorff_distance,
    estimate_omega,
    hausdorff,
)

__version__ = "0.1.0"
