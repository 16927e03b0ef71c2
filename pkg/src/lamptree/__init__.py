"""Lamplighter random walks over homogeneous trees."""
from .tree import (
    ROOT,
    EndPrefix,
    FreeProductSignature,
    TreeVertex,
    UnresolvedAtDepth,
    format_vertex,
    geodesic,
    gromov_product,
    parse_vertex,
    rho,
    steiner_tour_length,
    subtree_member,
    tree_distance,
)
from .wreath import BoundaryPoint, Configuration, GroupElement, LamplighterGroup
from .walk import (
    MeasureSpec,
    TreeMeasure,
    basic_walk,
    bounded_range,
    first_moment,
    lazy_tree_walk,
    point_mass,
    project_measure,
    run_trajectory,
)
from .boundary import (
    CylinderEvent,
    StripQuery,
    build_strip_point,
    cylinder_events,
    detect_convergence,
    escape_rates,
    estimate_harmonic_measure,
    strip_points_in_ball,
    verify_strip_equivariance,
)
from .potential import (
    BoundaryFunction,
    dirichlet_boundary_convergence,
    dirichlet_estimate,
    estimate_green,
    green_decay_profile,
    mean_value_residual,
)

__version__ = "0.1.0"
