"""Cut times of simple random walk on quasi-transitive graphs.

Thin Python surface over the C++ core: graph families, walk simulation,
cut-time/cutpoint detection, exact heat-kernel quantities, orbit-chain
machinery, and the config-driven experiment runner.
"""

from ._cutwalk import (
    CapacityError,
    ConfigError,
    FamilyMismatchError,
    GraphFamilySpec,
    InvalidVertexError,
    OrbitDeclarationError,
    RefusalError,
    brute_force_cut_times,
    estimate_g,
    expected_intersections_truncated,
    horizon_cut_times,
    horizon_cutpoints,
    intersections,
    orbit_transition_matrix,
    pn_sequence,
    run_experiment_text,
    simulate_srw,
    volume_growth_degree,
)

__all__ = [
    "CapacityError",
    "ConfigError",
    "FamilyMismatchError",
    "GraphFamilySpec",
    "InvalidVertexError",
    "OrbitDeclarationError",
    "RefusalError",
    "brute_force_cut_times",
    "estimate_g",
    "expected_intersections_truncated",
    "horizon_cut_times",
    "horizon_cutpoints",
    "intersections",
    "orbit_transition_matrix",
    "pn_sequence",
    "run_experiment_text",
    "simulate_srw",
    "volume_growth_degree",
]
