#pragma once

#include "cutwalk/graphs.hpp"
#include "cutwalk/rng.hpp"
#include "cutwalk/walk.hpp"

#include <cstdint>
#include <vector>

namespace cutwalk {

/// The induced Markov chain on orbit labels: p_{i,j} = fraction of neighbors
/// of any representative of orbit i that lie in orbit j. Well-defined because
/// the neighbor orbit profile is constant on each orbit; the constructor
/// validates this on >= 5 representatives per orbit with exact counts.
struct OrbitChain {
    int k = 0;
    std::vector<std::vector<double>> matrix;                   // row-stochastic
    std::vector<std::vector<std::int64_t>> neighbor_counts;    // exact counts per row
    std::vector<int> row_degree;                               // representative degree
    std::vector<VertexKey> representatives;                    // lex-smallest per orbit
};

OrbitChain orbit_transition_matrix(const GraphFamilySpec& spec);

/// Reachability check on the support digraph of the matrix.
bool is_irreducible(const OrbitChain& chain);

/// Stationary vector by power iteration to max-residual <= tol. The chains
/// built here always have a positive diagonal (lattice moves stay in orbit),
/// so plain iteration converges.
std::vector<double> stationary_distribution(const OrbitChain& chain, double tol = 1e-12,
                                            int max_iter = 1000000);

/// Stopping times tau_0 < tau_1 < ... : all indices r with
/// orbit_of(S_r) = target within the horizon.
std::vector<std::size_t> tau_times(const Trajectory& traj, int target_orbit);

/// Visit counts per orbit; sums to N+1.
std::vector<std::uint64_t> orbit_visit_counts(const Trajectory& traj);

/// Horizon-T upper-bound estimate of the non-intersection probability
/// g(o) = P[S^1_i != S^2_j for all (0,0) < (i,j)]: the fraction of
/// independent walk pairs from the orbit representative with no coincidence
/// pair other than (0,0) up to (T,T). Non-increasing in T by event
/// containment; standard_error is the Wilson 95% half-width.
struct GEstimate {
    int orbit = 0;
    std::size_t horizon = 0;
    std::uint64_t replicates = 0;
    std::uint64_t nonintersecting = 0;
    double ghat = 0.0;
    double standard_error = 0.0;
};

GEstimate estimate_g(const GraphFamilySpec& spec, int orbit, std::size_t horizon,
                     std::uint64_t replicates, const RngStream& stream, int workers = 1);

/// First index pair (by max(i,j)) at which two walks from the same origin
/// coincide beyond (0,0); SIZE_MAX when they never do within the horizon.
/// estimate_g at horizon T counts a pair as non-intersecting iff this
/// exceeds T.
std::size_t first_intersection_scale(const Trajectory& fwd, const Trajectory& bwd);

/// Orbit with maximal ghat; ties broken by lowest orbit index. Requires one
/// estimate per orbit with a common horizon and replicate count.
int select_star_orbit(const std::vector<GEstimate>& estimates);

}  // namespace cutwalk
