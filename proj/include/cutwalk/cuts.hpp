#pragma once

#include "cutwalk/walk.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cutwalk {

/// Cut-time/cutpoint summary of one finite-horizon trajectory.
/// Every n in cut_times satisfies {S_0..S_n} ∩ {S_{n+1}..S_N} = ∅;
/// windowed_cut_times keeps only n <= N - W where W is the stability window
/// (near-horizon cut times may be falsified by returns after the horizon).
/// cutpoint_vertices excludes S_0 by convention.
struct CutReport {
    std::size_t horizon = 0;  // N
    std::vector<std::size_t> cut_times;
    std::vector<std::size_t> windowed_cut_times;
    std::vector<VertexKey> cutpoint_vertices;  // sorted
};

/// All n in [0, N-1] with {S_0..S_n} ∩ {S_{n+1}..S_N} = ∅, via a single pass
/// over a last-visit-time map: n qualifies iff max_{j<=n} last_visit(S_j) = n.
/// O(N) expected time, O(#distinct vertices) memory.
std::vector<std::size_t> horizon_cut_times(const Trajectory& traj);

/// Same contract by explicit prefix-set x suffix-scan emptiness check;
/// O(N^2) worst case, test oracle only.
std::vector<std::size_t> brute_force_cut_times(const Trajectory& traj);

/// Vertices (other than S_0) whose removal disconnects S_0 from S_N in
/// PATH(traj), the graph of visited vertices and traversed edges. Computed
/// from the block-cut tree of PATH: the separators of the pair (S_0, S_N)
/// are exactly the cut vertices strictly inside the tree path between them.
std::vector<VertexKey> horizon_cutpoints(const Trajectory& traj);

CutReport make_cut_report(const Trajectory& traj, std::size_t stability_window);

/// Finite-horizon loop-free times of a two-sided walk: j in [0, horizon) with
/// {S_n : -B <= n <= j} ∩ {S_n : j+1 <= n <= horizon} = ∅ where negative
/// indices read the backward walk and B = min(horizon, backward steps).
/// Requires forward steps >= horizon.
std::vector<std::size_t> loop_free_times(const TwoSidedTrajectory& ts, std::size_t horizon);

/// All coincidences of two trajectories from the same family.
/// pairs = {(i, j) : S1_i = S2_j}, R = |pairs|, and star_last is the set of
/// maximal pairs under the componentwise partial order (the *-last
/// intersections at this horizon; may contain several incomparable pairs).
struct IntersectionRecord {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // sorted (i, j)
    std::size_t R = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> star_last;  // sorted by i
};

IntersectionRecord intersections(const Trajectory& t1, const Trajectory& t2);

}  // namespace cutwalk
