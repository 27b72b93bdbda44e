#pragma once

#include "cutwalk/graphs.hpp"
#include "cutwalk/rng.hpp"
#include "cutwalk/vertex_key.hpp"

#include <iosfwd>
#include <vector>

namespace cutwalk {

/// A finite walk path: N+1 vertices for an N-step walk, consecutive vertices
/// adjacent in the family graph. Immutable after generation.
struct Trajectory {
    GraphFamilySpec spec = GraphFamilySpec::lattice(1);
    std::vector<VertexKey> vertices;

    std::size_t steps() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Two independent SRW trajectories glued at a common origin; `forward`
/// carries indices j >= 0 of the two-sided walk and `backward` carries j <= 0
/// via backward.vertices[-j].
struct TwoSidedTrajectory {
    Trajectory forward;
    Trajectory backward;
};

/// Simple random walk: each step uniform over the neighbors of the current
/// vertex, chosen by index into the canonical neighbor ordering.
/// Deterministic given (spec, start, steps, stream).
Trajectory simulate_srw(const GraphFamilySpec& spec, const VertexKey& start, std::size_t steps,
                        const RngStream& stream);

/// Two independent one-sided SRWs from `origin`, generated from sub-streams
/// stream.derive(1) and stream.derive(2).
TwoSidedTrajectory simulate_two_sided(const GraphFamilySpec& spec, const VertexKey& origin,
                                      std::size_t steps_each, const RngStream& stream);

/// Debug dump: one vertex per line, coordinates as space-separated decimals.
void write_trajectory(const Trajectory& traj, std::ostream& os);

}  // namespace cutwalk
