#include "cutwalk/walk.hpp"

#include <ostream>

namespace cutwalk {

Trajectory simulate_srw(const GraphFamilySpec& spec, const VertexKey& start, std::size_t steps,
                        const RngStream& stream) {
    spec.require_valid(start);
    Trajectory traj;
    traj.spec = spec;
    traj.vertices.reserve(steps + 1);
    traj.vertices.push_back(start);

    CounterRng rng(stream);
    VertexKey cur = start;
    // Stepping preserves key validity, so the per-step degree is computed
    // directly instead of going through the validating public accessor
    // (free-group validation is O(word length), which would make long walks
    // quadratic).
    const FamilyKind kind = spec.kind();
    const int flat_degree = (kind == FamilyKind::Lattice)     ? 2 * spec.lattice_dim()
                            : (kind == FamilyKind::Heisenberg) ? 4
                            : (kind == FamilyKind::FreeGroup)  ? 2 * spec.rank()
                                                               : -1;
    for (std::size_t s = 0; s < steps; ++s) {
        int deg = flat_degree;
        if (deg < 0) {
            const auto f = static_cast<int>(cur[spec.lattice_dim()]);
            deg = 2 * spec.lattice_dim() + static_cast<int>(spec.factor().adj[f].size());
        }
        const int pick = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(deg)));
        cur = spec.neighbor_at(cur, pick);
        traj.vertices.push_back(cur);
    }
    return traj;
}

TwoSidedTrajectory simulate_two_sided(const GraphFamilySpec& spec, const VertexKey& origin,
                                      std::size_t steps_each, const RngStream& stream) {
    TwoSidedTrajectory ts;
    ts.forward = simulate_srw(spec, origin, steps_each, stream.derive(1));
    ts.backward = simulate_srw(spec, origin, steps_each, stream.derive(2));
    return ts;
}

void write_trajectory(const Trajectory& traj, std::ostream& os) {
    for (const VertexKey& v : traj.vertices) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ' ';
            os << v[i];
        }
        os << '\n';
    }
}

}  // namespace cutwalk
