#pragma once

#include "cutwalk/errors.hpp"
#include "cutwalk/vertex_key.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cutwalk {

/// A connected finite graph used as the second factor of the
/// lattice-cross-finite family, together with declared structural classes.
/// The classes are supplied by construction; orbit-consistency tests validate
/// that degree and neighbor-class profiles are constant on each class.
struct FiniteFactor {
    std::string name;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists
    std::vector<int> vertex_class;      // declared class per vertex, in [0, class_count)
    int class_count = 0;

    static FiniteFactor path(int m);
    static FiniteFactor cycle(int m);
    static FiniteFactor complete(int m);
    static FiniteFactor custom(std::vector<std::pair<int, int>> edges,
                               std::vector<int> classes);

    int size() const { return static_cast<int>(adj.size()); }
    int diameter() const;
    /// Throws ConfigError unless symmetric, connected, loop-free, and the
    /// class labels form a contiguous partition 0..class_count-1.
    void validate() const;
};

enum class FamilyKind { Lattice, Heisenberg, LatticeCrossFinite, FreeGroup };

/// Declarative description of a concrete locally finite, connected,
/// quasi-transitive infinite graph with orbit labels known by construction.
///
/// Built-in families:
///   lattice(d)                     Z^d, degree 2d, one orbit
///   heisenberg                     discrete Heisenberg group, degree 4, one orbit,
///                                  group law (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')
///   lattice_cross_finite(d, F)     Z^d x F, orbits = declared classes of F
///   free_group(r)                  free group of rank r >= 2, degree 2r, one orbit
class GraphFamilySpec {
public:
    static GraphFamilySpec lattice(int dim);
    static GraphFamilySpec heisenberg();
    static GraphFamilySpec lattice_cross_finite(int dim, FiniteFactor factor);
    static GraphFamilySpec free_group(int rank);

    FamilyKind kind() const { return kind_; }
    int lattice_dim() const { return dim_; }
    int rank() const { return rank_; }
    const FiniteFactor& factor() const { return factor_; }
    const VertexKey& origin() const { return origin_; }
    std::string name() const;

    /// Number of automorphism orbits k (declared, finite by construction).
    int orbit_count() const;
    /// d = max_v deg(v), finite by local finiteness.
    int max_degree() const;
    /// Polynomial volume-growth degree D when the family has one; nullopt for
    /// super-polynomial growth (free groups).
    std::optional<int> growth_degree() const;

    bool same_family(const GraphFamilySpec& other) const;

    bool is_valid_key(const VertexKey& v) const;
    void require_valid(const VertexKey& v) const;

    int degree(const VertexKey& v) const;
    /// The i-th neighbor in the fixed canonical ordering, 0 <= i < degree(v).
    /// O(1) for every family; the ordering is stable across platforms so
    /// replays of recorded step indices reproduce trajectories exactly.
    VertexKey neighbor_at(const VertexKey& v, int i) const;
    std::vector<VertexKey> neighbors(const VertexKey& v) const;
    void neighbors_into(const VertexKey& v, std::vector<VertexKey>& out) const;

    int orbit_of(const VertexKey& v) const;

    /// |B(center, n)| by leveled breadth-first search. Keeps only three
    /// consecutive spheres, so memory is O(max sphere), not O(ball). Throws
    /// CapacityError when the ball exceeds `max_vertices`.
    std::uint64_t ball_size(const VertexKey& center, int n,
                            std::uint64_t max_vertices = kDefaultBallCapacity) const;

    /// |B(center, k)| for every k = 0..n from one BFS sweep.
    std::vector<std::uint64_t> ball_profile(const VertexKey& center, int n,
                                            std::uint64_t max_vertices = kDefaultBallCapacity) const;

    /// One deterministic representative per orbit: the lexicographically
    /// smallest key within the finite-factor diameter of the origin (the
    /// origin itself for single-orbit families).
    std::vector<VertexKey> orbit_representatives() const;

    /// Vertices of B(origin, radius), sorted; helper for representative
    /// sampling and orbit validation.
    std::vector<VertexKey> ball_vertices(const VertexKey& center, int radius,
                                         std::uint64_t max_vertices = kDefaultBallCapacity) const;

    static constexpr std::uint64_t kDefaultBallCapacity = 60'000'000;

private:
    GraphFamilySpec() = default;

    FamilyKind kind_ = FamilyKind::Lattice;
    int dim_ = 0;      // lattice dimension (Lattice, LatticeCrossFinite)
    int rank_ = 0;     // free-group rank
    FiniteFactor factor_;
    VertexKey origin_;
};

}  // namespace cutwalk
