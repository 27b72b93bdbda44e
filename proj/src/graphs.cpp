#include "cutwalk/graphs.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

namespace cutwalk {

// ---------------------------------------------------------------------------
// FiniteFactor
// ---------------------------------------------------------------------------

FiniteFactor FiniteFactor::path(int m) {
    if (m < 2) throw ConfigError("path factor needs at least 2 vertices");
    FiniteFactor f;
    f.name = "path" + std::to_string(m);
    f.adj.resize(m);
    for (int i = 0; i + 1 < m; ++i) {
        f.adj[i].push_back(i + 1);
        f.adj[i + 1].push_back(i);
    }
    for (auto& row : f.adj) std::sort(row.begin(), row.end());
    // classes by distance to the nearer endpoint; the path reflection swaps
    // mirror vertices, so this refines into true structural classes
    f.vertex_class.resize(m);
    int maxc = 0;
    for (int i = 0; i < m; ++i) {
        f.vertex_class[i] = std::min(i, m - 1 - i);
        maxc = std::max(maxc, f.vertex_class[i]);
    }
    f.class_count = maxc + 1;
    f.validate();
    return f;
}

FiniteFactor FiniteFactor::cycle(int m) {
    if (m < 3) throw ConfigError("cycle factor needs at least 3 vertices");
    FiniteFactor f;
    f.name = "cycle" + std::to_string(m);
    f.adj.resize(m);
    for (int i = 0; i < m; ++i) {
        f.adj[i].push_back((i + 1) % m);
        f.adj[i].push_back((i + m - 1) % m);
        std::sort(f.adj[i].begin(), f.adj[i].end());
        f.adj[i].erase(std::unique(f.adj[i].begin(), f.adj[i].end()), f.adj[i].end());
    }
    f.vertex_class.assign(m, 0);
    f.class_count = 1;
    f.validate();
    return f;
}

FiniteFactor FiniteFactor::complete(int m) {
    if (m < 2) throw ConfigError("complete factor needs at least 2 vertices");
    FiniteFactor f;
    f.name = "complete" + std::to_string(m);
    f.adj.resize(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j) f.adj[i].push_back(j);
    f.vertex_class.assign(m, 0);
    f.class_count = 1;
    f.validate();
    return f;
}

FiniteFactor FiniteFactor::custom(std::vector<std::pair<int, int>> edges,
                                  std::vector<int> classes) {
    FiniteFactor f;
    f.name = "custom";
    const int m = static_cast<int>(classes.size());
    if (m < 2) throw ConfigError("custom factor needs at least 2 vertices");
    f.adj.resize(m);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= m || b >= m)
            throw ConfigError("custom factor edge endpoint out of range");
        if (a == b) throw ConfigError("custom factor has a self-loop");
        f.adj[a].push_back(b);
        f.adj[b].push_back(a);
    }
    for (auto& row : f.adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    f.vertex_class = std::move(classes);
    f.class_count = *std::max_element(f.vertex_class.begin(), f.vertex_class.end()) + 1;
    f.validate();
    return f;
}

void FiniteFactor::validate() const {
    const int m = size();
    if (m < 2) throw ConfigError("finite factor must have at least 2 vertices");
    if (static_cast<int>(vertex_class.size()) != m)
        throw ConfigError("finite factor class list size mismatch");
    std::vector<bool> class_seen(class_count, false);
    for (int c : vertex_class) {
        if (c < 0 || c >= class_count) throw ConfigError("finite factor class out of range");
        class_seen[c] = true;
    }
    for (bool seen : class_seen)
        if (!seen) throw ConfigError("finite factor class labels are not contiguous");
    for (int i = 0; i < m; ++i) {
        if (adj[i].empty()) throw ConfigError("finite factor has an isolated vertex");
        for (int j : adj[i]) {
            if (j < 0 || j >= m || j == i) throw ConfigError("finite factor adjacency malformed");
            if (!std::binary_search(adj[j].begin(), adj[j].end(), i))
                throw ConfigError("finite factor adjacency not symmetric");
        }
    }
    // connectivity
    std::vector<bool> seen(m, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = true;
                ++reached;
                queue.push_back(u);
            }
    }
    if (reached != m) throw ConfigError("finite factor is not connected");
}

int FiniteFactor::diameter() const {
    const int m = size();
    int diam = 0;
    for (int s = 0; s < m; ++s) {
        std::vector<int> dist(m, -1);
        std::deque<int> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int u : adj[v])
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
        }
        diam = std::max(diam, *std::max_element(dist.begin(), dist.end()));
    }
    return diam;
}

// ---------------------------------------------------------------------------
// GraphFamilySpec
// ---------------------------------------------------------------------------

GraphFamilySpec GraphFamilySpec::lattice(int dim) {
    if (dim < 1) throw ConfigError("lattice dimension must be >= 1");
    GraphFamilySpec s;
    s.kind_ = FamilyKind::Lattice;
    s.dim_ = dim;
    s.origin_ = VertexKey(VertexKey::Storage(dim, 0));
    return s;
}

GraphFamilySpec GraphFamilySpec::heisenberg() {
    GraphFamilySpec s;
    s.kind_ = FamilyKind::Heisenberg;
    s.origin_ = VertexKey{0, 0, 0};
    return s;
}

GraphFamilySpec GraphFamilySpec::lattice_cross_finite(int dim, FiniteFactor factor) {
    if (dim < 1) throw ConfigError("lattice dimension must be >= 1");
    factor.validate();
    GraphFamilySpec s;
    s.kind_ = FamilyKind::LatticeCrossFinite;
    s.dim_ = dim;
    s.factor_ = std::move(factor);
    VertexKey::Storage o(dim + 1, 0);
    s.origin_ = VertexKey(std::move(o));
    return s;
}

GraphFamilySpec GraphFamilySpec::free_group(int rank) {
    if (rank < 2) throw ConfigError("free group rank must be >= 2");
    GraphFamilySpec s;
    s.kind_ = FamilyKind::FreeGroup;
    s.rank_ = rank;
    s.origin_ = VertexKey{};
    return s;
}

std::string GraphFamilySpec::name() const {
    switch (kind_) {
        case FamilyKind::Lattice:
            return "lattice(" + std::to_string(dim_) + ")";
        case FamilyKind::Heisenberg:
            return "heisenberg";
        case FamilyKind::LatticeCrossFinite:
            return "lattice_cross_finite(" + std::to_string(dim_) + "," + factor_.name + ")";
        case FamilyKind::FreeGroup:
            return "free_group(" + std::to_string(rank_) + ")";
    }
    return "?";
}

int GraphFamilySpec::orbit_count() const {
    return kind_ == FamilyKind::LatticeCrossFinite ? factor_.class_count : 1;
}

int GraphFamilySpec::max_degree() const {
    switch (kind_) {
        case FamilyKind::Lattice:
            return 2 * dim_;
        case FamilyKind::Heisenberg:
            return 4;
        case FamilyKind::LatticeCrossFinite: {
            std::size_t fmax = 0;
            for (const auto& row : factor_.adj) fmax = std::max(fmax, row.size());
            return 2 * dim_ + static_cast<int>(fmax);
        }
        case FamilyKind::FreeGroup:
            return 2 * rank_;
    }
    return 0;
}

std::optional<int> GraphFamilySpec::growth_degree() const {
    switch (kind_) {
        case FamilyKind::Lattice:
            return dim_;
        case FamilyKind::Heisenberg:
            return 4;
        case FamilyKind::LatticeCrossFinite:
            return dim_;  // finite factor does not change the growth degree
        case FamilyKind::FreeGroup:
            return std::nullopt;
    }
    return std::nullopt;
}

bool GraphFamilySpec::same_family(const GraphFamilySpec& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case FamilyKind::Lattice:
            return dim_ == other.dim_;
        case FamilyKind::Heisenberg:
            return true;
        case FamilyKind::LatticeCrossFinite:
            return dim_ == other.dim_ && factor_.adj == other.factor_.adj &&
                   factor_.vertex_class == other.factor_.vertex_class;
        case FamilyKind::FreeGroup:
            return rank_ == other.rank_;
    }
    return false;
}

bool GraphFamilySpec::is_valid_key(const VertexKey& v) const {
    switch (kind_) {
        case FamilyKind::Lattice:
            return v.size() == static_cast<std::size_t>(dim_);
        case FamilyKind::Heisenberg:
            return v.size() == 3;
        case FamilyKind::LatticeCrossFinite:
            return v.size() == static_cast<std::size_t>(dim_ + 1) && v[dim_] >= 0 &&
                   v[dim_] < factor_.size();
        case FamilyKind::FreeGroup: {
            for (std::size_t i = 0; i < v.size(); ++i) {
                const Coord letter = v[i];
                if (letter == 0 || std::abs(letter) > rank_) return false;
                if (i > 0 && v[i - 1] == -letter) return false;  // not reduced
            }
            return true;
        }
    }
    return false;
}

void GraphFamilySpec::require_valid(const VertexKey& v) const {
    if (!is_valid_key(v))
        throw InvalidVertexError("invalid vertex key " + v.to_string() + " for " + name());
}

int GraphFamilySpec::degree(const VertexKey& v) const {
    require_valid(v);
    switch (kind_) {
        case FamilyKind::Lattice:
            return 2 * dim_;
        case FamilyKind::Heisenberg:
            return 4;
        case FamilyKind::LatticeCrossFinite:
            return 2 * dim_ + static_cast<int>(factor_.adj[static_cast<int>(v[dim_])].size());
        case FamilyKind::FreeGroup:
            return 2 * rank_;
    }
    return 0;
}

VertexKey GraphFamilySpec::neighbor_at(const VertexKey& v, int i) const {
    VertexKey u = v;
    switch (kind_) {
        case FamilyKind::Lattice: {
            // order: +e1, -e1, +e2, -e2, ...
            const int axis = i / 2;
            u[axis] += (i % 2 == 0) ? 1 : -1;
            return u;
        }
        case FamilyKind::Heisenberg: {
            // right multiplication by a, a^{-1}, b, b^{-1}
            switch (i) {
                case 0: u[0] += 1; break;
                case 1: u[0] -= 1; break;
                case 2: u[1] += 1; u[2] += v[0]; break;
                case 3: u[1] -= 1; u[2] -= v[0]; break;
            }
            return u;
        }
        case FamilyKind::LatticeCrossFinite: {
            if (i < 2 * dim_) {
                const int axis = i / 2;
                u[axis] += (i % 2 == 0) ? 1 : -1;
                return u;
            }
            const auto& row = factor_.adj[static_cast<int>(v[dim_])];
            u[dim_] = row[i - 2 * dim_];
            return u;
        }
        case FamilyKind::FreeGroup: {
            // order: +1, -1, +2, -2, ...; result stays reduced
            const Coord letter = (i % 2 == 0) ? (i / 2 + 1) : -(i / 2 + 1);
            if (!u.empty() && u.back() == -letter)
                u.pop_back();
            else
                u.push_back(letter);
            return u;
        }
    }
    return u;
}

std::vector<VertexKey> GraphFamilySpec::neighbors(const VertexKey& v) const {
    std::vector<VertexKey> out;
    neighbors_into(v, out);
    return out;
}

void GraphFamilySpec::neighbors_into(const VertexKey& v, std::vector<VertexKey>& out) const {
    require_valid(v);
    const int deg = degree(v);
    out.clear();
    out.reserve(deg);
    for (int i = 0; i < deg; ++i) out.push_back(neighbor_at(v, i));
}

int GraphFamilySpec::orbit_of(const VertexKey& v) const {
    require_valid(v);
    if (kind_ == FamilyKind::LatticeCrossFinite)
        return factor_.vertex_class[static_cast<int>(v[dim_])];
    return 0;
}

std::uint64_t GraphFamilySpec::ball_size(const VertexKey& center, int n,
                                         std::uint64_t max_vertices) const {
    return ball_profile(center, n, max_vertices).back();
}

std::vector<VertexKey> GraphFamilySpec::ball_vertices(const VertexKey& center, int radius,
                                                      std::uint64_t max_vertices) const {
    require_valid(center);
    std::vector<VertexKey> all{center}, frontier{center}, next;
    for (int level = 0; level < radius; ++level) {
        next.clear();
        for (const VertexKey& v : frontier) {
            const int deg = degree(v);
            for (int i = 0; i < deg; ++i) next.push_back(neighbor_at(v, i));
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        std::sort(all.begin(), all.end());
        std::vector<VertexKey> fresh;
        std::set_difference(next.begin(), next.end(), all.begin(), all.end(),
                            std::back_inserter(fresh));
        all.insert(all.end(), fresh.begin(), fresh.end());
        if (all.size() > max_vertices)
            throw CapacityError("ball_vertices exceeded capacity");
        frontier.swap(fresh);
        if (frontier.empty()) break;
    }
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<VertexKey> GraphFamilySpec::orbit_representatives() const {
    if (orbit_count() == 1) return {origin_};
    const std::vector<VertexKey> ball = ball_vertices(origin_, factor_.diameter());
    std::vector<VertexKey> reps(orbit_count());
    std::vector<bool> seen(orbit_count(), false);
    for (const VertexKey& v : ball) {  // sorted, so first hit per orbit is lex-smallest
        const int orb = orbit_of(v);
        if (!seen[orb]) {
            reps[orb] = v;
            seen[orb] = true;
        }
    }
    for (bool s : seen)
        if (!s)
            throw OrbitDeclarationError(
                "an orbit has no representative within the factor diameter of the origin");
    return reps;
}

std::vector<std::uint64_t> GraphFamilySpec::ball_profile(const VertexKey& center, int n,
                                                         std::uint64_t max_vertices) const {
    require_valid(center);
    if (n < 0) throw ConfigError("ball radius must be >= 0");
    // Leveled BFS: neighbors of sphere k lie in spheres k-1, k, k+1, so
    // membership checks need only the last two spheres plus the one being
    // built. Spheres are kept as sorted vectors.
    std::vector<std::uint64_t> profile{1};
    std::vector<VertexKey> prev, cur{center}, next;
    std::uint64_t count = 1;
    std::vector<VertexKey> buf, chunk, merged;
    // neighbor lists are deduplicated in bounded chunks: materializing a
    // whole sphere's neighbor multiset at once costs a degree factor of
    // extra memory, which is what actually limits the reachable radius
    constexpr std::size_t kChunk = 2'000'000;
    auto flush_chunk = [&] {
        if (chunk.empty()) return;
        std::sort(chunk.begin(), chunk.end());
        chunk.erase(std::unique(chunk.begin(), chunk.end()), chunk.end());
        if (next.empty()) {
            next.swap(chunk);
        } else {
            merged.clear();
            merged.reserve(next.size() + chunk.size());
            std::set_union(next.begin(), next.end(), chunk.begin(), chunk.end(),
                           std::back_inserter(merged));
            next.swap(merged);
            chunk.clear();
        }
    };
    for (int level = 1; level <= n; ++level) {
        next.clear();
        for (const VertexKey& v : cur) {
            const int deg = degree(v);
            for (int i = 0; i < deg; ++i) chunk.push_back(neighbor_at(v, i));
            if (chunk.size() >= kChunk) flush_chunk();
        }
        flush_chunk();
        buf.clear();
        buf.reserve(next.size());
        std::set_difference(next.begin(), next.end(), cur.begin(), cur.end(),
                            std::back_inserter(buf));
        next.clear();
        std::set_difference(buf.begin(), buf.end(), prev.begin(), prev.end(),
                            std::back_inserter(next));
        count += next.size();
        if (count > max_vertices)
            throw CapacityError("ball_size exceeded capacity of " +
                                std::to_string(max_vertices) + " vertices at radius " +
                                std::to_string(level));
        profile.push_back(count);
        prev = std::move(cur);
        cur = std::move(next);
        next = {};
        if (cur.empty()) {
            // finite graph exhausted; cannot happen for the built-in families
            while (static_cast<int>(profile.size()) <= n) profile.push_back(count);
            break;
        }
    }
    return profile;
}

}  // namespace cutwalk
