#include "cutwalk/cuts.hpp"

#include "cutwalk/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace cutwalk {

std::vector<std::size_t> horizon_cut_times(const Trajectory& traj) {
    const auto& v = traj.vertices;
    if (v.empty()) return {};
    const std::size_t N = v.size() - 1;
    std::unordered_map<VertexKey, std::size_t, VertexKeyHash> last;
    last.reserve(v.size() * 2);
    for (std::size_t i = 0; i < v.size(); ++i) last[v[i]] = i;

    std::vector<std::size_t> out;
    std::size_t latest = 0;
    for (std::size_t n = 0; n < N; ++n) {
        latest = std::max(latest, last.find(v[n])->second);
        if (latest == n) out.push_back(n);
    }
    return out;
}

std::vector<std::size_t> brute_force_cut_times(const Trajectory& traj) {
    const auto& v = traj.vertices;
    if (v.empty()) return {};
    const std::size_t N = v.size() - 1;
    // Compress vertices to dense ids once (hashing long free-group words per
    // membership check would dominate); the oracle itself remains the
    // definitional prefix-set x suffix-scan emptiness check, with none of
    // the last-visit-map machinery of the fast path.
    std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> ids;
    ids.reserve(v.size() * 2);
    std::vector<std::uint32_t> seq;
    seq.reserve(v.size());
    for (const VertexKey& key : v) {
        const auto [it, inserted] = ids.try_emplace(key, static_cast<std::uint32_t>(ids.size()));
        seq.push_back(it->second);
    }
    std::vector<char> in_prefix(ids.size(), 0);
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < N; ++n) {
        in_prefix[seq[n]] = 1;
        bool disjoint = true;
        for (std::size_t j = n + 1; j <= N; ++j) {
            if (in_prefix[seq[j]]) {
                disjoint = false;
                break;
            }
        }
        if (disjoint) out.push_back(n);
    }
    return out;
}

namespace {

/// PATH(traj) as an undirected simple graph over interned vertex ids.
struct PathGraph {
    std::vector<VertexKey> keys;
    std::vector<std::vector<std::uint32_t>> adj;
    std::uint32_t start = 0, finish = 0;
};

PathGraph build_path_graph(const Trajectory& traj) {
    PathGraph g;
    std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> ids;
    ids.reserve(traj.vertices.size() * 2);
    auto intern = [&](const VertexKey& k) {
        auto [it, inserted] = ids.try_emplace(k, static_cast<std::uint32_t>(g.keys.size()));
        if (inserted) {
            g.keys.push_back(k);
            g.adj.emplace_back();
        }
        return it->second;
    };
    std::unordered_set<std::uint64_t> edges;
    edges.reserve(traj.vertices.size() * 2);
    std::uint32_t prev = intern(traj.vertices.front());
    g.start = prev;
    for (std::size_t i = 1; i < traj.vertices.size(); ++i) {
        const std::uint32_t cur = intern(traj.vertices[i]);
        const std::uint64_t key = (static_cast<std::uint64_t>(std::min(prev, cur)) << 32) |
                                  std::max(prev, cur);
        if (edges.insert(key).second) {
            g.adj[prev].push_back(cur);
            g.adj[cur].push_back(prev);
        }
        prev = cur;
    }
    g.finish = prev;
    return g;
}

/// Iterative Tarjan biconnected components: articulation flags plus the
/// vertex set of every block.
struct BlockDecomposition {
    std::vector<bool> is_cut;
    std::vector<std::vector<std::uint32_t>> blocks;
};

BlockDecomposition biconnected_components(const PathGraph& g) {
    const std::uint32_t n = static_cast<std::uint32_t>(g.keys.size());
    BlockDecomposition out;
    out.is_cut.assign(n, false);

    std::vector<std::uint32_t> disc(n, 0), low(n, 0);
    std::vector<bool> visited(n, false);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_stack;
    std::uint32_t timer = 1;

    struct Frame {
        std::uint32_t v;
        std::uint32_t parent;
        std::size_t next_edge;
        std::uint32_t tree_children;
        bool parent_skipped;
    };
    std::vector<Frame> stack;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (visited[root]) continue;
        stack.push_back({root, root, 0, 0, false});
        visited[root] = true;
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next_edge < g.adj[f.v].size()) {
                const std::uint32_t u = g.adj[f.v][f.next_edge++];
                if (u == f.parent && !f.parent_skipped && f.v != f.parent) {
                    f.parent_skipped = true;  // simple graph: skip one parent edge
                    continue;
                }
                if (!visited[u]) {
                    edge_stack.emplace_back(f.v, u);
                    visited[u] = true;
                    disc[u] = low[u] = timer++;
                    f.tree_children++;
                    stack.push_back({u, f.v, 0, 0, false});
                } else if (disc[u] < disc[f.v]) {
                    edge_stack.emplace_back(f.v, u);
                    low[f.v] = std::min(low[f.v], disc[u]);
                }
            } else {
                const Frame done = f;
                stack.pop_back();
                if (stack.empty()) continue;
                Frame& p = stack.back();
                low[p.v] = std::min(low[p.v], low[done.v]);
                if (low[done.v] >= disc[p.v]) {
                    // pop one biconnected component ending with edge (p.v, done.v)
                    std::vector<std::uint32_t> verts;
                    std::unordered_set<std::uint32_t> seen;
                    while (!edge_stack.empty()) {
                        auto [a, b] = edge_stack.back();
                        edge_stack.pop_back();
                        if (seen.insert(a).second) verts.push_back(a);
                        if (seen.insert(b).second) verts.push_back(b);
                        if (a == p.v && b == done.v) break;
                    }
                    out.blocks.push_back(std::move(verts));
                    const bool p_is_root = stack.size() == 1;
                    if (!p_is_root || p.tree_children > 1) out.is_cut[p.v] = true;
                }
            }
        }
    }
    return out;
}

}  // namespace

std::vector<VertexKey> horizon_cutpoints(const Trajectory& traj) {
    if (traj.vertices.size() < 2) return {};
    const PathGraph g = build_path_graph(traj);
    if (g.start == g.finish) return {};
    const BlockDecomposition dec = biconnected_components(g);

    // Block-cut tree: nodes are blocks [0, B) and cut vertices [B, B + C).
    const std::uint32_t B = static_cast<std::uint32_t>(dec.blocks.size());
    std::vector<std::uint32_t> cut_node(g.keys.size(), UINT32_MAX);
    std::uint32_t node_count = B;
    for (std::uint32_t v = 0; v < g.keys.size(); ++v)
        if (dec.is_cut[v]) cut_node[v] = node_count++;

    std::vector<std::vector<std::uint32_t>> tree(node_count);
    std::vector<std::uint32_t> sole_block(g.keys.size(), UINT32_MAX);
    for (std::uint32_t b = 0; b < B; ++b) {
        for (std::uint32_t v : dec.blocks[b]) {
            if (dec.is_cut[v]) {
                tree[b].push_back(cut_node[v]);
                tree[cut_node[v]].push_back(b);
            } else {
                sole_block[v] = b;
            }
        }
    }

    auto node_of = [&](std::uint32_t v) {
        return dec.is_cut[v] ? cut_node[v] : sole_block[v];
    };
    const std::uint32_t src = node_of(g.start), dst = node_of(g.finish);
    if (src == dst) return {};

    // BFS path in the (tree-shaped) block-cut graph.
    std::vector<std::uint32_t> parent(node_count, UINT32_MAX);
    std::deque<std::uint32_t> queue{src};
    parent[src] = src;
    while (!queue.empty() && parent[dst] == UINT32_MAX) {
        const std::uint32_t x = queue.front();
        queue.pop_front();
        for (std::uint32_t y : tree[x])
            if (parent[y] == UINT32_MAX) {
                parent[y] = x;
                queue.push_back(y);
            }
    }

    std::vector<VertexKey> out;
    std::vector<std::uint32_t> rev_cut_vertex(node_count, UINT32_MAX);
    for (std::uint32_t v = 0; v < g.keys.size(); ++v)
        if (cut_node[v] != UINT32_MAX) rev_cut_vertex[cut_node[v]] = v;
    for (std::uint32_t x = parent[dst]; x != src; x = parent[x]) {
        if (x >= B) {
            const std::uint32_t v = rev_cut_vertex[x];
            if (v != g.start) out.push_back(g.keys[v]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CutReport make_cut_report(const Trajectory& traj, std::size_t stability_window) {
    CutReport rep;
    rep.horizon = traj.steps();
    rep.cut_times = horizon_cut_times(traj);
    const std::size_t limit = stability_window <= rep.horizon ? rep.horizon - stability_window : 0;
    for (std::size_t n : rep.cut_times)
        if (n <= limit) rep.windowed_cut_times.push_back(n);
    rep.cutpoint_vertices = horizon_cutpoints(traj);
    return rep;
}

std::vector<std::size_t> loop_free_times(const TwoSidedTrajectory& ts, std::size_t horizon) {
    const auto& fwd = ts.forward.vertices;
    const auto& bwd = ts.backward.vertices;
    if (fwd.empty() || bwd.empty() || fwd.front() != bwd.front())
        throw ConfigError("two-sided trajectory must share its origin");
    if (ts.forward.steps() < horizon)
        throw ConfigError("forward side shorter than requested horizon");
    const std::size_t B = std::min(horizon, ts.backward.steps());

    // Timeline t = -B..horizon; last visit per vertex over the whole window.
    std::unordered_map<VertexKey, std::int64_t, VertexKeyHash> last;
    last.reserve((horizon + B) * 2);
    auto at = [&](std::int64_t t) -> const VertexKey& {
        return t >= 0 ? fwd[static_cast<std::size_t>(t)] : bwd[static_cast<std::size_t>(-t)];
    };
    for (std::int64_t t = -static_cast<std::int64_t>(B);
         t <= static_cast<std::int64_t>(horizon); ++t) {
        auto [it, inserted] = last.try_emplace(at(t), t);
        if (!inserted) it->second = std::max(it->second, t);
    }

    std::int64_t latest = -static_cast<std::int64_t>(B) - 1;
    for (std::int64_t t = -static_cast<std::int64_t>(B); t < 0; ++t)
        latest = std::max(latest, last.find(at(t))->second);

    std::vector<std::size_t> out;
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(horizon); ++j) {
        latest = std::max(latest, last.find(at(j))->second);
        if (latest == j) out.push_back(static_cast<std::size_t>(j));
    }
    return out;
}

IntersectionRecord intersections(const Trajectory& t1, const Trajectory& t2) {
    if (!t1.spec.same_family(t2.spec))
        throw FamilyMismatchError("intersections: trajectories from different families");

    std::unordered_map<VertexKey, std::vector<std::uint32_t>, VertexKeyHash> where2;
    where2.reserve(t2.vertices.size() * 2);
    for (std::uint32_t j = 0; j < t2.vertices.size(); ++j)
        where2[t2.vertices[j]].push_back(j);

    IntersectionRecord rec;
    for (std::uint32_t i = 0; i < t1.vertices.size(); ++i) {
        auto it = where2.find(t1.vertices[i]);
        if (it == where2.end()) continue;
        for (std::uint32_t j : it->second) rec.pairs.emplace_back(i, j);
    }
    std::sort(rec.pairs.begin(), rec.pairs.end());
    rec.R = rec.pairs.size();

    // Pareto-maximal pairs: scanning i descending, (i, jmax(i)) is maximal
    // iff jmax(i) exceeds every j seen at larger i.
    std::int64_t best_j = -1;
    for (auto it = rec.pairs.rbegin(); it != rec.pairs.rend();) {
        const std::uint32_t i = it->first;
        std::uint32_t jmax = it->second;
        while (it != rec.pairs.rend() && it->first == i) {
            jmax = std::max(jmax, it->second);
            ++it;
        }
        if (static_cast<std::int64_t>(jmax) > best_j) {
            rec.star_last.emplace_back(i, jmax);
            best_j = jmax;
        }
    }
    std::sort(rec.star_last.begin(), rec.star_last.end());
    return rec;
}

}  // namespace cutwalk
