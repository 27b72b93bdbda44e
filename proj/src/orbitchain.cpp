#include "cutwalk/orbitchain.hpp"

#include "cutwalk/errors.hpp"
#include "cutwalk/parallel.hpp"
#include "cutwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace cutwalk {

namespace {

std::vector<std::int64_t> neighbor_class_counts(const GraphFamilySpec& spec,
                                                const VertexKey& v) {
    std::vector<std::int64_t> counts(spec.orbit_count(), 0);
    const int deg = spec.degree(v);
    for (int i = 0; i < deg; ++i) counts[spec.orbit_of(spec.neighbor_at(v, i))]++;
    return counts;
}

}  // namespace

OrbitChain orbit_transition_matrix(const GraphFamilySpec& spec) {
    const int k = spec.orbit_count();
    OrbitChain chain;
    chain.k = k;
    chain.representatives = spec.orbit_representatives();

    // Sample at least 5 distinct vertices per orbit by widening a ball around
    // the origin; the declared classes are only accepted if degree and the
    // exact neighbor-class counts agree across every sample of an orbit.
    constexpr int kMinSamples = 5;
    int radius = (k == 1 ? 2 : spec.factor().diameter()) + 1;
    std::vector<std::vector<VertexKey>> samples(k);
    for (;; ++radius) {
        for (auto& s : samples) s.clear();
        for (const VertexKey& v : spec.ball_vertices(spec.origin(), radius)) {
            auto& bucket = samples[spec.orbit_of(v)];
            if (static_cast<int>(bucket.size()) < kMinSamples) bucket.push_back(v);
        }
        const bool enough = std::all_of(samples.begin(), samples.end(), [](const auto& s) {
            return static_cast<int>(s.size()) >= kMinSamples;
        });
        if (enough) break;
        if (radius > 64)
            throw OrbitDeclarationError("could not collect 5 representatives per orbit");
    }

    chain.matrix.resize(k);
    chain.neighbor_counts.resize(k);
    chain.row_degree.resize(k);
    for (int i = 0; i < k; ++i) {
        const std::vector<std::int64_t> ref = neighbor_class_counts(spec, chain.representatives[i]);
        const int ref_deg = spec.degree(chain.representatives[i]);
        for (const VertexKey& v : samples[i]) {
            if (spec.degree(v) != ref_deg || neighbor_class_counts(spec, v) != ref)
                throw OrbitDeclarationError(
                    "declared orbit " + std::to_string(i) +
                    " is not structurally uniform: representative " + v.to_string() +
                    " disagrees (family misconfigured)");
        }
        chain.neighbor_counts[i] = ref;
        chain.row_degree[i] = ref_deg;
        chain.matrix[i].resize(k);
        for (int j = 0; j < k; ++j)
            chain.matrix[i][j] = static_cast<double>(ref[j]) / ref_deg;
    }
    return chain;
}

bool is_irreducible(const OrbitChain& chain) {
    const int k = chain.k;
    for (int s = 0; s < k; ++s) {
        std::vector<bool> reach(k, false);
        std::deque<int> queue{s};
        reach[s] = true;
        int count = 1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int u = 0; u < k; ++u)
                if (!reach[u] && chain.matrix[v][u] > 0.0) {
                    reach[u] = true;
                    ++count;
                    queue.push_back(u);
                }
        }
        if (count != k) return false;
    }
    return true;
}

std::vector<double> stationary_distribution(const OrbitChain& chain, double tol, int max_iter) {
    const int k = chain.k;
    std::vector<double> pi(k, 1.0 / k), next(k);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) next[j] += pi[i] * chain.matrix[i][j];
        double norm = 0.0, residual = 0.0;
        for (int j = 0; j < k; ++j) norm += next[j];
        for (int j = 0; j < k; ++j) next[j] /= norm;
        for (int j = 0; j < k; ++j) residual = std::max(residual, std::abs(next[j] - pi[j]));
        pi.swap(next);
        if (residual <= tol) return pi;
    }
    throw std::runtime_error("stationary_distribution: power iteration did not converge");
}

std::vector<std::size_t> tau_times(const Trajectory& traj, int target_orbit) {
    std::vector<std::size_t> out;
    const auto& spec = traj.spec;
    if (spec.orbit_count() == 1) {
        // vertex-transitive: every time is a tau time of orbit 0
        if (target_orbit != 0) return out;
        out.resize(traj.vertices.size());
        for (std::size_t r = 0; r < out.size(); ++r) out[r] = r;
        return out;
    }
    for (std::size_t r = 0; r < traj.vertices.size(); ++r)
        if (spec.orbit_of(traj.vertices[r]) == target_orbit) out.push_back(r);
    return out;
}

std::vector<std::uint64_t> orbit_visit_counts(const Trajectory& traj) {
    std::vector<std::uint64_t> counts(traj.spec.orbit_count(), 0);
    if (traj.spec.orbit_count() == 1) {
        counts[0] = traj.vertices.size();
        return counts;
    }
    for (const VertexKey& v : traj.vertices) counts[traj.spec.orbit_of(v)]++;
    return counts;
}

std::size_t first_intersection_scale(const Trajectory& fwd, const Trajectory& bwd) {
    const auto& f = fwd.vertices;
    const auto& b = bwd.vertices;
    const VertexKey& origin = f.front();
    std::size_t best = SIZE_MAX;

    std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> first_f;
    first_f.reserve(f.size() * 2);
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        first_f.try_emplace(f[i], i);
        if (i >= 1 && f[i] == origin && i < best) best = i;  // pair (i, 0)
    }
    for (std::uint32_t j = 1; j < b.size() && j < best; ++j) {
        if (b[j] == origin) {
            best = j;  // pair (0, j)
            break;
        }
        auto it = first_f.find(b[j]);
        if (it != first_f.end())
            best = std::min<std::size_t>(best, std::max<std::size_t>(it->second, j));
    }
    return best;
}

GEstimate estimate_g(const GraphFamilySpec& spec, int orbit, std::size_t horizon,
                     std::uint64_t replicates, const RngStream& stream, int workers) {
    const std::vector<VertexKey> reps = spec.orbit_representatives();
    if (orbit < 0 || orbit >= static_cast<int>(reps.size()))
        throw ConfigError("estimate_g: orbit index out of range");
    const VertexKey rep = reps[orbit];

    std::vector<std::uint8_t> ok(replicates, 0);
    parallel_for_index(replicates, workers, [&](std::uint64_t r) {
        const TwoSidedTrajectory pair = simulate_two_sided(spec, rep, horizon, stream.derive(r));
        ok[r] = first_intersection_scale(pair.forward, pair.backward) > horizon ? 1 : 0;
    });

    GEstimate est;
    est.orbit = orbit;
    est.horizon = horizon;
    est.replicates = replicates;
    for (std::uint8_t v : ok) est.nonintersecting += v;
    est.ghat = replicates ? static_cast<double>(est.nonintersecting) / replicates : 0.0;
    est.standard_error = wilson_interval(est.nonintersecting, replicates).half_width();
    return est;
}

int select_star_orbit(const std::vector<GEstimate>& estimates) {
    if (estimates.empty()) throw ConfigError("select_star_orbit: no estimates");
    std::vector<const GEstimate*> by_orbit;
    for (const GEstimate& e : estimates) by_orbit.push_back(&e);
    std::sort(by_orbit.begin(), by_orbit.end(),
              [](const GEstimate* a, const GEstimate* b) { return a->orbit < b->orbit; });
    for (std::size_t i = 0; i < by_orbit.size(); ++i) {
        if (by_orbit[i]->orbit != static_cast<int>(i))
            throw ConfigError("select_star_orbit: need exactly one estimate per orbit");
        if (by_orbit[i]->horizon != by_orbit[0]->horizon ||
            by_orbit[i]->replicates != by_orbit[0]->replicates)
            throw ConfigError("select_star_orbit: estimates have mismatched horizon/replicates");
    }
    int star = 0;
    for (std::size_t i = 1; i < by_orbit.size(); ++i)
        if (by_orbit[i]->ghat > by_orbit[star]->ghat) star = static_cast<int>(i);
    return star;
}

}  // namespace cutwalk
