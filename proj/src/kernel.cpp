#include "cutwalk/kernel.hpp"

#include "cutwalk/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cutwalk {

double SparseDist::total_mass() const {
    KahanSum s;
    for (const auto& [k, m] : entries) s.add(m);
    return s.value();
}

double SparseDist::mass_at(const VertexKey& v) const {
    auto it = entries.find(v);
    return it == entries.end() ? 0.0 : it->second;
}

SparseDist delta_dist(const VertexKey& origin) {
    SparseDist d;
    d.entries.emplace(origin, 1.0);
    d.time = 0;
    return d;
}

SparseDist step_dist(const GraphFamilySpec& spec, const SparseDist& dist,
                     std::size_t support_limit) {
    SparseDist next;
    next.time = dist.time + 1;
    next.entries.reserve(dist.entries.size() * 2);
    for (const auto& [v, m] : dist.entries) {
        const int deg = spec.degree(v);
        const double w = m / deg;
        for (int i = 0; i < deg; ++i) next.entries[spec.neighbor_at(v, i)] += w;
        if (next.entries.size() > support_limit)
            throw CapacityError("step_dist support exceeded limit of " +
                                std::to_string(support_limit));
    }
    return next;
}

namespace {

/// Exact propagation engine over interned vertex ids. Adjacency is resolved
/// once per vertex into a CSR table, so each step is pure array arithmetic;
/// the hash map is touched only when the support frontier grows.
class Propagator {
public:
    Propagator(const GraphFamilySpec& spec, const VertexKey& origin, std::size_t support_limit)
        : spec_(spec), limit_(support_limit) {
        spec.require_valid(origin);
        intern(origin);
        mass_.assign(1, 1.0);
    }

    int time() const { return time_; }
    std::size_t support_size() const { return keys_.size(); }
    const std::vector<double>& mass() const { return mass_; }
    const std::vector<int>& degrees() const { return deg_; }
    const VertexKey& key_of(std::uint32_t id) const { return keys_[id]; }
    double mass_at_origin() const { return mass_[0]; }

    std::uint32_t id_of(const VertexKey& k) const {
        auto it = ids_.find(k);
        return it == ids_.end() ? UINT32_MAX : it->second;
    }

    void step() {
        const std::size_t known = keys_.size();
        resolve_adjacency(known);
        next_.assign(keys_.size(), 0.0);
        for (std::size_t id = 0; id < known; ++id) {
            const double m = mass_[id];
            if (m == 0.0) continue;
            const double w = m / deg_[id];
            const std::size_t begin = offsets_[id], end = offsets_[id + 1];
            for (std::size_t e = begin; e < end; ++e) next_[csr_[e]] += w;
        }
        mass_.swap(next_);
        ++time_;
    }

    double max_mass_over_degree() const {
        double best = 0.0;
        for (std::size_t id = 0; id < mass_.size(); ++id)
            best = std::max(best, mass_[id] / deg_[id]);
        return best;
    }

    double mass_sum() const {
        KahanSum s;
        for (double m : mass_) s.add(m);
        return s.value();
    }

private:
    std::uint32_t intern(const VertexKey& k) {
        auto [it, inserted] = ids_.try_emplace(k, static_cast<std::uint32_t>(keys_.size()));
        if (inserted) {
            if (keys_.size() >= limit_)
                throw CapacityError("propagation support exceeded limit of " +
                                    std::to_string(limit_));
            keys_.push_back(k);
            deg_.push_back(degree_fast(k));
        }
        return it->second;
    }

    int degree_fast(const VertexKey& k) const {
        switch (spec_.kind()) {
            case FamilyKind::Lattice: return 2 * spec_.lattice_dim();
            case FamilyKind::Heisenberg: return 4;
            case FamilyKind::FreeGroup: return 2 * spec_.rank();
            case FamilyKind::LatticeCrossFinite: {
                const auto f = static_cast<int>(k[spec_.lattice_dim()]);
                return 2 * spec_.lattice_dim() +
                       static_cast<int>(spec_.factor().adj[f].size());
            }
        }
        return 0;
    }

    void resolve_adjacency(std::size_t upto) {
        for (std::size_t id = resolved_; id < upto; ++id) {
            const VertexKey v = keys_[id];  // copy: intern() may reallocate keys_
            const int deg = deg_[id];
            for (int i = 0; i < deg; ++i) csr_.push_back(intern(spec_.neighbor_at(v, i)));
            offsets_.push_back(csr_.size());
        }
        resolved_ = std::max(resolved_, upto);
    }

    const GraphFamilySpec& spec_;
    std::size_t limit_;
    std::vector<VertexKey> keys_;
    std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> ids_;
    std::vector<int> deg_;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::uint32_t> csr_;
    std::size_t resolved_ = 0;
    std::vector<double> mass_;
    std::vector<double> next_;
    int time_ = 0;
};

}  // namespace

std::vector<double> pn_sequence(const GraphFamilySpec& spec, const VertexKey& origin, int n_max,
                                std::size_t support_limit) {
    Propagator prop(spec, origin, support_limit);
    std::vector<double> out{1.0};
    out.reserve(n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        prop.step();
        out.push_back(prop.mass_at_origin());
    }
    return out;
}

double reversibility_check(const GraphFamilySpec& spec, const VertexKey& origin, int n_max,
                           int sample_size, std::size_t support_limit) {
    // All distributions from the origin, dense over the final id space.
    Propagator from_x(spec, origin, support_limit);
    std::vector<std::vector<double>> dists_x{from_x.mass()};
    for (int n = 1; n <= n_max; ++n) {
        from_x.step();
        dists_x.push_back(from_x.mass());
    }

    // Deterministic target sample: evenly spaced over the sorted support of
    // mu_{n_max}, endpoints included.
    std::vector<VertexKey> support;
    for (std::uint32_t id = 0; id < from_x.support_size(); ++id)
        if (from_x.mass()[id] > 0.0) support.push_back(from_x.key_of(id));
    std::sort(support.begin(), support.end());
    std::vector<VertexKey> targets;
    if (!support.empty()) {
        const std::size_t k = std::min<std::size_t>(sample_size, support.size());
        for (std::size_t i = 0; i < k; ++i)
            targets.push_back(support[i * (support.size() - 1) / std::max<std::size_t>(1, k - 1)]);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    }

    const int deg_x = spec.degree(origin);
    double worst = 0.0;
    for (const VertexKey& y : targets) {
        Propagator from_y(spec, y, support_limit);
        const int deg_y = spec.degree(y);
        for (int n = 0; n <= n_max; ++n) {
            if (n > 0) from_y.step();
            const std::uint32_t idy = from_x.id_of(y);
            const double p_xy =
                idy == UINT32_MAX || idy >= dists_x[n].size() ? 0.0 : dists_x[n][idy];
            const std::uint32_t idx = from_y.id_of(origin);
            const double p_yx = idx == UINT32_MAX ? 0.0 : from_y.mass()[idx];
            worst = std::max(worst, std::abs(deg_x * p_xy - deg_y * p_yx));
        }
    }
    return worst;
}

RatioCurve heat_kernel_audit(const GraphFamilySpec& spec, int growth_degree_d, int n_lo, int n_hi,
                             std::size_t support_limit) {
    if (n_lo < 1 || n_hi < n_lo) throw ConfigError("heat_kernel_audit: bad n range");
    RatioCurve curve;
    curve.degree_exponent = growth_degree_d;
    std::vector<double> max_ratio(n_hi + 1, 0.0);
    for (const VertexKey& rep : spec.orbit_representatives()) {
        Propagator prop(spec, rep, support_limit);
        for (int n = 1; n <= n_hi; ++n) {
            prop.step();
            if (n >= n_lo)
                max_ratio[n] = std::max(max_ratio[n], prop.max_mass_over_degree());
        }
    }
    for (int n = n_lo; n <= n_hi; ++n) {
        curve.n_values.push_back(n);
        curve.r_values.push_back(std::pow(n, growth_degree_d / 2.0) * max_ratio[n]);
    }
    curve.sup_ratio = *std::max_element(curve.r_values.begin(), curve.r_values.end());
    curve.trend = least_squares_line(curve.n_values, curve.r_values);
    return curve;
}

std::vector<double> green_partial_sums(const GraphFamilySpec& spec, const VertexKey& origin,
                                       int horizon, std::size_t support_limit) {
    const std::vector<double> pn = pn_sequence(spec, origin, horizon, support_limit);
    std::vector<double> partial(horizon + 1);
    KahanSum acc;
    for (int j = 0; j <= horizon; ++j) {
        acc.add(j * pn[j]);
        partial[j] = acc.value();
    }
    return partial;
}

double expected_intersections_truncated(const GraphFamilySpec& spec, const VertexKey& origin,
                                        int horizon, std::size_t support_limit) {
    Propagator prop(spec, origin, support_limit);
    std::vector<double> acc(1, 1.0);  // sum of mu_0..mu_t, dense over ids
    for (int t = 1; t <= horizon; ++t) {
        prop.step();
        acc.resize(prop.support_size(), 0.0);
        const auto& m = prop.mass();
        for (std::size_t id = 0; id < m.size(); ++id) acc[id] += m[id];
    }
    // sum_{i,j<=T} <mu_i, mu_j> factorizes into ||sum_i mu_i||^2
    KahanSum er;
    for (double a : acc) er.add(a * a);
    return er.value();
}

std::optional<double> er_tail_bound(const GraphFamilySpec& spec, double sup_ratio_k, int horizon) {
    const auto declared = spec.growth_degree();
    int effective_d;
    if (!declared.has_value()) {
        effective_d = 5;  // super-polynomial growth dominates any polynomial degree
    } else if (*declared >= 5) {
        effective_d = *declared;
    } else {
        return std::nullopt;  // tail sum diverges or is uncontrolled for D < 5
    }
    const double a = effective_d / 2.0;
    const int cutoff = horizon + 200000;
    KahanSum s;
    for (int l = horizon + 1; l <= cutoff; ++l)
        s.add((l + 1.0) * std::pow(static_cast<double>(l), -a));
    // integral over-bound of the remainder: integrand decreasing in l
    const double M = cutoff;
    const double remainder = std::pow(M, 2.0 - a) / (a - 2.0) + std::pow(M, 1.0 - a) / (a - 1.0);
    return spec.max_degree() * sup_ratio_k * (s.value() + remainder);
}

CHat c_lower_bound(const KernelAudit& audit) {
    if (audit.tail_bound.has_value())
        return CHat{1.0 / (audit.er_truncated + *audit.tail_bound), true};
    return CHat{1.0 / audit.er_truncated, false};
}

KernelAudit kernel_audit(const GraphFamilySpec& spec, int n_lo, int n_hi, int er_horizon,
                         std::size_t support_limit) {
    KernelAudit audit;
    audit.family = spec.name();
    audit.superpolynomial = !spec.growth_degree().has_value();
    audit.growth_degree = spec.growth_degree().value_or(5);
    audit.n_lo = n_lo;
    audit.n_hi = n_hi;
    audit.er_horizon = er_horizon;
    audit.ratio = heat_kernel_audit(spec, audit.growth_degree, n_lo, n_hi, support_limit);

    // One propagation from the origin to er_horizon collects, simultaneously:
    //  - p^(n)(o,o) for n <= er_horizon (direct),
    //  - p^(n)(o,o) for n <= 2*er_horizon via the reversibility identities
    //      p^(2m)(o,o)   = deg(o) sum_x mu_m(x)^2 / deg(x)
    //      p^(2m+1)(o,o) = deg(o) sum_x mu_m(x) mu_{m+1}(x) / deg(x),
    //  - the E(R) accumulator sum_i mu_i.
    Propagator prop(spec, spec.origin(), support_limit);
    const double deg_o = spec.degree(spec.origin());
    std::vector<double> pn(2 * er_horizon + 1, 0.0);
    pn[0] = 1.0;
    std::vector<double> acc(1, 1.0);
    std::vector<double> prev = prop.mass();
    for (int t = 1; t <= er_horizon; ++t) {
        prop.step();
        const auto& m = prop.mass();
        const auto& deg = prop.degrees();
        acc.resize(m.size(), 0.0);
        prev.resize(m.size(), 0.0);
        KahanSum sq, cross;
        for (std::size_t id = 0; id < m.size(); ++id) {
            acc[id] += m[id];
            sq.add(m[id] * m[id] / deg[id]);
            cross.add(prev[id] * m[id] / deg[id]);
        }
        if (t <= er_horizon) pn[t] = prop.mass_at_origin();
        pn[2 * t] = deg_o * sq.value();
        if (2 * t - 1 <= 2 * er_horizon) pn[2 * t - 1] = deg_o * cross.value();
        prev = m;
    }
    KahanSum er;
    for (double a : acc) er.add(a * a);
    audit.er_truncated = er.value();

    audit.green_partial.resize(pn.size());
    KahanSum green;
    for (std::size_t j = 0; j < pn.size(); ++j) {
        green.add(static_cast<double>(j) * pn[j]);
        audit.green_partial[j] = green.value();
    }

    audit.tail_bound = er_tail_bound(spec, audit.ratio.sup_ratio, er_horizon);
    audit.c_uncertified = 1.0 / audit.er_truncated;
    const CHat ch = c_lower_bound(audit);
    if (ch.certified) audit.c_hat = ch.value;
    return audit;
}

GrowthFit volume_growth_degree(const GraphFamilySpec& spec, int n_lo, int n_hi,
                               std::uint64_t ball_capacity) {
    if (n_lo < 1 || n_hi <= n_lo) throw ConfigError("volume_growth_degree: bad n range");
    GrowthFit fit;
    std::vector<double> log_n, log_v;
    const std::vector<std::uint64_t> profile =
        spec.ball_profile(spec.origin(), n_hi, ball_capacity);
    for (int n = n_lo; n <= n_hi; ++n) {
        const double v = static_cast<double>(profile[n]);
        fit.radii.push_back(n);
        fit.ball_sizes.push_back(v);
        log_n.push_back(std::log(static_cast<double>(n)));
        log_v.push_back(std::log(v));
    }
    const LineFit line = least_squares_line(log_n, log_v);
    fit.d_fit = line.slope;
    fit.rms_residual = line.rms_residual;

    // curvature test: super-polynomial growth makes log V convex in log n,
    // so the second-half slope runs well above the first-half slope
    const std::size_t half = log_n.size() / 2;
    if (half >= 2 && log_n.size() - half >= 2) {
        const LineFit first = least_squares_line(
            std::vector<double>(log_n.begin(), log_n.begin() + half),
            std::vector<double>(log_v.begin(), log_v.begin() + half));
        const LineFit second = least_squares_line(
            std::vector<double>(log_n.begin() + half, log_n.end()),
            std::vector<double>(log_v.begin() + half, log_v.end()));
        fit.superpolynomial =
            second.slope > 1.25 * first.slope && second.slope - first.slope > 0.5;
    }

    if (fit.superpolynomial || fit.d_fit >= 4.5)
        fit.regime = GrowthFit::Regime::Covered;
    else if (fit.d_fit >= 2.5)
        fit.regime = GrowthFit::Regime::TransientUncovered;
    else
        fit.regime = GrowthFit::Regime::Recurrent;
    return fit;
}

const char* regime_name(GrowthFit::Regime r) {
    switch (r) {
        case GrowthFit::Regime::Recurrent: return "recurrent";
        case GrowthFit::Regime::TransientUncovered: return "transient_uncovered";
        case GrowthFit::Regime::Covered: return "covered";
    }
    return "?";
}

}  // namespace cutwalk
