#pragma once

#include "cutwalk/graphs.hpp"
#include "cutwalk/stats.hpp"
#include "cutwalk/vertex_key.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cutwalk {

inline constexpr std::size_t kDefaultSupportLimit = 40'000'000;

/// Finitely-supported probability vector over vertices at step `time`.
struct SparseDist {
    std::unordered_map<VertexKey, double, VertexKeyHash> entries;
    int time = 0;

    double total_mass() const;
    double mass_at(const VertexKey& v) const;
};

SparseDist delta_dist(const VertexKey& origin);

/// One SRW step: mu'(y) = sum_{x ~ y} mu(x)/deg(x); preserves total mass to
/// 1e-12 and increments time. Support stays inside B(origin, time).
SparseDist step_dist(const GraphFamilySpec& spec, const SparseDist& dist,
                     std::size_t support_limit = kDefaultSupportLimit);

/// Exact p^(n)(o, o) for n = 0..n_max via repeated propagation.
std::vector<double> pn_sequence(const GraphFamilySpec& spec, const VertexKey& origin, int n_max,
                                std::size_t support_limit = kDefaultSupportLimit);

/// Max over n <= n_max and sampled targets y of
/// |deg(x) p^(n)(x,y) - deg(y) p^(n)(y,x)| with x = origin.
double reversibility_check(const GraphFamilySpec& spec, const VertexKey& origin, int n_max,
                           int sample_size, std::size_t support_limit = kDefaultSupportLimit);

/// r(n) = n^{D/2} max_y p^(n)(x, y)/deg(y), maximized over one representative
/// x per orbit. sup_ratio is the max over the audited range; the bound audit
/// reports the least-squares trend of the curve.
struct RatioCurve {
    int degree_exponent = 0;  // D
    std::vector<double> n_values;
    std::vector<double> r_values;
    double sup_ratio = 0.0;
    LineFit trend;
};

RatioCurve heat_kernel_audit(const GraphFamilySpec& spec, int growth_degree_d, int n_lo, int n_hi,
                             std::size_t support_limit = kDefaultSupportLimit);

/// Partial sums G_h = sum_{j<=h} j p^(j)(o,o) for h = 0..horizon.
std::vector<double> green_partial_sums(const GraphFamilySpec& spec, const VertexKey& origin,
                                       int horizon,
                                       std::size_t support_limit = kDefaultSupportLimit);

/// Exact truncated expected intersections of two independent SRWs from o:
/// er_truncated = sum_{i,j<=horizon} <mu_i, mu_j> = ||sum_{i<=horizon} mu_i||^2.
double expected_intersections_truncated(const GraphFamilySpec& spec, const VertexKey& origin,
                                        int horizon,
                                        std::size_t support_limit = kDefaultSupportLimit);

/// Analytic over-bound on the discarded tail: d * K * sum_{l>horizon} (l+1) l^{-D/2},
/// valid when the kernel obeys max_y p^(l)(o,y)/deg(y) <= K l^{-D/2}. Needs an
/// effective growth degree >= 5 to converge; nullopt otherwise. Families with
/// super-polynomial growth use D = 5, which only loosens the bound.
std::optional<double> er_tail_bound(const GraphFamilySpec& spec, double sup_ratio_k, int horizon);

/// Audit bundle around the bound c = 1/E(R).
struct KernelAudit {
    std::string family;
    int growth_degree = 0;  // D used for the audit (5 stands in for super-polynomial)
    bool superpolynomial = false;
    int n_lo = 0, n_hi = 0;
    RatioCurve ratio;
    std::vector<double> green_partial;  // indices 0..green_horizon
    int er_horizon = 0;
    double er_truncated = 0.0;
    std::optional<double> tail_bound;
    double c_uncertified = 0.0;        // 1/er_truncated
    std::optional<double> c_hat;       // 1/(er_truncated + tail), when certifiable
};

struct CHat {
    double value = 0.0;
    bool certified = false;
};

/// c_hat = 1/(er_truncated + tail bound): a conservative stand-in for the
/// lower bound c = 1/E(R), since the denominator over-estimates E(R) (up to
/// the empirically measured kernel constant K). Falls back, uncertified, to
/// 1/er_truncated when no tail bound exists.
CHat c_lower_bound(const KernelAudit& audit);

/// Full kernel audit: ratio curve + Green partial sums + truncated E(R) and
/// its tail bound, from a single exact propagation per orbit representative.
/// Green sums extend to 2*er_horizon through the reversibility identity
/// p^(2m)(o,o) = deg(o) sum_x mu_m(x)^2 / deg(x).
KernelAudit kernel_audit(const GraphFamilySpec& spec, int n_lo, int n_hi, int er_horizon,
                         std::size_t support_limit = kDefaultSupportLimit);

/// Volume-growth degree from log V(n) ~ D log n over [n_lo, n_hi], plus the
/// regime classification used by the experiments.
struct GrowthFit {
    double d_fit = 0.0;
    double rms_residual = 0.0;
    bool superpolynomial = false;
    enum class Regime { Recurrent, TransientUncovered, Covered } regime = Regime::Recurrent;
    std::vector<double> radii;
    std::vector<double> ball_sizes;
};

GrowthFit volume_growth_degree(const GraphFamilySpec& spec, int n_lo, int n_hi,
                               std::uint64_t ball_capacity = GraphFamilySpec::kDefaultBallCapacity);

const char* regime_name(GrowthFit::Regime r);

}  // namespace cutwalk
