#include "cutwalk/experiments.hpp"

#include "cutwalk/cuts.hpp"
#include "cutwalk/errors.hpp"
#include "cutwalk/kernel.hpp"
#include "cutwalk/orbitchain.hpp"
#include "cutwalk/parallel.hpp"
#include "cutwalk/serialize.hpp"
#include "cutwalk/stats.hpp"
#include "cutwalk/walk.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace cutwalk {

namespace {

Json config_echo(const ExperimentConfig& cfg) {
    // Only determinism-relevant keys: the report must be byte-identical
    // across worker counts, so `workers` is deliberately absent.
    Json j = Json::object();
    j.set("family", cfg.family.name());
    j.set("horizon", cfg.horizon);
    j.set("replicates", cfg.replicates);
    j.set("master_seed", cfg.master_seed);
    j.set("stability_window", cfg.stability_window);
    j.set("format", cfg.format);
    return j;
}

Json seed_provenance(const ExperimentConfig& cfg, const std::string& tag) {
    Json j = Json::object();
    j.set("master_seed", cfg.master_seed);
    j.set("stream_scheme", "counter(splitmix64); stream_id = hash(\"" + tag + "\", replicate)");
    return j;
}

Json interval_json(const Interval& iv) {
    Json j = Json::object();
    j.set("lo", iv.lo);
    j.set("hi", iv.hi);
    return j;
}

Json comparison_json(const std::string& name, const std::string& lhs_name, double lhs,
                     const std::string& rhs_name, double rhs) {
    Json j = Json::object();
    j.set("name", name);
    j.set("lhs_name", lhs_name);
    j.set("lhs", lhs);
    j.set("rhs_name", rhs_name);
    j.set("rhs", rhs);
    j.set("margin", lhs - rhs);
    j.set("satisfied", lhs >= rhs);
    return j;
}

Json doubles_json(const std::vector<double>& xs) {
    Json a = Json::array();
    for (double x : xs) a.push(x);
    return a;
}

std::vector<std::uint64_t> horizon_ladder(std::uint64_t n) {
    std::vector<std::uint64_t> ladder{n / 8, n / 4, n / 2, n};
    for (auto& m : ladder) m = std::max<std::uint64_t>(m, 2);
    std::sort(ladder.begin(), ladder.end());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
    return ladder;
}

Json growth_json(const GrowthFit& fit) {
    Json j = Json::object();
    j.set("d_fit", fit.d_fit);
    j.set("rms_residual", fit.rms_residual);
    j.set("superpolynomial", fit.superpolynomial);
    j.set("classification", regime_name(fit.regime));
    return j;
}

Json kernel_audit_json(const KernelAudit& audit) {
    // field names follow the KernelAudit record layout used across reports
    Json j = Json::object();
    j.set("family", audit.family);
    j.set("D", static_cast<std::int64_t>(audit.growth_degree));
    j.set("superpolynomial", audit.superpolynomial);
    Json range = Json::object();
    range.set("lo", static_cast<std::int64_t>(audit.n_lo));
    range.set("hi", static_cast<std::int64_t>(audit.n_hi));
    j.set("n_range", std::move(range));
    j.set("sup_ratio", audit.ratio.sup_ratio);
    j.set("ratio_slope", audit.ratio.trend.slope);
    j.set("r_curve_n", doubles_json(audit.ratio.n_values));
    j.set("r_curve", doubles_json(audit.ratio.r_values));
    j.set("green_partial", doubles_json(audit.green_partial));
    j.set("er_horizon", static_cast<std::int64_t>(audit.er_horizon));
    j.set("er_truncated", audit.er_truncated);
    if (audit.tail_bound.has_value())
        j.set("er_tail_bound", *audit.tail_bound);
    else
        j.set("er_tail_bound", Json());  // null: no finite tail bound below degree 5
    j.set("c_uncertified", audit.c_uncertified);
    if (audit.c_hat.has_value())
        j.set("c_hat", *audit.c_hat);
    else
        j.set("c_hat", Json());
    return j;
}

struct RepCutStats {
    std::uint64_t windowed_taus = 0;
    std::uint64_t windowed_cut_taus = 0;
};

RepCutStats replicate_cut_stats(const ExperimentConfig& cfg, int star_orbit,
                                std::uint64_t replicate, const char* tag) {
    const RngStream stream{cfg.master_seed, stream_id_of(tag, replicate)};
    const Trajectory traj =
        simulate_srw(cfg.family, cfg.family.origin(), cfg.horizon, stream);
    const std::vector<std::size_t> cuts = horizon_cut_times(traj);
    const std::vector<std::size_t> taus = tau_times(traj, star_orbit);
    const std::size_t limit = cfg.horizon - cfg.stability_window;

    RepCutStats stats;
    std::size_t ci = 0;
    for (std::size_t t : taus) {
        if (t > limit) break;
        stats.windowed_taus++;
        while (ci < cuts.size() && cuts[ci] < t) ++ci;
        if (ci < cuts.size() && cuts[ci] == t) stats.windowed_cut_taus++;
    }
    return stats;
}

// ---------------------------------------------------------------------------
// cut_density
// ---------------------------------------------------------------------------

ExperimentResult run_cut_density(const ExperimentConfig& cfg) {
    std::ostringstream console;
    const auto [glo, ghi] = cfg.resolved_growth_range();
    const GrowthFit fit = volume_growth_degree(cfg.family, glo, ghi, cfg.ball_capacity);
    if (fit.regime == GrowthFit::Regime::Recurrent)
        throw RefusalError("cut_density refused: " + cfg.family.name() +
                           " classified recurrent (D_fit = " + Json::format_double(fit.d_fit) +
                           "); recurrent walks have no cut times, so the density is "
                           "identically zero in the limit. Use recurrent_control instead.");

    Json report = Json::object();
    report.set("experiment", "cut_density");
    report.set("family", cfg.family.name());
    report.set("config", config_echo(cfg));
    report.set("seed_provenance", seed_provenance(cfg, "cut_density"));
    report.set("growth", growth_json(fit));

    // star orbit: argmax of the per-orbit non-intersection estimates
    const int k = cfg.family.orbit_count();
    int star_orbit = 0;
    if (k > 1) {
        std::vector<GEstimate> estimates;
        Json est_json = Json::array();
        for (int orbit = 0; orbit < k; ++orbit) {
            const RngStream stream{cfg.master_seed,
                                   stream_id_of("cut_density/g", static_cast<std::uint64_t>(orbit))};
            estimates.push_back(estimate_g(cfg.family, orbit, cfg.g_horizon, cfg.g_replicates,
                                           stream, cfg.workers));
            est_json.push(to_json(estimates.back()));
        }
        star_orbit = select_star_orbit(estimates);
        report.set("g_estimates", std::move(est_json));
    }
    report.set("star_orbit", static_cast<std::int64_t>(star_orbit));

    // certified lower bound c_hat = 1/(truncated E(R) + tail bound) when the
    // family is covered (declared degree >= 5 or super-polynomial)
    std::optional<double> c_hat;
    if (fit.regime == GrowthFit::Regime::Covered) {
        const auto [alo, ahi] = cfg.resolved_audit_range();
        const KernelAudit audit =
            kernel_audit(cfg.family, alo, ahi, cfg.resolved_er_horizon(), cfg.support_limit);
        report.set("kernel", kernel_audit_json(audit));
        if (audit.c_hat.has_value()) c_hat = audit.c_hat;
        console << "kernel: er_truncated=" << audit.er_truncated
                << " tail=" << (audit.tail_bound ? Json::format_double(*audit.tail_bound) : "n/a")
                << " c_hat=" << (audit.c_hat ? Json::format_double(*audit.c_hat) : "uncertified")
                << "\n";
    }

    std::vector<RepCutStats> stats(cfg.replicates);
    parallel_for_index(cfg.replicates, cfg.workers, [&](std::uint64_t r) {
        stats[r] = replicate_cut_stats(cfg, star_orbit, r, "cut_density");
    });

    std::uint64_t taus_total = 0, cuts_total = 0;
    std::vector<double> rep_density;
    for (const RepCutStats& s : stats) {
        taus_total += s.windowed_taus;
        cuts_total += s.windowed_cut_taus;
        if (s.windowed_taus > 0)
            rep_density.push_back(static_cast<double>(s.windowed_cut_taus) / s.windowed_taus);
    }
    const double density = taus_total ? static_cast<double>(cuts_total) / taus_total : 0.0;
    const Interval wilson = wilson_interval(cuts_total, taus_total);
    // cut indicators are correlated within a trajectory, so the comparison
    // uses the replicate-level standard error, not the pooled Wilson width
    const double rep_se = rep_density.size() > 1
                              ? sample_sd(rep_density) / std::sqrt(double(rep_density.size()))
                              : 0.0;

    Json est = Json::object();
    est.set("windowed_tau_total", taus_total);
    est.set("windowed_cut_total", cuts_total);
    est.set("density", density);
    est.set("wilson_ci95", interval_json(wilson));
    est.set("replicate_se", rep_se);
    report.set("estimates", std::move(est));

    Json comparisons = Json::array();
    comparisons.push(comparison_json("density_ci_excludes_zero", "wilson_lo", wilson.lo,
                                     "zero_plus", 1e-12));
    if (c_hat.has_value())
        comparisons.push(comparison_json("density_ge_chat_minus_2se", "density", density,
                                         "c_hat_minus_2se", *c_hat - 2.0 * rep_se));
    report.set("comparisons", std::move(comparisons));

    console << "cut_density " << cfg.family.name() << ": density=" << density << " (wilson ["
            << wilson.lo << ", " << wilson.hi << "], rep_se=" << rep_se << ")";
    if (c_hat) console << " vs c_hat=" << *c_hat;
    return {std::move(report), console.str()};
}

// ---------------------------------------------------------------------------
// count_growth / recurrent_control
// ---------------------------------------------------------------------------

std::vector<std::uint64_t> windowed_counts_along_ladder(
    const Trajectory& traj, const std::vector<std::uint64_t>& ladder,
    std::uint64_t window, std::uint64_t horizon) {
    std::vector<std::uint64_t> counts;
    counts.reserve(ladder.size());
    for (std::uint64_t m : ladder) {
        // windowed horizon-m cut count of the prefix trajectory[0..m]
        const std::uint64_t wm = static_cast<std::uint64_t>(
            static_cast<double>(window) * static_cast<double>(m) / static_cast<double>(horizon));
        const std::size_t limit = static_cast<std::size_t>(m - std::min(wm, m));
        std::unordered_map<VertexKey, std::size_t, VertexKeyHash> last;
        last.reserve(2 * m);
        for (std::size_t i = 0; i <= m; ++i) last[traj.vertices[i]] = i;
        std::uint64_t count = 0;
        std::size_t latest = 0;
        for (std::size_t n = 0; n < m && n <= limit; ++n) {
            latest = std::max(latest, last.find(traj.vertices[n])->second);
            if (latest == n) ++count;
        }
        counts.push_back(count);
    }
    return counts;
}

ExperimentResult run_count_growth(const ExperimentConfig& cfg, bool control_mode) {
    const char* tag = control_mode ? "recurrent_control" : "count_growth";
    const std::vector<std::uint64_t> ladder = horizon_ladder(cfg.horizon);

    std::vector<std::vector<std::uint64_t>> counts(cfg.replicates);
    parallel_for_index(cfg.replicates, cfg.workers, [&](std::uint64_t r) {
        const RngStream stream{cfg.master_seed, stream_id_of(tag, r)};
        const Trajectory traj =
            simulate_srw(cfg.family, cfg.family.origin(), cfg.horizon, stream);
        counts[r] = windowed_counts_along_ladder(traj, ladder, cfg.stability_window, cfg.horizon);
    });

    Json report = Json::object();
    report.set("experiment", tag);
    report.set("family", cfg.family.name());
    report.set("config", config_echo(cfg));
    report.set("seed_provenance", seed_provenance(cfg, tag));

    Json rows = Json::array();
    std::vector<double> means, densities;
    for (std::size_t li = 0; li < ladder.size(); ++li) {
        std::vector<double> vals;
        vals.reserve(cfg.replicates);
        for (const auto& c : counts) vals.push_back(static_cast<double>(c[li]));
        const double mean = sample_mean(vals);
        const double sd = sample_sd(vals);
        const std::uint64_t m = ladder[li];
        const std::uint64_t wm = static_cast<std::uint64_t>(
            static_cast<double>(cfg.stability_window) * static_cast<double>(m) /
            static_cast<double>(cfg.horizon));
        const std::uint64_t windowed_steps = m - std::min(wm, m) + 1;
        Json row = Json::object();
        row.set("horizon", m);
        row.set("windowed_steps", windowed_steps);
        row.set("mean_count", mean);
        row.set("mean_ci95", interval_json(mean_normal_interval(mean, sd, cfg.replicates)));
        row.set("per_step_density", mean / static_cast<double>(windowed_steps));
        rows.push(std::move(row));
        means.push_back(mean);
        densities.push_back(mean / static_cast<double>(windowed_steps));
    }
    report.set("ladder", std::move(rows));

    bool strictly_increasing = true, density_non_increasing = true;
    for (std::size_t i = 1; i < means.size(); ++i) {
        strictly_increasing = strictly_increasing && means[i] > means[i - 1];
        density_non_increasing = density_non_increasing && densities[i] <= densities[i - 1];
    }
    Json trend = Json::object();
    trend.set("mean_count_strictly_increasing", strictly_increasing);
    trend.set("per_step_density_non_increasing", density_non_increasing);
    report.set("trend", std::move(trend));

    std::ostringstream console;
    console << tag << " " << cfg.family.name() << ": mean counts";
    for (double m : means) console << " " << m;
    console << (strictly_increasing ? " (strictly increasing)" : " (not strictly increasing)");
    return {std::move(report), console.str()};
}

// ---------------------------------------------------------------------------
// kernel_audit
// ---------------------------------------------------------------------------

ExperimentResult run_kernel_audit_experiment(const ExperimentConfig& cfg) {
    const auto [alo, ahi] = cfg.resolved_audit_range();
    const KernelAudit audit =
        kernel_audit(cfg.family, alo, ahi, cfg.resolved_er_horizon(), cfg.support_limit);

    Json report = Json::object();
    report.set("experiment", "kernel_audit");
    report.set("family", cfg.family.name());
    report.set("config", config_echo(cfg));
    report.set("seed_provenance", seed_provenance(cfg, "kernel_audit"));
    report.set("kernel", kernel_audit_json(audit));

    std::ostringstream console;
    console << "kernel_audit " << cfg.family.name() << ": K=" << audit.ratio.sup_ratio
            << " slope=" << audit.ratio.trend.slope << " er(" << audit.er_horizon
            << ")=" << audit.er_truncated;
    if (audit.c_hat) console << " c_hat=" << *audit.c_hat;
    return {std::move(report), console.str()};
}

// ---------------------------------------------------------------------------
// orbit_audit
// ---------------------------------------------------------------------------

ExperimentResult run_orbit_audit(const ExperimentConfig& cfg) {
    const OrbitChain chain = orbit_transition_matrix(cfg.family);
    const bool irreducible = is_irreducible(chain);
    const std::vector<double> pi = stationary_distribution(chain);

    std::vector<std::vector<double>> occupancy(cfg.replicates);
    parallel_for_index(cfg.replicates, cfg.workers, [&](std::uint64_t r) {
        const RngStream stream{cfg.master_seed, stream_id_of("orbit_audit", r)};
        const Trajectory traj =
            simulate_srw(cfg.family, cfg.family.origin(), cfg.horizon, stream);
        const std::vector<std::uint64_t> counts = orbit_visit_counts(traj);
        std::vector<double> frac(chain.k);
        for (int i = 0; i < chain.k; ++i)
            frac[i] = static_cast<double>(counts[i]) / static_cast<double>(cfg.horizon + 1);
        occupancy[r] = std::move(frac);
    });

    Json report = Json::object();
    report.set("experiment", "orbit_audit");
    report.set("family", cfg.family.name());
    report.set("config", config_echo(cfg));
    report.set("seed_provenance", seed_provenance(cfg, "orbit_audit"));

    Json chain_json = Json::object();
    chain_json.set("k", static_cast<std::int64_t>(chain.k));
    Json matrix = Json::array();
    double max_row_sum_err = 0.0;
    for (int i = 0; i < chain.k; ++i) {
        Json row = Json::array();
        double sum = 0.0;
        for (int j = 0; j < chain.k; ++j) {
            row.push(chain.matrix[i][j]);
            sum += chain.matrix[i][j];
        }
        max_row_sum_err = std::max(max_row_sum_err, std::abs(sum - 1.0));
        matrix.push(std::move(row));
    }
    chain_json.set("matrix", std::move(matrix));
    Json reps = Json::array();
    for (const VertexKey& v : chain.representatives) reps.push(v.to_string());
    chain_json.set("representatives", std::move(reps));
    chain_json.set("row_sum_max_error", max_row_sum_err);
    chain_json.set("irreducible", irreducible);
    chain_json.set("stationary", doubles_json(pi));
    report.set("orbit_chain", std::move(chain_json));

    Json occ = Json::array();
    bool all_within = true;
    for (int i = 0; i < chain.k; ++i) {
        std::vector<double> vals;
        vals.reserve(cfg.replicates);
        for (const auto& f : occupancy) vals.push_back(f[i]);
        const double mean = sample_mean(vals);
        const double se = vals.size() > 1 ? sample_sd(vals) / std::sqrt(double(vals.size())) : 0.0;
        const bool within = std::abs(mean - pi[i]) <= 3.0 * se + 1e-15;
        all_within = all_within && within;
        Json row = Json::object();
        row.set("orbit", static_cast<std::int64_t>(i));
        row.set("occupancy_mean", mean);
        row.set("occupancy_se", se);
        row.set("stationary", pi[i]);
        row.set("within_3se", within);
        occ.push(std::move(row));
    }
    report.set("occupancy", std::move(occ));
    Json flags = Json::object();
    flags.set("occupancy_matches_stationary_within_3se", all_within);
    report.set("flags", std::move(flags));

    std::ostringstream console;
    console << "orbit_audit " << cfg.family.name() << ": k=" << chain.k
            << (irreducible ? " irreducible" : " NOT irreducible")
            << (all_within ? ", occupancy within 3 SE" : ", occupancy OFF stationary");
    return {std::move(report), console.str()};
}

// ---------------------------------------------------------------------------
// g_estimation
// ---------------------------------------------------------------------------

ExperimentResult run_g_estimation(const ExperimentConfig& cfg) {
    const int k = cfg.family.orbit_count();
    const std::vector<std::uint64_t> ladder = horizon_ladder(cfg.horizon);
    const std::vector<VertexKey> reps = cfg.family.orbit_representatives();

    // per orbit: one pair of walks per replicate at the largest horizon; the
    // ladder is evaluated on the same streams, so ghat is non-increasing in T
    // by event containment, exactly.
    std::vector<std::vector<std::size_t>> scales(k);
    for (int orbit = 0; orbit < k; ++orbit) {
        scales[orbit].assign(cfg.replicates, 0);
        const std::string tag = "g_estimation/orbit" + std::to_string(orbit);
        parallel_for_index(cfg.replicates, cfg.workers, [&, orbit](std::uint64_t r) {
            const RngStream stream{cfg.master_seed, stream_id_of(tag, r)};
            const TwoSidedTrajectory pair =
                simulate_two_sided(cfg.family, reps[orbit], cfg.horizon, stream);
            scales[orbit][r] = first_intersection_scale(pair.forward, pair.backward);
        });
    }

    Json report = Json::object();
    report.set("experiment", "g_estimation");
    report.set("family", cfg.family.name());
    report.set("config", config_echo(cfg));
    report.set("seed_provenance", seed_provenance(cfg, "g_estimation/orbit<i>"));

    std::vector<GEstimate> final_estimates;
    Json orbits = Json::array();
    for (int orbit = 0; orbit < k; ++orbit) {
        Json rows = Json::array();
        for (std::uint64_t t : ladder) {
            GEstimate e;
            e.orbit = orbit;
            e.horizon = t;
            e.replicates = cfg.replicates;
            for (std::size_t s : scales[orbit])
                if (s > t) ++e.nonintersecting;
            e.ghat = static_cast<double>(e.nonintersecting) / static_cast<double>(cfg.replicates);
            e.standard_error = wilson_interval(e.nonintersecting, cfg.replicates).half_width();
            rows.push(to_json(e));
            if (t == ladder.back()) final_estimates.push_back(e);
        }
        Json entry = Json::object();
        entry.set("orbit", static_cast<std::int64_t>(orbit));
        entry.set("representative", reps[orbit].to_string());
        entry.set("ladder", std::move(rows));
        orbits.push(std::move(entry));
    }
    report.set("orbits", std::move(orbits));

    const int star = select_star_orbit(final_estimates);
    // stability across 5 disjoint replicate groups (independent streams); if
    // the argmax wobbles, the selection is statistically indeterminate
    bool stable = true;
    if (k > 1 && cfg.replicates >= 5) {
        for (int group = 0; group < 5; ++group) {
            int best = 0;
            double best_ghat = -1.0;
            for (int orbit = 0; orbit < k; ++orbit) {
                std::uint64_t ok = 0, total = 0;
                for (std::size_t r = group; r < cfg.replicates; r += 5) {
                    ++total;
                    if (scales[orbit][r] > ladder.back()) ++ok;
                }
                const double ghat = total ? static_cast<double>(ok) / total : 0.0;
                if (ghat > best_ghat) {
                    best_ghat = ghat;
                    best = orbit;
                }
            }
            if (best != star) stable = false;
        }
    }
    report.set("star_orbit", static_cast<std::int64_t>(star));
    report.set("star_orbit_stable_across_5_groups", stable);
    if (!stable) report.set("star_orbit_indeterminate", true);

    std::ostringstream console;
    console << "g_estimation " << cfg.family.name() << ": star orbit " << star
            << (stable ? "" : " (indeterminate)") << ", final ghat";
    for (const GEstimate& e : final_estimates) console << " " << e.ghat;
    return {std::move(report), console.str()};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult result;
    if (cfg.experiment == "cut_density") {
        result = run_cut_density(cfg);
    } else if (cfg.experiment == "count_growth") {
        result = run_count_growth(cfg, false);
    } else if (cfg.experiment == "recurrent_control") {
        result = run_count_growth(cfg, true);
    } else if (cfg.experiment == "kernel_audit") {
        result = run_kernel_audit_experiment(cfg);
    } else if (cfg.experiment == "orbit_audit") {
        result = run_orbit_audit(cfg);
    } else if (cfg.experiment == "g_estimation") {
        result = run_g_estimation(cfg);
    } else {
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }
    const auto t1 = std::chrono::steady_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    result.console += "\nwall_clock_ms=" + std::to_string(ms) + " (console only)";
    return result;
}

void emit(const ExperimentResult& result, const ExperimentConfig& cfg) {
    emit_report(result.report, cfg.output_path, cfg.format);
    if (cfg.format == "csv") {
        if (const Json* kernel = result.report.find("kernel")) {
            const Json* ns = kernel->find("r_curve_n");
            const Json* rs = kernel->find("r_curve");
            const Json* green = kernel->find("green_partial");
            auto values_of = [](const Json* node) {
                std::vector<double> out;
                if (node)
                    for (const auto& entry : node->flatten()) out.push_back(std::stod(entry.second));
                return out;
            };
            if (ns && rs)
                emit_curve_csv(cfg.output_path + ".rcurve.csv", "n", "r", values_of(ns),
                               values_of(rs));
            if (green) {
                const std::vector<double> g_vals = values_of(green);
                std::vector<double> g_idx(g_vals.size());
                for (std::size_t i = 0; i < g_idx.size(); ++i) g_idx[i] = static_cast<double>(i);
                emit_curve_csv(cfg.output_path + ".green.csv", "j", "partial_sum", g_idx, g_vals);
            }
        }
        if (const Json* chain = result.report.find("orbit_chain")) {
            if (const Json* matrix = chain->find("matrix")) {
                std::ofstream os(cfg.output_path + ".matrix.csv", std::ios::binary);
                if (!os)
                    throw std::runtime_error("cannot open output file: " + cfg.output_path +
                                             ".matrix.csv");
                const auto flat = matrix->flatten();
                // rows are <i>.<j> keys in order; rebuild row breaks from the i part
                std::string row;
                std::string last_i;
                for (const auto& [key, value] : flat) {
                    const std::string i_part = key.substr(0, key.find('.', 1));
                    if (i_part != last_i && !row.empty()) {
                        os << row << "\r\n";
                        row.clear();
                    }
                    last_i = i_part;
                    if (!row.empty()) row += ",";
                    row += value;
                }
                if (!row.empty()) os << row << "\r\n";
            }
        }
    }
}

}  // namespace cutwalk
