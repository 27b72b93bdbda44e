#pragma once

#include "cutwalk/graphs.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace cutwalk {

/// Declarative experiment input, parsed from a flat key=value config file
/// (one experiment per file, '#' comments, unknown keys rejected).
///
/// Required keys: experiment, family, horizon, replicates, master_seed,
/// output_path. Optional keys carry family-dependent defaults.
struct ExperimentConfig {
    std::string experiment;  // cut_density | count_growth | kernel_audit |
                             // g_estimation | orbit_audit | recurrent_control
    std::string family_text;
    GraphFamilySpec family = GraphFamilySpec::lattice(1);

    std::uint64_t horizon = 0;     // N >= 2
    std::uint64_t replicates = 1;  // >= 1
    std::uint64_t master_seed = 0;
    std::uint64_t stability_window = 0;  // W <= N; defaults to N/2
    std::string output_path;
    std::string format = "json";  // json | csv
    int workers = 1;              // --workers / CUTWALK_WORKERS override

    // kernel tuning (defaults chosen per family when <0)
    int er_horizon = -1;
    int audit_n_lo = -1, audit_n_hi = -1;
    int growth_n_lo = -1, growth_n_hi = -1;
    std::uint64_t support_limit = 40'000'000;
    std::uint64_t ball_capacity = 60'000'000;

    // g estimation tuning
    std::uint64_t g_horizon = 2000;
    std::uint64_t g_replicates = 400;

    // resolved defaults (filled by finalize())
    int resolved_er_horizon() const;
    std::pair<int, int> resolved_audit_range() const;
    std::pair<int, int> resolved_growth_range() const;
};

GraphFamilySpec parse_family(const std::string& text, const std::string& factor_edges = "",
                             const std::string& factor_classes = "");

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Invariant checks (N >= 2, replicates >= 1, W <= N, known experiment and
/// format). Throws ConfigError.
void validate_config(const ExperimentConfig& config);

}  // namespace cutwalk
