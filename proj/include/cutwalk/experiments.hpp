#pragma once

#include "cutwalk/config.hpp"
#include "cutwalk/report.hpp"

#include <string>

namespace cutwalk {

/// Outcome of one experiment run. `report` is the byte-deterministic payload
/// written by emit(); `console` is a human summary (timings included there,
/// never in the report, so identical configs produce identical files).
struct ExperimentResult {
    Json report;
    std::string console;
};

/// Dispatches on config.experiment. Pure function of (config, master_seed):
/// the same config yields the same report at any worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes the report to config.output_path in config.format; for csv output
/// of kernel_audit and orbit_audit, sidecar curve/matrix CSVs are written
/// next to the main file (<path>.rcurve.csv, <path>.green.csv,
/// <path>.matrix.csv).
void emit(const ExperimentResult& result, const ExperimentConfig& config);

}  // namespace cutwalk
