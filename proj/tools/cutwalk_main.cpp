#include "cutwalk/config.hpp"
#include "cutwalk/errors.hpp"
#include "cutwalk/experiments.hpp"
#include "cutwalk/kernel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitRefusal = 4;

int workers_from_env() {
    if (const char* env = std::getenv("CUTWALK_WORKERS")) {
        try {
            const int w = std::stoi(env);
            if (w >= 1) return w;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid CUTWALK_WORKERS='" << env << "'\n";
    }
    return 1;
}

void print_families() {
    // declared structure; the empirical growth fit lives in the experiments
    std::cout << "built-in graph families (declared structure):\n"
              << "  family                          degree  orbits  growth  regime\n"
              << "  lattice(1)                      2       1       1       recurrent\n"
              << "  lattice(2)                      4       1       2       recurrent\n"
              << "  lattice(3)                      6       1       3       transient (uncovered)\n"
              << "  lattice(4)                      8       1       4       transient (uncovered)\n"
              << "  lattice(5)                      10      1       5       covered\n"
              << "  lattice(6)                      12      1       6       covered\n"
              << "  heisenberg                      4       1       4       transient (uncovered, boundary)\n"
              << "  lattice_cross_finite(d,pathN)   2d+2    ceil(N/2) d      as lattice(d)\n"
              << "  lattice_cross_finite(d,cycleN)  2d+2    1       d       as lattice(d)\n"
              << "  free_group(r>=2)                2r      1       -       covered (super-polynomial)\n"
              << "\nfactor syntax: pathN, cycleN, completeN, or custom with\n"
              << "factor_edges = 0-1,1-2,...  factor_classes = 0,1,0,...\n"
              << "regimes: recurrent walks have no cut times (cut_density refuses);\n"
              << "covered = growth degree >= 5 or super-polynomial, where the\n"
              << "certified bound c_hat = 1/(E(R) truncation + tail) applies.\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cutwalk: cut times of simple random walk on quasi-transitive graphs"};
    app.require_subcommand(1);

    std::string config_path;
    int workers = 0;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("--workers", workers, "worker threads (default: CUTWALK_WORKERS or 1)");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "parse and validate a config file");
    validate->add_option("config", validate_path, "experiment config file")->required();

    CLI::App* families = app.add_subcommand("families", "list built-in graph families");

    CLI11_PARSE(app, argc, argv);

    try {
        if (families->parsed()) {
            print_families();
            return kExitOk;
        }
        if (validate->parsed()) {
            const cutwalk::ExperimentConfig cfg = cutwalk::parse_config_file(validate_path);
            std::cout << "config ok: experiment=" << cfg.experiment
                      << " family=" << cfg.family.name() << " horizon=" << cfg.horizon
                      << " replicates=" << cfg.replicates << " master_seed=" << cfg.master_seed
                      << " stability_window=" << cfg.stability_window
                      << " output=" << cfg.output_path << " format=" << cfg.format << "\n";
            return kExitOk;
        }
        cutwalk::ExperimentConfig cfg = cutwalk::parse_config_file(config_path);
        cfg.workers = workers >= 1 ? workers : workers_from_env();
        const cutwalk::ExperimentResult result = cutwalk::run_experiment(cfg);
        cutwalk::emit(result, cfg);
        std::cout << result.console << "\nreport written to " << cfg.output_path << "\n";
        return kExitOk;
    } catch (const cutwalk::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const cutwalk::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const cutwalk::RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitRefusal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
