#include "cutwalk/config.hpp"
#include "cutwalk/cuts.hpp"
#include "cutwalk/errors.hpp"
#include "cutwalk/experiments.hpp"
#include "cutwalk/kernel.hpp"
#include "cutwalk/orbitchain.hpp"
#include "cutwalk/walk.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cutwalk;

namespace {

VertexKey key_from(const std::vector<Coord>& coords) {
    return VertexKey(VertexKey::Storage(coords.begin(), coords.end()));
}

std::vector<Coord> key_to(const VertexKey& k) {
    return std::vector<Coord>(k.coords().begin(), k.coords().end());
}

std::vector<std::vector<Coord>> keys_to(const std::vector<VertexKey>& ks) {
    std::vector<std::vector<Coord>> out;
    out.reserve(ks.size());
    for (const auto& k : ks) out.push_back(key_to(k));
    return out;
}

Trajectory traj_from(const GraphFamilySpec& spec, const std::vector<std::vector<Coord>>& walk) {
    Trajectory t;
    t.spec = spec;
    t.vertices.reserve(walk.size());
    for (const auto& v : walk) t.vertices.push_back(key_from(v));
    return t;
}

}  // namespace

PYBIND11_MODULE(_cutwalk, m) {
    m.doc() = "cut times of simple random walk on quasi-transitive graphs";

    py::register_exception<InvalidVertexError>(m, "InvalidVertexError");
    py::register_exception<FamilyMismatchError>(m, "FamilyMismatchError");
    py::register_exception<CapacityError>(m, "CapacityError");
    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<RefusalError>(m, "RefusalError");
    py::register_exception<OrbitDeclarationError>(m, "OrbitDeclarationError");

    py::class_<GraphFamilySpec>(m, "GraphFamilySpec")
        .def_static("lattice", &GraphFamilySpec::lattice, py::arg("dim"))
        .def_static("heisenberg", &GraphFamilySpec::heisenberg)
        .def_static(
            "lattice_cross_finite",
            [](int dim, const std::string& factor) {
                return parse_family("lattice_cross_finite(" + std::to_string(dim) + "," + factor +
                                    ")");
            },
            py::arg("dim"), py::arg("factor"))
        .def_static("free_group", &GraphFamilySpec::free_group, py::arg("rank"))
        .def("name", &GraphFamilySpec::name)
        .def("origin", [](const GraphFamilySpec& s) { return key_to(s.origin()); })
        .def("orbit_count", &GraphFamilySpec::orbit_count)
        .def("max_degree", &GraphFamilySpec::max_degree)
        .def("degree",
             [](const GraphFamilySpec& s, const std::vector<Coord>& v) {
                 return s.degree(key_from(v));
             })
        .def("neighbors",
             [](const GraphFamilySpec& s, const std::vector<Coord>& v) {
                 return keys_to(s.neighbors(key_from(v)));
             })
        .def("orbit_of",
             [](const GraphFamilySpec& s, const std::vector<Coord>& v) {
                 return s.orbit_of(key_from(v));
             })
        .def("ball_size",
             [](const GraphFamilySpec& s, const std::vector<Coord>& center, int n) {
                 return s.ball_size(key_from(center), n);
             })
        .def("__repr__", [](const GraphFamilySpec& s) { return "<family " + s.name() + ">"; });

    m.def(
        "simulate_srw",
        [](const GraphFamilySpec& spec, const std::vector<Coord>& start, std::size_t steps,
           std::uint64_t master_seed, std::uint64_t stream_id) {
            const Trajectory t =
                simulate_srw(spec, key_from(start), steps, RngStream{master_seed, stream_id});
            return keys_to(t.vertices);
        },
        py::arg("spec"), py::arg("start"), py::arg("steps"), py::arg("master_seed"),
        py::arg("stream_id") = 0);

    m.def("horizon_cut_times",
          [](const GraphFamilySpec& spec, const std::vector<std::vector<Coord>>& walk) {
              return horizon_cut_times(traj_from(spec, walk));
          });
    m.def("brute_force_cut_times",
          [](const GraphFamilySpec& spec, const std::vector<std::vector<Coord>>& walk) {
              return brute_force_cut_times(traj_from(spec, walk));
          });
    m.def("horizon_cutpoints",
          [](const GraphFamilySpec& spec, const std::vector<std::vector<Coord>>& walk) {
              return keys_to(horizon_cutpoints(traj_from(spec, walk)));
          });
    m.def("intersections",
          [](const GraphFamilySpec& spec, const std::vector<std::vector<Coord>>& walk1,
             const std::vector<std::vector<Coord>>& walk2) {
              const IntersectionRecord rec =
                  intersections(traj_from(spec, walk1), traj_from(spec, walk2));
              py::dict out;
              out["pairs"] = rec.pairs;
              out["R"] = rec.R;
              out["star_last"] = rec.star_last;
              return out;
          });

    m.def(
        "pn_sequence",
        [](const GraphFamilySpec& spec, int n_max) {
            return pn_sequence(spec, spec.origin(), n_max);
        },
        py::arg("spec"), py::arg("n_max"));
    m.def(
        "expected_intersections_truncated",
        [](const GraphFamilySpec& spec, int horizon) {
            return expected_intersections_truncated(spec, spec.origin(), horizon);
        },
        py::arg("spec"), py::arg("horizon"));
    m.def(
        "volume_growth_degree",
        [](const GraphFamilySpec& spec, int n_lo, int n_hi) {
            const GrowthFit fit = volume_growth_degree(spec, n_lo, n_hi);
            py::dict out;
            out["d_fit"] = fit.d_fit;
            out["rms_residual"] = fit.rms_residual;
            out["superpolynomial"] = fit.superpolynomial;
            out["classification"] = regime_name(fit.regime);
            return out;
        },
        py::arg("spec"), py::arg("n_lo"), py::arg("n_hi"));
    m.def("orbit_transition_matrix", [](const GraphFamilySpec& spec) {
        return orbit_transition_matrix(spec).matrix;
    });
    m.def(
        "estimate_g",
        [](const GraphFamilySpec& spec, int orbit, std::size_t horizon, std::uint64_t replicates,
           std::uint64_t master_seed) {
            const GEstimate est =
                estimate_g(spec, orbit, horizon, replicates, RngStream{master_seed, 0});
            py::dict out;
            out["orbit"] = est.orbit;
            out["horizon"] = est.horizon;
            out["replicates"] = est.replicates;
            out["ghat"] = est.ghat;
            out["standard_error"] = est.standard_error;
            return out;
        },
        py::arg("spec"), py::arg("orbit"), py::arg("horizon"), py::arg("replicates"),
        py::arg("master_seed"));

    m.def(
        "run_experiment_text",
        [](const std::string& config_text, int workers) {
            ExperimentConfig cfg = parse_config_text(config_text);
            cfg.workers = workers;
            return run_experiment(cfg).report.dump();
        },
        py::arg("config_text"), py::arg("workers") = 1,
        "run an experiment from config-file text and return the report as a JSON string "
        "(nothing is written to disk)");
}
