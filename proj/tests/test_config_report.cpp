#include "cutwalk/config.hpp"
#include "cutwalk/report.hpp"

#include "cutwalk/errors.hpp"
#include "cutwalk/rng.hpp"
#include "cutwalk/serialize.hpp"
#include "cutwalk/stats.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cutwalk;

namespace {

const char* kGoodConfig = R"(
# cut-density run on Z^5
experiment = cut_density
family = lattice(5)
horizon = 1000
replicates = 10
master_seed = 42
output_path = out.json
)";

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing: happy path with defaults") {
    const ExperimentConfig cfg = parse_config_text(kGoodConfig);
    CHECK(cfg.experiment == "cut_density");
    CHECK(cfg.family.name() == "lattice(5)");
    CHECK(cfg.horizon == 1000);
    CHECK(cfg.replicates == 10);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.stability_window == 500);  // defaults to N/2
    CHECK(cfg.format == "json");
    CHECK(cfg.resolved_er_horizon() == 32);
    CHECK(cfg.resolved_audit_range() == std::pair<int, int>{8, 30});
    CHECK(cfg.resolved_growth_range() == std::pair<int, int>{10, 40});
}

TEST_CASE("config parsing: errors") {
    CHECK_THROWS_AS(parse_config_text("experiment = cut_density\n"), ConfigError);  // missing keys
    CHECK_THROWS_AS(parse_config_text(std::string(kGoodConfig) + "nonsense_key = 1\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(std::string(kGoodConfig) + "horizon = 9\n"),
                    ConfigError);  // duplicate
    CHECK_THROWS_AS(parse_config_text("not a key value line\n"), ConfigError);

    auto with = [](const std::string& base, const std::string& key, const std::string& value) {
        std::string text;
        std::stringstream ss(base);
        std::string line;
        while (std::getline(ss, line)) {
            if (line.rfind(key + " ", 0) == 0) continue;
            text += line + "\n";
        }
        return text + key + " = " + value + "\n";
    };
    CHECK_THROWS_AS(parse_config_text(with(kGoodConfig, "horizon", "1")), ConfigError);
    CHECK_THROWS_AS(parse_config_text(with(kGoodConfig, "replicates", "0")), ConfigError);
    CHECK_THROWS_AS(parse_config_text(std::string(kGoodConfig) + "stability_window = 2000\n"),
                    ConfigError);  // W > N
    CHECK_THROWS_AS(parse_config_text(with(kGoodConfig, "format", "xml")), ConfigError);
    CHECK_THROWS_AS(parse_config_text(with(kGoodConfig, "experiment", "sorcery")), ConfigError);
    CHECK_THROWS_AS(parse_config_text(with(kGoodConfig, "family", "lattice(0)")), ConfigError);
    CHECK_THROWS_AS(parse_config_text(with(kGoodConfig, "family", "free_group(1)")), ConfigError);
}

TEST_CASE("family parsing variants") {
    CHECK(parse_family("heisenberg").name() == "heisenberg");
    CHECK(parse_family("lattice(4)").lattice_dim() == 4);
    CHECK(parse_family("free_group(3)").rank() == 3);
    const auto lxf = parse_family("lattice_cross_finite(2,path3)");
    CHECK(lxf.orbit_count() == 2);
    CHECK(parse_family("lattice_cross_finite(1,cycle5)").orbit_count() == 1);
    const auto custom = parse_family("lattice_cross_finite(1,custom)", "0-1,1-2", "0,1,0");
    CHECK(custom.orbit_count() == 2);
    CHECK_THROWS_AS(parse_family("lattice_cross_finite(1,custom)"), ConfigError);
    CHECK_THROWS_AS(parse_family("triangular(2)"), ConfigError);
}

TEST_CASE("json: deterministic bytes, insertion order, double formatting") {
    auto build = [] {
        Json j = Json::object();
        j.set("b_first", 1.0 / 3.0);
        j.set("a_second", std::uint64_t{7});
        Json arr = Json::array();
        arr.push(0.25);
        arr.push(Json());
        j.set("arr", std::move(arr));
        return j.dump();
    };
    const std::string a = build();
    CHECK(a == build());
    CHECK(a.find("\"b_first\"") < a.find("\"a_second\""));  // insertion order kept
    CHECK(a.find("0.33333333333333331") != std::string::npos);  // >= 12 significant digits
    CHECK(a.find("0.25") != std::string::npos);
    CHECK(a.find("null") != std::string::npos);

    CHECK(Json::format_double(1.0) == "1.0");  // always re-parses as a double
    CHECK(Json::format_double(1e22) == "1e+22");  // exactly representable power of ten
}

TEST_CASE("csv quoting and flattening") {
    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("with,comma") == "\"with,comma\"");
    CHECK(csv_quote("with\"quote") == "\"with\"\"quote\"");

    Json j = Json::object();
    Json inner = Json::object();
    inner.set("density", 0.5);
    j.set("estimates", std::move(inner));
    Json arr = Json::array();
    arr.push(std::int64_t{1});
    arr.push(std::int64_t{2});
    j.set("curve", std::move(arr));
    const auto flat = j.flatten();
    REQUIRE(flat.size() == 3);
    CHECK(flat[0].first == "estimates.density");
    CHECK(flat[1].first == "curve.0");
    CHECK(flat[2].first == "curve.1");
}

TEST_CASE("emit: byte-identical reruns, json and csv") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "cutwalk_report_test";
    fs::create_directories(dir);
    Json j = Json::object();
    j.set("experiment", "demo");
    j.set("value", 0.1 + 0.2);
    for (const char* fmt : {"json", "csv"}) {
        const std::string p1 = (dir / (std::string("a.") + fmt)).string();
        const std::string p2 = (dir / (std::string("b.") + fmt)).string();
        emit_report(j, p1, fmt);
        emit_report(j, p2, fmt);
        CHECK(read_file(p1) == read_file(p2));
        CHECK(!read_file(p1).empty());
    }
    CHECK_THROWS(emit_report(j, (dir / "nope" / "x.json").string(), "json"));
    CHECK_THROWS_AS(emit_report(j, (dir / "c.bin").string(), "bin"), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("wilson interval: sanity and coverage at p = 0.3") {
    const Interval full = wilson_interval(0, 0);
    CHECK(full.lo == 0.0);
    CHECK(full.hi == 1.0);
    const Interval iv = wilson_interval(30, 100);
    CHECK(iv.lo > 0.2);
    CHECK(iv.hi < 0.42);
    CHECK(iv.lo < 0.3);
    CHECK(iv.hi > 0.3);

    // synthetic Bernoulli(0.3): the 95% interval must cover p in >= 93% of
    // 10^3 repetitions (n = 200 draws each)
    const double p = 0.3;
    int covered = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        CounterRng rng(RngStream{31337, stream_id_of("wilson", rep)});
        std::uint64_t successes = 0;
        const std::uint64_t n = 200;
        for (std::uint64_t i = 0; i < n; ++i)
            if (rng.unit_double() < p) ++successes;
        const Interval ci = wilson_interval(successes, n);
        if (ci.lo <= p && p <= ci.hi) ++covered;
    }
    CHECK(covered >= 930);
}

TEST_CASE("record serialization carries the exact field names") {
    CutReport report;
    report.horizon = 5;
    report.cut_times = {0, 1, 4};
    report.windowed_cut_times = {0, 1};
    report.cutpoint_vertices = {VertexKey{1, 0}};
    const Json cj = to_json(report);
    CHECK(cj.find("horizon") != nullptr);
    CHECK(cj.find("cut_times")->dump(0) == "[0, 1, 4]");
    CHECK(cj.find("windowed_cut_times")->dump(0) == "[0, 1]");
    CHECK(cj.find("cutpoint_vertices")->dump(0) == "[[1, 0]]");

    IntersectionRecord rec;
    rec.pairs = {{0, 0}, {2, 1}};
    rec.R = 2;
    rec.star_last = {{2, 1}};
    const Json ij = to_json(rec);
    CHECK(ij.find("R")->dump(0) == "2");
    CHECK(ij.find("pairs")->dump(0) == "[[0, 0], [2, 1]]");
    CHECK(ij.find("star_last")->dump(0) == "[[2, 1]]");

    GEstimate est;
    est.orbit = 1;
    est.horizon = 100;
    est.replicates = 40;
    est.ghat = 0.5;
    est.standard_error = 0.1;
    const Json gj = to_json(est);
    for (const char* field : {"orbit", "horizon", "replicates", "ghat", "standard_error"})
        CHECK(gj.find(field) != nullptr);

    const auto spec = GraphFamilySpec::lattice_cross_finite(1, FiniteFactor::path(3));
    const Json oj = to_json(orbit_transition_matrix(spec));
    CHECK(oj.find("k")->dump(0) == "2");
    CHECK(oj.find("matrix") != nullptr);
}

TEST_CASE("least squares line: exact fit recovery") {
    const std::vector<double> xs{1, 2, 3, 4, 5};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.5 * x - 1.0);
    const LineFit fit = least_squares_line(xs, ys);
    CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.rms_residual < 1e-12);
}
