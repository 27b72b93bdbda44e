#include "cutwalk/config.hpp"

#include "cutwalk/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cutwalk {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        if (!value.empty() && value[0] == '-')
            throw ConfigError(key + " must be non-negative, got " + value);
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw ConfigError(key + ": trailing characters in " + value);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse integer for key '" + key + "': " + value);
    }
}

int parse_int(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw ConfigError(key + ": trailing characters in " + value);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse integer for key '" + key + "': " + value);
    }
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string& text) {
    std::vector<std::pair<int, int>> edges;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const std::size_t dash = item.find('-');
        if (dash == std::string::npos)
            throw ConfigError("factor_edges entries must look like '0-1', got " + item);
        edges.emplace_back(parse_int(trim(item.substr(0, dash)), "factor_edges"),
                           parse_int(trim(item.substr(dash + 1)), "factor_edges"));
    }
    return edges;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& key) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_int(item, key));
    }
    return out;
}

FiniteFactor parse_factor(const std::string& name, const std::string& factor_edges,
                          const std::string& factor_classes) {
    if (name == "custom") {
        if (factor_edges.empty() || factor_classes.empty())
            throw ConfigError("custom finite factor needs factor_edges and factor_classes keys");
        return FiniteFactor::custom(parse_edge_list(factor_edges),
                                    parse_int_list(factor_classes, "factor_classes"));
    }
    auto starts_with = [&](const char* prefix) { return name.rfind(prefix, 0) == 0; };
    if (starts_with("path")) return FiniteFactor::path(parse_int(name.substr(4), "factor"));
    if (starts_with("cycle")) return FiniteFactor::cycle(parse_int(name.substr(5), "factor"));
    if (starts_with("complete"))
        return FiniteFactor::complete(parse_int(name.substr(8), "factor"));
    throw ConfigError("unknown finite factor '" + name +
                      "' (expected pathN, cycleN, completeN or custom)");
}

}  // namespace

GraphFamilySpec parse_family(const std::string& text, const std::string& factor_edges,
                             const std::string& factor_classes) {
    const std::string t = trim(text);
    if (t == "heisenberg") return GraphFamilySpec::heisenberg();
    const std::size_t open = t.find('(');
    if (open == std::string::npos || t.back() != ')')
        throw ConfigError("cannot parse family '" + t +
                          "' (expected lattice(d), heisenberg, "
                          "lattice_cross_finite(d,factor) or free_group(r))");
    const std::string head = t.substr(0, open);
    const std::string args = t.substr(open + 1, t.size() - open - 2);
    if (head == "lattice") return GraphFamilySpec::lattice(parse_int(trim(args), "lattice dim"));
    if (head == "free_group")
        return GraphFamilySpec::free_group(parse_int(trim(args), "free group rank"));
    if (head == "lattice_cross_finite") {
        const std::size_t comma = args.find(',');
        if (comma == std::string::npos)
            throw ConfigError("lattice_cross_finite needs (d, factor)");
        const int d = parse_int(trim(args.substr(0, comma)), "lattice dim");
        return GraphFamilySpec::lattice_cross_finite(
            d, parse_factor(trim(args.substr(comma + 1)), factor_edges, factor_classes));
    }
    throw ConfigError("unknown family kind '" + head + "'");
}

int ExperimentConfig::resolved_er_horizon() const {
    if (er_horizon >= 0) return er_horizon;
    switch (family.kind()) {
        case FamilyKind::FreeGroup:
            return 12;
        case FamilyKind::Heisenberg:
            return 48;
        default: {
            const int d = family.lattice_dim();
            if (d <= 3) return 64;
            if (d == 4) return 40;
            return 32;
        }
    }
}

std::pair<int, int> ExperimentConfig::resolved_audit_range() const {
    int lo = audit_n_lo, hi = audit_n_hi;
    const bool free_grp = family.kind() == FamilyKind::FreeGroup;
    if (lo < 0) lo = free_grp ? 4 : 8;
    if (hi < 0) hi = free_grp ? 12 : 30;
    return {lo, hi};
}

std::pair<int, int> ExperimentConfig::resolved_growth_range() const {
    int lo = growth_n_lo, hi = growth_n_hi;
    const bool free_grp = family.kind() == FamilyKind::FreeGroup;
    if (lo < 0) lo = free_grp ? 2 : 10;
    if (hi < 0) hi = free_grp ? 12 : 40;
    return {lo, hi};
}

ExperimentConfig parse_config_text(const std::string& text) {
    static const std::unordered_set<std::string> known_keys = {
        "experiment",    "family",       "factor_edges", "factor_classes", "horizon",
        "replicates",    "master_seed",  "stability_window", "output_path", "format",
        "workers",       "er_horizon",   "audit_n_lo",   "audit_n_hi",     "growth_n_lo",
        "growth_n_hi",   "support_limit", "ball_capacity", "g_horizon",    "g_replicates"};

    std::unordered_map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (!known_keys.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (kv.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = value;
    }

    auto require = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError(std::string("missing required key '") + key + "'");
        return it->second;
    };
    auto optional = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };

    ExperimentConfig cfg;
    cfg.experiment = require("experiment");
    cfg.family_text = require("family");
    cfg.family = parse_family(cfg.family_text, optional("factor_edges").value_or(""),
                              optional("factor_classes").value_or(""));
    cfg.horizon = parse_u64(require("horizon"), "horizon");
    cfg.replicates = parse_u64(require("replicates"), "replicates");
    cfg.master_seed = parse_u64(require("master_seed"), "master_seed");
    cfg.output_path = require("output_path");
    cfg.stability_window =
        kv.count("stability_window") ? parse_u64(kv["stability_window"], "stability_window")
                                     : cfg.horizon / 2;
    if (auto v = optional("format")) cfg.format = *v;
    if (auto v = optional("workers")) cfg.workers = parse_int(*v, "workers");
    if (auto v = optional("er_horizon")) cfg.er_horizon = parse_int(*v, "er_horizon");
    if (auto v = optional("audit_n_lo")) cfg.audit_n_lo = parse_int(*v, "audit_n_lo");
    if (auto v = optional("audit_n_hi")) cfg.audit_n_hi = parse_int(*v, "audit_n_hi");
    if (auto v = optional("growth_n_lo")) cfg.growth_n_lo = parse_int(*v, "growth_n_lo");
    if (auto v = optional("growth_n_hi")) cfg.growth_n_hi = parse_int(*v, "growth_n_hi");
    if (auto v = optional("support_limit")) cfg.support_limit = parse_u64(*v, "support_limit");
    if (auto v = optional("ball_capacity")) cfg.ball_capacity = parse_u64(*v, "ball_capacity");
    if (auto v = optional("g_horizon")) cfg.g_horizon = parse_u64(*v, "g_horizon");
    if (auto v = optional("g_replicates")) cfg.g_replicates = parse_u64(*v, "g_replicates");

    validate_config(cfg);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << is.rdbuf();
    try {
        return parse_config_text(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void validate_config(const ExperimentConfig& cfg) {
    static const std::unordered_set<std::string> experiments = {
        "cut_density", "count_growth", "kernel_audit",
        "g_estimation", "orbit_audit",  "recurrent_control"};
    if (!experiments.count(cfg.experiment))
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    if (cfg.horizon < 2) throw ConfigError("horizon must be >= 2");
    if (cfg.replicates < 1) throw ConfigError("replicates must be >= 1");
    if (cfg.stability_window > cfg.horizon)
        throw ConfigError("stability_window must be <= horizon");
    if (cfg.format != "json" && cfg.format != "csv")
        throw ConfigError("format must be json or csv");
    if (cfg.output_path.empty()) throw ConfigError("output_path must not be empty");
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
}

}  // namespace cutwalk
