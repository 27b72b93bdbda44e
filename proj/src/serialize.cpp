#include "cutwalk/serialize.hpp"

namespace cutwalk {

namespace {

Json key_json(const VertexKey& v) {
    Json a = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i) a.push(std::int64_t{v[i]});
    return a;
}

Json index_array(const std::vector<std::size_t>& xs) {
    Json a = Json::array();
    for (std::size_t x : xs) a.push(std::uint64_t{x});
    return a;
}

Json pair_array(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& ps) {
    Json a = Json::array();
    for (const auto& [i, j] : ps) {
        Json p = Json::array();
        p.push(std::uint64_t{i});
        p.push(std::uint64_t{j});
        a.push(std::move(p));
    }
    return a;
}

}  // namespace

Json to_json(const CutReport& report) {
    Json j = Json::object();
    j.set("horizon", std::uint64_t{report.horizon});
    j.set("cut_times", index_array(report.cut_times));
    j.set("windowed_cut_times", index_array(report.windowed_cut_times));
    Json verts = Json::array();
    for (const VertexKey& v : report.cutpoint_vertices) verts.push(key_json(v));
    j.set("cutpoint_vertices", std::move(verts));
    return j;
}

Json to_json(const IntersectionRecord& record) {
    Json j = Json::object();
    j.set("pairs", pair_array(record.pairs));
    j.set("R", std::uint64_t{record.R});
    j.set("star_last", pair_array(record.star_last));
    return j;
}

Json to_json(const GEstimate& estimate) {
    Json j = Json::object();
    j.set("orbit", std::int64_t{estimate.orbit});
    j.set("horizon", std::uint64_t{estimate.horizon});
    j.set("replicates", std::uint64_t{estimate.replicates});
    j.set("ghat", estimate.ghat);
    j.set("standard_error", estimate.standard_error);
    return j;
}

Json to_json(const OrbitChain& chain) {
    Json j = Json::object();
    j.set("k", std::int64_t{chain.k});
    Json matrix = Json::array();
    for (const auto& row : chain.matrix) {
        Json r = Json::array();
        for (double p : row) r.push(p);
        matrix.push(std::move(r));
    }
    j.set("matrix", std::move(matrix));
    return j;
}

}  // namespace cutwalk
