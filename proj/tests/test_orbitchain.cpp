#include "cutwalk/orbitchain.hpp"

#include "cutwalk/errors.hpp"
#include "cutwalk/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace cutwalk;

TEST_CASE("vertex-transitive families collapse to the 1x1 chain [[1]]") {
    for (const auto& spec : {GraphFamilySpec::lattice(3), GraphFamilySpec::heisenberg(),
                             GraphFamilySpec::free_group(2)}) {
        const OrbitChain chain = orbit_transition_matrix(spec);
        CHECK(chain.k == 1);
        CHECK(chain.matrix == std::vector<std::vector<double>>{{1.0}});
        CHECK(is_irreducible(chain));
        CHECK(stationary_distribution(chain) == std::vector<double>{1.0});
    }
}

TEST_CASE("path-3 factor: endpoint and middle rows") {
    const auto spec = GraphFamilySpec::lattice_cross_finite(1, FiniteFactor::path(3));
    const OrbitChain chain = orbit_transition_matrix(spec);
    REQUIRE(chain.k == 2);
    // endpoint: degree 3, 2 lattice moves stay, 1 factor move to the middle
    CHECK(chain.matrix[0][0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(chain.matrix[0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // middle: degree 4, 2 lattice moves stay, 2 factor moves to endpoints
    CHECK(chain.matrix[1][0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(chain.matrix[1][1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(chain.neighbor_counts[0] == std::vector<std::int64_t>{2, 1});
    CHECK(chain.neighbor_counts[1] == std::vector<std::int64_t>{2, 2});
    CHECK(is_irreducible(chain));

    for (const auto& row : chain.matrix) {
        double sum = 0.0;
        for (double p : row) sum += p;
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }

    // stationary = degree-weighted orbit masses: (6/10, 4/10)
    const auto pi = stationary_distribution(chain);
    CHECK(pi[0] == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(pi[1] == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("misdeclared classes are rejected as an orbit-declaration error") {
    // path-3 with all vertices in one class: endpoint degree 3 vs middle
    // degree 4 cannot be one orbit
    const FiniteFactor bad = FiniteFactor::custom({{0, 1}, {1, 2}}, {0, 0, 0});
    const auto spec = GraphFamilySpec::lattice_cross_finite(1, bad);
    CHECK_THROWS_AS(orbit_transition_matrix(spec), OrbitDeclarationError);
}

TEST_CASE("tau times: vertex-transitive degeneracy and path-3 alternation") {
    const auto z2 = GraphFamilySpec::lattice(2);
    const auto traj = simulate_srw(z2, z2.origin(), 50, RngStream{1, 1});
    const auto taus = tau_times(traj, 0);
    REQUIRE(taus.size() == 51);
    for (std::size_t i = 0; i < taus.size(); ++i) CHECK(taus[i] == i);

    const auto lxf = GraphFamilySpec::lattice_cross_finite(1, FiniteFactor::path(3));
    Trajectory alt;
    alt.spec = lxf;
    alt.vertices = {VertexKey{0, 1}, VertexKey{0, 0}, VertexKey{0, 1},
                    VertexKey{0, 2}, VertexKey{1, 2}};
    CHECK(tau_times(alt, 0) == std::vector<std::size_t>{1, 3, 4});
    CHECK(tau_times(alt, 1) == std::vector<std::size_t>{0, 2});
    const auto counts = orbit_visit_counts(alt);
    CHECK(counts == std::vector<std::uint64_t>{3, 2});
}

TEST_CASE("long-walk orbit occupancy matches the stationary vector within 3 SE") {
    const auto spec = GraphFamilySpec::lattice_cross_finite(1, FiniteFactor::path(3));
    const OrbitChain chain = orbit_transition_matrix(spec);
    const auto pi = stationary_distribution(chain);
    const int reps = 60;
    const std::size_t N = 4000;
    std::vector<double> occ0;
    for (int r = 0; r < reps; ++r) {
        const auto traj = simulate_srw(spec, spec.origin(), N,
                                       RngStream{5150, stream_id_of("occ", r)});
        const auto counts = orbit_visit_counts(traj);
        occ0.push_back(static_cast<double>(counts[0]) / static_cast<double>(N + 1));
    }
    const double mean = sample_mean(occ0);
    const double se = sample_sd(occ0) / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(mean - pi[0]) <= 3.0 * se);
}

TEST_CASE("tau-time frequency matches the stationary mass of the target orbit") {
    const auto spec = GraphFamilySpec::lattice_cross_finite(1, FiniteFactor::path(3));
    const OrbitChain chain = orbit_transition_matrix(spec);
    const auto pi = stationary_distribution(chain);
    const int reps = 50;
    const std::size_t N = 3000;
    std::vector<double> freq;
    for (int r = 0; r < reps; ++r) {
        const auto traj = simulate_srw(spec, spec.origin(), N,
                                       RngStream{6207, stream_id_of("tau", r)});
        freq.push_back(static_cast<double>(tau_times(traj, 1).size()) /
                       static_cast<double>(N + 1));
    }
    const double mean = sample_mean(freq);
    const double se = sample_sd(freq) / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(mean - pi[1]) <= 3.0 * se);
}

TEST_CASE("estimate_g: degenerate horizon and recurrent decay") {
    const auto z2 = GraphFamilySpec::lattice(2);
    const GEstimate zero = estimate_g(z2, 0, 0, 100, RngStream{9, 9});
    CHECK(zero.ghat == 1.0);  // no pairs beyond (0,0) exist at T = 0

    // recurrence forces intersection: ghat decreases along the T ladder
    const GEstimate g100 = estimate_g(z2, 0, 100, 400, RngStream{12, 1});
    const GEstimate g1000 = estimate_g(z2, 0, 1000, 400, RngStream{12, 1});
    CHECK(g1000.ghat < g100.ghat);
    CHECK(g100.ghat < 1.0);
    CHECK(zero.standard_error >= 0.0);
}

TEST_CASE("ghat is exactly non-increasing on nested replays of the same streams") {
    const auto spec = GraphFamilySpec::lattice(3);
    const std::size_t T2 = 800;
    std::uint64_t ok_short = 0, ok_long = 0;
    for (int r = 0; r < 150; ++r) {
        const auto pair = simulate_two_sided(spec, spec.origin(), T2,
                                             RngStream{77, stream_id_of("nest", r)});
        const std::size_t scale = first_intersection_scale(pair.forward, pair.backward);
        if (scale > 200) ++ok_short;
        if (scale > T2) ++ok_long;
    }
    CHECK(ok_long <= ok_short);
}

TEST_CASE("non-intersection estimate on Z^5 stabilizes above the certified bound") {
    // nested horizons on the same streams: the T=1000 events contain the
    // T=4000 events, so the estimate can only shrink, and on a covered
    // family it levels off above c_hat
    const auto z5 = GraphFamilySpec::lattice(5);
    const RngStream stream{2025, 4};
    const GEstimate g1k = estimate_g(z5, 0, 1000, 300, stream);
    const GEstimate g4k = estimate_g(z5, 0, 4000, 300, stream);
    CHECK(g4k.ghat <= g1k.ghat);
    CHECK((g1k.ghat - g4k.ghat) / g1k.ghat < 0.10);
    // exact kernel value for lattice(5) at er_horizon 32, audit range [8,30]
    const double c_hat = 0.46543809101393208;
    CHECK(g4k.ghat > c_hat - 2.0 * g4k.standard_error);
}

TEST_CASE("first_intersection_scale catches origin returns on either side") {
    Trajectory f, b;
    f.spec = b.spec = GraphFamilySpec::lattice(1);
    f.vertices = {VertexKey{0}, VertexKey{1}, VertexKey{2}};
    b.vertices = {VertexKey{0}, VertexKey{-1}, VertexKey{0}};
    CHECK(first_intersection_scale(f, b) == 2);  // backward returns to o at j=2

    b.vertices = {VertexKey{0}, VertexKey{-1}, VertexKey{-2}};
    CHECK(first_intersection_scale(f, b) == SIZE_MAX);

    b.vertices = {VertexKey{0}, VertexKey{1}, VertexKey{0}};
    CHECK(first_intersection_scale(f, b) == 1);  // S1_1 = S2_1 = 1
}

TEST_CASE("select_star_orbit: tie-break and input validation") {
    GEstimate a, b;
    a.orbit = 0;
    a.horizon = b.horizon = 100;
    a.replicates = b.replicates = 50;
    a.ghat = 0.3;
    b.orbit = 1;
    b.ghat = 0.3;
    CHECK(select_star_orbit({a, b}) == 0);  // tie -> lowest index
    b.ghat = 0.31;
    CHECK(select_star_orbit({a, b}) == 1);
    CHECK(select_star_orbit({b, a}) == 1);  // order-insensitive
    GEstimate dup = a;
    CHECK_THROWS_AS(select_star_orbit({a, dup}), ConfigError);
    b.replicates = 51;
    CHECK_THROWS_AS(select_star_orbit({a, b}), ConfigError);
}
