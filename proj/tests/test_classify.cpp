#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "empskit/classify.hpp"
#include "empskit/error.hpp"

using namespace empskit;

namespace {

std::vector<double> random_simplex_point(int n, Rng& rng, double cap) {
    // Rejection sample a_i >= 0, sum 1, every a_i below cap.
    for (;;) {
        std::vector<double> a(static_cast<std::size_t>(n));
        double sum = 0.0;
        for (auto& x : a) {
            x = -std::log(1.0 - rng.uniform());
            sum += x;
        }
        for (auto& x : a) x /= sum;
        if (*std::max_element(a.begin(), a.end()) < cap) return a;
    }
}

}  // namespace

TEST_CASE("builders reproduce the named states") {
    SUBCASE("dicke(3,1) is the uniform W state") {
        const auto d = dicke_state(3, 1);
        const double amp = 1.0 / std::sqrt(3.0);
        for (std::size_t k = 0; k < 8; ++k) {
            const bool support = k == 1 || k == 2 || k == 4;
            CHECK(std::abs(d[k] - (support ? amp : 0.0)) < 1e-15);
        }
    }
    SUBCASE("ghz(3, pi/4)") {
        const auto g = ghz_state(3, M_PI / 4);
        CHECK(std::abs(g[0] - M_SQRT1_2) < 1e-15);
        CHECK(std::abs(g[7] - M_SQRT1_2) < 1e-15);
        for (std::size_t k = 1; k < 7; ++k) CHECK(g[k] == Complex{});
    }
    SUBCASE("degenerate W coefficients give a product state") {
        const double a[3] = {1.0, 0.0, 0.0};
        const auto w = w_state(a);
        CHECK(std::abs(w[4] - 1.0) < 1e-15);
        const auto v = emps_vector(w);
        for (double e : v.values()) CHECK(e == 0.0);
    }
    SUBCASE("build_state dispatch") {
        CHECK(std::holds_alternative<PureState>(build_state(DickeSpec{4, 2})));
        CHECK(std::holds_alternative<DensityMatrix>(build_state(NoisyGhzSpec{0.3})));
        CHECK(num_qubits(build_state(GhzSpec{5, 0.3})) == 5);
    }
    SUBCASE("noisy states are valid density matrices") {
        for (double v : {0.0, 0.25, 1.0}) {
            CHECK_NOTHROW(DensityMatrix(noisy_w_state(v).matrix()));
            CHECK_NOTHROW(DensityMatrix(noisy_ghz_state(v).matrix()));
        }
    }
    CHECK(dicke_support_size(6, 3) == 20);
}

TEST_CASE("builder validation names the violated constraint") {
    const double bad_sum[3] = {0.5, 0.3, 0.3};
    const double negative[3] = {1.2, -0.1, -0.1};
    CHECK_THROWS_WITH_AS(w_state(bad_sum), doctest::Contains("sum to 1"), ValidationError);
    CHECK_THROWS_WITH_AS(w_state(negative), doctest::Contains("negative"), ValidationError);
    CHECK_THROWS_WITH_AS(ghz_state(3, 0.0), doctest::Contains("theta"), ValidationError);
    CHECK_THROWS_AS(ghz_state(3, 0.8), ValidationError);
    CHECK_NOTHROW(ghz_state(3, 0.7853981634));
    CHECK_THROWS_AS(ghz_state(13, 0.5), ValidationError);
    CHECK_THROWS_WITH_AS(dicke_state(4, 0), doctest::Contains("1..n-1"), ValidationError);
    CHECK_THROWS_AS(dicke_state(4, 4), ValidationError);
    const double three[3] = {1.0, 0.0, 0.0};
    CHECK_THROWS_WITH_AS(generalized_dicke_state(4, 2, three), doctest::Contains("expected 6"), ValidationError);
    CHECK_THROWS_AS(biseparable_state(1.0, 0.0, 4), ValidationError);
    CHECK_THROWS_AS(biseparable_state(1.0, 1.0, 1), ValidationError);
    CHECK_THROWS_WITH_AS(noisy_w_state(1.5), doctest::Contains("[0, 1]"), ValidationError);
    CHECK_THROWS_AS(noisy_ghz_state(-0.1), ValidationError);
}

TEST_CASE("three-qubit classification examples") {
    SUBCASE("GHZ certified by the W facet") {
        const auto label = classify_three_qubit(ghz_state(3, M_PI / 4));
        CHECK(label.verdict == Verdict::GhzClass);
        CHECK(label.genuinely_entangled);
        CHECK(std::abs(label.total - 1.5) < 1e-12);
        CHECK(label.evidence.front().slack < 0.0);
    }
    SUBCASE("uniform W lies in the overlap region") {
        const double a[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
        const auto label = classify_three_qubit(w_state(a));
        CHECK(label.verdict == Verdict::WClassCompatible);
        CHECK(label.genuinely_entangled);
        CHECK(std::abs(label.eta - 1.0 / 3.0) < 1e-12);
        CHECK(describe(label) == "W-or-GHZ region, genuinely entangled");
    }
    SUBCASE("Bell pair with each qubit factored") {
        for (int cut = 1; cut <= 3; ++cut) {
            const auto label = classify_three_qubit(biseparable_state(M_SQRT1_2, M_SQRT1_2, cut));
            CHECK(label.verdict == Verdict::Biseparable);
            REQUIRE(label.cut);
            CHECK(*label.cut == cut);
            CHECK_FALSE(label.genuinely_entangled);
        }
    }
    SUBCASE("product state") {
        CHECK(classify_three_qubit(PureState::basis(3, 5)).verdict == Verdict::FullySeparable);
    }
    SUBCASE("W with a dominant coefficient has eta = 0 but no biseparable pattern") {
        const double a[3] = {0.6, 0.2, 0.2};
        const auto label = classify_three_qubit(w_state(a));
        CHECK(std::abs(label.eta) < 1e-12);
        CHECK(label.verdict == Verdict::Undetermined);
    }
    CHECK_THROWS_AS(classify_three_qubit(PureState::basis(4, 0)), ArgumentError);
}

TEST_CASE("GHZ states above arcsin(sqrt(1/3)) are certified") {
    const double edge = std::asin(std::sqrt(1.0 / 3.0));
    for (int k = 1; k <= 50; ++k) {
        const double theta = edge + (M_PI / 4 - edge) * k / 50.0;
        CHECK(classify_three_qubit(ghz_state(3, theta)).verdict == Verdict::GhzClass);
    }
    // Just below the edge the total sits under the facet and only eta speaks.
    const auto below = classify_three_qubit(ghz_state(3, edge - 1e-3));
    CHECK(below.verdict == Verdict::WClassCompatible);
}

TEST_CASE("polytope membership") {
    const auto ghz_vertex = EmpsVector({0.5, 0.5, 0.5});
    CHECK(polytope_membership_3q(ghz_vertex, PolytopeClass::Ghz).member);
    CHECK_FALSE(polytope_membership_3q(ghz_vertex, PolytopeClass::W).member);

    const auto bs_vertex = EmpsVector({0.0, 0.5, 0.5});
    CHECK(polytope_membership_3q(bs_vertex, PolytopeClass::Ghz).member);
    CHECK(polytope_membership_3q(bs_vertex, PolytopeClass::W).member);

    const auto inner = polytope_membership_3q(EmpsVector({0.4, 0.3, 0.2}), PolytopeClass::W);
    CHECK(inner.member);
    const auto w_facet = std::find_if(inner.facets.begin(), inner.facets.end(),
                                      [](const FacetSlack& f) { return f.facet.rfind("w_facet", 0) == 0; });
    REQUIRE(w_facet != inner.facets.end());
    CHECK(std::abs(w_facet->slack - 0.1) < 1e-15);
    const auto polygon1 = std::find_if(inner.facets.begin(), inner.facets.end(),
                                       [](const FacetSlack& f) { return f.facet == "polygon_1"; });
    CHECK(std::abs(polygon1->slack - 0.1) < 1e-15);

    CHECK_FALSE(polytope_membership_3q(EmpsVector({0.5, 0.1, 0.1}), PolytopeClass::Ghz).member);
    CHECK_THROWS_AS(polytope_membership_3q(EmpsVector({0.1, 0.1}), PolytopeClass::W), ArgumentError);
}

TEST_CASE("SLOCC orbit sampling") {
    SUBCASE("product orbit stays at the origin") {
        for (const auto& v : slocc_orbit_sample(PureState::basis(3, 0), 200, 5)) {
            for (double e : v.values()) CHECK(std::abs(e) < 1e-12);
        }
    }
    SUBCASE("W orbit stays below the W facet") {
        const double a[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
        for (const auto& v : slocc_orbit_sample(w_state(a), 2000, 42)) CHECK(total_emps(v) <= 1.0 + 1e-9);
    }
    SUBCASE("GHZ orbit fills the GHZ polytope and crosses the W facet") {
        const auto samples = slocc_orbit_sample(ghz_state(3, M_PI / 4), 2000, 42);
        bool crossed = false;
        for (const auto& v : samples) {
            CHECK(polytope_membership_3q(v, PolytopeClass::Ghz).member);
            crossed = crossed || total_emps(v) > 1.0;
        }
        CHECK(crossed);
    }
    SUBCASE("samples depend only on seed + index") {
        const auto psi = ghz_state(4, 0.5);
        const auto all = slocc_orbit_sample(psi, 10, 100);
        const auto again = slocc_orbit_sample(psi, 10, 100);
        const auto tail = slocc_orbit_sample(psi, 3, 107);
        for (int k = 0; k < 10; ++k) {
            CHECK(std::equal(all[k].values().begin(), all[k].values().end(), again[k].values().begin()));
        }
        for (int k = 0; k < 3; ++k) {
            CHECK(std::equal(tail[k].values().begin(), tail[k].values().end(), all[7 + k].values().begin()));
        }
    }
    CHECK_THROWS_AS(slocc_orbit_sample(PureState::basis(3, 0), 0), ArgumentError);
}

TEST_CASE("local invertible sampler respects the determinant floor") {
    Rng rng(3);
    for (int k = 0; k < 1000; ++k) {
        const auto g = random_local_invertible(rng);
        CHECK(std::abs(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)) >= 1e-6);
    }
}

TEST_CASE("noisy W / GHZ discrimination") {
    const auto w = discriminate_noisy(NoisyFamily::W, 0.2);
    CHECK(std::abs(w.total - 1.1) < 1e-12);
    CHECK(std::abs(w.v - 0.2) < 1e-12);
    CHECK(w.matches_family);
    CHECK(w.below_w_bound);
    CHECK(w.in_entangled_range);

    for (double v : {0.0, 0.1, 0.5, 0.9}) {
        const auto g = discriminate_noisy(NoisyFamily::Ghz, v);
        CHECK(std::abs(g.total - 1.5) < 1e-12);
        CHECK(std::abs(g.v - v) < 1e-12);
        CHECK(g.matches_family);
        CHECK_FALSE(g.below_w_bound);
    }
    CHECK_FALSE(discriminate_noisy(NoisyFamily::Ghz, 0.6).in_entangled_range);

    const double edge = 9.0 / 17.0;
    const auto near = discriminate_noisy(NoisyFamily::W, edge - 1e-9);
    CHECK(near.total < 43.0 / 34.0);
    CHECK(std::abs(near.total - 43.0 / 34.0) < 1e-9);
    CHECK_FALSE(discriminate_noisy(NoisyFamily::W, edge).in_entangled_range);

    // A GHZ mixture presented as the W family does not match it.
    CHECK_FALSE(discriminate_noisy(noisy_ghz_state(0.3), NoisyFamily::W).matches_family);
    CHECK_THROWS_AS(discriminate_noisy(DensityMatrix::maximally_mixed(2), NoisyFamily::W), ArgumentError);
}

TEST_CASE("facet placements of the worked families") {
    Rng rng(31);
    for (int n = 3; n <= 7; ++n) {
        const std::vector<double> uniform(static_cast<std::size_t>(n), 1.0 / n);
        CHECK(std::abs(total_emps(emps_vector(w_state(uniform))) - 1.0) < 1e-9);
        for (int l = 1; l < n; ++l) {
            CHECK(std::abs(total_emps(emps_vector(dicke_state(n, l))) - std::min(l, n - l)) < 1e-9);
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> c(dicke_support_size(n, l));
                double norm = 0.0;
                for (auto& x : c) {
                    x = rng.normal();
                    norm += x * x;
                }
                for (auto& x : c) x /= std::sqrt(norm);
                const auto v = emps_vector(generalized_dicke_state(n, l, c));
                CHECK(total_emps(v) <= std::min(l, n - l) + 1e-9);
            }
        }
    }
}

TEST_CASE("eta separations between the W and GHZ families") {
    Rng rng(32);
    for (int n = 3; n <= 8; ++n) {
        for (double theta : {0.15, 0.4, 0.7}) {
            const double s2 = std::sin(theta) * std::sin(theta);
            CHECK(std::abs(eta_indicator(ghz_state(n, theta)) - (n - 2) * s2) < 1e-9);
        }
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_simplex_point(n, rng, 0.5);
            const double largest = *std::max_element(a.begin(), a.end());
            CHECK(std::abs(eta_indicator(w_state(a)) - (1.0 - 2.0 * largest)) < 1e-9);
        }
        std::vector<double> dominant(static_cast<std::size_t>(n), 0.4 / (n - 1));
        dominant[static_cast<std::size_t>(n) / 2] = 0.6;
        CHECK(std::abs(eta_indicator(w_state(dominant))) < 1e-9);
    }
}

TEST_CASE("verdict names") {
    CHECK(verdict_name(Verdict::GhzClass) == "ghz_class");
    CHECK(verdict_name(Verdict::Biseparable) == "biseparable");
    ClassLabel label;
    label.verdict = Verdict::Biseparable;
    label.cut = 2;
    CHECK(describe(label) == "biseparable, qubit 2 factored");
}
