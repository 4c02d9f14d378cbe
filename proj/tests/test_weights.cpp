#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "driftlab/errors.hpp"
#include "driftlab/weights.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace driftlab;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

ModelManifold euclid(int n) { return ModelManifold(n, WarpingFunction::euclidean()); }
}  // namespace

TEST_CASE("weight evaluation") {
    CHECK(Weight::exponential(1.0).value(0.0) == 1.0);
    CHECK(Weight::polynomial(5.0).value(1.0) == doctest::Approx(0.03125).epsilon(1e-14));
    CHECK(Weight::stretched_exponential(2.0, 0.5).value(4.0) ==
          doctest::Approx(std::exp(-4.0)).epsilon(1e-14));

    // Positive, non-increasing, unit at the pole.
    for (const auto& w : {Weight::exponential(0.7), Weight::stretched_exponential(1.3, 0.4),
                          Weight::polynomial(2.5)}) {
        CHECK(w.value(0.0) == 1.0);
        double prev = 1.0;
        for (double r = 0.25; r <= 64.0; r *= 2.0) {
            const double v = w.value(r);
            CHECK(v > 0.0);
            CHECK(v <= prev);
            prev = v;
        }
    }

    CHECK_THROWS_AS(Weight::exponential(0.0), InputError);
    CHECK_THROWS_AS(Weight::stretched_exponential(1.0, 1.0), InputError);
    CHECK_THROWS_AS(Weight::polynomial(-1.0), InputError);
}

TEST_CASE("delta_min") {
    CHECK(delta_min(2.0) == doctest::Approx(1.0).epsilon(1e-15));
    // Decreasing in p, limit 1/2.
    double prev = delta_min(1.01);
    for (double p : {1.1, 1.5, 2.0, 4.0, 16.0}) {
        const double d = delta_min(p);
        CHECK(d < prev);
        CHECK(d > 0.5);
        prev = d;
    }
    CHECK_THROWS_AS(delta_min(1.0), InvalidExponentError);
    CHECK_THROWS_AS(delta_min(0.5), InvalidExponentError);
}

TEST_CASE("admissibility thresholds recomputed by hand") {
    SUBCASE("first family: p=2, beta=1.5, K=1 needs c0 > 1.875") {
        // By hand: delta = 2/(2*1) = 1; beta^2 delta + beta K = 2.25 + 1.5 = 3.75.
        const double threshold_by_hand = 1.5 * 1.5 * 1.0 + 1.5 * 1.0;
        const auto ap = admissible_params(Theorem::T22, 1.0, 1.0, 3, 2.0, 1.9, 1.5);
        CHECK(ap.pc0_threshold == doctest::Approx(threshold_by_hand).epsilon(1e-15));
        CHECK(ap.min_c0() == doctest::Approx(1.875).epsilon(1e-15));
        CHECK(ap.feasible);

        const auto boundary = admissible_params(Theorem::T22, 1.0, 1.0, 3, 2.0, 1.875, 1.5);
        CHECK_FALSE(boundary.feasible);  // strict inequality
    }
    SUBCASE("polynomial family: p=2, tau=5, K=2 needs c0 > 14.75") {
        // By hand: (tau*delta/2)(tau+2) + K(tau+1) = 2.5*7 + 2*6 = 29.5.
        const double threshold_by_hand = 0.5 * 5.0 * 1.0 * (5.0 + 2.0) + 2.0 * (5.0 + 1.0);
        const auto ap = admissible_params(Theorem::T24, 1.0, 2.0, 3, 2.0, 15.0, 5.0);
        CHECK(ap.pc0_threshold == doctest::Approx(threshold_by_hand).epsilon(1e-15));
        CHECK(ap.min_c0() == doctest::Approx(14.75).epsilon(1e-15));
        CHECK(ap.feasible);  // tau = 5 > alpha + N - 1 = 3 and 30 > 29.5
    }
    SUBCASE("stretched family: p=2, beta=2, theta=0.5, K=1") {
        // By hand: beta^2 theta^2 delta + beta K theta + K = 1 + 1 + 1 = 3.
        const auto ap = admissible_params(Theorem::T23, 1.0, 1.0, 3, 2.0, 2.0, 2.0, 0.5);
        CHECK(ap.pc0_threshold == doctest::Approx(3.0).epsilon(1e-15));
        CHECK(ap.min_c0() == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(ap.feasible);
    }
    SUBCASE("candidate on the lower bound is infeasible regardless of c0") {
        const auto ap = admissible_params(Theorem::T22, 1.5, 1.0, 3, 2.0, 1e9, 1.5);
        CHECK_FALSE(ap.candidate_ok);
        CHECK_FALSE(ap.feasible);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(admissible_params(Theorem::T22, 1.0, 1.0, 3, 1.0, 1.0, 2.0),
                        InvalidExponentError);
        CHECK_THROWS_AS(admissible_params(Theorem::T22, 1.0, 1.0, 3, 2.0, 0.0, 2.0), InputError);
        CHECK_THROWS_AS(admissible_params(Theorem::T23, 1.0, 1.0, 3, 2.0, 1.0, 2.0, 0.0),
                        InputError);
    }
}

TEST_CASE("weighted norms") {
    const auto one = [](double) { return 1.0; };

    SUBCASE("u = 1, N=3, tau=5, infinite range: 4 pi B(3,2) = pi/3") {
        const auto n = weighted_lp_norm(euclid(3), one, true, Weight::polynomial(5.0), 2.0, kInf);
        CHECK(n.tail == TailVerdict::Convergent);
        CHECK(n.value == doctest::Approx(kPi / 3.0).epsilon(1e-8));
    }
    SUBCASE("u = 0 gives zero") {
        const auto n = weighted_lp_norm(euclid(3), [](double) { return 0.0; }, true,
                                        Weight::polynomial(5.0), 2.0, kInf);
        CHECK(n.value == 0.0);
        CHECK(n.tail == TailVerdict::Convergent);
    }
    SUBCASE("tau = 2 on N=3 diverges: tail exponent (N-1) - tau = 0 >= -1") {
        const auto n = weighted_lp_norm(euclid(3), one, true, Weight::polynomial(2.0), 2.0, kInf);
        CHECK(n.tail == TailVerdict::Divergent);
        CHECK(std::isinf(n.value));
    }
}

TEST_CASE("norm homogeneity: |c u|^p scales by |c|^p") {
    const double c = -2.5;
    const double p = 2.5;
    const auto u = [](double r) { return 1.0 / (1.0 + r); };
    const auto cu = [&](double r) { return c * u(r); };
    const Weight w = Weight::polynomial(3.0);
    const double base = weighted_lp_norm(euclid(3), u, true, w, p, 30.0).value;
    const double scaled = weighted_lp_norm(euclid(3), cu, true, w, p, 30.0).value;
    CHECK(std::abs(scaled - std::pow(std::abs(c), p) * base) <=
          1e-10 * std::pow(std::abs(c), p) * base);
}

TEST_CASE("norm is monotone decreasing in tau") {
    const auto u = [](double r) { return std::cos(r); };
    const double n1 = weighted_lp_norm(euclid(3), u, true, Weight::polynomial(2.0), 2.0, 50.0).value;
    const double n2 = weighted_lp_norm(euclid(3), u, true, Weight::polynomial(4.0), 2.0, 50.0).value;
    CHECK(n2 <= n1);
}

TEST_CASE("membership arithmetic for bounded functions") {
    ModelManifold pl(3, WarpingFunction::power_law(2.0));  // (N-1)lambda + 1 = 5
    const auto one = [](double) { return 1.0; };
    CHECK(weighted_lp_norm(pl, one, true, Weight::polynomial(5.01), 2.0, 10.0).tail ==
          TailVerdict::Convergent);
    CHECK(weighted_lp_norm(pl, one, true, Weight::polynomial(4.99), 2.0, 10.0).tail ==
          TailVerdict::Divergent);
    // The stronger requirement tau > alpha + N - 1 = 7 also converges.
    CHECK(weighted_lp_norm(pl, one, true, Weight::polynomial(7.5), 2.0, 10.0).tail ==
          TailVerdict::Convergent);

    // Exponential-type weights always beat polynomial volume.
    CHECK(weighted_lp_norm(pl, one, true, Weight::exponential(0.1), 2.0, 10.0).tail ==
          TailVerdict::Convergent);
    CHECK(weighted_lp_norm(pl, one, true, Weight::stretched_exponential(0.1, 0.3), 2.0, 10.0).tail ==
          TailVerdict::Convergent);

    // Hyperbolic volume element ~ e^((N-1) sqrt(k) r).
    ModelManifold hyp(2, WarpingFunction::hyperbolic(1.0));
    CHECK(weighted_lp_norm(hyp, one, true, Weight::exponential(1.2), 2.0, 10.0).tail ==
          TailVerdict::Convergent);
    CHECK(weighted_lp_norm(hyp, one, true, Weight::exponential(0.9), 2.0, 10.0).tail ==
          TailVerdict::Divergent);
    CHECK(weighted_lp_norm(hyp, one, true, Weight::polynomial(9.0), 2.0, 10.0).tail ==
          TailVerdict::Divergent);

    // Unbounded u or sampled warping: no sound exponent arithmetic.
    CHECK(weighted_lp_norm(euclid(3), one, false, Weight::polynomial(5.0), 2.0, 10.0).tail ==
          TailVerdict::Undetermined);
    std::vector<double> rs, phis;
    for (double r = 0.0; r <= 20.0 + 1e-9; r += 0.1) {
        rs.push_back(r);
        phis.push_back(r);
    }
    ModelManifold sampled(3, WarpingFunction::sampled(rs, phis));
    CHECK(weighted_lp_norm(sampled, one, true, Weight::polynomial(5.0), 2.0, 10.0).tail ==
          TailVerdict::Undetermined);
    CHECK_THROWS_AS(weighted_lp_norm(sampled, one, true, Weight::polynomial(5.0), 2.0, kInf),
                    InputError);
}
