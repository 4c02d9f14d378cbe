#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "driftlab/errors.hpp"
#include "driftlab/fields.hpp"

#include <cmath>
#include <vector>

using namespace driftlab;

namespace {

ModelManifold euclid(int n) { return ModelManifold(n, WarpingFunction::euclidean()); }

const std::vector<double>& grid() {
    static const std::vector<double> g = make_hypothesis_grid();
    return g;
}

const PotentialC& unit_potential() {
    static const PotentialC c = PotentialC::constant(1.0);
    return c;
}

}  // namespace

TEST_CASE("divergence closed forms") {
    // Identity field b_r = r on Euclidean N=3: div = N everywhere.
    RadialDrift identity = RadialDrift::power_affine(1.0, 1.0, 1.0);  // (1+r) r/(1+r) = r
    CHECK(divergence(euclid(3), identity, 5.0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(divergence_at_pole(euclid(3), identity) == doctest::Approx(3.0).epsilon(1e-12));

    // b_r = K r^sigma: div = K (sigma + N - 1) r^(sigma-1).
    RadialDrift quad = RadialDrift::closed_form([](double r) { return 2.0 * r * r; },
                                                [](double r) { return 4.0 * r; }, "2r^2");
    CHECK(divergence(euclid(3), quad, 1.0) == doctest::Approx(8.0).epsilon(1e-13));

    // b_r = sin r on Euclidean N=2 at r = pi: cos(pi) + sin(pi)/pi = -1.
    RadialDrift sinusoid = RadialDrift::closed_form([](double r) { return std::sin(r); },
                                                    [](double r) { return std::cos(r); }, "sin");
    CHECK(divergence(euclid(2), sinusoid, std::acos(-1.0)) == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK_THROWS_AS(divergence(euclid(3), identity, 0.0), PoleSingularityError);
}

TEST_CASE("divergence agrees with the flux form phi^(1-N) d/dr(phi^(N-1) b_r)") {
    const std::vector<ModelManifold> manifolds{
        euclid(3), ModelManifold(2, WarpingFunction::hyperbolic(1.0)),
        ModelManifold(3, WarpingFunction::power_law(2.0))};
    const std::vector<RadialDrift> drifts{RadialDrift::power_affine(2.0, 2.0, 0.0),
                                          RadialDrift::sine(1.3),
                                          RadialDrift::power_affine(0.5, 0.5, 1.0)};
    for (const auto& m : manifolds) {
        const int n = m.dimension;
        for (const auto& b : drifts) {
            for (double r : {0.5, 1.0, 2.5, 7.0, 20.0}) {
                const double h = 1e-5 * std::max(1.0, r);
                const auto flux = [&](double t) {
                    return std::pow(m.warping.value(t), n - 1) * b.value(t);
                };
                const double centered = (flux(r + h) - flux(r - h)) / (2.0 * h);
                const double alt = centered / std::pow(m.warping.value(r), n - 1);
                CHECK(std::abs(divergence(m, b, r) - alt) <= 1e-8);
            }
        }
    }
}

TEST_CASE("drift profiles vanish at the pole") {
    CHECK(RadialDrift::power_affine(2.0, 2.0, 0.0).value(0.0) == 0.0);
    CHECK(RadialDrift::sine(3.0).value(0.0) == 0.0);
    CHECK_THROWS_AS(RadialDrift::closed_form([](double) { return 1.0; },
                                             [](double) { return 0.0; }),
                    InputError);
}

TEST_CASE("H2 pass and H0 fail for the linear drift b_r = 2r") {
    RadialDrift b = RadialDrift::power_affine(2.0, 1.0, 1.0);  // exactly 2r
    const auto h2 = check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H2, grid());
    CHECK(h2.pass);
    CHECK(h2.constant("sigma") == doctest::Approx(1.0));
    CHECK(h2.constant("K2") == doctest::Approx(2.0).epsilon(0.05));
    CHECK_FALSE(h2.exponent_fitted);

    const auto h0 = check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H0, grid());
    CHECK_FALSE(h0.pass);
    REQUIRE_FALSE(h0.witnesses.empty());
    CHECK(h0.witnesses.front().r > 10.0);
    CHECK(h0.witnesses.front().lhs >= 1.01 * h0.witnesses.front().rhs);
}

TEST_CASE("H0 passes for the bounded oscillating drift") {
    RadialDrift b = RadialDrift::sine(1.0);
    const auto h0 = check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H0, grid());
    CHECK(h0.pass);

    // Independent oracle: brute-force grid sup of |b_r| on D+ and [div b]_-.
    double k_oracle = 0.0;
    for (double r : grid()) {
        const double br = b.value(r);
        if (br > 0.0) k_oracle = std::max(k_oracle, br);
        const double dv = r == 0.0 ? divergence_at_pole(euclid(3), b) : divergence(euclid(3), b, r);
        k_oracle = std::max(k_oracle, std::max(0.0, -dv));
    }
    CHECK(h0.constant("K1") == doctest::Approx(k_oracle).epsilon(1e-12));
}

TEST_CASE("S22 pass for the superlinear drift b_r ~ 2r^2") {
    RadialDrift b = RadialDrift::power_affine(2.0, 2.0, 0.0);
    const auto s22 = check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::S22, grid());
    CHECK(s22.pass);
    CHECK(s22.constant("sigma") == doctest::Approx(2.0));
    CHECK(s22.constant("K") > 1.9);  // tail infimum of b_r / r^2 approaches 2
    CHECK(s22.constant("K") < 2.0 + 1e-9);
    CHECK(s22.constant("R0") > 1.0);
    CHECK(s22.constant("R0") < 2.0);

    const auto h2 = check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H2, grid());
    CHECK_FALSE(h2.pass);
    REQUIRE_FALSE(h2.witnesses.empty());
    CHECK(h2.witnesses.front().lhs >= 1.01 * h2.witnesses.front().rhs);
}

TEST_CASE("zero drift passes the growth bounds with K = 0 and fails S22") {
    for (Hypothesis h : {Hypothesis::H0, Hypothesis::H2}) {
        const auto rep = check_hypothesis(euclid(3), RadialDrift::zero(), unit_potential(), h, grid());
        CHECK(rep.pass);
        CHECK(rep.constant("K") == 0.0);
    }
    const auto h1 = check_hypothesis(euclid(3), RadialDrift::zero(), unit_potential(),
                                     Hypothesis::H1, grid(), 0.5);
    CHECK(h1.pass);
    CHECK(h1.constant("K") == 0.0);
    const auto s22 =
        check_hypothesis(euclid(3), RadialDrift::zero(), unit_potential(), Hypothesis::S22, grid());
    CHECK_FALSE(s22.pass);
    REQUIRE_FALSE(s22.witnesses.empty());
}

TEST_CASE("H1 honours the theta constraint sigma <= 1 - theta") {
    RadialDrift b = RadialDrift::power_affine(2.0, 0.5, 0.0);
    CHECK(check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H1, grid(), 0.5).pass);
    CHECK_FALSE(check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H1, grid(), 0.7).pass);
    CHECK_THROWS_AS(check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H1, grid(), 0.0),
                    InputError);
}

TEST_CASE("H3 reports the potential floor") {
    const auto pass = check_hypothesis(euclid(3), RadialDrift::zero(),
                                       PotentialC::polynomial({2.0, 0.0, 1.0}), Hypothesis::H3, grid());
    CHECK(pass.pass);
    CHECK(pass.constant("c0") == doctest::Approx(2.0));

    const auto fail = check_hypothesis(euclid(3), RadialDrift::zero(), PotentialC::constant(0.0),
                                       Hypothesis::H3, grid());
    CHECK_FALSE(fail.pass);
    REQUIRE_FALSE(fail.witnesses.empty());
}

TEST_CASE("exclusivity of H2 and S22 across the power-affine family") {
    for (double a : {0.5, 2.0, 10.0}) {
        for (double s : {0.5, 1.0, 1.5, 2.0, 3.0}) {
            RadialDrift b = RadialDrift::power_affine(a, s, 0.0);
            const bool h2 = check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H2, grid()).pass;
            const bool s22 =
                check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::S22, grid()).pass;
            CHECK(h2 == (s <= 1.0));
            CHECK(s22 == (s > 1.0 && a > 1.0));
        }
    }
}

TEST_CASE("monotone certification: any K' > fitted K also certifies") {
    RadialDrift b = RadialDrift::power_affine(2.0, 1.0, 1.0);
    const auto h2 = check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H2, grid());
    REQUIRE(h2.pass);
    const double k_prime = 2.0 * h2.constant("K2") + 1.0;
    const double sigma = h2.constant("sigma");
    for (double r : grid()) {
        const double br = b.value(r);
        if (br > 0.0) {
            CHECK(br <= k_prime * std::pow(1.0 + r, sigma));
        }
        const double dv = r == 0.0 ? divergence_at_pole(euclid(3), b) : divergence(euclid(3), b, r);
        CHECK(std::max(0.0, -dv) <= k_prime * std::pow(1.0 + r, sigma - 1.0));
    }
}

TEST_CASE("sampled profiles get a fitted exponent with the fitted flag") {
    std::vector<double> rs, bs;
    for (double r = 0.0; r <= 220.0 + 1e-9; r += 0.25) {
        rs.push_back(r);
        bs.push_back(2.0 * r * r * r / (1.0 + r));
    }
    RadialDrift b = RadialDrift::sampled(rs, bs);
    const auto s22 = check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::S22, grid());
    CHECK(s22.pass);
    CHECK(s22.exponent_fitted);
    CHECK(s22.constant("sigma") == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("insufficient grids are rejected") {
    RadialDrift b = RadialDrift::zero();
    std::vector<double> short_grid;
    for (int i = 0; i <= 2000; ++i) short_grid.push_back(50.0 * i / 2000.0);  // only reaches 50
    CHECK_THROWS_AS(check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H2, short_grid),
                    InsufficientGridError);
    std::vector<double> coarse;
    for (int i = 0; i <= 500; ++i) coarse.push_back(200.0 * i / 500.0);
    CHECK_THROWS_AS(check_hypothesis(euclid(3), b, unit_potential(), Hypothesis::H2, coarse),
                    InsufficientGridError);
}
