#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "driftlab/errors.hpp"
#include "driftlab/experiments.hpp"

#include <cmath>
#include <vector>

using namespace driftlab;

namespace {

Scenario scenario_u() {
    Scenario sc = Scenario::make("scenario-U", ModelManifold(3, WarpingFunction::euclidean()),
                                 RadialDrift::zero(), PotentialC::constant(1.0),
                                 Weight::polynomial(5.5));
    sc.r_star = 1.0;
    sc.R_ladder = {5.0, 10.0, 20.0, 40.0};
    sc.gammas = {-1.0, 0.0, 1.0, 2.0};
    sc.declared_regime = Regime::UniquenessExpected;
    return sc;
}

Scenario scenario_nu() {
    Scenario sc = Scenario::make("scenario-NU", ModelManifold(3, WarpingFunction::euclidean()),
                                 RadialDrift::power_affine(2.0, 2.0, 0.0), PotentialC::constant(1.0),
                                 Weight::polynomial(5.5));
    sc.r_star = 1.0;
    sc.R_ladder = {64.0, 128.0, 384.0, 512.0};
    sc.gammas = {-1.0, 0.0, 1.0, 2.0};
    sc.declared_regime = Regime::MultiplicityExpected;
    return sc;
}

}  // namespace

TEST_CASE("scenario validation") {
    Scenario sc = scenario_u();
    sc.R_ladder = {5.0, 10.0};
    CHECK_THROWS_AS(sc.validate(), InputError);
    sc = scenario_u();
    sc.R_ladder = {5.0, 6.0, 7.0, 8.0};  // span below 8x
    CHECK_THROWS_AS(sc.validate(), InputError);
    sc = scenario_u();
    sc.r_star = 5.0;  // not below min(R)
    CHECK_THROWS_AS(sc.validate(), InputError);
    sc = scenario_u();
    sc.p = 1.0;
    CHECK_THROWS_AS(sc.validate(), InvalidExponentError);
}

TEST_CASE("dichotomy scan on the decaying scenario") {
    const DichotomyReport rep = dichotomy_scan(scenario_u());
    REQUIRE(rep.probes.size() == 4);

    // Analytic probes u_R(1) = R sinh(1) / sinh(R).
    for (std::size_t i = 0; i < 3; ++i) {
        const double R = rep.probes[i].R;
        const double expected = R * std::sinh(1.0) / std::sinh(R);
        CHECK(std::abs(rep.probes[i].probe - expected) <= 0.01 * expected);
    }
    CHECK(rep.classification == Classification::Decay);
    CHECK(rep.limit_estimate == 0.0);
    CHECK(rep.predicted_regime == Regime::UniquenessExpected);
    CHECK(rep.regime_match);
    CHECK(rep.complete);

    const HypothesisReport* h2 = rep.hypothesis(Hypothesis::H2);
    REQUIRE(h2 != nullptr);
    CHECK(h2->pass);
    const HypothesisReport* s22 = rep.hypothesis(Hypothesis::S22);
    REQUIRE(s22 != nullptr);
    CHECK_FALSE(s22->pass);
}

TEST_CASE("dichotomy scan on the multiplicity scenario") {
    const DichotomyReport rep = dichotomy_scan(scenario_nu());
    CHECK(rep.classification == Classification::Convergence);
    CHECK(std::abs(rep.limit_estimate) >= 0.1);
    CHECK(rep.predicted_regime == Regime::MultiplicityExpected);
    CHECK(rep.regime_match);

    const HypothesisReport* h2 = rep.hypothesis(Hypothesis::H2);
    REQUIRE(h2 != nullptr);
    CHECK_FALSE(h2->pass);
    REQUIRE_FALSE(h2->witnesses.empty());
    const HypothesisReport* s22 = rep.hypothesis(Hypothesis::S22);
    REQUIRE(s22 != nullptr);
    CHECK(s22->pass);
    CHECK(s22->constant("sigma") == doctest::Approx(2.0));

    // H2 failed, so no certified constant backs the polynomial-weight theorem.
    CHECK_FALSE(rep.admissibility.has_value());
}

TEST_CASE("dichotomy with zero boundary value classifies decay") {
    Scenario sc = scenario_nu();
    sc.dichotomy_gamma = 0.0;
    const DichotomyReport rep = dichotomy_scan(sc);
    for (const auto& e : rep.probes) CHECK(e.probe == 0.0);
    CHECK(rep.classification == Classification::Decay);
}

TEST_CASE("truncation differences shrink along the ladder (barrier rate)") {
    Scenario sc = scenario_nu();
    std::vector<double> probes;
    for (double R : {10.0, 20.0, 40.0, 80.0}) {
        const RadialGrid grid = sc.solver.make_grid(R);
        BVPProblem p{sc.manifold, sc.drift, sc.potential, 1.0, R};
        probes.push_back(solve_bvp(p, grid).eval(1.0));
    }
    // With sigma = 2 the barrier rate is ~1/R, so consecutive differences
    // drop by at least 25% per ladder doubling.
    const double d1 = std::abs(probes[1] - probes[0]);
    const double d2 = std::abs(probes[2] - probes[1]);
    const double d3 = std::abs(probes[3] - probes[2]);
    CHECK(d2 <= 0.75 * d1);
    CHECK(d3 <= 0.75 * d2);
}

TEST_CASE("probe decay rate in the uniqueness scenario") {
    Scenario sc = scenario_u();
    std::vector<double> probes;
    for (double R : {5.0, 7.0, 9.0, 11.0}) {
        BVPProblem p{sc.manifold, sc.drift, sc.potential, 1.0, R};
        probes.push_back(solve_bvp(p, sc.solver.make_grid(R)).eval(1.0));
    }
    for (std::size_t i = 0; i + 1 < probes.size(); ++i) {
        CHECK(probes[i + 1] / probes[i] <= std::exp(-1.5));
    }
}

TEST_CASE("gamma family on the multiplicity scenario") {
    const Scenario sc = scenario_nu();
    const FamilyReport rep = gamma_family(sc, 80.0);
    CHECK_FALSE(rep.regime_mismatch_warning);
    CHECK(rep.ok());
    REQUIRE(rep.members.size() == 4);

    // Boundary values pin the pairwise sup distances to |gamma_i - gamma_j|;
    // interior differences shrink, so equality holds within a narrow band.
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            const double gap = std::abs(rep.members[i].gamma - rep.members[j].gamma);
            CHECK(rep.sup_distance[i][j] >= gap - 1e-12);
            CHECK(rep.sup_distance[i][j] <= 1.1 * gap + 1e-12);
        }
    }

    for (const auto& m : rep.members) {
        CHECK(m.residual <= 1e-4);
        CHECK(m.sup_norm <= std::abs(m.gamma) + 1e-12);
        CHECK(m.weighted_norm.tail == TailVerdict::Convergent);
        if (m.gamma == 0.0) {
            CHECK(m.sup_norm == 0.0);
        }
    }

    // Linearity: the gamma = 2 member is exactly twice the gamma = 1 member.
    const auto& u1 = rep.members[2].solution.values;
    const auto& u2 = rep.members[3].solution.values;
    for (std::size_t k = 0; k < u1.size(); ++k) {
        CHECK(std::abs(u2[k] - 2.0 * u1[k]) <= 1e-12 * std::max(1.0, std::abs(u2[k])));
    }
}

TEST_CASE("gamma family warns when the sharpness condition fails") {
    const FamilyReport rep = gamma_family(scenario_u(), 40.0);
    CHECK(rep.regime_mismatch_warning);
    REQUIRE(rep.members.size() == 4);  // still computed
}

TEST_CASE("regime consistency across a scenario suite") {
    struct Case {
        Scenario sc;
        bool expect_sharp;  // S22 expected to pass
    };
    std::vector<Case> suite;

    suite.push_back({scenario_u(), false});
    suite.push_back({scenario_nu(), true});

    // Bounded oscillating drift on the hyperbolic plane, exponential weight.
    {
        Scenario sc = Scenario::make("hyperbolic", ModelManifold(2, WarpingFunction::hyperbolic(1.0)),
                                     RadialDrift::sine(1.0), PotentialC::constant(6.0),
                                     Weight::exponential(2.0));
        sc.R_ladder = {5.0, 10.0, 20.0, 40.0};
        sc.gammas = {0.0, 1.0};
        sc.declared_regime = Regime::UniquenessExpected;
        suite.push_back({sc, false});
    }
    // Stretched-exponential weight with a sublinear drift.
    {
        Scenario sc = Scenario::make("stretched", ModelManifold(3, WarpingFunction::euclidean()),
                                     RadialDrift::power_affine(2.0, 0.5, 0.0), PotentialC::constant(5.0),
                                     Weight::stretched_exponential(3.2, 0.5));
        sc.R_ladder = {5.0, 10.0, 20.0, 40.0};
        sc.gammas = {0.0, 1.0};
        sc.declared_regime = Regime::UniquenessExpected;
        suite.push_back({sc, false});
    }
    // Linear drift with a large potential floor on the power-law manifold.
    {
        Scenario sc = Scenario::make("growth-bounded", ModelManifold(3, WarpingFunction::power_law(1.0)),
                                     RadialDrift::power_affine(2.0, 1.0, 1.0), PotentialC::constant(30.0),
                                     Weight::polynomial(5.5));
        sc.R_ladder = {5.0, 10.0, 20.0, 40.0};
        sc.gammas = {0.0, 1.0};
        sc.declared_regime = Regime::UniquenessExpected;
        suite.push_back({sc, false});
    }
    // Zero drift on a faster-growing power-law manifold.
    {
        Scenario sc = Scenario::make("pl2-zero", ModelManifold(3, WarpingFunction::power_law(2.0)),
                                     RadialDrift::zero(), PotentialC::constant(1.0),
                                     Weight::polynomial(7.5));
        sc.R_ladder = {5.0, 10.0, 20.0, 40.0};
        sc.gammas = {0.0, 1.0};
        sc.declared_regime = Regime::UniquenessExpected;
        suite.push_back({sc, false});
    }
    // Superlinear drifts of varying strength: all multiplicity-expected.
    for (auto [a, s] : std::vector<std::pair<double, double>>{{3.0, 2.0}, {2.0, 2.5}, {5.0, 3.0}, {10.0, 2.0}}) {
        Scenario sc = Scenario::make("superlinear", ModelManifold(3, WarpingFunction::euclidean()),
                                     RadialDrift::power_affine(a, s, 0.0), PotentialC::constant(1.0),
                                     Weight::polynomial(5.5));
        sc.R_ladder = {64.0, 128.0, 384.0, 512.0};
        sc.gammas = {0.0, 1.0};
        sc.declared_regime = Regime::MultiplicityExpected;
        suite.push_back({sc, true});
    }

    REQUIRE(suite.size() >= 10);
    for (const auto& [sc, expect_sharp] : suite) {
        const DichotomyReport rep = dichotomy_scan(sc);
        const HypothesisReport* s22 = rep.hypothesis(Hypothesis::S22);
        const HypothesisReport* h2 = rep.hypothesis(Hypothesis::H2);
        REQUIRE(s22 != nullptr);
        CHECK(s22->pass == expect_sharp);
        if (s22->pass) {
            CHECK(rep.classification == Classification::Convergence);
        }
        if (h2 != nullptr && h2->pass && rep.admissibility && rep.admissibility->feasible) {
            CHECK(rep.classification == Classification::Decay);
        }
        CHECK(rep.regime_match);
    }
}

TEST_CASE("two-part reproduction study") {
    ReproduceConfig cfg;
    cfg.base = scenario_nu();
    cfg.base.manifold = ModelManifold(3, WarpingFunction::power_law(1.0));
    cfg.base.R_ladder = {64.0, 128.0, 384.0, 512.0};
    cfg.growth_bounded_drift = RadialDrift::power_affine(2.0, 1.0, 1.0);
    cfg.growth_bounded_potential = PotentialC::constant(30.0);
    cfg.superlinear_drift = RadialDrift::power_affine(2.0, 2.0, 0.0);
    cfg.superlinear_potential = PotentialC::constant(1.0);
    cfg.barrier_C = 1.0;
    cfg.barrier_beta = 0.5;
    cfg.barrier_r_lo = 2.0;
    cfg.barrier_r_hi = 100.0;

    SUBCASE("full configuration passes both parts") {
        // Part one decays on a short ladder; reuse one for speed.
        cfg.base.R_ladder = {64.0, 128.0, 384.0, 512.0};
        const ReproduceReport rep = reproduce_dichotomy(cfg);
        for (const auto& f : rep.failed_invariants) {
            CAPTURE(f);
            CHECK(false);
        }
        CHECK(rep.ok());
        CHECK(rep.uniqueness_part.classification == Classification::Decay);
        CHECK(rep.multiplicity_part.members.size() == 4);
        CHECK(rep.barrier_check.pass);
        CHECK(rep.bounded_supersolution.pass);
        CHECK(std::abs(rep.barrier_check.margin) > 0.0);
        CHECK(std::abs(rep.alpha_fitted - rep.alpha_expected) <= 0.05 * rep.alpha_expected);
    }
    SUBCASE("a single boundary value cannot exhibit multiplicity") {
        cfg.base.gammas = {0.0};
        const ReproduceReport rep = reproduce_dichotomy(cfg);
        CHECK_FALSE(rep.ok());
        bool found = false;
        for (const auto& f : rep.failed_invariants) {
            found |= f.find("distinct boundary values") != std::string::npos;
        }
        CHECK(found);
    }
}
