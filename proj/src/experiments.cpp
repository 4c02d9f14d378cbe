#include "driftlab/experiments.hpp"

#include "driftlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace driftlab {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::UniquenessExpected: return "uniqueness-expected";
        case Regime::MultiplicityExpected: return "multiplicity-expected";
        case Regime::Unknown: return "unknown";
    }
    return "?";
}

Regime regime_from_name(const std::string& s) {
    if (s == "uniqueness-expected") return Regime::UniquenessExpected;
    if (s == "multiplicity-expected") return Regime::MultiplicityExpected;
    if (s == "unknown") return Regime::Unknown;
    throw InputError("unknown regime tag: " + s);
}

const char* classification_name(Classification c) {
    switch (c) {
        case Classification::Decay: return "decay";
        case Classification::Convergence: return "convergence";
        case Classification::Inconclusive: return "inconclusive";
    }
    return "?";
}

RadialGrid SolverSettings::make_grid(double R) const {
    return uniform_grid ? RadialGrid::uniform(R, nodes) : RadialGrid::graded(R, nodes);
}

void Scenario::validate() const {
    if (R_ladder.size() < 4) {
        throw InputError("Scenario: truncation ladder needs at least 4 entries");
    }
    for (std::size_t i = 0; i + 1 < R_ladder.size(); ++i) {
        if (!(R_ladder[i + 1] > R_ladder[i])) {
            throw InputError("Scenario: truncation ladder must be strictly increasing");
        }
    }
    if (!(R_ladder.back() / R_ladder.front() >= 8.0)) {
        throw InputError("Scenario: ladder must span at least a factor of 8");
    }
    if (!(r_star > 0.0) || !(r_star < R_ladder.front())) {
        throw InputError("Scenario: probe radius must satisfy 0 < r* < min(R)");
    }
    if (!(p > 1.0)) {
        throw InvalidExponentError("Scenario: p must exceed 1");
    }
}

const HypothesisReport* DichotomyReport::hypothesis(Hypothesis which) const {
    for (const auto& h : hypotheses) {
        if (h.hypothesis == which) return &h;
    }
    return nullptr;
}

double alpha_for_weight(const GrowthReport& growth, const Weight& w) {
    switch (w.family()) {
        case WeightFamily::Polynomial:
            if (growth.cls != GrowthClass::Polynomial) {
                return std::numeric_limits<double>::infinity();
            }
            return growth.exponent;
        case WeightFamily::Exponential:
            return growth.sup_bound_coefficient(1.0);
        case WeightFamily::StretchedExponential:
            return growth.sup_bound_coefficient(w.theta());
    }
    return std::numeric_limits<double>::infinity();
}

namespace {

Theorem theorem_for_weight(const Weight& w) {
    switch (w.family()) {
        case WeightFamily::Exponential: return Theorem::T22;
        case WeightFamily::StretchedExponential: return Theorem::T23;
        case WeightFamily::Polynomial: return Theorem::T24;
    }
    return Theorem::T24;
}

Hypothesis hypothesis_for_theorem(Theorem t) {
    switch (t) {
        case Theorem::T22: return Hypothesis::H0;
        case Theorem::T23: return Hypothesis::H1;
        case Theorem::T24: return Hypothesis::H2;
    }
    return Hypothesis::H2;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

DichotomyReport dichotomy_scan(const Scenario& sc) {
    sc.validate();

    DichotomyReport rep;
    rep.growth = classify_volume_growth(sc.manifold, classification_radii(sc.manifold));

    const double grid_rmax = std::max(200.0, sc.R_ladder.back());
    const auto hyp_grid = make_hypothesis_grid(grid_rmax, 2048);
    rep.hypotheses.push_back(check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::H0, hyp_grid));
    if (sc.weight.family() == WeightFamily::StretchedExponential) {
        rep.hypotheses.push_back(check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::H1,
                                                  hyp_grid, sc.weight.theta()));
    }
    rep.hypotheses.push_back(check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::H2, hyp_grid));
    rep.hypotheses.push_back(check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::H3, hyp_grid));
    rep.hypotheses.push_back(check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::S22, hyp_grid));

    // Admissibility of the scenario's weight parameters for the theorem
    // matching the weight family, using the 5%-inflated fitted constant.
    const Theorem thm = theorem_for_weight(sc.weight);
    const Hypothesis gate = hypothesis_for_theorem(thm);
    const HypothesisReport* gate_rep = rep.hypothesis(gate);
    const HypothesisReport* floor_rep = rep.hypothesis(Hypothesis::H3);
    if (gate_rep != nullptr && gate_rep->pass && floor_rep->pass) {
        const double alpha = alpha_for_weight(rep.growth, sc.weight);
        const double K = gate_rep->admissible_constant("K");
        const double candidate =
            sc.weight.family() == WeightFamily::Polynomial ? sc.weight.tau() : sc.weight.beta();
        if (std::isfinite(alpha)) {
            rep.admissibility = admissible_params(thm, alpha, K, sc.manifold.dimension, sc.p,
                                                  floor_rep->constant("c0"), candidate,
                                                  sc.weight.theta());
        } else {
            rep.admissibility_note = "volume growth is not polynomial; no finite alpha for this weight";
        }
    } else {
        rep.admissibility_note = std::string(hypothesis_name(gate)) +
                                 (gate_rep && !gate_rep->pass ? " failed" : " unavailable") +
                                 "; no certified constant for the admissibility arithmetic";
    }

    const HypothesisReport* sharp = rep.hypothesis(Hypothesis::S22);
    const HypothesisReport* h2 = rep.hypothesis(Hypothesis::H2);
    const HypothesisReport* h0 = rep.hypothesis(Hypothesis::H0);
    const HypothesisReport* h1 = rep.hypothesis(Hypothesis::H1);
    if (sharp != nullptr && sharp->pass) {
        rep.predicted_regime = Regime::MultiplicityExpected;
    } else if ((h2 != nullptr && h2->pass) || (h0 != nullptr && h0->pass) ||
               (h1 != nullptr && h1->pass)) {
        rep.predicted_regime = Regime::UniquenessExpected;
    } else {
        rep.predicted_regime = Regime::Unknown;
    }

    for (double R : sc.R_ladder) {
        ProbeEntry entry;
        entry.R = R;
        try {
            const RadialGrid grid = sc.solver.make_grid(R);
            BVPProblem problem{sc.manifold, sc.drift, sc.potential, sc.dichotomy_gamma, R};
            const SolutionGrid sol = solve_bvp(problem, grid, SolverOptions{sc.solver.upwind});
            entry.probe = sol.eval(sc.r_star);
            entry.residual = sol.residual_sup;
            entry.solved = true;
        } catch (const std::exception& e) {
            entry.error = e.what();
            rep.complete = false;
            rep.annotations.push_back("solve at R=" + format_double(R) + " failed: " + e.what());
        }
        rep.probes.push_back(entry);
    }

    std::vector<double> probes;
    for (const auto& e : rep.probes) {
        if (e.solved) probes.push_back(e.probe);
    }

    if (probes.size() >= 2) {
        const double first = probes.front();
        const double last = probes.back();
        const double prev = probes[probes.size() - 2];
        const bool all_zero = std::abs(first) == 0.0 && std::abs(last) == 0.0;
        const bool decayed = all_zero || std::abs(last) < 0.01 * std::abs(first);
        const double rel_diff = std::abs(last - prev) / std::max(std::abs(last), 1e-30);

        double limit = last;
        if (probes.size() >= 3) {
            const double d1 = probes[probes.size() - 2] - probes[probes.size() - 3];
            const double d2 = last - prev;
            if (std::abs(d1) > 0.0) {
                const double rho = d2 / d1;
                if (std::abs(rho) < 1.0) limit = last + d2 * rho / (1.0 - rho);
            }
        }

        if (decayed) {
            rep.classification = Classification::Decay;
            rep.limit_estimate = 0.0;
        } else if (rel_diff <= 1e-3 && std::abs(limit) > 1e-8) {
            rep.classification = Classification::Convergence;
            rep.limit_estimate = limit;
        } else {
            rep.classification = Classification::Inconclusive;
            rep.limit_estimate = limit;
        }
    } else {
        rep.classification = Classification::Inconclusive;
        rep.annotations.push_back("fewer than two successful solves; classification unavailable");
    }

    switch (rep.predicted_regime) {
        case Regime::UniquenessExpected:
            rep.regime_match = rep.classification == Classification::Decay;
            break;
        case Regime::MultiplicityExpected:
            rep.regime_match = rep.classification == Classification::Convergence;
            break;
        case Regime::Unknown:
            rep.regime_match = true;
            break;
    }
    return rep;
}

FamilyReport gamma_family(const Scenario& sc, double R) {
    sc.validate();
    if (!(R > sc.r_star)) {
        throw InputError("gamma_family: truncation radius must exceed the probe radius");
    }
    if (sc.gammas.empty()) {
        throw InputError("gamma_family: no boundary values requested");
    }

    FamilyReport rep;
    rep.R = R;

    const auto hyp_grid = make_hypothesis_grid(std::max(200.0, R), 2048);
    rep.sharpness = check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::S22, hyp_grid);
    rep.regime_mismatch_warning = !rep.sharpness.pass;

    const RadialGrid grid = sc.solver.make_grid(R);
    constexpr double residual_tolerance = 1e-4;

    for (double gamma : sc.gammas) {
        FamilyMember member;
        member.gamma = gamma;
        BVPProblem problem{sc.manifold, sc.drift, sc.potential, gamma, R};
        member.solution = solve_bvp(problem, grid, SolverOptions{sc.solver.upwind});
        member.residual = member.solution.residual_sup;
        member.sup_norm = 0.0;
        for (double v : member.solution.values) {
            member.sup_norm = std::max(member.sup_norm, std::abs(v));
        }
        const SolutionGrid& sol = member.solution;
        member.weighted_norm = weighted_lp_norm(
            sc.manifold, [&sol](double r) { return sol.eval(r); }, true, sc.weight, sc.p, R);
        if (member.residual > residual_tolerance) {
            rep.violations.push_back("residual for gamma=" + format_double(gamma) +
                                     " exceeds 1e-4");
        }
        if (member.sup_norm > std::abs(gamma) * (1.0 + 1e-12) + 1e-12) {
            rep.violations.push_back("solution for gamma=" + format_double(gamma) +
                                     " exceeds the comparison bound |gamma|");
        }
        rep.members.push_back(std::move(member));
    }

    const std::size_t n = rep.members.size();
    rep.sup_distance.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = 0.0;
            const auto& ui = rep.members[i].solution.values;
            const auto& uj = rep.members[j].solution.values;
            for (std::size_t k = 0; k < ui.size(); ++k) {
                d = std::max(d, std::abs(ui[k] - uj[k]));
            }
            rep.sup_distance[i][j] = rep.sup_distance[j][i] = d;
            const double gap = std::abs(rep.members[i].gamma - rep.members[j].gamma);
            if (d + 1e-12 < gap) {
                rep.violations.push_back("sup distance between gamma=" +
                                         format_double(rep.members[i].gamma) + " and gamma=" +
                                         format_double(rep.members[j].gamma) +
                                         " fell below |gamma_i - gamma_j|");
            }
        }
    }
    return rep;
}

ReproduceReport reproduce_dichotomy(const ReproduceConfig& cfg) {
    ReproduceReport rep;
    auto fail = [&rep](const std::string& what) { rep.failed_invariants.push_back(what); };

    // Part one: growth-bounded drift, expect decay under a feasible weight.
    Scenario part_i = cfg.base;
    part_i.drift = cfg.growth_bounded_drift;
    part_i.potential = cfg.growth_bounded_potential;
    part_i.declared_regime = Regime::UniquenessExpected;
    rep.uniqueness_part = dichotomy_scan(part_i);

    const auto& uni = rep.uniqueness_part;
    rep.alpha_fitted = uni.growth.exponent;
    rep.alpha_expected = uni.growth.expected_polynomial_exponent.value_or(
        std::numeric_limits<double>::quiet_NaN());
    if (uni.growth.cls != GrowthClass::Polynomial) {
        fail("part (i): volume growth not classified as polynomial");
    } else if (uni.growth.expected_polynomial_exponent &&
               std::abs(rep.alpha_fitted - rep.alpha_expected) >
                   0.05 * std::abs(rep.alpha_expected)) {
        fail("part (i): fitted volume exponent deviates from (N-1) lambda + 1 by more than 5%");
    }
    const HypothesisReport* h2 = uni.hypothesis(Hypothesis::H2);
    if (h2 == nullptr || !h2->pass) {
        fail("part (i): growth-bounded drift does not satisfy the linear growth bound");
    }
    if (!uni.admissibility || !uni.admissibility->feasible) {
        fail("part (i): weight parameters not admissible for the uniqueness condition");
    }
    if (uni.classification != Classification::Decay) {
        fail("part (i): truncated solutions did not decay");
    }

    // Part two: superlinear drift, expect a nontrivial bounded family.
    Scenario part_ii = cfg.base;
    part_ii.drift = cfg.superlinear_drift;
    part_ii.potential = cfg.superlinear_potential;
    part_ii.declared_regime = Regime::MultiplicityExpected;

    std::vector<double> distinct = part_ii.gammas;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) {
        fail("part (ii): need at least 3 distinct boundary values to exhibit multiplicity");
        rep.multiplicity_part.regime_mismatch_warning = true;
        return rep;
    }

    rep.multiplicity_part = gamma_family(part_ii, part_ii.R_ladder.back());
    if (rep.multiplicity_part.regime_mismatch_warning) {
        fail("part (ii): superlinear lower bound (sharpness condition) not satisfied");
    }
    for (const auto& v : rep.multiplicity_part.violations) {
        fail("part (ii): " + v);
    }

    const auto hyp_grid = make_hypothesis_grid(std::max(200.0, part_ii.R_ladder.back()), 2048);
    const auto sharp = rep.multiplicity_part.sharpness;
    const auto floor_rep =
        check_hypothesis(part_ii.manifold, part_ii.drift, part_ii.potential, Hypothesis::H3, hyp_grid);

    if (sharp.pass && cfg.barrier_beta >= sharp.constant("sigma") - 1.0) {
        fail("part (ii): barrier exponent must satisfy beta < sigma - 1");
    }
    rep.barrier_check = verify_supersolution(
        part_ii.manifold, part_ii.drift, part_ii.potential,
        SupersolutionCandidate::power_decay(cfg.barrier_C, cfg.barrier_beta),
        cfg.barrier_r_lo, cfg.barrier_r_hi);
    if (!rep.barrier_check.pass) {
        fail("part (ii): decaying barrier h = C r^-beta is not a supersolution on the domain");
    }

    if (floor_rep.pass) {
        // The constant supersolution is global; verify it from near the pole out.
        const double c0 = floor_rep.constant("c0");
        rep.bounded_supersolution = verify_supersolution(
            part_ii.manifold, part_ii.drift, part_ii.potential,
            SupersolutionCandidate::constant(1.0 / c0), 1e-2, cfg.barrier_r_hi);
        if (!rep.bounded_supersolution.pass) {
            fail("part (ii): constant profile 1/c0 is not a supersolution");
        }
    } else {
        fail("part (ii): potential floor c0 is not positive");
    }
    return rep;
}

}  // namespace driftlab
