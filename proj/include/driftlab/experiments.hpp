#pragma once

#include "driftlab/fields.hpp"
#include "driftlab/geometry.hpp"
#include "driftlab/solver.hpp"
#include "driftlab/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace driftlab {

enum class Regime { UniquenessExpected, MultiplicityExpected, Unknown };
enum class Classification { Decay, Convergence, Inconclusive };

const char* regime_name(Regime r);
Regime regime_from_name(const std::string& s);
const char* classification_name(Classification c);

struct SolverSettings {
    std::size_t nodes = 4096;
    bool upwind = false;
    bool uniform_grid = false;  // default is the graded pole/far-field grid

    RadialGrid make_grid(double R) const;
};

/// One configured experiment: the manifold, coefficients, weight class and
/// the truncation ladder over which the far-field condition is probed.
struct Scenario {
    std::string name;
    ModelManifold manifold;
    RadialDrift drift;
    PotentialC potential;
    Weight weight;
    double p = 2.0;
    double r_star = 1.0;
    std::vector<double> R_ladder;
    std::vector<double> gammas;
    Regime declared_regime = Regime::Unknown;
    double dichotomy_gamma = 1.0;  // boundary value used by the ladder scans
    SolverSettings solver;

    void validate() const;

    static Scenario make(std::string name, ModelManifold manifold, RadialDrift drift,
                         PotentialC potential, Weight weight) {
        return Scenario{std::move(name), std::move(manifold), std::move(drift),
                        std::move(potential), std::move(weight),
                        2.0, 1.0, {}, {}, Regime::Unknown, 1.0, SolverSettings{}};
    }
};

struct ProbeEntry {
    double R = 0.0;
    double probe = 0.0;     // u_R(r*)
    double residual = 0.0;
    bool solved = false;
    std::string error;
};

struct DichotomyReport {
    std::vector<ProbeEntry> probes;
    Classification classification = Classification::Inconclusive;
    double limit_estimate = 0.0;
    std::vector<HypothesisReport> hypotheses;
    std::optional<AdmissibleParams> admissibility;
    std::string admissibility_note;
    GrowthReport growth;
    Regime predicted_regime = Regime::Unknown;
    bool regime_match = true;
    bool complete = true;
    std::vector<std::string> annotations;

    const HypothesisReport* hypothesis(Hypothesis which) const;
};

/// Solves the truncated problem for each R in the ladder (boundary value 1),
/// classifies the probe sequence as decay / convergence / inconclusive and
/// cross-checks the outcome against the regime the hypothesis checks predict.
DichotomyReport dichotomy_scan(const Scenario& scenario);

struct FamilyMember {
    double gamma = 0.0;
    SolutionGrid solution;
    double residual = 0.0;
    double sup_norm = 0.0;
    WeightedNorm weighted_norm;
};

struct FamilyReport {
    double R = 0.0;
    std::vector<FamilyMember> members;
    std::vector<std::vector<double>> sup_distance;  // pairwise, members order
    bool regime_mismatch_warning = false;
    HypothesisReport sharpness;  // the S22 check backing the warning
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// One bounded solution per requested boundary value gamma at truncation R,
/// with residuals, pairwise distances and weighted-norm membership verified.
FamilyReport gamma_family(const Scenario& scenario, double R);

/// Configuration of the two-part uniqueness/multiplicity study on a
/// polynomial-volume model manifold.
struct ReproduceConfig {
    // manifold, weight, p, ladder and probe radius come from the base scenario
    Scenario base = Scenario::make("", ModelManifold(3, WarpingFunction::euclidean()),
                                   RadialDrift::zero(), PotentialC::constant(1.0),
                                   Weight::polynomial(2.0));
    RadialDrift growth_bounded_drift = RadialDrift::zero();  // linear growth bound
    PotentialC growth_bounded_potential = PotentialC::constant(1.0);
    RadialDrift superlinear_drift = RadialDrift::zero();     // superlinear lower bound
    PotentialC superlinear_potential = PotentialC::constant(1.0);
    double barrier_C = 1.0;
    double barrier_beta = 0.5;
    double barrier_r_lo = 2.0;
    double barrier_r_hi = 100.0;
};

struct ReproduceReport {
    DichotomyReport uniqueness_part;
    FamilyReport multiplicity_part;
    VerifyResult barrier_check;            // h = C r^(-beta)
    VerifyResult bounded_supersolution;    // W = 1/c0
    double alpha_fitted = 0.0;
    double alpha_expected = 0.0;
    std::vector<std::string> failed_invariants;

    bool ok() const { return failed_invariants.empty(); }
};

ReproduceReport reproduce_dichotomy(const ReproduceConfig& config);

/// alpha entering the admissibility check, per weight family: the fitted
/// polynomial exponent for polynomial weights, otherwise the certified
/// sup of log V / r^theta on the sampled radii.
double alpha_for_weight(const GrowthReport& growth, const Weight& w);

}  // namespace driftlab
