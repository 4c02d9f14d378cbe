#pragma once

#include "driftlab/geometry.hpp"

#include <functional>
#include <string>

namespace driftlab {

enum class WeightFamily { Exponential, StretchedExponential, Polynomial };

const char* weight_family_name(WeightFamily f);

/// The three weight families defining the uniqueness classes:
/// e^(-beta r), e^(-beta r^theta) and (1+r)^(-tau).
/// All are 1 at the pole, strictly positive and non-increasing.
class Weight {
public:
    static Weight exponential(double beta);
    static Weight stretched_exponential(double beta, double theta);
    static Weight polynomial(double tau);

    double value(double r) const;

    WeightFamily family() const { return family_; }
    double beta() const { return beta_; }
    double theta() const { return theta_; }
    double tau() const { return tau_; }

private:
    Weight(WeightFamily f, double beta, double theta, double tau)
        : family_(f), beta_(beta), theta_(theta), tau_(tau) {}

    WeightFamily family_;
    double beta_;
    double theta_;
    double tau_;
};

/// Smallest admissible slack coefficient delta = 1/epsilon, with epsilon
/// free in (0, 2 - 2/p]: delta_min = p / (2 (p - 1)).
double delta_min(double p);

enum class Theorem { T22, T23, T24 };

const char* theorem_name(Theorem t);

/// Feasibility record of the closed-form conditions under which each
/// uniqueness statement applies:
///   T22: p c0 > beta^2 delta + beta K,        with beta > alpha
///   T23: p c0 > beta^2 theta^2 delta + beta K theta + K,  with beta > alpha
///   T24: p c0 > (tau delta / 2)(tau + 2) + K (tau + 1),   with tau > alpha + N - 1
/// where delta is fixed at delta_min(p).
struct AdmissibleParams {
    Theorem theorem = Theorem::T22;
    double p = 0.0;
    double delta_min = 0.0;
    double candidate = 0.0;             // beta (T22/T23) or tau (T24)
    double candidate_lower_bound = 0.0; // alpha, or alpha + N - 1
    double pc0_threshold = 0.0;         // strict lower bound required of p * c0
    double pc0 = 0.0;
    bool candidate_ok = false;
    bool pc0_ok = false;
    bool feasible = false;

    double min_c0() const { return pc0_threshold / p; }
};

AdmissibleParams admissible_params(Theorem t, double alpha, double K, int dimension,
                                   double p, double c0, double candidate, double theta = 0.0);

enum class TailVerdict { Convergent, Divergent, Undetermined };

const char* tail_verdict_name(TailVerdict v);

struct WeightedNorm {
    double value = 0.0;  // c_N * integral |u|^p w phi^(N-1) dr up to r_max
    TailVerdict tail = TailVerdict::Undetermined;
};

/// Weighted L^p norm (to the power p) of a radial function on the manifold.
/// r_max may be infinity when the tail verdict is Convergent; the verdict
/// itself comes from exponent arithmetic and requires u to be bounded and
/// the warping to be closed-form.
WeightedNorm weighted_lp_norm(const ModelManifold& m, const std::function<double(double)>& u,
                              bool u_bounded, const Weight& w, double p, double r_max,
                              double rel_tol = 1e-10);

/// The exponent-arithmetic part of weighted_lp_norm on its own.
TailVerdict tail_verdict(const ModelManifold& m, bool u_bounded, const Weight& w);

}  // namespace driftlab
