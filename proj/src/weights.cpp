#include "driftlab/weights.hpp"

#include "driftlab/errors.hpp"
#include "driftlab/quadrature.hpp"

#include <cmath>
#include <limits>

namespace driftlab {

const char* weight_family_name(WeightFamily f) {
    switch (f) {
        case WeightFamily::Exponential: return "exponential";
        case WeightFamily::StretchedExponential: return "stretched_exponential";
        case WeightFamily::Polynomial: return "polynomial";
    }
    return "?";
}

Weight Weight::exponential(double beta) {
    if (!(beta > 0.0)) throw InputError("Weight::exponential: beta must be positive");
    return Weight(WeightFamily::Exponential, beta, 1.0, 0.0);
}

Weight Weight::stretched_exponential(double beta, double theta) {
    if (!(beta > 0.0)) throw InputError("Weight::stretched_exponential: beta must be positive");
    if (!(theta > 0.0 && theta < 1.0)) {
        throw InputError("Weight::stretched_exponential: theta must lie in (0, 1)");
    }
    return Weight(WeightFamily::StretchedExponential, beta, theta, 0.0);
}

Weight Weight::polynomial(double tau) {
    if (!(tau > 0.0)) throw InputError("Weight::polynomial: tau must be positive");
    return Weight(WeightFamily::Polynomial, 0.0, 1.0, tau);
}

double Weight::value(double r) const {
    switch (family_) {
        case WeightFamily::Exponential: return std::exp(-beta_ * r);
        case WeightFamily::StretchedExponential: return std::exp(-beta_ * std::pow(r, theta_));
        case WeightFamily::Polynomial: return std::pow(1.0 + r, -tau_);
    }
    return 0.0;
}

double delta_min(double p) {
    if (!(p > 1.0)) throw InvalidExponentError("delta_min: p must exceed 1");
    return p / (2.0 * (p - 1.0));
}

const char* theorem_name(Theorem t) {
    switch (t) {
        case Theorem::T22: return "T22";
        case Theorem::T23: return "T23";
        case Theorem::T24: return "T24";
    }
    return "?";
}

AdmissibleParams admissible_params(Theorem t, double alpha, double K, int dimension,
                                   double p, double c0, double candidate, double theta) {
    if (!(p > 1.0)) throw InvalidExponentError("admissible_params: p must exceed 1");
    if (!(c0 > 0.0)) throw InputError("admissible_params: c0 must be positive");
    if (!(alpha >= 0.0)) throw InputError("admissible_params: alpha must be >= 0");
    if (!(K >= 0.0)) throw InputError("admissible_params: K must be >= 0");
    if (dimension < 2) throw InvalidDimensionError("admissible_params: dimension must be >= 2");

    AdmissibleParams out;
    out.theorem = t;
    out.p = p;
    out.delta_min = delta_min(p);
    out.candidate = candidate;
    out.pc0 = p * c0;

    const double d = out.delta_min;
    switch (t) {
        case Theorem::T22:
            out.candidate_lower_bound = alpha;
            out.pc0_threshold = candidate * candidate * d + candidate * K;
            break;
        case Theorem::T23:
            if (!(theta > 0.0 && theta < 1.0)) {
                throw InputError("admissible_params: T23 requires theta in (0, 1)");
            }
            out.candidate_lower_bound = alpha;
            out.pc0_threshold =
                candidate * candidate * theta * theta * d + candidate * K * theta + K;
            break;
        case Theorem::T24:
            out.candidate_lower_bound = alpha + dimension - 1.0;
            out.pc0_threshold = 0.5 * candidate * d * (candidate + 2.0) + K * (candidate + 1.0);
            break;
    }
    out.candidate_ok = candidate > out.candidate_lower_bound;
    out.pc0_ok = out.pc0 > out.pc0_threshold;
    out.feasible = out.candidate_ok && out.pc0_ok;
    return out;
}

const char* tail_verdict_name(TailVerdict v) {
    switch (v) {
        case TailVerdict::Convergent: return "convergent";
        case TailVerdict::Divergent: return "divergent";
        case TailVerdict::Undetermined: return "undetermined";
    }
    return "?";
}

TailVerdict tail_verdict(const ModelManifold& m, bool u_bounded, const Weight& w) {
    if (!u_bounded || !m.warping.closed_form()) {
        return TailVerdict::Undetermined;
    }
    if (auto lambda = m.warping.polynomial_growth()) {
        // Tail integrand ~ r^((N-1) lambda) * w(r).
        switch (w.family()) {
            case WeightFamily::Polynomial: {
                const double tail_exp = (m.dimension - 1) * (*lambda) - w.tau();
                return tail_exp < -1.0 ? TailVerdict::Convergent : TailVerdict::Divergent;
            }
            case WeightFamily::Exponential:
            case WeightFamily::StretchedExponential:
                return TailVerdict::Convergent;
        }
    }
    // Hyperbolic warping: volume element ~ e^((N-1) sqrt(k) r).
    const double growth_rate = (m.dimension - 1) * std::sqrt(m.warping.curvature());
    switch (w.family()) {
        case WeightFamily::Exponential:
            return w.beta() > growth_rate ? TailVerdict::Convergent : TailVerdict::Divergent;
        case WeightFamily::StretchedExponential:
        case WeightFamily::Polynomial:
            return TailVerdict::Divergent;
    }
    return TailVerdict::Undetermined;
}

WeightedNorm weighted_lp_norm(const ModelManifold& m, const std::function<double(double)>& u,
                              bool u_bounded, const Weight& w, double p, double r_max,
                              double rel_tol) {
    if (!(p >= 1.0)) throw InvalidExponentError("weighted_lp_norm: p must be >= 1");

    WeightedNorm out;
    out.tail = tail_verdict(m, u_bounded, w);

    const double c_n = sphere_constant(m.dimension);
    const int n = m.dimension;
    const auto integrand = [&](double r) {
        return std::pow(std::abs(u(r)), p) * w.value(r) * std::pow(m.warping.value(r), n - 1);
    };

    if (std::isinf(r_max)) {
        if (out.tail == TailVerdict::Divergent) {
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        if (out.tail == TailVerdict::Undetermined) {
            throw InputError("weighted_lp_norm: cannot integrate to infinity without a convergent tail verdict");
        }
        out.value = c_n * (adaptive_simpson(integrand, 0.0, 64.0, rel_tol) +
                           integrate_semi_infinite(integrand, 64.0, rel_tol));
        return out;
    }

    out.value = c_n * adaptive_simpson(integrand, 0.0, r_max, rel_tol);
    return out;
}

}  // namespace driftlab
