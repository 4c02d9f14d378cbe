#pragma once

#include <cstddef>
#include <functional>

namespace driftlab {

/// Adaptive Simpson quadrature with interval bisection.
///
/// Deterministic: the refinement order depends only on the integrand values.
/// Throws ToleranceNotMetError (carrying the best estimate) when the
/// evaluation budget is exhausted before the requested relative tolerance
/// is certified.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10, std::size_t max_evals = 1000000);

/// Integral of f over [a, inf) for integrands with certified decay.
/// Sums adaptive-Simpson chunks over doubling windows until the latest
/// chunk is negligible against the accumulated total.
double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double rel_tol = 1e-10, std::size_t max_evals = 1000000);

}  // namespace driftlab
