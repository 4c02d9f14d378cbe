#include "driftlab/geometry.hpp"

#include "driftlab/errors.hpp"
#include "driftlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace driftlab {

WarpingFunction::WarpingFunction(WarpingKind kind, double lambda, double curvature,
                                 std::shared_ptr<const MonotoneCubic> samples)
    : kind_(kind), lambda_(lambda), curvature_(curvature), samples_(std::move(samples)) {
    validate_pole_conditions();
}

WarpingFunction WarpingFunction::euclidean() {
    return WarpingFunction(WarpingKind::Euclidean, 1.0, 0.0, nullptr);
}

WarpingFunction WarpingFunction::hyperbolic(double curvature) {
    if (!(curvature > 0.0)) {
        throw InputError("WarpingFunction::hyperbolic: curvature must be positive");
    }
    return WarpingFunction(WarpingKind::Hyperbolic, 0.0, curvature, nullptr);
}

WarpingFunction WarpingFunction::power_law(double lambda) {
    if (!(lambda >= 0.0)) {
        throw InputError("WarpingFunction::power_law: lambda must be >= 0");
    }
    return WarpingFunction(WarpingKind::PowerLaw, lambda, 0.0, nullptr);
}

WarpingFunction WarpingFunction::sampled(std::vector<double> radii, std::vector<double> values) {
    if (radii.empty() || radii.front() != 0.0 || values.empty() || values.front() != 0.0) {
        throw InputError("WarpingFunction::sampled: first sample must be (0, 0)");
    }
    auto interp = std::make_shared<const MonotoneCubic>(std::move(radii), std::move(values));
    return WarpingFunction(WarpingKind::Sampled, 0.0, 0.0, std::move(interp));
}

void WarpingFunction::validate_pole_conditions() const {
    // phi(0) = 0, phi'(0) = 1, phi > 0 beyond the pole, probed numerically.
    if (std::abs(value(0.0)) > 1e-12) {
        throw InputError("WarpingFunction: phi(0) must vanish");
    }
    for (double r : {1e-6, 1e-4}) {
        const double v = value(r);
        if (!(v > 0.0) || std::abs(v / r - 1.0) > 1e-3) {
            throw InputError("WarpingFunction: phi(r)/r must approach 1 at the pole");
        }
    }
    for (double r : {0.5, 1.0, 4.0}) {
        if (kind_ == WarpingKind::Sampled && r > samples_->back()) continue;
        if (!(value(r) > 0.0)) {
            throw InputError("WarpingFunction: phi must be positive for r > 0");
        }
    }
}

double WarpingFunction::value(double r) const {
    switch (kind_) {
        case WarpingKind::Euclidean:
            return r;
        case WarpingKind::Hyperbolic: {
            const double s = std::sqrt(curvature_);
            return std::sinh(s * r) / s;
        }
        case WarpingKind::PowerLaw:
            return r * std::pow(1.0 + r, lambda_ - 1.0);
        case WarpingKind::Sampled:
            return samples_->value(r);
    }
    return 0.0;
}

double WarpingFunction::derivative(double r) const {
    switch (kind_) {
        case WarpingKind::Euclidean:
            return 1.0;
        case WarpingKind::Hyperbolic:
            return std::cosh(std::sqrt(curvature_) * r);
        case WarpingKind::PowerLaw:
            // d/dr [r (1+r)^(lambda-1)] = (1+r)^(lambda-2) (1 + lambda r)
            return std::pow(1.0 + r, lambda_ - 2.0) * (1.0 + lambda_ * r);
        case WarpingKind::Sampled:
            return samples_->derivative(r);
    }
    return 0.0;
}

std::optional<double> WarpingFunction::polynomial_growth() const {
    switch (kind_) {
        case WarpingKind::Euclidean:
            return 1.0;
        case WarpingKind::PowerLaw:
            return lambda_;
        default:
            return std::nullopt;
    }
}

ModelManifold::ModelManifold(int dim, WarpingFunction w)
    : dimension(dim), warping(std::move(w)) {
    if (dimension < 2) {
        throw InvalidDimensionError("ModelManifold: dimension must be >= 2");
    }
}

double sphere_constant(int dimension) {
    if (dimension < 2) {
        throw InvalidDimensionError("sphere_constant: dimension must be >= 2");
    }
    const double half = 0.5 * static_cast<double>(dimension);
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double radial_laplacian_coeff(const ModelManifold& m, double r) {
    if (r == 0.0) {
        throw PoleSingularityError("radial_laplacian_coeff: singular at the pole");
    }
    const double phi = m.warping.value(r);
    if (!(phi > 0.0)) {
        throw InputError("radial_laplacian_coeff: phi(r) must be positive");
    }
    return (m.dimension - 1) * m.warping.derivative(r) / phi;
}

double volume(const ModelManifold& m, double r, double rel_tol) {
    if (r < 0.0) {
        throw InputError("volume: radius must be nonnegative");
    }
    if (r == 0.0) return 0.0;
    const double c_n = sphere_constant(m.dimension);
    const int n = m.dimension;
    const auto integrand = [&](double t) {
        return std::pow(m.warping.value(t), n - 1);
    };
    return c_n * adaptive_simpson(integrand, 0.0, r, rel_tol);
}

const char* growth_class_name(GrowthClass c) {
    switch (c) {
        case GrowthClass::Polynomial: return "polynomial";
        case GrowthClass::StretchedExponential: return "stretched-exponential";
        case GrowthClass::Exponential: return "exponential";
        case GrowthClass::SuperExponential: return "super-exponential";
    }
    return "unknown";
}

namespace {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = std::numeric_limits<double>::infinity();
};

// Least squares of y against basis(x), plus the max deviation of the fit.
LinearFit fit_against(const std::vector<double>& basis, const std::vector<double>& y) {
    const std::size_t n = basis.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += basis[i];
        sy += y[i];
        sxx += basis[i] * basis[i];
        sxy += basis[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    LinearFit fit;
    if (std::abs(denom) < 1e-300) return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.max_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(y[i] - (fit.intercept + fit.slope * basis[i])));
    }
    return fit;
}

double stretched_sse(const std::vector<double>& radii, const std::vector<double>& log_v,
                     double theta, LinearFit* out) {
    std::vector<double> basis(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) basis[i] = std::pow(radii[i], theta);
    LinearFit fit = fit_against(basis, log_v);
    if (out) *out = fit;
    double sse = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = log_v[i] - (fit.intercept + fit.slope * basis[i]);
        sse += r * r;
    }
    return sse;
}

}  // namespace

double GrowthReport::sup_bound_coefficient(double theta) const {
    double sup = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double lv = std::log(volumes[i]);
        sup = std::max(sup, lv / std::pow(radii[i], theta));
    }
    return sup;
}

std::vector<double> classification_radii(const ModelManifold& m, double r_max, std::size_t count) {
    // Cap the ladder where the volume integrand would overflow.
    double cap = r_max;
    while (cap > 32.0) {
        const double w = std::pow(m.warping.value(cap), m.dimension - 1);
        if (std::isfinite(w) && w < 1e280) break;
        cap *= 0.5;
    }
    // Start beyond the near-pole transient so prefactors such as the
    // power-law (1+r) correction do not dominate the fit.
    const double lo = 16.0;
    count = std::max<std::size_t>(count, 8);
    std::vector<double> radii(count);
    const double ratio = std::pow(cap / lo, 1.0 / static_cast<double>(count - 1));
    double r = lo;
    for (std::size_t i = 0; i < count; ++i) {
        radii[i] = r;
        r *= ratio;
    }
    radii.back() = cap;
    return radii;
}

GrowthReport classify_volume_growth(const ModelManifold& m, const std::vector<double>& radii) {
    if (radii.size() < 8) {
        throw InsufficientGridError("classify_volume_growth: need at least 8 radii");
    }
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        if (!(radii[i + 1] > radii[i])) {
            throw InsufficientGridError("classify_volume_growth: radii must be strictly increasing");
        }
    }
    if (!(radii.back() >= 10.0)) {
        throw InsufficientGridError("classify_volume_growth: maximum radius must be >= 10");
    }

    GrowthReport report;
    report.radii = radii;
    report.volumes.reserve(radii.size());
    for (double r : radii) {
        report.volumes.push_back(volume(m, r, 1e-9));
    }
    std::vector<double> log_v(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double v = report.volumes[i];
        if (!(v > 0.0) || !std::isfinite(v) || (i > 0 && !(v > report.volumes[i - 1]))) {
            throw InternalConsistencyError("classify_volume_growth: volumes must be finite, positive and increasing");
        }
        log_v[i] = std::log(v);
    }

    if (auto g = m.warping.polynomial_growth()) {
        report.expected_polynomial_exponent = (m.dimension - 1) * (*g) + 1.0;
    }

    constexpr double residual_threshold = 0.1;

    // Classes are nested upper bounds; try the tightest first.
    std::vector<double> log_r(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) log_r[i] = std::log(radii[i]);
    const LinearFit poly = fit_against(log_r, log_v);
    if (poly.max_residual <= residual_threshold) {
        report.cls = GrowthClass::Polynomial;
        report.exponent = poly.slope;
        report.intercept = poly.intercept;
        report.max_residual = poly.max_residual;
        return report;
    }

    // Golden-section search for the stretching exponent on [0.05, 0.95].
    double lo = 0.05, hi = 0.95;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = stretched_sse(radii, log_v, a, nullptr);
    double fb = stretched_sse(radii, log_v, b, nullptr);
    for (int it = 0; it < 60; ++it) {
        if (fa < fb) {
            hi = b; b = a; fb = fa;
            a = hi - gr * (hi - lo);
            fa = stretched_sse(radii, log_v, a, nullptr);
        } else {
            lo = a; a = b; fa = fb;
            b = lo + gr * (hi - lo);
            fb = stretched_sse(radii, log_v, b, nullptr);
        }
    }
    const double theta = 0.5 * (lo + hi);
    LinearFit stretched;
    stretched_sse(radii, log_v, theta, &stretched);
    if (stretched.max_residual <= residual_threshold && stretched.slope > 0.0 && theta < 0.94) {
        report.cls = GrowthClass::StretchedExponential;
        report.exponent = stretched.slope;
        report.theta = theta;
        report.intercept = stretched.intercept;
        report.max_residual = stretched.max_residual;
        return report;
    }

    const LinearFit expo = fit_against(radii, log_v);
    if (expo.max_residual <= residual_threshold) {
        report.cls = GrowthClass::Exponential;
        report.exponent = expo.slope;
        report.intercept = expo.intercept;
        report.max_residual = expo.max_residual;
        return report;
    }

    report.cls = GrowthClass::SuperExponential;
    report.exponent = expo.slope;
    report.intercept = expo.intercept;
    report.max_residual = expo.max_residual;
    return report;
}

}  // namespace driftlab
