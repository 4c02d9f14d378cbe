#pragma once

#include "driftlab/interpolation.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace driftlab {

enum class WarpingKind { Euclidean, Hyperbolic, PowerLaw, Sampled };

/// Radial warping profile of a rotationally symmetric metric
/// g = dr^2 + phi^2(r) dtheta^2.
///
/// All profiles satisfy phi(0) = 0, phi'(0) = 1 and phi > 0 for r > 0;
/// the constructor probes these conditions numerically and rejects
/// profiles that violate them.
class WarpingFunction {
public:
    static WarpingFunction euclidean();
    /// phi(r) = sinh(sqrt(k) r) / sqrt(k), constant curvature -k < 0.
    static WarpingFunction hyperbolic(double curvature);
    /// phi(r) = r (1+r)^(lambda-1): smooth near the pole, ~ r^lambda for r >> 1.
    static WarpingFunction power_law(double lambda);
    /// Monotone cubic interpolation of (r, phi) samples; first sample must be (0, 0).
    static WarpingFunction sampled(std::vector<double> radii, std::vector<double> values);

    double value(double r) const;
    double derivative(double r) const;

    WarpingKind kind() const { return kind_; }
    double lambda() const { return lambda_; }
    double curvature() const { return curvature_; }
    bool closed_form() const { return kind_ != WarpingKind::Sampled; }

    /// Asymptotic exponent g with phi(r) ~ r^g, when the profile has one
    /// in closed form (Euclidean -> 1, PowerLaw -> lambda).
    std::optional<double> polynomial_growth() const;

private:
    WarpingFunction(WarpingKind kind, double lambda, double curvature,
                    std::shared_ptr<const MonotoneCubic> samples);
    void validate_pole_conditions() const;

    WarpingKind kind_;
    double lambda_ = 0.0;
    double curvature_ = 0.0;
    std::shared_ptr<const MonotoneCubic> samples_;
};

/// Rotationally symmetric manifold of dimension N with pole o: all geometric
/// quantities used here reduce to functions of the geodesic radius r.
struct ModelManifold {
    ModelManifold(int dimension, WarpingFunction warping);

    int dimension;
    WarpingFunction warping;
};

/// Area of the unit (N-1)-sphere: 2 pi^(N/2) / Gamma(N/2).
double sphere_constant(int dimension);

/// Coefficient of d/dr in the radial Laplacian: (N-1) phi'(r) / phi(r).
/// Singular at the pole; callers use the regularised pole stencil instead.
double radial_laplacian_coeff(const ModelManifold& m, double r);

/// Geodesic-ball volume c_N * integral_0^r phi^(N-1), by adaptive quadrature.
double volume(const ModelManifold& m, double r, double rel_tol = 1e-10);

enum class GrowthClass { Polynomial, StretchedExponential, Exponential, SuperExponential };

const char* growth_class_name(GrowthClass c);

struct GrowthReport {
    GrowthClass cls = GrowthClass::SuperExponential;
    double exponent = 0.0;   // alpha of the winning class
    double theta = 1.0;      // stretched-exponential exponent, 1 otherwise
    double intercept = 0.0;  // additive constant of the fit in log V
    double max_residual = 0.0;
    std::optional<double> expected_polynomial_exponent;  // (N-1) lambda + 1
    std::vector<double> radii;
    std::vector<double> volumes;

    /// Certified upper-bound coefficient on the sampled radii:
    /// sup log V / r^theta (theta = 1 for plain exponential bounds).
    double sup_bound_coefficient(double theta) const;
};

/// Classifies V(r) against the nested bound families r^alpha,
/// e^(alpha r^theta) and e^(alpha r), reporting the tightest class whose
/// fitted model stays within 0.1 of log V at every sample.
GrowthReport classify_volume_growth(const ModelManifold& m, const std::vector<double>& radii);

/// Geometric ladder of classification radii, capped so phi^(N-1) stays
/// representable. At least 8 samples reaching radius >= 10.
std::vector<double> classification_radii(const ModelManifold& m, double r_max = 1024.0,
                                         std::size_t count = 10);

}  // namespace driftlab
