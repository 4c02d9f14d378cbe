#pragma once

#include "driftlab/geometry.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace driftlab {

enum class DriftFamily { Zero, PowerAffine, Bounded };

/// Radial drift profile b_r(r) = <b, grad r> for the field b = b_r d/dr.
/// Profiles vanish at the pole so the field stays smooth there; the region
/// D+ where the drift points outward is {r : b_r(r) > 0}.
class RadialDrift {
public:
    static RadialDrift zero();
    /// b_r(r) = A (offset + r)^s * r/(1+r); asymptotic growth exponent s.
    static RadialDrift power_affine(double amplitude, double exponent, double offset = 0.0);
    /// b_r(r) = A sin(r) * r/(1+r), a bounded oscillating profile.
    static RadialDrift sine(double amplitude);
    /// Arbitrary closed-form profile with its derivative; exponent fitted when checked.
    static RadialDrift closed_form(std::function<double(double)> value,
                                   std::function<double(double)> derivative,
                                   std::string label = "closed-form");
    /// Monotone cubic interpolation of samples; derivative from the interpolant.
    static RadialDrift sampled(std::vector<double> radii, std::vector<double> values);

    double value(double r) const;
    double derivative(double r) const;

    DriftFamily family() const { return family_; }
    /// Exact asymptotic growth exponent, when the declared family has one.
    /// (PowerAffine -> s, sine -> 0 since it is bounded.)
    std::optional<double> exact_exponent() const { return exact_exponent_; }
    double amplitude() const { return amplitude_; }
    double exponent() const { return exponent_; }
    double offset() const { return offset_; }
    const std::string& label() const { return label_; }

private:
    RadialDrift() = default;

    DriftFamily family_ = DriftFamily::Zero;
    double amplitude_ = 0.0;
    double exponent_ = 0.0;
    double offset_ = 0.0;
    std::optional<double> exact_exponent_;
    std::function<double(double)> value_;
    std::function<double(double)> derivative_;
    std::string label_;
};

/// Zero-order coefficient c(r) >= 0.
class PotentialC {
public:
    static PotentialC constant(double c0);
    /// c(r) = sum coeffs[i] r^i.
    static PotentialC polynomial(std::vector<double> coeffs);

    double value(double r) const;
    /// Declared floor when one is known in closed form (constant family,
    /// or nonnegative polynomial coefficients with positive constant term).
    std::optional<double> declared_floor() const { return declared_floor_; }
    const std::string& label() const { return label_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    bool is_constant() const { return constant_; }

private:
    PotentialC() = default;

    bool constant_ = false;
    std::vector<double> coeffs_;
    std::optional<double> declared_floor_;
    std::string label_;
};

/// div(b) on the model manifold: b_r'(r) + (N-1) (phi'/phi) b_r(r).
double divergence(const ModelManifold& m, const RadialDrift& b, double r);
/// Limit of div(b) at the pole: N * b_r'(0).
double divergence_at_pole(const ModelManifold& m, const RadialDrift& b);

enum class Hypothesis { H0, H1, H2, H3, S22 };

const char* hypothesis_name(Hypothesis h);

struct Witness {
    double r = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string inequality;
};

struct HypothesisReport {
    Hypothesis hypothesis = Hypothesis::H0;
    bool pass = false;
    /// True when the profile exponent came from log-log regression rather
    /// than the declared family.
    bool exponent_fitted = false;
    std::map<std::string, double> constants;
    std::vector<Witness> witnesses;

    double constant(const std::string& key) const;
    bool has_constant(const std::string& key) const { return constants.count(key) > 0; }
    /// Fitted constant with the 5% safety inflation applied before it is
    /// handed to the admissibility arithmetic (grid sups underestimate).
    double admissible_constant(const std::string& key) const { return 1.05 * constant(key); }
};

/// Radii covering [0, r_max], geometrically spaced beyond r = 1.
/// r_max >= 100 and nodes >= 1000 are required downstream.
std::vector<double> make_hypothesis_grid(double r_max = 200.0, std::size_t nodes = 2048);

/// Certifies one of the drift/potential hypotheses on a finite grid,
/// fitting the smallest admissible constants and reporting witnesses when
/// an inequality fails. theta is required for H1.
HypothesisReport check_hypothesis(const ModelManifold& m, const RadialDrift& b,
                                  const PotentialC& c, Hypothesis which,
                                  const std::vector<double>& grid, double theta = 0.0);

}  // namespace driftlab
