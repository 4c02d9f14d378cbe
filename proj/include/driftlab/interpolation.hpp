#pragma once

#include <cstddef>
#include <vector>

namespace driftlab {

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slope limiting).
///
/// Preserves the monotonicity of the data between nodes, which keeps
/// interpolated warping functions and drift profiles positive where the
/// samples are. Queries outside the sampled range are rejected.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double value(double q) const;
    double derivative(double q) const;

    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

private:
    std::size_t interval(double q) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> d_;  // limited node slopes
};

}  // namespace driftlab
