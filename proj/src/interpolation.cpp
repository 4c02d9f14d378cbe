#include "driftlab/interpolation.hpp"

#include "driftlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace driftlab {

namespace {

double sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) {
        throw InputError("MonotoneCubic: need at least 3 matching samples");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(x_[i + 1] > x_[i])) {
            throw InputError("MonotoneCubic: abscissae must be strictly increasing");
        }
    }

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    d_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            // Weighted harmonic mean of adjacent secants (Fritsch-Carlson).
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }

    auto end_slope = [&](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (sign(s) != sign(d0)) {
            s = 0.0;
        } else if (sign(d0) != sign(d1) && std::abs(s) > 3.0 * std::abs(d0)) {
            s = 3.0 * d0;
        }
        return s;
    };
    d_.front() = end_slope(h[0], h[1], delta[0], delta[1]);
    d_.back() = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t MonotoneCubic::interval(double q) const {
    const double slack = 1e-12 * (x_.back() - x_.front());
    if (q < x_.front() - slack || q > x_.back() + slack) {
        throw InputError("MonotoneCubic: query outside sampled range");
    }
    q = std::clamp(q, x_.front(), x_.back());
    auto it = std::upper_bound(x_.begin(), x_.end(), q);
    std::size_t i = static_cast<std::size_t>(std::distance(x_.begin(), it));
    if (i > 0) --i;
    if (i >= x_.size() - 1) i = x_.size() - 2;
    return i;
}

double MonotoneCubic::value(double q) const {
    const std::size_t i = interval(q);
    const double h = x_[i + 1] - x_[i];
    const double t = (std::clamp(q, x_.front(), x_.back()) - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneCubic::derivative(double q) const {
    const std::size_t i = interval(q);
    const double h = x_[i + 1] - x_[i];
    const double t = (std::clamp(q, x_.front(), x_.back()) - x_[i]) / h;
    const double t2 = t * t;
    const double dh00 = (6.0 * t2 - 6.0 * t) / h;
    const double dh10 = 3.0 * t2 - 4.0 * t + 1.0;
    const double dh01 = (-6.0 * t2 + 6.0 * t) / h;
    const double dh11 = 3.0 * t2 - 2.0 * t;
    return dh00 * y_[i] + dh10 * d_[i] + dh01 * y_[i + 1] + dh11 * d_[i + 1];
}

}  // namespace driftlab
