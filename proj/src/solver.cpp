#include "driftlab/solver.hpp"

#include "driftlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

namespace driftlab {

namespace {

uint64_t fnv1a_mix(uint64_t h, double v) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t hash_problem(const BVPProblem& p, const RadialGrid& g) {
    uint64_t h = 1469598103934665603ull;
    h = fnv1a_mix(h, static_cast<double>(p.manifold.dimension));
    h = fnv1a_mix(h, static_cast<double>(static_cast<int>(p.manifold.warping.kind())));
    h = fnv1a_mix(h, p.manifold.warping.lambda());
    h = fnv1a_mix(h, p.manifold.warping.curvature());
    h = fnv1a_mix(h, static_cast<double>(static_cast<int>(p.drift.family())));
    h = fnv1a_mix(h, p.drift.amplitude());
    h = fnv1a_mix(h, p.drift.exponent());
    h = fnv1a_mix(h, p.drift.offset());
    for (double r : {0.0, 1.0, 10.0}) h = fnv1a_mix(h, p.potential.value(r));
    h = fnv1a_mix(h, p.gamma);
    h = fnv1a_mix(h, p.truncation_radius);
    h = fnv1a_mix(h, static_cast<double>(g.cells()));
    return h;
}

// Three-point coefficients on a possibly nonuniform stencil, exact for
// quadratics: second derivative (L) and first derivative (D).
struct Stencil {
    double lm, l0, lp;  // u''
    double dm, d0, dp;  // u'
};

Stencil stencil_at(double hm, double hp) {
    Stencil s;
    const double denom = hm * hp * (hm + hp);
    s.lm = 2.0 * hp / denom;
    s.l0 = -2.0 * (hm + hp) / denom;
    s.lp = 2.0 * hm / denom;
    s.dm = -hp * hp / denom;
    s.d0 = (hp * hp - hm * hm) / denom;
    s.dp = hm * hm / denom;
    return s;
}

double drift_coefficient(const ModelManifold& m, const RadialDrift& b, double r) {
    return radial_laplacian_coeff(m, r) + b.value(r);
}

void thomas_solve(std::vector<double>& lower, std::vector<double>& diag,
                  std::vector<double>& upper, std::vector<double>& rhs,
                  std::vector<double>& out) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double pivot = diag[i - 1];
        if (!(std::abs(pivot) > 1e-300)) {
            throw DiscretizationError("solve_bvp: singular tridiagonal system (check c >= 0 and the grid)");
        }
        const double w = lower[i] / pivot;
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (!(std::abs(diag[n - 1]) > 1e-300)) {
        throw DiscretizationError("solve_bvp: singular tridiagonal system (check c >= 0 and the grid)");
    }
    out.resize(n);
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
    }
}

void validate_grid(const RadialGrid& grid) {
    if (grid.nodes.size() < 65) {
        throw InputError("RadialGrid: need at least 64 cells");
    }
    if (grid.nodes.front() != 0.0) {
        throw InputError("RadialGrid: first node must be r = 0");
    }
    for (std::size_t i = 0; i + 1 < grid.nodes.size(); ++i) {
        if (!(grid.nodes[i + 1] > grid.nodes[i])) {
            throw InputError("RadialGrid: nodes must be strictly increasing");
        }
    }
}

}  // namespace

RadialGrid RadialGrid::uniform(double R, std::size_t cells) {
    if (!(R > 0.0)) throw InputError("RadialGrid::uniform: R must be positive");
    if (cells < 64) throw InputError("RadialGrid::uniform: need at least 64 cells");
    RadialGrid g;
    g.nodes.resize(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        g.nodes[i] = R * static_cast<double>(i) / static_cast<double>(cells);
    }
    g.nodes.back() = R;
    return g;
}

RadialGrid RadialGrid::graded(double R, std::size_t cells) {
    if (!(R > 0.0)) throw InputError("RadialGrid::graded: R must be positive");
    if (cells < 64) throw InputError("RadialGrid::graded: need at least 64 cells");
    if (R <= 2.0) return uniform(R, cells);

    // Cell budget for the uniform zone, sized so the geometric zone can span
    // R - 2 with stretch factor q^n2 <= 10 (mean spacing ~ 3.9 h1 at the cap).
    const double span_gain = 9.0 / std::log(10.0) * 2.0;  // 7.818...
    const double ideal = 0.9 * span_gain * static_cast<double>(cells) / (span_gain + (R - 2.0));
    const std::size_t min_zone = std::min<std::size_t>(64, cells / 4);
    std::size_t n1 = static_cast<std::size_t>(std::max(1.0, std::floor(ideal)));
    n1 = std::clamp(n1, min_zone, cells - min_zone);
    const std::size_t n2 = cells - n1;
    const double h1 = 2.0 / static_cast<double>(n1);

    // Geometric ratio from sum h1 * (q + q^2 + ... + q^n2) = R - 2.
    const auto span = [&](double q) {
        if (std::abs(q - 1.0) < 1e-13) return h1 * static_cast<double>(n2);
        const double log_qn = static_cast<double>(n2) * std::log(q);
        if (log_qn > 600.0) return std::numeric_limits<double>::infinity();
        return h1 * q * (std::exp(log_qn) - 1.0) / (q - 1.0);
    };
    double lo = 0.5, hi = 1.5;
    while (span(hi) < R - 2.0) hi *= 1.25;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (span(mid) < R - 2.0 ? lo : hi) = mid;
    }
    const double q = 0.5 * (lo + hi);

    RadialGrid g;
    g.nodes.reserve(cells + 1);
    for (std::size_t i = 0; i <= n1; ++i) {
        g.nodes.push_back(2.0 * static_cast<double>(i) / static_cast<double>(n1));
    }
    double h = h1;
    double r = 2.0;
    for (std::size_t j = 0; j < n2; ++j) {
        h *= q;
        r += h;
        g.nodes.push_back(r);
    }
    g.nodes.back() = R;
    return g;
}

double SolutionGrid::eval(double r) const {
    const auto& x = grid.nodes;
    if (r <= x.front()) return values.front();
    if (r >= x.back()) return values.back();
    auto it = std::upper_bound(x.begin(), x.end(), r);
    const std::size_t i = static_cast<std::size_t>(std::distance(x.begin(), it)) - 1;
    const double t = (r - x[i]) / (x[i + 1] - x[i]);
    return (1.0 - t) * values[i] + t * values[i + 1];
}

SolutionGrid solve_bvp(const BVPProblem& problem, const RadialGrid& grid,
                       const SolverOptions& options) {
    validate_grid(grid);
    if (std::abs(grid.R() - problem.truncation_radius) > 1e-9 * std::max(1.0, problem.truncation_radius)) {
        throw InputError("solve_bvp: grid does not end at the problem's truncation radius");
    }
    if (std::abs(problem.drift.value(0.0)) > 1e-12) {
        throw InputError("solve_bvp: drift profile must vanish at the pole");
    }

    const auto& r = grid.nodes;
    const std::size_t n = r.size();
    const ModelManifold& m = problem.manifold;

    std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);

    // Pole row from the limit N u''(0) = c(0) u(0), discretised with the
    // even-reflection stencil u''(0) ~ 2 (u1 - u0) / h0^2.
    const double c0 = problem.potential.value(0.0);
    const double h0 = r[1] - r[0];
    diag[0] = -(2.0 * m.dimension / (h0 * h0) + c0);
    upper[0] = 2.0 * m.dimension / (h0 * h0);

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = r[i] - r[i - 1];
        const double hp = r[i + 1] - r[i];
        const Stencil s = stencil_at(hm, hp);
        const double a = drift_coefficient(m, problem.drift, r[i]);
        const double ci = problem.potential.value(r[i]);
        if (!std::isfinite(a) || !std::isfinite(ci)) {
            throw InputError("solve_bvp: non-finite coefficient on the grid");
        }
        if (ci < 0.0) {
            throw InputError("solve_bvp: c must be nonnegative on the grid");
        }
        double lo = s.lm, d0 = s.l0, up = s.lp;
        if (options.upwind && std::abs(a) * std::max(hm, hp) > 2.0) {
            // First-order upwinding keeps the system an M-matrix at high
            // cell Peclet number; direction follows the sign of a.
            if (a > 0.0) {
                d0 += -a / hp;
                up += a / hp;
            } else {
                lo += -a / hm;
                d0 += a / hm;
            }
        } else {
            lo += a * s.dm;
            d0 += a * s.d0;
            up += a * s.dp;
        }
        lower[i] = lo;
        diag[i] = d0 - ci;
        upper[i] = up;
    }

    diag[n - 1] = 1.0;
    rhs[n - 1] = problem.gamma;

    SolutionGrid out;
    out.grid = grid;
    thomas_solve(lower, diag, upper, rhs, out.values);
    out.problem_hash = hash_problem(problem, grid);
    out.residual_sup = residual(m, problem.drift, problem.potential, out);
    return out;
}

double residual(const ModelManifold& m, const RadialDrift& b, const PotentialC& c,
                const SolutionGrid& u) {
    const auto& r = u.grid.nodes;
    const auto& v = u.values;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
        const Stencil s = stencil_at(r[i] - r[i - 1], r[i + 1] - r[i]);
        const double upp = s.lm * v[i - 1] + s.l0 * v[i] + s.lp * v[i + 1];
        const double up = s.dm * v[i - 1] + s.d0 * v[i] + s.dp * v[i + 1];
        const double a = drift_coefficient(m, b, r[i]);
        worst = std::max(worst, std::abs(upp + a * up - c.value(r[i]) * v[i]));
    }
    return worst;
}

namespace {

// Cash-Karp 4(5) pair.
struct RKStep {
    double u, v;      // state after the step
    double err;       // scaled error estimate
};

template <typename Rhs>
RKStep cash_karp(const Rhs& f, double r, double u, double v, double h, double rtol) {
    static constexpr double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
    static constexpr double b21 = 0.2;
    static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
    static constexpr double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0, b54 = 35.0 / 27.0;
    static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                            b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
    static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                            c6 = 512.0 / 1771.0;
    static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                            d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                            d6 = c6 - 0.25;

    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, k5u, k5v, k6u, k6v;
    f(r, u, v, k1u, k1v);
    f(r + a2 * h, u + h * b21 * k1u, v + h * b21 * k1v, k2u, k2v);
    f(r + a3 * h, u + h * (b31 * k1u + b32 * k2u), v + h * (b31 * k1v + b32 * k2v), k3u, k3v);
    f(r + a4 * h, u + h * (b41 * k1u + b42 * k2u + b43 * k3u),
      v + h * (b41 * k1v + b42 * k2v + b43 * k3v), k4u, k4v);
    f(r + a5 * h, u + h * (b51 * k1u + b52 * k2u + b53 * k3u + b54 * k4u),
      v + h * (b51 * k1v + b52 * k2v + b53 * k3v + b54 * k4v), k5u, k5v);
    f(r + a6 * h, u + h * (b61 * k1u + b62 * k2u + b63 * k3u + b64 * k4u + b65 * k5u),
      v + h * (b61 * k1v + b62 * k2v + b63 * k3v + b64 * k4v + b65 * k5v), k6u, k6v);

    RKStep st;
    st.u = u + h * (c1 * k1u + c3 * k3u + c4 * k4u + c6 * k6u);
    st.v = v + h * (c1 * k1v + c3 * k3v + c4 * k4v + c6 * k6v);
    const double eu = h * (d1 * k1u + d3 * k3u + d4 * k4u + d5 * k5u + d6 * k6u);
    const double ev = h * (d1 * k1v + d3 * k3v + d4 * k4v + d5 * k5v + d6 * k6v);
    // Scale both components against the combined state magnitude: v = u'
    // passes through zero near the pole and must not throttle the step.
    const double scale = 1e-300 + rtol * std::max(std::abs(u) + std::abs(v),
                                                  std::abs(st.u) + std::abs(st.v));
    st.err = std::max(std::abs(eu), std::abs(ev)) / scale;
    return st;
}

}  // namespace

SolutionGrid shoot_oracle(const BVPProblem& problem, const RadialGrid& grid, double rel_tol) {
    validate_grid(grid);
    if (std::abs(grid.R() - problem.truncation_radius) > 1e-9 * std::max(1.0, problem.truncation_radius)) {
        throw InputError("shoot_oracle: grid does not end at the problem's truncation radius");
    }

    SolutionGrid out;
    out.grid = grid;
    out.values.assign(grid.nodes.size(), 0.0);
    out.problem_hash = hash_problem(problem, grid);

    if (problem.gamma == 0.0) {
        out.residual_sup = 0.0;
        return out;
    }

    const ModelManifold& m = problem.manifold;
    const double c_pole = problem.potential.value(0.0);
    const double n_dim = static_cast<double>(m.dimension);
    const double eps0 = 1e-4;

    // Normalised start u(eps) from the even series u = 1 + c(0) r^2 / (2N).
    const auto series_u = [&](double r) { return 1.0 + c_pole * r * r / (2.0 * n_dim); };
    const auto series_v = [&](double r) { return c_pole * r / n_dim; };

    const auto rhs = [&](double r, double u, double v, double& du, double& dv) {
        du = v;
        dv = -drift_coefficient(m, problem.drift, r) * v + problem.potential.value(r) * u;
    };

    // Record (value, log-scale) per node; the state is renormalised whenever
    // it grows past 1e150 so that c0 as large as ~100 stays integrable to
    // R ~ 100 without overflow.
    const std::size_t n_nodes = grid.nodes.size();
    std::vector<double> node_val(n_nodes, 0.0), node_ls(n_nodes, 0.0);

    double r = eps0, u = series_u(eps0), v = series_v(eps0), ls = 0.0;
    double h = 1e-6;
    const double h_max = std::max(grid.R() / 16.0, 1e-3);
    std::size_t next = 0;
    while (next < n_nodes && grid.nodes[next] <= eps0) {
        node_val[next] = series_u(grid.nodes[next]);
        node_ls[next] = 0.0;
        ++next;
    }

    std::size_t steps = 0;
    constexpr std::size_t step_budget = 20000000;
    while (next < n_nodes) {
        const double target = grid.nodes[next];
        bool clipped = false;
        double h_try = h;
        if (r + h_try >= target) {
            h_try = target - r;
            clipped = true;
        }
        const RKStep st = cash_karp(rhs, r, u, v, h_try, rel_tol);
        if (!std::isfinite(st.u) || !std::isfinite(st.v)) {
            // One rescaling retry: renormalise and halve the step.
            const double scale = std::max(std::abs(u), std::abs(v));
            if (scale > 1.0) {
                ls += std::log(scale);
                u /= scale;
                v /= scale;
                h = std::max(h * 0.5, 1e-14);
                continue;
            }
            throw IntegratorOverflowError("shoot_oracle: non-finite state during integration");
        }
        if (st.err <= 1.0) {
            r = clipped ? target : r + h_try;
            u = st.u;
            v = st.v;
            const double mag = std::max(std::abs(u), std::abs(v));
            if (mag > 1e150) {
                ls += std::log(mag);
                u /= mag;
                v /= mag;
            }
            if (clipped) {
                node_val[next] = u;
                node_ls[next] = ls;
                ++next;
            }
        }
        // Next step size always derives from the step actually attempted.
        const double grow = st.err > 0.0 ? 0.9 * std::pow(st.err, -0.2) : 5.0;
        h = std::clamp(h_try * std::clamp(grow, 0.2, 5.0), 1e-14, h_max);
        if (++steps > step_budget) {
            throw IntegratorOverflowError("shoot_oracle: step budget exhausted");
        }
    }

    // Linearity: u_gamma = gamma * u_1 / u_1(R), applied in log scale so that
    // deep-decay regions underflow gracefully to zero.
    const double end_val = node_val.back();
    const double end_ls = node_ls.back();
    if (end_val == 0.0) {
        throw IntegratorOverflowError("shoot_oracle: vanishing terminal amplitude");
    }
    for (std::size_t i = 0; i < n_nodes; ++i) {
        out.values[i] = problem.gamma * (node_val[i] / end_val) * std::exp(node_ls[i] - end_ls);
    }
    out.values.back() = problem.gamma;
    out.residual_sup = residual(m, problem.drift, problem.potential, out);
    return out;
}

SupersolutionCandidate SupersolutionCandidate::power_decay(double C, double beta) {
    SupersolutionCandidate h;
    h.value = [=](double r) { return C * std::pow(r, -beta); };
    h.first_derivative = [=](double r) { return -beta * C * std::pow(r, -beta - 1.0); };
    h.second_derivative = [=](double r) { return beta * (beta + 1.0) * C * std::pow(r, -beta - 2.0); };
    h.label = "power-decay";
    return h;
}

SupersolutionCandidate SupersolutionCandidate::constant(double value) {
    SupersolutionCandidate h;
    h.value = [=](double) { return value; };
    h.first_derivative = [](double) { return 0.0; };
    h.second_derivative = [](double) { return 0.0; };
    h.label = "constant";
    return h;
}

VerifyResult verify_supersolution(const ModelManifold& m, const RadialDrift& b,
                                  const PotentialC& c, const SupersolutionCandidate& h,
                                  double r_lo, double r_hi, double rhs_bound,
                                  std::size_t nodes) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo)) {
        throw InputError("verify_supersolution: need 0 < r_lo < r_hi");
    }
    if (nodes < 16) {
        throw InputError("verify_supersolution: need at least 16 nodes");
    }

    const double ratio = std::pow(r_hi / r_lo, 1.0 / static_cast<double>(nodes - 1));
    VerifyResult out;
    double worst = -std::numeric_limits<double>::infinity();
    double worst_r = r_lo;
    double r = r_lo;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double a = drift_coefficient(m, b, r);
        const double lh = h.second_derivative(r) + a * h.first_derivative(r) - c.value(r) * h.value(r);
        if (lh > worst) {
            worst = lh;
            worst_r = r;
        }
        r = (i + 2 == nodes) ? r_hi : r * ratio;
    }
    out.worst_value = worst;
    out.worst_r = worst_r;
    out.margin = rhs_bound - worst;
    out.pass = worst <= rhs_bound;
    if (!out.pass) {
        out.witness = Witness{worst_r, worst, rhs_bound, "L[h] <= rhs_bound"};
    }
    return out;
}

}  // namespace driftlab
