#include "driftlab/quadrature.hpp"

#include "driftlab/errors.hpp"

#include <cmath>
#include <limits>

namespace driftlab {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    std::size_t evals = 0;
    std::size_t budget;
    bool exhausted = false;

    double eval(double x) {
        if (evals >= budget) {
            exhausted = true;
            return 0.0;
        }
        ++evals;
        return f(x);
    }
};

double simpson(double h, double fa, double fm, double fb) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double refine(SimpsonState& st, double a, double b, double fa, double fm, double fb,
              double whole, double abs_tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.eval(lm);
    const double frm = st.eval(rm);
    if (st.exhausted) return whole;

    const double left = simpson(m - a, fa, flm, fm);
    const double right = simpson(b - m, fm, frm, fb);
    const double err = (left + right - whole) / 15.0;
    if (depth >= 52 || std::abs(err) <= abs_tol) {
        return left + right + err;
    }
    return refine(st, a, m, fa, flm, fm, left, 0.5 * abs_tol, depth + 1) +
           refine(st, m, b, fm, frm, fb, right, 0.5 * abs_tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, std::size_t max_evals) {
    if (a == b) return 0.0;
    SimpsonState st{f, 0, max_evals};
    const double fa = st.eval(a);
    const double m = 0.5 * (a + b);
    const double fm = st.eval(m);
    const double fb = st.eval(b);
    const double whole = simpson(b - a, fa, fm, fb);

    // Absolute target derived from the coarse estimate; floored so that an
    // integrand that is identically zero terminates immediately.
    const double abs_tol = std::max(rel_tol * std::abs(whole),
                                    std::numeric_limits<double>::min());
    const double result = refine(st, a, b, fa, fm, fb, whole, abs_tol, 0);
    if (st.exhausted) {
        throw ToleranceNotMetError("adaptive_simpson: evaluation budget exhausted", result);
    }
    return result;
}

double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double rel_tol, std::size_t max_evals) {
    double window_end = std::max(a + 1.0, 64.0);
    double total = adaptive_simpson(f, a, window_end, rel_tol, max_evals);
    for (int k = 0; k < 48; ++k) {
        const double next_end = 2.0 * window_end;
        const double chunk = adaptive_simpson(f, window_end, next_end, rel_tol, max_evals);
        total += chunk;
        window_end = next_end;
        if (std::abs(chunk) <= rel_tol * std::abs(total)) {
            return total;
        }
    }
    throw ToleranceNotMetError("integrate_semi_infinite: tail did not stabilise", total);
}

}  // namespace driftlab
