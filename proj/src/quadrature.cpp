#include "pbsgame/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pbsgame/types.hpp"

namespace pbsgame {

namespace {

constexpr long kMaxIntervals = 1L << 20;

struct Workspace {
    const std::function<double(double)>& fn;
    long intervals_used = 0;

    double eval(double x) const {
        const double y = fn(x);
        if (!std::isfinite(y)) {
            throw std::invalid_argument("integrand not finite at x = " + std::to_string(x));
        }
        return y;
    }
};

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Recursive bisection; `whole` is Simpson over [a,b], tol the budget for this
// interval. Richardson extrapolation on accept. The minimum depth keeps a
// coarse seed from accepting before the integrand has been sampled densely
// enough to trust the error estimate.
double refine(Workspace& ws, double a, double b, double fa, double fm, double fb, double whole,
              double tol, int depth, double& err_out) {
    if (++ws.intervals_used > kMaxIntervals) {
        throw convergence_error("quadrature did not converge within 2^20 intervals");
    }
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ws.eval(lm);
    const double frm = ws.eval(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if ((depth >= 2 && std::abs(delta) <= 15.0 * tol) || (m <= a || b <= m)) {
        err_out += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    const double lv = refine(ws, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, err_out);
    const double rv = refine(ws, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, err_out);
    return lv + rv;
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& fn, double lo, double hi,
                         double abs_tol, double rel_tol) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        throw std::invalid_argument("integration bounds must be finite with lo <= hi");
    }
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (lo == hi) return {0.0, 0.0};

    Workspace ws{fn};
    const double fa = ws.eval(lo);
    const double m = 0.5 * (lo + hi);
    const double fm = ws.eval(m);
    const double fb = ws.eval(hi);
    const double whole = simpson(fa, fm, fb, lo, hi);
    const double tol = std::max(abs_tol, rel_tol * std::abs(whole));

    IntegralResult result;
    result.value = refine(ws, lo, hi, fa, fm, fb, whole, tol, 0, result.error);
    return result;
}

}  // namespace pbsgame
