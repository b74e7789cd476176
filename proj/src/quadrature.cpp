#include "fpoly/quadrature.hpp"
#include "fpoly/errors.hpp"

#include <cmath>

namespace fpoly {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    double overshoot = 0.0; // error conceded at capped leaves

    double recurse(double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double h6 = (b - a) / 12.0;
        const double left = h6 * (fa + 4.0 * flm + fm);
        const double right = h6 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        // Richardson: |S2 - S| / 15 estimates the error of S2.
        if (std::fabs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        if (depth <= 0) {
            overshoot += std::fabs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
};

} // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol, int max_depth) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw std::invalid_argument("integrate_adaptive_simpson: bounds must be finite");
    if (a == b)
        return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

    SimpsonState state{f};
    const double value = state.recurse(a, b, fa, fm, fb, whole, abs_tol, max_depth);
    if (state.overshoot > abs_tol)
        throw QuadratureError(abs_tol, state.overshoot);
    return sign * value;
}

} // namespace fpoly
