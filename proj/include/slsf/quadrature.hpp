#pragma once

#include <cmath>

namespace slsf::detail {

template <class F>
double adaptive_simpson_rec(const F& f, double a, double m, double b,
                            double fa, double fm, double fb,
                            double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

/// Recursive adaptive Simpson with Richardson correction; eps is an
/// absolute tolerance on the whole interval.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double eps, int max_depth = 56) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, eps, max_depth);
}

} // namespace slsf::detail
