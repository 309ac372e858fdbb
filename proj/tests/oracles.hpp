#pragma once

// Reference numerics for the test suite. Everything here is deliberately
// slow and structurally independent of the library implementations it is
// used to check: the CDF comes from an arbitrary-step series / continued
// fraction in long double, and the integrator is a plain composite
// Simpson rule with step halving.

#include <cmath>
#include <cstdint>

namespace oracle {

// erf via the confluent (all-positive-terms) series
//   erf(z) = 2/sqrt(pi) e^{-z^2} sum_{k>=0} 2^k z^{2k+1} / (1*3*...*(2k+1)),
// which has no cancellation, so long double keeps ~18 significant digits
// across the range we need (|z| <= 6).
inline long double erf_series(long double z) {
    const long double two_over_sqrt_pi = 1.12837916709551257389615890312L;
    if (z < 0.0L) return -erf_series(-z);
    long double term = z;
    long double sum = z;
    const long double z2 = z * z;
    for (int k = 0; k < 700; ++k) {
        term *= 2.0L * z2 / (2.0L * k + 3.0L);
        sum += term;
        if (term < sum * 1e-24L) break;
    }
    return two_over_sqrt_pi * std::exp(-z2) * sum;
}

// Upper tail of the standard normal by the Laplace continued fraction
//   P(g >= t) = phi(t) / (t + 1/(t + 2/(t + 3/(t + ...)))),
// evaluated bottom-up; excellent relative accuracy for t >= 3.
inline long double normal_tail_cf(long double t, int levels = 300) {
    long double cf = 0.0L;
    for (int k = levels; k >= 1; --k) {
        cf = static_cast<long double>(k) / (t + cf);
    }
    const long double inv_sqrt_2pi = 0.39894228040143267793994605993L;
    const long double density = inv_sqrt_2pi * std::exp(-0.5L * t * t);
    return density / (t + cf);
}

// Upper tail P(g >= t) with full relative accuracy everywhere.
inline long double normal_tail(long double t) {
    const long double sqrt2 = 1.41421356237309504880168872421L;
    if (t > 3.0L) return normal_tail_cf(t);
    if (t < -3.0L) return 1.0L - normal_tail_cf(-t);
    return 0.5L * (1.0L - erf_series(t / sqrt2));
}

inline long double normal_cdf(long double x) {
    return 1.0L - normal_tail(x);
}

// Composite Simpson with panel doubling until two refinements agree.
template <class F>
double integrate(const F& f, double a, double b, double tol) {
    auto simpson_n = [&](int n) {
        const double h = (b - a) / n;
        double s = f(a) + f(b);
        for (int i = 1; i < n; ++i) {
            s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        }
        return s * h / 3.0;
    };
    double prev = simpson_n(64);
    for (int n = 128; n <= (1 << 22); n *= 2) {
        const double cur = simpson_n(n);
        if (std::fabs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace oracle
