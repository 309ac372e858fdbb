#pragma once

namespace slsf {

/// Closed interval [lo, hi] bracketing an upper-tail probability.
struct TailInterval {
    double lo;
    double hi;
};

/// Standard normal density (1/sqrt(2 pi)) exp(-x^2/2).
double phi(double x);

/// Standard normal CDF. Absolute error below 1e-12 on |x| <= 8 (in
/// practice a few ulps), validated in the test suite against an
/// independent arbitrary-step series oracle.
double Phi(double x);

/// Upper tail P(g >= x) = 1 - Phi(x), evaluated through the complementary
/// error function so the result retains full *relative* accuracy deep into
/// the tail, where the literal expression 1 - Phi(x) loses everything to
/// rounding near 1.
double Phi_c(double x);

/// log of Phi_c(x), finite far beyond the point where Phi_c underflows.
double log_Phi_c(double x);

/// Inverse CDF on (0, 1) by a bracketed bisection/Newton hybrid on Phi.
/// Throws std::domain_error outside (0, 1).
double Phi_inv(double p);

/// Two-sided tail estimate for t > 0:
///   lo = t/(t^2+1) phi(t),  hi = phi(t)/t,  lo <= P(g >= t) <= hi.
/// Throws std::domain_error for t <= 0.
TailInterval normal_tail_bounds(double t);

/// Value of the integral of (x - t) phi(x) over [t, inf), in closed form:
/// phi(t) - t (1 - Phi(t)). Requires t > 0.
double truncated_mean_identity(double t);

/// exp(-(eta2^2 - eta1^2)/2): an upper bound on the Gaussian tail ratio
/// (1 - Phi(eta2)) / (1 - Phi(eta1)) for 0 <= eta1 <= eta2.
double tail_ratio_bound(double eta1, double eta2);

} // namespace slsf
