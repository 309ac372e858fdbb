#include "slsf/collision.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "slsf/gauss.hpp"
#include "slsf/quadrature.hpp"

namespace slsf {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kHalfLog2Pi = 0.91893853320467274178032974;

double exponent_adjust_for(double t) {
    const double e = 1.0 + 2.0 / (t * t);
    return e * e;
}

} // namespace

FilterGeometry::FilterGeometry(double t_, Angle alpha_) : t(t_), alpha(alpha_) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("FilterGeometry: t must be positive");
    }
    const double a = alpha.radians();
    if (!(a > 0.0) || !(a < std::numbers::pi)) {
        throw std::invalid_argument("FilterGeometry: alpha must lie strictly in (0, pi)");
    }
}

CollisionBoundReport collision_bounds(const FilterGeometry& g) {
    const double a = g.alpha.radians();
    const double s = g.t * std::tan(0.5 * a);
    const double tail_s = Phi_c(s);

    CollisionBoundReport r;
    r.valid = s >= 1.0;
    r.exponent_adjust = exponent_adjust_for(g.t);

    if (a < kHalfPi) {
        r.regime = AngleRegime::acute;
        r.lo = tail_s;
        r.hi = std::min(1.0, 2.0 * tail_s);
    } else if (a > kHalfPi) {
        r.regime = AngleRegime::obtuse;
        r.lo = 0.25 * std::pow(tail_s, r.exponent_adjust);
        r.hi = tail_s;
    } else {
        // The projections onto x and y are uncorrelated jointly-Gaussian,
        // hence independent: both regimes collapse to the exact value.
        r.regime = AngleRegime::acute;
        r.lo = Phi_c(g.t);
        r.hi = r.lo;
    }
    return r;
}

double joint_probability_quadrature(const FilterGeometry& g) {
    const double t = g.t;
    const double a = g.alpha.radians();
    const double sin_a = std::sin(a);
    const double cos_a = std::cos(a);
    const auto integrand = [=](double v) {
        return Phi_c((t - v * cos_a) / sin_a) * phi(v);
    };
    // Truncation at t + 12 leaves a remainder below 1 - Phi(t + 12),
    // negligible against the tolerance.
    const double upper = t + 12.0;
    // A cheap first pass fixes the magnitude so the refinement target is
    // effectively relative; small joint probabilities would otherwise be
    // returned at pure absolute tolerance with no correct digits.
    const double coarse = detail::adaptive_simpson(integrand, t, upper, 1e-12, 16);
    const double eps = std::min(1e-12, std::max(std::fabs(coarse) * 1e-11, 1e-280));
    return detail::adaptive_simpson(integrand, t, upper, eps);
}

double conditional_probability(const FilterGeometry& g) {
    return joint_probability_quadrature(g) / Phi_c(g.t);
}

RhoReport rho_from_bounds(Angle gamma, double c, double t) {
    const double g = gamma.radians();
    const double cg = c * g;
    if (!(c > 1.0) || !(cg > 0.0) || !(cg < std::numbers::pi)) {
        throw std::invalid_argument("rho_from_bounds: need c > 1 and 0 < c*gamma < pi");
    }
    const double s1 = t * std::tan(0.5 * g);
    const double s2 = t * std::tan(0.5 * cg);
    if (!(s1 >= 1.0)) {
        throw std::invalid_argument("rho_from_bounds: requires t tan(gamma/2) >= 1");
    }

    // Work in log space; the probabilities themselves underflow for large t.
    double log_q1, log_q2;
    if (cg <= kHalfPi) {
        // Both angles acute: conditional lower bound at gamma, doubled
        // tail upper bound at c*gamma.
        log_q1 = log_Phi_c(s1);
        log_q2 = std::min(0.0, std::numbers::ln2 + log_Phi_c(s2));
    } else if (g <= kHalfPi) {
        // gamma acute, c*gamma obtuse.
        log_q1 = log_Phi_c(s1);
        log_q2 = log_Phi_c(s2);
    } else {
        // Both obtuse.
        log_q1 = std::log(0.25) + exponent_adjust_for(t) * log_Phi_c(s1);
        log_q2 = log_Phi_c(s2);
    }

    RhoReport r;
    r.rho = log_q1 / log_q2;
    r.q1_bound = std::exp(log_q1);
    r.q2_bound = std::exp(log_q2);
    r.log_q1_bound = log_q1;
    r.log_q2_bound = log_q2;
    r.asymptote = 1.0 / (c * c);
    r.gap = r.rho - r.asymptote;
    return r;
}

double rho_acute_gap_bound(Angle gamma, double c, double t) {
    const double g = gamma.radians();
    if (!(c > 1.0) || !(c * g > 0.0) || !(c * g <= kHalfPi)) {
        throw std::invalid_argument("rho_acute_gap_bound: need 0 < gamma < c*gamma <= pi/2");
    }
    const double tg = t * std::tan(0.5 * g);
    if (!(tg >= 1.0)) {
        throw std::invalid_argument("rho_acute_gap_bound: requires t tan(gamma/2) >= 1");
    }
    return (std::log(2.0 * tg) + kHalfLog2Pi) /
           (c * c * 0.5 * t * t * std::tan(0.5 * g) * std::tan(0.5 * g) + std::log(tg));
}

double rho_empirical(double q1_hat, double q2_hat) {
    if (!(q2_hat > 0.0) || !(q2_hat < q1_hat) || !(q1_hat < 1.0)) {
        throw std::invalid_argument("rho_empirical: need 0 < q2_hat < q1_hat < 1");
    }
    return std::log(q1_hat) / std::log(q2_hat);
}

} // namespace slsf
