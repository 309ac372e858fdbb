#pragma once

#include "slsf/sphere.hpp"

namespace slsf {

/// A single-filter collision geometry: normalized threshold t = sqrt(d) tau
/// and the angle between the two points. Requires t > 0 and 0 < alpha < pi.
struct FilterGeometry {
    FilterGeometry(double t_, Angle alpha_);

    double t;
    Angle alpha;
};

enum class AngleRegime { acute, obtuse };

/// Analytical interval for the conditional collision probability
/// P(h(x) = 1 | h(y) = 1) of two points at angle alpha. The bounds are
/// rigorous only when t tan(alpha/2) >= 1; outside that range they are
/// still returned but flagged valid = false.
struct CollisionBoundReport {
    double lo;
    double hi;
    AngleRegime regime;
    bool valid;
    /// The (1 + 2/t^2)^2 exponent appearing in the obtuse lower bound.
    double exponent_adjust;
};

/// Two-sided conditional collision bounds. With s = t tan(alpha/2):
///   acute  (0, pi/2]:  lo = 1 - Phi(s),                    hi = min(1, 2(1 - Phi(s)))
///   obtuse [pi/2, pi): lo = (1 - Phi(s))^((1+2/t^2)^2)/4,  hi = 1 - Phi(s)
/// At alpha = pi/2 the projections are independent and both regimes
/// intersect in the exact value lo = hi = 1 - Phi(t).
CollisionBoundReport collision_bounds(const FilterGeometry& g);

/// Exact joint probability P(h(x) = 1 and h(y) = 1) by adaptive quadrature
/// of the 2-D reduction integral
///   int_t^inf (1 - Phi((t - v cos a) / sin a)) phi(v) dv,
/// absolute error at most 1e-10 (and far better in relative terms on the
/// geometries the test grids use).
double joint_probability_quadrature(const FilterGeometry& g);

/// joint_probability_quadrature divided by the marginal 1 - Phi(t).
double conditional_probability(const FilterGeometry& g);

/// The discriminating-power exponent computed from the analytical bounds:
/// q1_bound is the conditional lower bound at angle gamma, q2_bound the
/// conditional upper bound at angle c*gamma, each taken from the regime
/// the corresponding angle falls in, and rho = ln(1/q1) / ln(1/q2).
/// asymptote is 1/c^2; gap = rho - 1/c^2 and may be negative (the bound
/// ratio can undershoot 1/c^2 at finite angles).
struct RhoReport {
    double rho;
    double q1_bound;
    double q2_bound;
    double asymptote;
    double gap;
    /// ln q1_bound / ln q2_bound, kept explicitly so the report stays
    /// meaningful when the probabilities underflow at large t.
    double log_q1_bound;
    double log_q2_bound;
};

/// Requires c > 1, 0 < c*gamma < pi, and t tan(gamma/2) >= 1.
RhoReport rho_from_bounds(Angle gamma, double c, double t);

/// Closed-form bound on the excess of rho over 1/c^2 when both angles are
/// acute (0 < gamma < c*gamma <= pi/2):
///   [ln(2 t tan(g/2)) + ln(2 pi)/2] / [c^2 (t^2/2) tan^2(g/2) + ln(t tan(g/2))].
double rho_acute_gap_bound(Angle gamma, double c, double t);

/// rho from a pair of measured conditional probabilities,
/// ln(1/q1_hat) / ln(1/q2_hat). Requires 0 < q2_hat < q1_hat < 1.
double rho_empirical(double q1_hat, double q2_hat);

} // namespace slsf
