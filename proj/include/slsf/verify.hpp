#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slsf/collision.hpp"
#include "slsf/sphere.hpp"

namespace slsf {

/// A Bernoulli-style estimate. For conditional estimates, trials is the
/// number of conditioning (accepted) samples, and std_error is the
/// conservative Bernoulli bound sqrt(value (1 - value) / trials).
struct EstimateWithError {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

/// One grid point of a containment sweep: the Monte Carlo estimate next to
/// the analytical interval, and whether the estimate lies in
/// [lo - k sigma, hi + k sigma].
struct BoundCheckRecord {
    FilterGeometry geometry;
    EstimateWithError estimate;
    CollisionBoundReport bound;
    bool contained = false;
};

/// 2-D reduction estimator: samples i.i.d. standard normal pairs (Y, Z),
/// sets X = Y cos(alpha) + Z sin(alpha), and estimates
/// P(X >= t | Y >= t) as the ratio of joint to marginal counts on the same
/// stream. alpha = 0 is allowed (X == Y, estimate 1); alpha must lie in
/// [0, pi). Trials are split over a fixed set of sub-streams so the result
/// is bit-identical for any worker count.
EstimateWithError mc_conditional_2d(double t, double alpha, std::uint64_t trials,
                                    std::uint64_t seed, int threads = 1);

/// Full-dimensional estimator: fixes a planted pair (q, x) at angle alpha,
/// draws a fresh projector theta ~ N(0, I/d) per trial, and estimates
/// P(theta.x >= tau | theta.q >= tau) over accepted trials. Throws if no
/// trial is accepted.
EstimateWithError mc_conditional_fulld(int d, Angle alpha, double tau,
                                       std::uint64_t trials, std::uint64_t seed,
                                       int threads = 1);

/// Containment sweep over a grid of geometries (all must satisfy the
/// t tan(alpha/2) >= 1 validity condition). Records preserve grid order.
std::vector<BoundCheckRecord> bound_sweep(std::span<const FilterGeometry> grid,
                                          std::uint64_t trials, std::uint64_t seed,
                                          double k_sigma = 4.0, int threads = 1);

/// Measured rho next to its analytical counterpart.
struct EmpiricalRhoReport {
    double rho_hat = 0.0;
    EstimateWithError q1_hat;
    EstimateWithError q2_hat;
    RhoReport analytic;
};

/// Estimates q1 at angle gamma and q2 at angle c*gamma with the 2-D
/// estimator, forms rho_hat = ln(1/q1_hat)/ln(1/q2_hat), and attaches
/// rho_from_bounds(gamma, c, t) for comparison.
EmpiricalRhoReport empirical_rho(Angle gamma, double c, double t,
                                 std::uint64_t trials, std::uint64_t seed,
                                 int threads = 1);

} // namespace slsf
