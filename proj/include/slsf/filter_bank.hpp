#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slsf/sphere.hpp"

namespace slsf {

/// m spherical-cap filters: rows theta_i with entries i.i.d. N(0, 1/d) and
/// a shared threshold tau; filter i accepts x when theta_i . x >= tau.
/// Immutable after construction; identical (seed, d, m) regenerate
/// bit-identical projectors, which is what the on-disk format relies on.
///
/// Projector entries are drawn in double precision and stored as f32 in
/// coordinate-major order (entry(i, k) at k*m + i): the filter-evaluation
/// kernel dominates every benchmark, and the ~1e-7 relative perturbation
/// is far below all statistical tolerances in use.
class FilterBank {
public:
    FilterBank(int d, std::uint32_t m, double tau, std::uint64_t seed);

    int d() const { return d_; }
    std::uint32_t m() const { return m_; }
    double tau() const { return tau_; }
    std::uint64_t seed() const { return seed_; }

    /// Coordinate-major m x d projector matrix.
    const std::vector<float>& projectors() const { return proj_; }
    float entry(std::uint32_t i, int k) const {
        return proj_[static_cast<std::size_t>(k) * m_ + i];
    }

private:
    int d_;
    std::uint32_t m_;
    double tau_;
    std::uint64_t seed_;
    std::vector<float> proj_;
};

/// Sorted set of filter indices a point passes.
using Signature = std::vector<std::uint32_t>;

/// Validated construction (d >= 2, m >= 1, tau finite). The analysis
/// assumes tau >= 0; negative thresholds are accepted because forcing a
/// full signature (tau << 0) is useful in tests and diagnostics.
FilterBank build_filter_bank(int d, std::int64_t m, double tau, std::uint64_t seed);

/// Indices i with theta_i . x >= tau, ascending. Boundary equality counts
/// as passing. Throws std::invalid_argument on dimension mismatch.
Signature signature(const FilterBank& bank, const UnitVector& x);

/// Threshold from the recall/cost analysis: sqrt(2 ln n / (d tan^2(c g/2))).
/// The normalized threshold sqrt(d) tau then makes the doubled far-pair
/// tail bound at angle c*gamma at most 1/n.
double select_tau(std::int64_t n, int d, double c, Angle gamma);

/// Non-asymptotic form of the same condition: the smallest tau with
/// 2(1 - Phi(sqrt(d) tau tan(c g/2))) <= 1/n, i.e.
/// Phi_inv(1 - 1/(2n)) / (sqrt(d) tan(c g/2)). select_tau is this formula
/// with the inverse CDF replaced by its large-n approximation sqrt(2 ln n),
/// which overshoots; the exact form keeps the far-pair rate at 1/n and
/// yields a noticeably smaller bank at experiment scale.
double select_tau_exact(std::int64_t n, int d, double c, Angle gamma);

/// Filter count guaranteeing miss probability at most delta for a pair
/// with joint pass probability p1: ceil(ln(1/delta) / p1), at least 1.
/// Throws std::overflow_error when the count does not fit in 63 bits
/// (the formula can demand astronomically many filters when c*gamma is
/// small relative to the dataset size).
std::int64_t select_m(double delta, double p1);

/// Joint pass probability of a pair at angle gamma under normalized
/// threshold t, by exact quadrature. This is the p1 fed to select_m.
double joint_p1(Angle gamma, double t);

/// Analytic lower bound on the same joint probability, (1 - Phi(t)) times
/// the conditional lower bound. Selecting m from this instead of the exact
/// value keeps the recall guarantee without any quadrature trust.
double joint_p1_lower_bound(Angle gamma, double t);

/// Bank persistence: magic "SLFB", version u32 LE, seed u64 LE, d u32 LE,
/// m u32 LE, tau f64 LE. Projectors are regenerated from the seed on load.
void save_bank(const std::string& path, const FilterBank& bank);
FilterBank load_bank(const std::string& path);

} // namespace slsf
