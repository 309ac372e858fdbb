#pragma once

#include <cstddef>
#include <vector>

#include "slsf/rng.hpp"

namespace slsf {

/// An angle in radians, constrained to [0, pi].
class Angle {
public:
    explicit Angle(double radians);
    double radians() const { return radians_; }

private:
    double radians_;
};

/// A point on the unit sphere S^{d-1}. Construction checks the norm
/// (within 1e-10) and d >= 2; values are immutable afterwards and safe
/// to share across concurrent readers.
class UnitVector {
public:
    explicit UnitVector(std::vector<double> coords);

    /// Normalizes an arbitrary nonzero vector onto the sphere.
    static UnitVector from_unnormalized(std::vector<double> coords);

    std::size_t dim() const { return coords_.size(); }
    const std::vector<double>& coords() const { return coords_; }
    double operator[](std::size_t i) const { return coords_[i]; }

private:
    struct unchecked_tag {};
    UnitVector(std::vector<double> coords, unchecked_tag) : coords_(std::move(coords)) {}

    std::vector<double> coords_;
};

/// Inner product; throws std::invalid_argument on dimension mismatch.
double dot(const UnitVector& a, const UnitVector& b);

/// Angular distance arccos(<a, b>), with the inner product clamped to
/// [-1, 1] before arccos so that floating-point drift on near-identical
/// vectors cannot produce NaN.
Angle angular_distance(const UnitVector& a, const UnitVector& b);

/// Chord length on the unit sphere: 2 sin(alpha/2).
double euclidean_from_angle(Angle alpha);

/// Ratio of chord lengths sin(c gamma / 2) / sin(gamma / 2) for a pair of
/// angular radii (gamma, c gamma). Always in (1, c]; approaches c as
/// gamma -> 0. Requires c > 1 and 0 < c gamma < pi.
double effective_c(Angle gamma, double c);

/// Uniform sample on S^{d-1} (normalized Gaussian vector), d >= 2.
UnitVector sample_uniform_sphere(int d, SplitMix64& rng);

/// A point at exactly the requested angle from q: cos(alpha) q +
/// sin(alpha) u with u a uniformly random unit vector orthogonal to q
/// (Gram-Schmidt of a fresh Gaussian draw). The achieved angle matches
/// alpha within 1e-9.
UnitVector planted_at_angle(const UnitVector& q, Angle alpha, SplitMix64& rng);

} // namespace slsf
