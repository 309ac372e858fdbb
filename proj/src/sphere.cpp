#include "slsf/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slsf {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

Angle::Angle(double radians) : radians_(radians) {
    if (!(radians >= 0.0) || !(radians <= std::numbers::pi)) {
        throw std::invalid_argument("Angle: radians must lie in [0, pi]");
    }
}

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) {
        throw std::invalid_argument("UnitVector: dimension must be at least 2");
    }
    if (std::fabs(norm2(coords_) - 1.0) > 1e-10) {
        throw std::invalid_argument("UnitVector: norm differs from 1 by more than 1e-10");
    }
}

UnitVector UnitVector::from_unnormalized(std::vector<double> coords) {
    if (coords.size() < 2) {
        throw std::invalid_argument("UnitVector: dimension must be at least 2");
    }
    const double n = norm2(coords);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("UnitVector: cannot normalize a zero or non-finite vector");
    }
    for (double& x : coords) x /= n;
    return UnitVector(std::move(coords), unchecked_tag{});
}

double dot(const UnitVector& a, const UnitVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dot: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

Angle angular_distance(const UnitVector& a, const UnitVector& b) {
    double ip = dot(a, b);
    if (ip > 1.0) ip = 1.0;
    if (ip < -1.0) ip = -1.0;
    return Angle(std::acos(ip));
}

double euclidean_from_angle(Angle alpha) {
    return 2.0 * std::sin(0.5 * alpha.radians());
}

double effective_c(Angle gamma, double c) {
    const double g = gamma.radians();
    if (!(c > 1.0) || !(g > 0.0) || !(c * g < std::numbers::pi)) {
        throw std::invalid_argument("effective_c: need c > 1 and 0 < c*gamma < pi");
    }
    return std::sin(0.5 * c * g) / std::sin(0.5 * g);
}

UnitVector sample_uniform_sphere(int d, SplitMix64& rng) {
    if (d < 2) {
        throw std::invalid_argument("sample_uniform_sphere: d must be at least 2");
    }
    std::vector<double> v(static_cast<std::size_t>(d));
    for (;;) {
        for (int i = 0; i + 1 < d; i += 2) {
            rng.next_gaussian_pair(v[i], v[i + 1]);
        }
        if (d % 2 == 1) {
            double g0, g1;
            rng.next_gaussian_pair(g0, g1);
            v[d - 1] = g0;
        }
        const double n = norm2(v);
        if (n > 1e-12) {
            for (double& x : v) x /= n;
            return UnitVector::from_unnormalized(std::move(v));
        }
        // All-zero draw has probability zero; redraw.
    }
}

UnitVector planted_at_angle(const UnitVector& q, Angle alpha, SplitMix64& rng) {
    const std::size_t d = q.dim();
    const double a = alpha.radians();
    for (;;) {
        // Gram-Schmidt a fresh Gaussian draw against q.
        std::vector<double> u(d);
        for (std::size_t i = 0; i + 1 < d; i += 2) {
            rng.next_gaussian_pair(u[i], u[i + 1]);
        }
        if (d % 2 == 1) {
            double g0, g1;
            rng.next_gaussian_pair(g0, g1);
            u[d - 1] = g0;
        }
        double proj = 0.0;
        for (std::size_t i = 0; i < d; ++i) proj += u[i] * q[i];
        for (std::size_t i = 0; i < d; ++i) u[i] -= proj * q[i];
        const double n = norm2(u);
        if (n <= 1e-9) continue; // degenerate orthogonalization; redraw

        const double ca = std::cos(a);
        const double sa = std::sin(a);
        std::vector<double> x(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = ca * q[i] + sa * (u[i] / n);
        }
        return UnitVector::from_unnormalized(std::move(x));
    }
}

} // namespace slsf
