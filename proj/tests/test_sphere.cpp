#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "slsf/sphere.hpp"

using namespace slsf;
namespace {
constexpr double pi = std::numbers::pi;

std::vector<double> basis(int d, int k) {
    std::vector<double> v(d, 0.0);
    v[k] = 1.0;
    return v;
}
} // namespace

TEST_CASE("UnitVector construction enforces the invariants") {
    CHECK_THROWS_AS(UnitVector({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(UnitVector({1.0, 1.0}), std::invalid_argument);
    CHECK_NOTHROW(UnitVector({1.0, 0.0}));
    const UnitVector u = UnitVector::from_unnormalized({3.0, 4.0});
    CHECK(u[0] == doctest::Approx(0.6));
    CHECK(u[1] == doctest::Approx(0.8));
    CHECK_THROWS_AS(UnitVector::from_unnormalized({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("angular_distance: canonical values") {
    const UnitVector e1(basis(4, 0));
    const UnitVector e2(basis(4, 1));
    SplitMix64 rng(21);
    const UnitVector x = sample_uniform_sphere(4, rng);
    std::vector<double> neg = x.coords();
    for (double& v : neg) v = -v;

    CHECK(angular_distance(x, x).radians() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(angular_distance(e1, e2).radians() == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(angular_distance(x, UnitVector(neg)).radians() == doctest::Approx(pi).epsilon(1e-12));
    CHECK_THROWS_AS(angular_distance(e1, UnitVector(basis(5, 0))), std::invalid_argument);
}

TEST_CASE("angular_distance: symmetry and triangle inequality on random triples") {
    SplitMix64 rng(22);
    for (int i = 0; i < 200; ++i) {
        const UnitVector a = sample_uniform_sphere(8, rng);
        const UnitVector b = sample_uniform_sphere(8, rng);
        const UnitVector c = sample_uniform_sphere(8, rng);
        const double ab = angular_distance(a, b).radians();
        const double ba = angular_distance(b, a).radians();
        const double bc = angular_distance(b, c).radians();
        const double ac = angular_distance(a, c).radians();
        CHECK(ab == ba);
        CHECK(ac <= ab + bc + 1e-9);
    }
}

TEST_CASE("euclidean_from_angle: values and monotonicity") {
    CHECK(euclidean_from_angle(Angle(0.0)) == 0.0);
    CHECK(euclidean_from_angle(Angle(pi)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(euclidean_from_angle(Angle(pi / 2)) ==
          doctest::Approx(1.4142135623730951).epsilon(1e-14));
    double prev = -1.0;
    for (int i = 0; i <= 64; ++i) {
        const double r = euclidean_from_angle(Angle(pi * i / 64.0));
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("effective_c: limits, values, and the upper bound") {
    CHECK(effective_c(Angle(1e-6), 2.0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(effective_c(Angle(pi / 3), 2.0) == doctest::Approx(1.7320508075688772).epsilon(1e-12));
    CHECK(effective_c(Angle(pi / 2), 1.5) == doctest::Approx(1.3065629648763766).epsilon(1e-9));
    for (double g : {0.1, 0.5, 1.0, 1.4}) {
        for (double c : {1.2, 1.7, 2.0}) {
            if (c * g >= pi) continue;
            const double ec = effective_c(Angle(g), c);
            CHECK(ec > 1.0);
            CHECK(ec <= c);
        }
    }
    CHECK_THROWS_AS((void)effective_c(Angle(0.5), 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)effective_c(Angle(2.0), 2.0), std::invalid_argument);
}

TEST_CASE("sample_uniform_sphere: norm, determinism, concentration") {
    SplitMix64 a(33), b(33);
    const UnitVector ua = sample_uniform_sphere(16, a);
    const UnitVector ub = sample_uniform_sphere(16, b);
    CHECK(ua.coords() == ub.coords());

    SplitMix64 rng(34);
    for (int i = 0; i < 50; ++i) {
        const UnitVector u = sample_uniform_sphere(7, rng);
        double norm = 0.0;
        for (double v : u.coords()) norm += v * v;
        CHECK(std::fabs(std::sqrt(norm) - 1.0) <= 1e-10);
    }

    // Mean inner product of independent pairs concentrates around 0
    // with standard error 1/sqrt(pairs * d).
    const int pairs = 100000;
    double sum = 0.0;
    for (int i = 0; i < pairs; ++i) {
        sum += dot(sample_uniform_sphere(64, rng), sample_uniform_sphere(64, rng));
    }
    CHECK(std::fabs(sum / pairs) <= 4.0 / std::sqrt(double(pairs) * 64.0));

    CHECK_THROWS_AS((void)sample_uniform_sphere(1, rng), std::invalid_argument);
}

TEST_CASE("planted_at_angle: endpoints and exact angles") {
    SplitMix64 rng(35);
    const UnitVector q = sample_uniform_sphere(32, rng);

    const UnitVector same = planted_at_angle(q, Angle(0.0), rng);
    const UnitVector anti = planted_at_angle(q, Angle(pi), rng);
    for (std::size_t i = 0; i < q.dim(); ++i) {
        CHECK(same[i] == doctest::Approx(q[i]).epsilon(1e-12));
        CHECK(anti[i] == doctest::Approx(-q[i]).epsilon(1e-12));
    }

    for (int i = 0; i < 50; ++i) {
        const UnitVector base = sample_uniform_sphere(24, rng);
        const UnitVector x = planted_at_angle(base, Angle(pi / 3), rng);
        double norm = 0.0;
        for (double v : x.coords()) norm += v * v;
        CHECK(std::fabs(std::sqrt(norm) - 1.0) <= 1e-10);
        CHECK(std::fabs(angular_distance(base, x).radians() - pi / 3) <= 1e-9);
    }
}
