#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "slsf/gauss.hpp"
#include "slsf/rng.hpp"

using namespace slsf;

TEST_CASE("phi: density values and symmetry") {
    CHECK(phi(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
    // High-precision series oracle value.
    CHECK(phi(1.0) == doctest::Approx(0.24197072451914335).epsilon(1e-14));
    SplitMix64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const double t = 8.0 * rng.next_double();
        CHECK(phi(t) == phi(-t));
    }
}

TEST_CASE("Phi: anchors and oracle agreement") {
    CHECK(Phi(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(Phi(1.0) == doctest::Approx(0.84134474606854295).epsilon(1e-13));
    for (int i = 0; i <= 200; ++i) {
        const double x = -8.0 + 16.0 * i / 200.0;
        const double ref = static_cast<double>(oracle::normal_cdf(x));
        CHECK(std::fabs(Phi(x) - ref) <= 1e-12);
    }
    // Symmetry identity, in its cancellation-free form.
    SplitMix64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const double x = -8.0 + 16.0 * rng.next_double();
        CHECK(Phi(-x) == doctest::Approx(Phi_c(x)).epsilon(1e-13));
    }
}

TEST_CASE("Phi_c keeps relative accuracy deep in the tail") {
    for (double t : {1.0, 2.0, 4.0, 6.0, 8.0, 12.0, 20.0}) {
        const double ref = static_cast<double>(oracle::normal_tail(t));
        CHECK(Phi_c(t) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(Phi_c(2.0) == doctest::Approx(0.022750131948179207).epsilon(1e-13));
}

TEST_CASE("log_Phi_c agrees with the log of the tail across the switchover") {
    for (double t : {0.5, 5.0, 29.9, 30.1, 40.0, 64.0}) {
        const long double ref =
            t <= 35.0 ? std::log(oracle::normal_tail(static_cast<long double>(t)))
                      : -0.5L * t * t - std::log(static_cast<long double>(t)) -
                            0.918938533204672741780329736406L +
                            std::log(1.0L - 1.0L / (t * t) + 3.0L / (t * t * t * t));
        CHECK(log_Phi_c(t) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-10));
    }
}

TEST_CASE("Phi_inv: anchors, round trip, domain") {
    CHECK(std::fabs(Phi_inv(0.5)) <= 1e-12);
    CHECK(Phi_inv(0.975) == doctest::Approx(1.9599639845400545).epsilon(1e-9));
    for (double x : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
        CHECK(Phi_inv(Phi(x)) == doctest::Approx(x).epsilon(1e-9));
    }
    SplitMix64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const double p = 1e-6 + (1.0 - 2e-6) * rng.next_double();
        CHECK(std::fabs(Phi(Phi_inv(p)) - p) <= 1e-12);
    }
    CHECK_THROWS_AS((void)Phi_inv(0.0), std::domain_error);
    CHECK_THROWS_AS((void)Phi_inv(1.0), std::domain_error);
    CHECK_THROWS_AS((void)Phi_inv(-0.2), std::domain_error);
}

TEST_CASE("normal_tail_bounds: frozen values and the sandwich") {
    const TailInterval b2 = normal_tail_bounds(2.0);
    CHECK(b2.lo == doctest::Approx(0.021596386605275225).epsilon(1e-13));
    CHECK(b2.hi == doctest::Approx(0.026995483256594030).epsilon(1e-13));
    CHECK(b2.lo <= 0.022750131948179207);
    CHECK(0.022750131948179207 <= b2.hi);

    const TailInterval b1 = normal_tail_bounds(1.0);
    CHECK(b1.lo == doctest::Approx(0.12098536225957168).epsilon(1e-13));
    CHECK(b1.hi == doctest::Approx(0.24197072451914335).epsilon(1e-13));

    // hi/lo = (t^2+1)/t^2.
    const TailInterval b10 = normal_tail_bounds(10.0);
    CHECK(b10.hi / b10.lo == doctest::Approx(1.01).epsilon(1e-12));

    CHECK_THROWS_AS((void)normal_tail_bounds(0.0), std::domain_error);
    CHECK_THROWS_AS((void)normal_tail_bounds(-1.0), std::domain_error);
}

TEST_CASE("tail sandwich holds at random t") {
    SplitMix64 rng(14);
    for (int i = 0; i < 10000; ++i) {
        const double t = 8.0 * rng.next_double_open();
        const TailInterval b = normal_tail_bounds(t);
        const double tail = Phi_c(t);
        CHECK(b.lo <= tail);
        CHECK(tail <= b.hi);
    }
}

TEST_CASE("truncated mean identity: limit, frozen value, quadrature") {
    CHECK(truncated_mean_identity(1e-12) == doctest::Approx(0.3989422804014327).epsilon(1e-9));
    CHECK(truncated_mean_identity(2.0) ==
          doctest::Approx(0.0084907026168296374).epsilon(1e-12));
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        const double by_quadrature = oracle::integrate(
            [t](double x) { return (x - t) * phi(x); }, t, t + 12.0, 1e-12);
        CHECK(std::fabs(truncated_mean_identity(t) - by_quadrature) <= 1e-10);
    }
    CHECK_THROWS_AS((void)truncated_mean_identity(0.0), std::domain_error);
}

TEST_CASE("tail ratio bound: frozen values and random pairs") {
    CHECK(tail_ratio_bound(1.3, 1.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tail_ratio_bound(0.0, 1.0) == doctest::Approx(0.60653065971263342).epsilon(1e-13));
    CHECK(tail_ratio_bound(0.0, 1.0) >= 0.15865525393145705 / 0.5);
    CHECK(tail_ratio_bound(1.0, 2.0) == doctest::Approx(0.22313016014842982).epsilon(1e-13));
    CHECK(tail_ratio_bound(1.0, 2.0) >= 0.022750131948179207 / 0.15865525393145705);
    CHECK_THROWS_AS((void)tail_ratio_bound(2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)tail_ratio_bound(-0.5, 1.0), std::domain_error);

    SplitMix64 rng(15);
    for (int i = 0; i < 10000; ++i) {
        double e1 = 6.0 * rng.next_double();
        double e2 = 6.0 * rng.next_double();
        if (e1 > e2) std::swap(e1, e2);
        CHECK(tail_ratio_bound(e1, e2) >= Phi_c(e2) / Phi_c(e1));
    }
}

TEST_CASE("phi is the derivative of Phi (central differences)") {
    SplitMix64 rng(16);
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
        const double x = -6.0 + 12.0 * rng.next_double();
        const double deriv = (Phi(x + h) - Phi(x - h)) / (2.0 * h);
        CHECK(std::fabs(deriv - phi(x)) <= 1e-6);
    }
}

TEST_CASE("Phi is monotone") {
    SplitMix64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        double a = -9.0 + 18.0 * rng.next_double();
        double b = -9.0 + 18.0 * rng.next_double();
        if (a > b) std::swap(a, b);
        CHECK(Phi(a) <= Phi(b));
    }
}
