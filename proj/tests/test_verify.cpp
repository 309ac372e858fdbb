#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "slsf/gauss.hpp"
#include "slsf/verify.hpp"

using namespace slsf;
namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("mc_conditional_2d: independence anchor at pi/2") {
    const EstimateWithError e = mc_conditional_2d(2.0, pi / 2, 2000000, 71);
    CHECK(std::fabs(e.value - 0.022750131948179207) <= 4.0 * e.std_error);
    CHECK(e.trials > 1000);
    CHECK(e.std_error > 0.0);
}

TEST_CASE("mc_conditional_2d: degenerate angle gives certainty") {
    const EstimateWithError e = mc_conditional_2d(1.5, 0.0, 100000, 72);
    CHECK(e.value == 1.0);
}

TEST_CASE("mc_conditional_2d: agrees with the quadrature route") {
    const EstimateWithError e = mc_conditional_2d(2.0, pi / 3, 4000000, 73);
    CHECK(std::fabs(e.value - 0.178150449606083) <= 4.0 * e.std_error);
}

TEST_CASE("mc_conditional_2d: validation and reproducibility") {
    CHECK_THROWS_AS((void)mc_conditional_2d(2.0, pi / 3, 100, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)mc_conditional_2d(2.0, pi, 10000, 1), std::invalid_argument);
    const EstimateWithError a = mc_conditional_2d(2.0, pi / 3, 500000, 74);
    const EstimateWithError b = mc_conditional_2d(2.0, pi / 3, 500000, 74);
    CHECK(a.value == b.value);
    CHECK(a.trials == b.trials);
    const EstimateWithError c = mc_conditional_2d(2.0, pi / 3, 500000, 74, 2);
    CHECK(a.value == c.value);
    CHECK(a.trials == c.trials);
}

TEST_CASE("mc_conditional_fulld: matches the 2-D reduction at t = sqrt(d) tau") {
    // d = 16 and an odd dimension both exercised.
    {
        const double tau = 2.0 / std::sqrt(16.0);
        const EstimateWithError full = mc_conditional_fulld(16, Angle(pi / 3), tau, 2000000, 75);
        const EstimateWithError flat = mc_conditional_2d(2.0, pi / 3, 2000000, 76);
        CHECK(std::fabs(full.value - flat.value) <= 4.0 * (full.std_error + flat.std_error));
    }
    {
        const double tau = 1.5 / std::sqrt(17.0);
        const EstimateWithError full = mc_conditional_fulld(17, Angle(pi / 2), tau, 1000000, 77);
        CHECK(std::fabs(full.value - Phi_c(1.5)) <= 4.0 * full.std_error);
    }
}

TEST_CASE("mc_conditional_fulld: no accepted trials is an error") {
    CHECK_THROWS_AS((void)mc_conditional_fulld(16, Angle(pi / 3), 5.0, 2000, 78),
                    std::runtime_error);
}

TEST_CASE("bound_sweep: containment on the standard grid, order preserved") {
    const std::vector<FilterGeometry> grid{{2.0, Angle(pi / 3)},
                                           {2.0, Angle(pi / 2)},
                                           {2.0, Angle(2 * pi / 3)},
                                           {3.0, Angle(pi / 4)}};
    const auto records = bound_sweep(grid, 1000000, 79, 4.0, 2);
    REQUIRE(records.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(records[i].geometry.t == grid[i].t);
        CHECK(records[i].geometry.alpha.radians() == grid[i].alpha.radians());
        CHECK(records[i].bound.valid);
        CHECK(records[i].contained);
    }
}

TEST_CASE("bound_sweep: rejects grid points outside the lemma's hypothesis") {
    const std::vector<FilterGeometry> grid{{1.5, Angle(pi / 6)}};
    CHECK_THROWS_AS((void)bound_sweep(grid, 10000, 1), std::invalid_argument);
}

TEST_CASE("empirical_rho: measured value against the analytic report") {
    const EmpiricalRhoReport r = empirical_rho(Angle(pi / 4), 2.0, 3.0, 20000000, 80, 2);
    CHECK(r.analytic.asymptote == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(r.analytic.rho == doctest::Approx(0.377867).epsilon(2e-6));
    // The true conditional-probability rho at this geometry is about
    // 0.2626; the analytic value bounds it from above.
    CHECK(r.rho_hat > 0.2);
    CHECK(r.rho_hat <= r.analytic.rho);

    const EmpiricalRhoReport again = empirical_rho(Angle(pi / 4), 2.0, 3.0, 20000000, 80, 1);
    CHECK(again.rho_hat == r.rho_hat);
    CHECK(again.q1_hat.value == r.q1_hat.value);
}

TEST_CASE("empirical_rho: rho_hat decreases in t") {
    const EmpiricalRhoReport lo = empirical_rho(Angle(pi / 4), 2.0, 2.5, 30000000, 81, 2);
    const EmpiricalRhoReport hi = empirical_rho(Angle(pi / 4), 2.0, 3.0, 120000000, 82, 2);
    CHECK(lo.rho_hat > hi.rho_hat);
    CHECK(lo.analytic.rho > hi.analytic.rho);
}

TEST_CASE("empirical_rho: tails beyond Monte Carlo reach fail loudly") {
    // At t = 8 the marginal P(Y >= 8) is ~6e-16: no trial budget reaches
    // it, and the estimator must refuse rather than fabricate.
    CHECK_THROWS_AS((void)empirical_rho(Angle(pi / 4), 2.0, 8.0, 1000000, 83),
                    std::runtime_error);
}
