#include "slsf/verify.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "slsf/rng.hpp"

namespace slsf {

namespace {

// Fixed sub-stream count: totals are sums of per-stripe integer counts,
// so the merged result is independent of how stripes map onto threads.
constexpr int kStripes = 16;
constexpr std::uint64_t kPairStream = 1000;

struct Counts {
    std::uint64_t joint = 0;
    std::uint64_t marginal = 0;
};

template <class PerStripe>
Counts run_striped(std::uint64_t trials, int threads, const PerStripe& body) {
    std::vector<Counts> partial(kStripes);
    const std::uint64_t per = trials / kStripes;
    const std::uint64_t extra = trials % kStripes;
    auto stripe_trials = [&](int s) {
        return per + (static_cast<std::uint64_t>(s) < extra ? 1 : 0);
    };

    if (threads <= 1) {
        for (int s = 0; s < kStripes; ++s) partial[s] = body(s, stripe_trials(s));
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        const int workers = std::min(threads, kStripes);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const int s = next.fetch_add(1);
                    if (s >= kStripes) return;
                    partial[s] = body(s, stripe_trials(s));
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    Counts total;
    for (const Counts& c : partial) {
        total.joint += c.joint;
        total.marginal += c.marginal;
    }
    return total;
}

EstimateWithError conditional_from_counts(const Counts& c) {
    if (c.marginal == 0) {
        throw std::runtime_error("conditional estimate: no conditioning samples accepted; "
                                 "increase trials");
    }
    EstimateWithError e;
    e.trials = c.marginal;
    e.value = static_cast<double>(c.joint) / static_cast<double>(c.marginal);
    e.std_error = std::sqrt(std::max(e.value * (1.0 - e.value), 0.0) /
                            static_cast<double>(c.marginal));
    return e;
}

} // namespace

EstimateWithError mc_conditional_2d(double t, double alpha, std::uint64_t trials,
                                    std::uint64_t seed, int threads) {
    if (trials < 1000) {
        throw std::invalid_argument("mc_conditional_2d: need at least 1000 trials");
    }
    if (!(alpha >= 0.0) || !(alpha < std::numbers::pi)) {
        throw std::invalid_argument("mc_conditional_2d: alpha must lie in [0, pi)");
    }
    const double cos_a = std::cos(alpha);
    const double sin_a = std::sin(alpha);

    const Counts total = run_striped(trials, threads, [&](int s, std::uint64_t k) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
        Counts c;
        for (std::uint64_t i = 0; i < k; ++i) {
            double y, z;
            rng.next_gaussian_pair(y, z);
            if (y >= t) {
                ++c.marginal;
                if (y * cos_a + z * sin_a >= t) ++c.joint;
            }
        }
        return c;
    });
    return conditional_from_counts(total);
}

EstimateWithError mc_conditional_fulld(int d, Angle alpha, double tau,
                                       std::uint64_t trials, std::uint64_t seed,
                                       int threads) {
    if (d < 2) {
        throw std::invalid_argument("mc_conditional_fulld: d must be at least 2");
    }
    // One planted pair per run; the conditional law depends only on the
    // angle, so the pair choice is immaterial and the projector draws
    // carry all the randomness.
    SplitMix64 pair_rng(derive_seed(seed, kPairStream));
    const UnitVector q = sample_uniform_sphere(d, pair_rng);
    const UnitVector x = planted_at_angle(q, alpha, pair_rng);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));

    const Counts total = run_striped(trials, threads, [&](int s, std::uint64_t k) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
        std::vector<double> theta(static_cast<std::size_t>(d));
        Counts c;
        for (std::uint64_t i = 0; i < k; ++i) {
            for (int j = 0; j + 1 < d; j += 2) {
                rng.next_gaussian_pair(theta[j], theta[j + 1]);
            }
            if (d % 2 == 1) {
                double g0, g1;
                rng.next_gaussian_pair(g0, g1);
                theta[d - 1] = g0;
            }
            double dq = 0.0, dx = 0.0;
            for (int j = 0; j < d; ++j) {
                dq += theta[j] * q[j];
                dx += theta[j] * x[j];
            }
            if (dq * scale >= tau) {
                ++c.marginal;
                if (dx * scale >= tau) ++c.joint;
            }
        }
        return c;
    });
    return conditional_from_counts(total);
}

std::vector<BoundCheckRecord> bound_sweep(std::span<const FilterGeometry> grid,
                                          std::uint64_t trials, std::uint64_t seed,
                                          double k_sigma, int threads) {
    for (const FilterGeometry& g : grid) {
        if (g.t * std::tan(0.5 * g.alpha.radians()) < 1.0) {
            throw std::invalid_argument(
                "bound_sweep: grid point violates t tan(alpha/2) >= 1");
        }
    }
    std::vector<BoundCheckRecord> records;
    records.reserve(grid.size());
    std::uint64_t point_index = 0;
    for (const FilterGeometry& g : grid) {
        BoundCheckRecord rec{g, {}, collision_bounds(g), false};
        rec.estimate = mc_conditional_2d(g.t, g.alpha.radians(), trials,
                                         derive_seed(seed, point_index), threads);
        const double slack = k_sigma * rec.estimate.std_error;
        rec.contained = rec.estimate.value >= rec.bound.lo - slack &&
                        rec.estimate.value <= rec.bound.hi + slack;
        records.push_back(std::move(rec));
        ++point_index;
    }
    return records;
}

EmpiricalRhoReport empirical_rho(Angle gamma, double c, double t,
                                 std::uint64_t trials, std::uint64_t seed,
                                 int threads) {
    EmpiricalRhoReport r;
    r.analytic = rho_from_bounds(gamma, c, t); // also validates the geometry
    r.q1_hat = mc_conditional_2d(t, gamma.radians(), trials, derive_seed(seed, 11), threads);
    r.q2_hat = mc_conditional_2d(t, c * gamma.radians(), trials, derive_seed(seed, 12), threads);
    r.rho_hat = rho_empirical(r.q1_hat.value, r.q2_hat.value);
    return r;
}

} // namespace slsf
