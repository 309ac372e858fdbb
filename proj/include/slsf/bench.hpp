#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slsf/dataset_io.hpp"

namespace slsf {

/// Knobs of one recall/cost experiment. threads controls execution only
/// and never affects results; a fixed (seed, trials) schedule yields the
/// same report at any thread count.
struct BenchmarkConfig {
    std::uint64_t n = 10000;
    int d = 64;
    double gamma = 0.0;
    double c = 2.0;
    double delta = 0.1;
    std::uint64_t seed = 1;
    std::uint64_t trials = 200;
    DatasetMode mode = DatasetMode::planted_hard;
    double far_margin = 1e-3;
    std::optional<double> tau_override;
    std::optional<std::int64_t> m_override;
    /// Use select_tau_exact (inverse-CDF form) instead of the asymptotic
    /// sqrt(2 ln n) formula.
    bool exact_tau = false;
    /// Select m from the analytic joint lower bound instead of quadrature
    /// (strict-guarantee mode; yields a larger bank).
    bool strict_m = false;
    /// When nonempty, repeat the experiment at each size and fit the
    /// log-log slope of mean scanned candidates against n.
    std::vector<std::uint64_t> sweep;
    int threads = 1;
};

/// Per-trial observables. seed is the derived trial seed, so any trial can
/// be reproduced with the standalone gen/index/query commands.
struct TrialRecord {
    std::uint64_t seed = 0;
    bool success = false;
    std::uint64_t candidates_scanned = 0;
    std::uint64_t buckets_probed = 0;
    bool signature_empty = false;
    std::uint64_t index_entries = 0;
    /// Filters passed by both the query and the planted point.
    std::uint64_t planted_shared_filters = 0;
    /// Total occupancy of the query's buckets (the scan's cost ceiling
    /// had no candidate qualified).
    std::uint64_t probed_candidates_total = 0;
};

/// Aggregates for one dataset size.
struct RunSummary {
    std::uint64_t n = 0;
    double tau_used = 0.0;
    std::int64_t m_used = 0;
    double t_normalized = 0.0;
    double p0_analytic = 0.0;
    double p1_analytic = 0.0;
    double p2_analytic = 0.0;
    double q2_upper_bound = 0.0;
    bool q2_at_most_1_over_n = false;
    double p0_empirical = 0.0;
    double p1_empirical = 0.0;
    double p2_empirical = 0.0;
    double success_rate = 0.0;
    double mean_candidates = 0.0;
    double median_candidates = 0.0;
    double mean_entries = 0.0;
    double predicted_entries = 0.0;
    std::optional<double> rho_analytic;
    std::vector<TrialRecord> trials;
    double build_seconds = 0.0;
    double query_seconds = 0.0;
};

struct BenchmarkReport {
    BenchmarkConfig config;
    RunSummary main;                 // top-level run (config.n)
    std::vector<RunSummary> sweep;   // one per sweep size, in order
    std::optional<double> fitted_exponent;
};

/// Runs config.trials independent build+query trials (and the sweep, when
/// configured). Trial k uses derive_seed(config.seed, k); within a trial,
/// stream 1 seeds the dataset and stream 2 the bank. Sweep point i runs
/// under base seed derive_seed(config.seed, 1000000 + i).
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

/// Canonical JSON rendering. Wall-clock timings are included only on
/// request so that default output is byte-identical across runs and
/// thread counts; threads is likewise not echoed.
std::string report_to_json(const BenchmarkReport& report, bool include_timings = false);

} // namespace slsf
