#include "slsf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "slsf/collision.hpp"
#include "slsf/filter_bank.hpp"
#include "slsf/gauss.hpp"
#include "slsf/index.hpp"
#include "slsf/rng.hpp"

namespace slsf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct TrialTiming {
    double build = 0.0;
    double query = 0.0;
};

TrialRecord run_trial(const BenchmarkConfig& cfg, std::uint64_t n, double tau,
                      std::int64_t m, std::uint64_t trial_seed, TrialTiming& timing) {
    const Angle gamma(cfg.gamma);
    GeneratedInstance inst =
        generate_instance(n, cfg.d, gamma, cfg.c, derive_seed(trial_seed, 1), cfg.mode,
                          cfg.far_margin);
    auto points = std::make_shared<Dataset>(to_unit_vectors(inst.dataset));

    const auto build_start = Clock::now();
    FilterBank bank = build_filter_bank(cfg.d, m, tau, derive_seed(trial_seed, 2));
    BucketIndex idx = build_index(points, std::move(bank));
    timing.build += seconds_since(build_start);

    std::uint64_t entries = 0;
    for (const auto& bucket : idx.buckets()) entries += bucket.size();

    const UnitVector q{std::vector<double>(inst.meta.query)};
    const auto query_start = Clock::now();
    const QueryOutcome out = query(idx, q, Angle(cfg.c * cfg.gamma));
    timing.query += seconds_since(query_start);

    TrialRecord rec;
    rec.seed = trial_seed;
    rec.success = out.result.has_value();
    rec.candidates_scanned = out.candidates_scanned;
    rec.buckets_probed = out.buckets_probed;
    rec.signature_empty = out.signature_empty;
    rec.index_entries = entries;

    // Empirical pair observables: how many filters the query shares with
    // the planted point, and the total occupancy of the probed buckets.
    const Signature sig_q = signature(idx.bank(), q);
    const Signature sig_planted =
        signature(idx.bank(), idx.dataset()[inst.meta.planted_id]);
    std::size_t a = 0, b = 0;
    while (a < sig_q.size() && b < sig_planted.size()) {
        if (sig_q[a] < sig_planted[b]) ++a;
        else if (sig_q[a] > sig_planted[b]) ++b;
        else { ++rec.planted_shared_filters; ++a; ++b; }
    }
    for (std::uint32_t i : sig_q) {
        rec.probed_candidates_total += idx.buckets()[i].size();
    }
    return rec;
}

RunSummary run_at_size(const BenchmarkConfig& cfg, std::uint64_t n, std::uint64_t base_seed) {
    RunSummary s;
    s.n = n;
    const Angle gamma(cfg.gamma);
    s.tau_used = cfg.tau_override
                     ? *cfg.tau_override
                     : (cfg.exact_tau
                            ? select_tau_exact(static_cast<std::int64_t>(n), cfg.d, cfg.c, gamma)
                            : select_tau(static_cast<std::int64_t>(n), cfg.d, cfg.c, gamma));
    s.t_normalized = std::sqrt(static_cast<double>(cfg.d)) * s.tau_used;
    s.p0_analytic = Phi_c(s.t_normalized);
    s.p1_analytic = cfg.strict_m ? joint_p1_lower_bound(gamma, s.t_normalized)
                                 : joint_p1(gamma, s.t_normalized);
    s.p2_analytic = joint_p1(Angle(cfg.c * cfg.gamma), s.t_normalized);
    s.m_used = cfg.m_override ? *cfg.m_override : select_m(cfg.delta, s.p1_analytic);
    s.q2_upper_bound =
        std::min(1.0, 2.0 * Phi_c(s.t_normalized * std::tan(0.5 * cfg.c * cfg.gamma)));
    s.q2_at_most_1_over_n = s.q2_upper_bound <= 1.0 / static_cast<double>(n);
    if (s.t_normalized * std::tan(0.5 * cfg.gamma) >= 1.0) {
        s.rho_analytic = rho_from_bounds(gamma, cfg.c, s.t_normalized).rho;
    }

    s.trials.resize(cfg.trials);
    std::vector<TrialTiming> timings(cfg.trials);
    const int workers = std::max(1, cfg.threads);
    if (workers <= 1 || cfg.trials <= 1) {
        for (std::uint64_t k = 0; k < cfg.trials; ++k) {
            s.trials[k] = run_trial(cfg, n, s.tau_used, s.m_used,
                                    derive_seed(base_seed, k), timings[k]);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint64_t k = next.fetch_add(1);
                    if (k >= cfg.trials) return;
                    s.trials[k] = run_trial(cfg, n, s.tau_used, s.m_used,
                                            derive_seed(base_seed, k), timings[k]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Aggregate in trial order so results are independent of scheduling.
    std::uint64_t successes = 0;
    double cand_sum = 0.0;
    double entry_sum = 0.0;
    double shared_sum = 0.0;
    double probed_sum = 0.0;
    std::vector<std::uint64_t> cands;
    cands.reserve(cfg.trials);
    for (const TrialRecord& r : s.trials) {
        successes += r.success ? 1 : 0;
        cand_sum += static_cast<double>(r.candidates_scanned);
        entry_sum += static_cast<double>(r.index_entries);
        shared_sum += static_cast<double>(r.planted_shared_filters);
        probed_sum += static_cast<double>(r.probed_candidates_total -
                                          r.planted_shared_filters);
        cands.push_back(r.candidates_scanned);
    }
    for (const TrialTiming& t : timings) {
        s.build_seconds += t.build;
        s.query_seconds += t.query;
    }
    const double T = static_cast<double>(cfg.trials);
    s.success_rate = successes / T;
    s.mean_candidates = cand_sum / T;
    std::sort(cands.begin(), cands.end());
    s.median_candidates =
        cfg.trials % 2 == 1
            ? static_cast<double>(cands[cfg.trials / 2])
            : 0.5 * (static_cast<double>(cands[cfg.trials / 2 - 1]) +
                     static_cast<double>(cands[cfg.trials / 2]));
    s.mean_entries = entry_sum / T;
    s.predicted_entries = static_cast<double>(n) * static_cast<double>(s.m_used) * s.p0_analytic;
    s.p0_empirical = s.mean_entries / (static_cast<double>(n) * static_cast<double>(s.m_used));
    s.p1_empirical = shared_sum / (T * static_cast<double>(s.m_used));
    s.p2_empirical =
        probed_sum / (T * static_cast<double>(s.m_used) * static_cast<double>(n - 1));
    return s;
}

nlohmann::json summary_to_json(const RunSummary& s, bool include_timings) {
    nlohmann::json j;
    j["n"] = s.n;
    j["tau_used"] = s.tau_used;
    j["m_used"] = s.m_used;
    j["t_normalized"] = s.t_normalized;
    j["p0_analytic"] = s.p0_analytic;
    j["p1_analytic"] = s.p1_analytic;
    j["p2_analytic"] = s.p2_analytic;
    j["q2_upper_bound"] = s.q2_upper_bound;
    j["q2_at_most_1_over_n"] = s.q2_at_most_1_over_n;
    j["p0_empirical"] = s.p0_empirical;
    j["p1_empirical"] = s.p1_empirical;
    j["p2_empirical"] = s.p2_empirical;
    j["success_rate"] = s.success_rate;
    j["mean_candidates"] = s.mean_candidates;
    j["median_candidates"] = s.median_candidates;
    j["mean_entries"] = s.mean_entries;
    j["predicted_entries"] = s.predicted_entries;
    if (s.rho_analytic) {
        j["rho_analytic"] = *s.rho_analytic;
    } else {
        j["rho_analytic"] = nullptr;
    }
    nlohmann::json trials = nlohmann::json::array();
    for (const TrialRecord& r : s.trials) {
        trials.push_back({{"seed", r.seed},
                          {"success", r.success},
                          {"candidates_scanned", r.candidates_scanned},
                          {"buckets_probed", r.buckets_probed},
                          {"signature_empty", r.signature_empty},
                          {"index_entries", r.index_entries},
                          {"planted_shared_filters", r.planted_shared_filters},
                          {"probed_candidates_total", r.probed_candidates_total}});
    }
    j["trials"] = std::move(trials);
    if (include_timings) {
        j["timings"] = {{"build_seconds", s.build_seconds},
                        {"query_seconds", s.query_seconds}};
    }
    return j;
}

} // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
    if (config.trials < 1) {
        throw std::invalid_argument("run_benchmark: need at least one trial");
    }
    BenchmarkReport report;
    report.config = config;
    report.main = run_at_size(config, config.n, config.seed);
    if (!config.sweep.empty()) {
        for (std::size_t i = 0; i < config.sweep.size(); ++i) {
            report.sweep.push_back(
                run_at_size(config, config.sweep[i], derive_seed(config.seed, 1000000 + i)));
        }
        // Least-squares slope of ln(mean candidates) against ln(n).
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double k = static_cast<double>(report.sweep.size());
        for (const RunSummary& s : report.sweep) {
            const double x = std::log(static_cast<double>(s.n));
            const double y = std::log(std::max(s.mean_candidates, 1e-12));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = k * sxx - sx * sx;
        if (denom > 0.0) {
            report.fitted_exponent = (k * sxy - sx * sy) / denom;
        }
    }
    return report;
}

std::string report_to_json(const BenchmarkReport& report, bool include_timings) {
    const BenchmarkConfig& c = report.config;
    nlohmann::json j;
    j["config"] = {{"n", c.n},
                   {"d", c.d},
                   {"gamma", c.gamma},
                   {"c", c.c},
                   {"delta", c.delta},
                   {"seed", c.seed},
                   {"trials", c.trials},
                   {"mode", to_string(c.mode)},
                   {"far_margin", c.far_margin},
                   {"exact_tau", c.exact_tau},
                   {"strict_m", c.strict_m}};
    if (c.tau_override) j["config"]["tau_override"] = *c.tau_override;
    if (c.m_override) j["config"]["m_override"] = *c.m_override;
    if (!c.sweep.empty()) j["config"]["sweep"] = c.sweep;
    j["result"] = summary_to_json(report.main, include_timings);
    if (!report.sweep.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const RunSummary& s : report.sweep) arr.push_back(summary_to_json(s, include_timings));
        j["sweep"] = std::move(arr);
        if (report.fitted_exponent) {
            j["fitted_exponent"] = *report.fitted_exponent;
        } else {
            j["fitted_exponent"] = nullptr;
        }
    }
    return j.dump(2) + "\n";
}

} // namespace slsf
