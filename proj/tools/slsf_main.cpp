// slsf: spherical locality-sensitive filtering for angular near-neighbor
// search, plus the statistical verification drivers.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slsf/bench.hpp"
#include "slsf/collision.hpp"
#include "slsf/dataset_io.hpp"
#include "slsf/detail/bytes.hpp"
#include "slsf/errors.hpp"
#include "slsf/filter_bank.hpp"
#include "slsf/gauss.hpp"
#include "slsf/index.hpp"
#include "slsf/verify.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& text, const std::string& json_out) {
    if (json_out.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        slsf::detail::write_file_atomic(json_out, text);
    }
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        vals.push_back(std::stod(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return vals;
}

json outcome_to_json(const slsf::QueryOutcome& out) {
    json j;
    if (out.result) {
        j["result"] = *out.result;
    } else {
        j["result"] = nullptr;
    }
    j["found"] = out.result.has_value();
    j["candidates_scanned"] = out.candidates_scanned;
    j["buckets_probed"] = out.buckets_probed;
    j["distance_computations"] = out.distance_computations;
    j["signature_empty"] = out.signature_empty;
    return j;
}

int cmd_gen(const std::string& out_path, std::uint64_t n, int d, double gamma, double c,
            std::uint64_t seed, const std::string& mode, double margin,
            const std::string& json_out) {
    slsf::GeneratedInstance inst = slsf::generate_instance(
        n, d, slsf::Angle(gamma), c, seed, slsf::dataset_mode_from_string(mode), margin);
    slsf::save_dataset(out_path, inst.dataset);
    slsf::save_meta(slsf::meta_path_for(out_path), inst.meta);
    json j;
    j["dataset"] = out_path;
    j["meta"] = slsf::meta_path_for(out_path);
    j["n"] = n;
    j["d"] = d;
    j["gamma"] = gamma;
    j["c"] = c;
    j["seed"] = seed;
    j["mode"] = mode;
    j["planted_id"] = inst.meta.planted_id;
    emit(j.dump(2) + "\n", json_out);
    return 0;
}

struct IndexParams {
    std::optional<double> tau;
    std::optional<std::int64_t> m;
    double delta = 0.1;
    bool exact_tau = false;
    bool strict_m = false;
};

slsf::FilterBank make_bank(const slsf::StoredDataset& ds, const slsf::DatasetMeta& meta,
                           const IndexParams& params, std::uint64_t seed, json& echo) {
    const slsf::Angle gamma(meta.gamma);
    const int d = static_cast<int>(ds.d);
    const double tau =
        params.tau ? *params.tau
                   : (params.exact_tau
                          ? slsf::select_tau_exact(static_cast<std::int64_t>(ds.n), d, meta.c, gamma)
                          : slsf::select_tau(static_cast<std::int64_t>(ds.n), d, meta.c, gamma));
    const double t = std::sqrt(static_cast<double>(d)) * tau;
    std::int64_t m;
    if (params.m) {
        m = *params.m;
    } else {
        const double p1 = params.strict_m ? slsf::joint_p1_lower_bound(gamma, t)
                                          : slsf::joint_p1(gamma, t);
        m = slsf::select_m(params.delta, p1);
        echo["p1_used"] = p1;
    }
    echo["tau"] = tau;
    echo["m"] = m;
    echo["t_normalized"] = t;
    return slsf::build_filter_bank(d, m, tau, seed);
}

int cmd_index(const std::string& data_path, const std::string& bank_out,
              const IndexParams& params, std::uint64_t seed, const std::string& json_out) {
    const slsf::StoredDataset ds = slsf::load_dataset(data_path);
    const slsf::DatasetMeta meta = slsf::load_meta(slsf::meta_path_for(data_path));
    json echo;
    slsf::FilterBank bank = make_bank(ds, meta, params, seed, echo);
    slsf::save_bank(bank_out, bank);

    auto points = std::make_shared<slsf::Dataset>(slsf::to_unit_vectors(ds));
    const slsf::BucketIndex idx = slsf::build_index(points, std::move(bank));
    const slsf::IndexStats stats = slsf::index_stats(idx);

    const double t = echo["t_normalized"].get<double>();
    const double p0 = slsf::Phi_c(t);
    json j;
    j["bank"] = bank_out;
    j["params"] = echo;
    j["n"] = ds.n;
    j["d"] = ds.d;
    j["total_entries"] = stats.total_entries;
    j["predicted_entries"] =
        static_cast<double>(ds.n) * echo["m"].get<double>() * p0;
    j["p0_analytic"] = p0;
    j["pass_rate"] = stats.pass_rate;
    j["min_bucket"] = stats.min_bucket;
    j["mean_bucket"] = stats.mean_bucket;
    j["max_bucket"] = stats.max_bucket;
    emit(j.dump(2) + "\n", json_out);
    return 0;
}

int cmd_query(const std::string& data_path, const std::string& bank_path,
              std::optional<std::uint64_t> point_id, std::optional<double> cgamma,
              const std::string& json_out) {
    const slsf::StoredDataset ds = slsf::load_dataset(data_path);
    const slsf::DatasetMeta meta = slsf::load_meta(slsf::meta_path_for(data_path));
    slsf::FilterBank bank = slsf::load_bank(bank_path);
    if (bank.d() != static_cast<int>(ds.d)) {
        throw slsf::IoError("query: bank dimension " + std::to_string(bank.d()) +
                            " does not match dataset dimension " + std::to_string(ds.d));
    }
    auto points = std::make_shared<slsf::Dataset>(slsf::to_unit_vectors(ds));
    const slsf::BucketIndex idx = slsf::build_index(points, std::move(bank));

    if (point_id && *point_id >= ds.n) {
        throw std::invalid_argument("query: --point-id " + std::to_string(*point_id) +
                                    " out of range for n = " + std::to_string(ds.n));
    }
    const slsf::UnitVector q =
        point_id ? (*points)[static_cast<std::size_t>(*point_id)]
                 : slsf::UnitVector(std::vector<double>(meta.query));
    const double threshold = cgamma ? *cgamma : meta.c * meta.gamma;
    const slsf::QueryOutcome out = slsf::query(idx, q, slsf::Angle(threshold));

    json j = outcome_to_json(out);
    j["c_gamma"] = threshold;
    if (out.result) {
        j["distance"] = slsf::angular_distance(q, (*points)[*out.result]).radians();
        j["is_planted"] = *out.result == meta.planted_id;
    }
    emit(j.dump(2) + "\n", json_out);
    return 0;
}

int cmd_bench(const slsf::BenchmarkConfig& config, bool timings, const std::string& json_out) {
    const slsf::BenchmarkReport report = slsf::run_benchmark(config);
    emit(slsf::report_to_json(report, timings), json_out);
    return 0;
}

int cmd_verify_bounds(const std::string& grid_spec, std::uint64_t trials, std::uint64_t seed,
                      double k_sigma, int threads, bool corrupt,
                      const std::string& json_out) {
    std::vector<slsf::FilterGeometry> grid;
    std::vector<std::string> skipped;
    {
        std::size_t pos = 0;
        while (pos < grid_spec.size()) {
            std::size_t next = grid_spec.find(',', pos);
            if (next == std::string::npos) next = grid_spec.size();
            const std::string item = grid_spec.substr(pos, next - pos);
            pos = next + 1;
            const std::size_t colon = item.find(':');
            if (colon == std::string::npos) {
                throw CLI::ValidationError("--grid", "expected t:alpha pairs");
            }
            const double t = std::stod(item.substr(0, colon));
            const double alpha = std::stod(item.substr(colon + 1));
            if (t * std::tan(0.5 * alpha) < 1.0) {
                std::fprintf(stderr, "warning: skipping invalid grid point %s "
                                     "(t tan(alpha/2) < 1)\n", item.c_str());
                skipped.push_back(item);
                continue;
            }
            grid.emplace_back(t, slsf::Angle(alpha));
        }
    }
    auto records = slsf::bound_sweep(grid, trials, seed, k_sigma, threads);
    if (corrupt && !records.empty()) {
        // Test hook: falsify one containment flag to exercise the
        // failure exit path end to end.
        records.front().contained = false;
    }

    bool all_contained = true;
    json arr = json::array();
    for (const auto& rec : records) {
        all_contained = all_contained && rec.contained;
        arr.push_back({{"t", rec.geometry.t},
                       {"alpha", rec.geometry.alpha.radians()},
                       {"estimate", rec.estimate.value},
                       {"std_error", rec.estimate.std_error},
                       {"accepted_trials", rec.estimate.trials},
                       {"lo", rec.bound.lo},
                       {"hi", rec.bound.hi},
                       {"valid", rec.bound.valid},
                       {"regime", rec.bound.regime == slsf::AngleRegime::acute ? "acute" : "obtuse"},
                       {"contained", rec.contained}});
    }
    json j;
    j["records"] = std::move(arr);
    j["skipped"] = skipped;
    j["k_sigma"] = k_sigma;
    j["trials"] = trials;
    j["seed"] = seed;
    j["all_contained"] = all_contained;
    emit(j.dump(2) + "\n", json_out);
    return all_contained ? 0 : 1;
}

int cmd_rho(double gamma, double c, const std::string& t_list, std::uint64_t mc_trials,
            std::uint64_t seed, int threads, const std::string& json_out) {
    json rows = json::array();
    for (double t : parse_list(t_list)) {
        const slsf::RhoReport r = slsf::rho_from_bounds(slsf::Angle(gamma), c, t);
        json row{{"t", t},
                 {"rho", r.rho},
                 {"q1_bound", r.q1_bound},
                 {"q2_bound", r.q2_bound},
                 {"log_q1_bound", r.log_q1_bound},
                 {"log_q2_bound", r.log_q2_bound},
                 {"asymptote", r.asymptote},
                 {"gap", r.gap}};
        if (c * gamma <= std::numbers::pi / 2.0) {
            row["case1_gap_bound"] = slsf::rho_acute_gap_bound(slsf::Angle(gamma), c, t);
        }
        if (mc_trials > 0) {
            const slsf::EmpiricalRhoReport e =
                slsf::empirical_rho(slsf::Angle(gamma), c, t, mc_trials, seed, threads);
            row["rho_hat"] = e.rho_hat;
            row["q1_hat"] = e.q1_hat.value;
            row["q2_hat"] = e.q2_hat.value;
        }
        rows.push_back(std::move(row));
    }
    json j;
    j["gamma"] = gamma;
    j["c"] = c;
    j["rows"] = std::move(rows);
    emit(j.dump(2) + "\n", json_out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical locality-sensitive filtering for angular near-neighbor search"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 1;
    int threads = 1;
    std::string json_out;
    app.add_option("--seed", seed, "Seed for all randomness (default 1)");
    app.add_option("--threads", threads, "Worker threads (never affects results)");
    app.add_option("--json-out", json_out, "Write the JSON report to this file instead of stdout");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a planted near-neighbor instance");
    std::string gen_out = "data.slsf";
    std::uint64_t gen_n = 10000;
    int gen_d = 64;
    double gen_gamma = 0.3 * std::numbers::pi;
    double gen_c = 2.0;
    std::string gen_mode = "planted-hard";
    double gen_margin = 1e-3;
    gen->add_option("--out", gen_out, "Output dataset path");
    gen->add_option("--n", gen_n, "Number of points");
    gen->add_option("--d", gen_d, "Dimension");
    gen->add_option("--gamma", gen_gamma, "Near radius (radians)");
    gen->add_option("--c", gen_c, "Approximation factor (> 1)");
    gen->add_option("--mode", gen_mode, "planted-hard | uniform-reject");
    gen->add_option("--margin", gen_margin, "Far-point margin beyond c*gamma (planted-hard)");

    // index
    auto* index = app.add_subcommand("index", "Build a filter bank over a dataset");
    std::string idx_data, idx_bank_out = "bank.slfb";
    IndexParams idx_params;
    double idx_tau = 0.0;
    std::int64_t idx_m = 0;
    index->add_option("--data", idx_data, "Dataset path")->required();
    index->add_option("--bank-out", idx_bank_out, "Bank blob output path");
    auto* tau_opt = index->add_option("--tau", idx_tau, "Explicit threshold (overrides selection)");
    auto* m_opt = index->add_option("--m", idx_m, "Explicit filter count (overrides selection)");
    index->add_option("--delta", idx_params.delta, "Failure probability for m selection");
    index->add_flag("--exact-tau", idx_params.exact_tau,
                    "Use the inverse-CDF threshold instead of the sqrt(2 ln n) form");
    index->add_flag("--strict-m", idx_params.strict_m,
                    "Select m from the analytic joint lower bound");

    // query
    auto* qry = app.add_subcommand("query", "Run one query against a dataset + bank");
    std::string q_data, q_bank;
    std::uint64_t q_point_id = 0;
    double q_cgamma = 0.0;
    qry->add_option("--data", q_data, "Dataset path")->required();
    qry->add_option("--bank", q_bank, "Bank blob path")->required();
    auto* pid_opt = qry->add_option("--point-id", q_point_id,
                                    "Query with this dataset point instead of the metadata query");
    auto* cg_opt = qry->add_option("--cgamma", q_cgamma,
                                   "Distance threshold (default: c*gamma from metadata)");

    // bench
    auto* bench = app.add_subcommand("bench", "Seeded build+query trials with a full report");
    slsf::BenchmarkConfig bench_cfg;
    bench_cfg.gamma = 0.3 * std::numbers::pi;
    std::string bench_mode = "planted-hard";
    std::string bench_sweep;
    double bench_tau = 0.0;
    std::int64_t bench_m = 0;
    bool bench_timings = false;
    bench->add_option("--n", bench_cfg.n, "Number of points");
    bench->add_option("--d", bench_cfg.d, "Dimension");
    bench->add_option("--gamma", bench_cfg.gamma, "Near radius (radians)");
    bench->add_option("--c", bench_cfg.c, "Approximation factor");
    bench->add_option("--delta", bench_cfg.delta, "Failure probability");
    bench->add_option("--trials", bench_cfg.trials, "Independent re-seeded trials");
    bench->add_option("--mode", bench_mode, "planted-hard | uniform-reject");
    bench->add_option("--margin", bench_cfg.far_margin, "Far-point margin beyond c*gamma");
    auto* btau_opt = bench->add_option("--tau", bench_tau, "Explicit threshold");
    auto* bm_opt = bench->add_option("--m", bench_m, "Explicit filter count");
    bench->add_flag("--exact-tau", bench_cfg.exact_tau, "Use the inverse-CDF threshold");
    bench->add_flag("--strict-m", bench_cfg.strict_m, "Select m from the analytic lower bound");
    bench->add_option("--sweep", bench_sweep, "Comma-separated dataset sizes for a slope fit");
    bench->add_flag("--timings", bench_timings, "Include wall-clock timings in the report");

    // verify-bounds
    auto* vb = app.add_subcommand("verify-bounds",
                                  "Monte Carlo containment check of the collision bounds");
    std::string vb_grid = "2:1.0471975511965976,2:1.5707963267948966,"
                          "2:2.0943951023931953,3:0.7853981633974483";
    std::uint64_t vb_trials = 10000000;
    double vb_k = 4.0;
    bool vb_corrupt = false;
    vb->add_option("--grid", vb_grid, "Comma-separated t:alpha pairs");
    vb->add_option("--trials", vb_trials, "Monte Carlo trials per grid point");
    vb->add_option("--k", vb_k, "Containment slack in standard errors");
    vb->add_flag("--corrupt-bounds", vb_corrupt,
                 "Test hook: falsify one record to exercise the failure path");

    // rho
    auto* rho = app.add_subcommand("rho", "Analytical rho tables (optionally with Monte Carlo)");
    double rho_gamma = std::numbers::pi / 4.0;
    double rho_c = 2.0;
    std::string rho_t = "4,8,16,32,64";
    std::uint64_t rho_mc = 0;
    rho->add_option("--gamma", rho_gamma, "Near radius (radians)");
    rho->add_option("--c", rho_c, "Approximation factor");
    rho->add_option("--t", rho_t, "Comma-separated normalized thresholds");
    rho->add_option("--mc-trials", rho_mc, "2-D Monte Carlo trials per row (0 = analytic only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_out, gen_n, gen_d, gen_gamma, gen_c, seed, gen_mode, gen_margin,
                           json_out);
        }
        if (index->parsed()) {
            if (tau_opt->count() > 0) idx_params.tau = idx_tau;
            if (m_opt->count() > 0) idx_params.m = idx_m;
            return cmd_index(idx_data, idx_bank_out, idx_params, seed, json_out);
        }
        if (qry->parsed()) {
            std::optional<std::uint64_t> pid;
            if (pid_opt->count() > 0) pid = q_point_id;
            std::optional<double> cg;
            if (cg_opt->count() > 0) cg = q_cgamma;
            return cmd_query(q_data, q_bank, pid, cg, json_out);
        }
        if (bench->parsed()) {
            bench_cfg.seed = seed;
            bench_cfg.threads = threads;
            bench_cfg.mode = slsf::dataset_mode_from_string(bench_mode);
            if (btau_opt->count() > 0) bench_cfg.tau_override = bench_tau;
            if (bm_opt->count() > 0) bench_cfg.m_override = bench_m;
            if (!bench_sweep.empty()) {
                for (double v : parse_list(bench_sweep)) {
                    bench_cfg.sweep.push_back(static_cast<std::uint64_t>(v));
                }
            }
            return cmd_bench(bench_cfg, bench_timings, json_out);
        }
        if (vb->parsed()) {
            return cmd_verify_bounds(vb_grid, vb_trials, seed, vb_k, threads, vb_corrupt,
                                     json_out);
        }
        if (rho->parsed()) {
            return cmd_rho(rho_gamma, rho_c, rho_t, rho_mc, seed, threads, json_out);
        }
    } catch (const slsf::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
