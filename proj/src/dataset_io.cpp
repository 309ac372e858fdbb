#include "slsf/dataset_io.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "slsf/detail/bytes.hpp"
#include "slsf/errors.hpp"
#include "slsf/rng.hpp"

namespace slsf {

namespace {

constexpr std::uint32_t kDatasetVersion = 1;

} // namespace

std::string to_string(DatasetMode mode) {
    return mode == DatasetMode::planted_hard ? "planted-hard" : "uniform-reject";
}

DatasetMode dataset_mode_from_string(const std::string& s) {
    if (s == "planted-hard") return DatasetMode::planted_hard;
    if (s == "uniform-reject") return DatasetMode::uniform_reject;
    throw std::invalid_argument("unknown dataset mode: " + s);
}

void save_dataset(const std::string& path, const StoredDataset& ds) {
    if (ds.data.size() != static_cast<std::size_t>(ds.n) * ds.d) {
        throw std::invalid_argument("save_dataset: size does not match n * d");
    }
    std::string out;
    out.reserve(20 + ds.data.size() * 4);
    out.append("SLSF", 4);
    detail::put_u32(out, kDatasetVersion);
    detail::put_u32(out, ds.d);
    detail::put_u64(out, ds.n);
    for (float v : ds.data) detail::put_f32(out, v);
    detail::write_file_atomic(path, out);
}

StoredDataset load_dataset(const std::string& path) {
    const std::string bytes = detail::read_file(path);
    detail::ByteReader r(bytes.data(), bytes.size());
    if (!r.expect_magic("SLSF")) {
        throw IoError(path + ": not a dataset file (bad magic)");
    }
    const std::uint32_t version = r.u32();
    if (version != kDatasetVersion) {
        throw IoError(path + ": unsupported dataset version");
    }
    StoredDataset ds;
    ds.d = r.u32();
    ds.n = r.u64();
    if (!r.ok() || ds.d < 2) {
        throw IoError(path + ": corrupt dataset header");
    }
    if (r.remaining() != static_cast<std::size_t>(ds.n) * ds.d * 4) {
        throw IoError(path + ": dataset payload size does not match header");
    }
    ds.data.resize(static_cast<std::size_t>(ds.n) * ds.d);
    for (float& v : ds.data) v = r.f32();
    return ds;
}

void save_meta(const std::string& path, const DatasetMeta& meta) {
    nlohmann::json j;
    j["query"] = meta.query;
    j["planted_id"] = meta.planted_id;
    j["gamma"] = meta.gamma;
    j["c"] = meta.c;
    j["seed"] = meta.seed;
    j["n"] = meta.n;
    j["d"] = meta.d;
    j["mode"] = to_string(meta.mode);
    j["far_margin"] = meta.far_margin;
    detail::write_file_atomic(path, j.dump(2) + "\n");
}

DatasetMeta load_meta(const std::string& path) {
    const std::string bytes = detail::read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": invalid metadata JSON: " + e.what());
    }
    try {
        DatasetMeta meta;
        meta.query = j.at("query").get<std::vector<double>>();
        meta.planted_id = j.at("planted_id").get<std::uint64_t>();
        meta.gamma = j.at("gamma").get<double>();
        meta.c = j.at("c").get<double>();
        meta.seed = j.at("seed").get<std::uint64_t>();
        meta.n = j.at("n").get<std::uint64_t>();
        meta.d = j.at("d").get<std::uint32_t>();
        meta.mode = dataset_mode_from_string(j.at("mode").get<std::string>());
        meta.far_margin = j.at("far_margin").get<double>();
        return meta;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": metadata missing fields: " + e.what());
    }
}

std::string meta_path_for(const std::string& dataset_path) {
    return dataset_path + ".meta.json";
}

StoredDataset quantize_dataset(const Dataset& points) {
    StoredDataset ds;
    if (points.empty()) return ds;
    ds.d = static_cast<std::uint32_t>(points[0].dim());
    ds.n = points.size();
    ds.data.reserve(points.size() * ds.d);
    for (const UnitVector& p : points) {
        for (std::uint32_t k = 0; k < ds.d; ++k) {
            ds.data.push_back(static_cast<float>(p[k]));
        }
    }
    return ds;
}

Dataset to_unit_vectors(const StoredDataset& ds) {
    Dataset points;
    points.reserve(ds.n);
    for (std::uint64_t i = 0; i < ds.n; ++i) {
        std::vector<double> coords(ds.d);
        const float* r = ds.row(i);
        for (std::uint32_t k = 0; k < ds.d; ++k) coords[k] = r[k];
        points.push_back(UnitVector::from_unnormalized(std::move(coords)));
    }
    return points;
}

GeneratedInstance generate_instance(std::uint64_t n, int d, Angle gamma, double c,
                                    std::uint64_t seed, DatasetMode mode,
                                    double far_margin) {
    const double g = gamma.radians();
    const double cg = c * g;
    if (n < 2 || !(c > 1.0) || !(cg > 0.0) || !(cg < std::numbers::pi)) {
        throw std::invalid_argument("generate_instance: need n >= 2, c > 1, 0 < c*gamma < pi");
    }
    if (!(far_margin >= 0.0) || !(cg + far_margin <= std::numbers::pi)) {
        throw std::invalid_argument("generate_instance: c*gamma + far_margin must stay within pi");
    }

    SplitMix64 rng(seed);
    const UnitVector q = sample_uniform_sphere(d, rng);
    const Angle far_angle(cg + far_margin);

    Dataset points;
    points.reserve(n);
    for (std::uint64_t i = 0; i + 1 < n; ++i) {
        if (mode == DatasetMode::planted_hard) {
            points.push_back(planted_at_angle(q, far_angle, rng));
        } else {
            bool placed = false;
            for (int rejections = 0; rejections < 1000000; ++rejections) {
                UnitVector cand = sample_uniform_sphere(d, rng);
                if (angular_distance(q, cand).radians() >= cg) {
                    points.push_back(std::move(cand));
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                throw std::runtime_error(
                    "generate_instance: 10^6 consecutive rejections; nearly the whole "
                    "sphere lies within c*gamma of the query -- use planted-hard mode");
            }
        }
    }
    const std::uint64_t planted_id = rng.next_u64() % n;
    points.insert(points.begin() + static_cast<std::ptrdiff_t>(planted_id),
                  planted_at_angle(q, gamma, rng));

    GeneratedInstance out;
    out.dataset = quantize_dataset(points);
    out.meta.query = q.coords();
    out.meta.planted_id = planted_id;
    out.meta.gamma = g;
    out.meta.c = c;
    out.meta.seed = seed;
    out.meta.n = n;
    out.meta.d = static_cast<std::uint32_t>(d);
    out.meta.mode = mode;
    out.meta.far_margin = mode == DatasetMode::planted_hard ? far_margin : 0.0;
    return out;
}

} // namespace slsf
