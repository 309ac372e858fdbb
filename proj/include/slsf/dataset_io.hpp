#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slsf/index.hpp"
#include "slsf/sphere.hpp"

namespace slsf {

/// The on-disk dataset: n rows of d f32 components, row-major. The f32
/// values are the canonical dataset -- loading and re-saving a file
/// reproduces it byte for byte. Consumers converting rows to UnitVector
/// renormalize in double precision (f32 rounding leaves row norms about
/// 1e-7 off unit).
struct StoredDataset {
    std::uint32_t d = 0;
    std::uint64_t n = 0;
    std::vector<float> data; // n * d, row-major

    const float* row(std::uint64_t i) const { return data.data() + i * d; }
};

enum class DatasetMode { uniform_reject, planted_hard };

std::string to_string(DatasetMode mode);
DatasetMode dataset_mode_from_string(const std::string& s);

/// Sidecar metadata: the exact (double-precision) query vector, the id of
/// the planted near point, and the generation parameters.
struct DatasetMeta {
    std::vector<double> query;
    std::uint64_t planted_id = 0;
    double gamma = 0.0;
    double c = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    std::uint32_t d = 0;
    DatasetMode mode = DatasetMode::planted_hard;
    double far_margin = 0.0;
};

/// Dataset file: magic "SLSF", version u32 LE, d u32 LE, n u64 LE, then
/// n*d f32 LE row-major. Writes are whole-file atomic.
void save_dataset(const std::string& path, const StoredDataset& ds);
StoredDataset load_dataset(const std::string& path);

void save_meta(const std::string& path, const DatasetMeta& meta);
DatasetMeta load_meta(const std::string& path);

/// Conventional sidecar path for a dataset file.
std::string meta_path_for(const std::string& dataset_path);

/// f32 quantization (the canonical precision of a dataset on disk).
StoredDataset quantize_dataset(const Dataset& points);

/// Rows renormalized into double-precision unit vectors.
Dataset to_unit_vectors(const StoredDataset& ds);

/// Generates a planted instance in canonical (f32) precision:
///  - planted-hard: n-1 far points at angle exactly c*gamma + far_margin
///    from a hidden uniform query direction, one planted point at gamma;
///  - uniform-reject: n-1 uniform points redrawn until at least c*gamma
///    away (error after 10^6 consecutive rejections), one planted at gamma.
/// The planted point id is a uniform position in [0, n). The margin keeps
/// far points from satisfying the c*gamma test through rounding of an
/// exactly-critical angle; it is tiny against the collision probabilities.
struct GeneratedInstance {
    StoredDataset dataset;
    DatasetMeta meta;
};

GeneratedInstance generate_instance(std::uint64_t n, int d, Angle gamma, double c,
                                    std::uint64_t seed, DatasetMode mode,
                                    double far_margin = 1e-3);

} // namespace slsf
