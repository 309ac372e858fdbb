#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "slsf/filter_bank.hpp"
#include "slsf/sphere.hpp"

namespace slsf {

using Dataset = std::vector<UnitVector>;

/// Result of one query. result is present only for a point whose angular
/// distance from the query is at most the threshold; every examined
/// candidate costs exactly one distance computation, so
/// distance_computations == candidates_scanned always. Candidates are
/// counted with multiplicity: a point stored in k probed buckets can be
/// examined up to k times. "Not found" covers both an empty query
/// signature (flagged separately) and a fruitless scan.
struct QueryOutcome {
    std::optional<std::uint32_t> result;
    std::uint64_t candidates_scanned = 0;
    std::uint64_t buckets_probed = 0;
    std::uint64_t distance_computations = 0;
    bool signature_empty = false;
};

/// The bucket collection B_1..B_m over a dataset: point id i appears in
/// bucket j exactly when filter j accepts x_i. Bucket id lists are sorted
/// ascending; the structure is immutable after build and queries are
/// read-only, so concurrent querying needs no coordination.
class BucketIndex {
public:
    BucketIndex(std::shared_ptr<const Dataset> data, FilterBank bank,
                std::vector<std::vector<std::uint32_t>> buckets)
        : data_(std::move(data)), bank_(std::move(bank)), buckets_(std::move(buckets)) {}

    const Dataset& dataset() const { return *data_; }
    const FilterBank& bank() const { return bank_; }
    const std::vector<std::vector<std::uint32_t>>& buckets() const { return buckets_; }

private:
    std::shared_ptr<const Dataset> data_;
    FilterBank bank_;
    std::vector<std::vector<std::uint32_t>> buckets_;
};

/// Builds the bucket collection. All points must be unit vectors of the
/// bank's dimension. Single-threaded and deterministic; callers wanting
/// parallelism run independent builds concurrently.
BucketIndex build_index(std::shared_ptr<const Dataset> dataset, FilterBank bank);

/// The query procedure: compute sig(q), scan buckets in ascending filter
/// index and points within each bucket in ascending id, and return the
/// first point within c_gamma. No cross-bucket deduplication is performed;
/// the cost accounting wants candidates with multiplicity.
QueryOutcome query(const BucketIndex& idx, const UnitVector& q, Angle c_gamma);

struct IndexStats {
    std::uint64_t total_entries = 0;
    std::vector<std::uint32_t> bucket_sizes;
    std::uint32_t min_bucket = 0;
    std::uint32_t max_bucket = 0;
    double mean_bucket = 0.0;
    /// total_entries / (n * m): the empirical per-filter pass rate.
    double pass_rate = 0.0;
};

IndexStats index_stats(const BucketIndex& idx);

} // namespace slsf
