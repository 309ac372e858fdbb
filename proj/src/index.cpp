#include "slsf/index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slsf/detail/kernel.hpp"

namespace slsf {

namespace {

constexpr std::size_t kBlockPoints = 64;

} // namespace

BucketIndex build_index(std::shared_ptr<const Dataset> dataset, FilterBank bank) {
    const Dataset& data = *dataset;
    const int d = bank.d();
    for (const UnitVector& x : data) {
        if (x.dim() != static_cast<std::size_t>(d)) {
            throw std::invalid_argument("build_index: point dimension does not match bank");
        }
    }

    std::vector<std::vector<std::uint32_t>> buckets(bank.m());
    const double tau = bank.tau();
    const std::size_t n = data.size();
    const std::size_t m = bank.m();
    const float* col = bank.projectors().data();

    // Blocked kernel: one pass over the projector matrix per block of
    // points, with 16-filter slabs reused across the block from L1.
    // Appends stay id-sorted because blocks and points advance in order.
    std::vector<float> block(kBlockPoints * static_cast<std::size_t>(d));
    for (std::size_t base = 0; base < n; base += kBlockPoints) {
        const std::size_t count = std::min(kBlockPoints, n - base);
        for (std::size_t j = 0; j < count; ++j) {
            const UnitVector& x = data[base + j];
            for (int k = 0; k < d; ++k) {
                block[j * d + k] = static_cast<float>(x[k]);
            }
        }
        std::size_t i0 = 0;
#ifdef SLSF_VECTOR_KERNEL
        for (; i0 + 16 <= m; i0 += 16) {
            for (std::size_t j = 0; j < count; ++j) {
                const detail::v16f acc = detail::dots16(col, m, i0, d, block.data() + j * d);
                float lane[16];
                std::memcpy(lane, &acc, 64);
                for (int l = 0; l < 16; ++l) {
                    if (static_cast<double>(lane[l]) >= tau) {
                        buckets[i0 + l].push_back(static_cast<std::uint32_t>(base + j));
                    }
                }
            }
        }
#endif
        for (; i0 < m; ++i0) {
            for (std::size_t j = 0; j < count; ++j) {
                if (static_cast<double>(detail::dot_seq_f32(col, m, i0, d,
                                                            block.data() + j * d)) >= tau) {
                    buckets[i0].push_back(static_cast<std::uint32_t>(base + j));
                }
            }
        }
    }
    return BucketIndex(std::move(dataset), std::move(bank), std::move(buckets));
}

QueryOutcome query(const BucketIndex& idx, const UnitVector& q, Angle c_gamma) {
    const Dataset& data = idx.dataset();
    if (q.dim() != static_cast<std::size_t>(idx.bank().d())) {
        throw std::invalid_argument("query: query dimension does not match index");
    }
    const double threshold = c_gamma.radians();
    const Signature sig = signature(idx.bank(), q);

    QueryOutcome out;
    out.signature_empty = sig.empty();
    for (std::uint32_t i : sig) {
        const auto& bucket = idx.buckets()[i];
        ++out.buckets_probed;
        for (std::uint32_t id : bucket) {
            ++out.candidates_scanned;
            ++out.distance_computations;
            if (angular_distance(q, data[id]).radians() <= threshold) {
                out.result = id;
                return out;
            }
        }
    }
    return out;
}

IndexStats index_stats(const BucketIndex& idx) {
    IndexStats s;
    s.bucket_sizes.reserve(idx.buckets().size());
    for (const auto& b : idx.buckets()) {
        s.bucket_sizes.push_back(static_cast<std::uint32_t>(b.size()));
        s.total_entries += b.size();
    }
    if (!s.bucket_sizes.empty()) {
        s.min_bucket = *std::min_element(s.bucket_sizes.begin(), s.bucket_sizes.end());
        s.max_bucket = *std::max_element(s.bucket_sizes.begin(), s.bucket_sizes.end());
        s.mean_bucket = static_cast<double>(s.total_entries) / s.bucket_sizes.size();
    }
    const std::size_t n = idx.dataset().size();
    if (n > 0) {
        s.pass_rate = static_cast<double>(s.total_entries) /
                      (static_cast<double>(n) * static_cast<double>(idx.bank().m()));
    }
    return s;
}

} // namespace slsf
