#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>

// Filter-evaluation kernels over a column-major (coordinate-major) bank:
// entry (filter i, coordinate k) lives at col[k * m + i]. Every dot
// product, vectorized or not, is the same arithmetic object: an f32
// fused-multiply-add chain over coordinates in increasing k. Lanes of the
// vector path are whole dot products, so the build and query paths agree
// bit for bit on every filter.

namespace slsf::detail {

/// Sequential f32 fma chain; the scalar reference for one filter.
inline float dot_seq_f32(const float* col, std::size_t m, std::size_t i, int d,
                         const float* xf) {
    float acc = 0.f;
    for (int k = 0; k < d; ++k) {
        acc = std::fmaf(col[static_cast<std::size_t>(k) * m + i], xf[k], acc);
    }
    return acc;
}

#if defined(__GNUC__) || defined(__clang__)
#define SLSF_VECTOR_KERNEL 1

typedef float v16f __attribute__((vector_size(64)));

/// Sixteen filters' dot products with one point, lanes i0..i0+15.
inline v16f dots16(const float* col, std::size_t m, std::size_t i0, int d,
                   const float* xf) {
    v16f acc = {};
    for (int k = 0; k < d; ++k) {
        v16f rows;
        std::memcpy(&rows, col + static_cast<std::size_t>(k) * m + i0, 64);
        acc += xf[k] * rows;
    }
    return acc;
}

#endif

/// Invokes emit(i) for every filter i with theta_i . x >= tau, ascending.
template <class Emit>
inline void scan_filters(const float* col, std::size_t m, int d, const float* xf,
                         double tau, const Emit& emit) {
    std::size_t i0 = 0;
#ifdef SLSF_VECTOR_KERNEL
    for (; i0 + 16 <= m; i0 += 16) {
        const v16f acc = dots16(col, m, i0, d, xf);
        float lane[16];
        std::memcpy(lane, &acc, 64);
        for (int l = 0; l < 16; ++l) {
            if (static_cast<double>(lane[l]) >= tau) emit(static_cast<std::uint32_t>(i0 + l));
        }
    }
#endif
    for (; i0 < m; ++i0) {
        if (static_cast<double>(dot_seq_f32(col, m, i0, d, xf)) >= tau) {
            emit(static_cast<std::uint32_t>(i0));
        }
    }
}

} // namespace slsf::detail
