#include "slsf/filter_bank.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "slsf/collision.hpp"
#include "slsf/detail/bytes.hpp"
#include "slsf/detail/kernel.hpp"
#include "slsf/errors.hpp"
#include "slsf/gauss.hpp"
#include "slsf/rng.hpp"

namespace slsf {

namespace {

constexpr std::uint32_t kBankVersion = 1;

} // namespace

FilterBank::FilterBank(int d, std::uint32_t m, double tau, std::uint64_t seed)
    : d_(d), m_(m), tau_(tau), seed_(seed) {
    proj_.resize(std::size_t(m) * std::size_t(d));
    SplitMix64 rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    // Entries are drawn filter by filter (row order) regardless of the
    // coordinate-major storage, so the stream of draws is layout-agnostic.
    for (std::uint32_t i = 0; i < m; ++i) {
        for (int k = 0; k < d; ++k) {
            proj_[static_cast<std::size_t>(k) * m + i] =
                static_cast<float>(rng.next_gaussian() * scale);
        }
    }
}

FilterBank build_filter_bank(int d, std::int64_t m, double tau, std::uint64_t seed) {
    if (d < 2) {
        throw std::invalid_argument("build_filter_bank: d must be at least 2");
    }
    if (m < 1 || m > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("build_filter_bank: m must lie in [1, 2^32)");
    }
    if (!std::isfinite(tau)) {
        throw std::invalid_argument("build_filter_bank: tau must be finite");
    }
    return FilterBank(d, static_cast<std::uint32_t>(m), tau, seed);
}

Signature signature(const FilterBank& bank, const UnitVector& x) {
    const int d = bank.d();
    if (x.dim() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("signature: point dimension does not match bank");
    }
    std::vector<float> xf(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) xf[j] = static_cast<float>(x[j]);

    Signature sig;
    detail::scan_filters(bank.projectors().data(), bank.m(), d, xf.data(), bank.tau(),
                         [&](std::uint32_t i) { sig.push_back(i); });
    return sig;
}

double select_tau(std::int64_t n, int d, double c, Angle gamma) {
    const double g = gamma.radians();
    if (n < 2 || d < 2 || !(c > 1.0) || !(c * g > 0.0) || !(c * g < std::numbers::pi)) {
        throw std::invalid_argument("select_tau: need n >= 2, d >= 2, c > 1, 0 < c*gamma < pi");
    }
    const double tg = std::tan(0.5 * c * g);
    return std::sqrt(2.0 * std::log(static_cast<double>(n)) / (d * tg * tg));
}

double select_tau_exact(std::int64_t n, int d, double c, Angle gamma) {
    const double g = gamma.radians();
    if (n < 2 || d < 2 || !(c > 1.0) || !(c * g > 0.0) || !(c * g < std::numbers::pi)) {
        throw std::invalid_argument("select_tau_exact: need n >= 2, d >= 2, c > 1, 0 < c*gamma < pi");
    }
    const double z = Phi_inv(1.0 - 0.5 / static_cast<double>(n));
    return z / (std::sqrt(static_cast<double>(d)) * std::tan(0.5 * c * g));
}

std::int64_t select_m(double delta, double p1) {
    if (!(delta > 0.0) || !(delta < 1.0) || !(p1 > 0.0) || !(p1 < 1.0)) {
        throw std::invalid_argument("select_m: need delta in (0,1) and p1 in (0,1)");
    }
    const double m = std::ceil(std::log(1.0 / delta) / p1);
    if (!(m < 9.2e18)) {
        throw std::overflow_error("select_m: required filter count exceeds 63 bits");
    }
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(m));
}

double joint_p1(Angle gamma, double t) {
    return joint_probability_quadrature(FilterGeometry(t, gamma));
}

double joint_p1_lower_bound(Angle gamma, double t) {
    return Phi_c(t) * collision_bounds(FilterGeometry(t, gamma)).lo;
}

void save_bank(const std::string& path, const FilterBank& bank) {
    std::string out;
    out.reserve(32);
    out.append("SLFB", 4);
    detail::put_u32(out, kBankVersion);
    detail::put_u64(out, bank.seed());
    detail::put_u32(out, static_cast<std::uint32_t>(bank.d()));
    detail::put_u32(out, bank.m());
    detail::put_f64(out, bank.tau());
    detail::write_file_atomic(path, out);
}

FilterBank load_bank(const std::string& path) {
    const std::string bytes = detail::read_file(path);
    detail::ByteReader r(bytes.data(), bytes.size());
    if (!r.expect_magic("SLFB")) {
        throw IoError(path + ": not a filter bank file (bad magic)");
    }
    const std::uint32_t version = r.u32();
    if (version != kBankVersion) {
        throw IoError(path + ": unsupported bank version");
    }
    const std::uint64_t seed = r.u64();
    const std::uint32_t d = r.u32();
    const std::uint32_t m = r.u32();
    const double tau = r.f64();
    if (!r.ok()) {
        throw IoError(path + ": truncated bank file");
    }
    return build_filter_bank(static_cast<int>(d), m, tau, seed);
}

} // namespace slsf
