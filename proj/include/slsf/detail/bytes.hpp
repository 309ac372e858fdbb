#pragma once

#include <cstdint>
#include <cstring>
#include <string>

namespace slsf::detail {

// Little-endian scalar serialization, independent of host byte order.

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

inline void put_f32(std::string& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

class ByteReader {
public:
    ByteReader(const char* data, std::size_t size) : data_(data), size_(size) {}

    bool ok() const { return !failed_; }
    std::size_t remaining() const { return size_ - pos_; }

    std::uint32_t u32() {
        if (!take(4)) return 0;
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(data_[pos_ - 4 + i])) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        if (!take(8)) return 0;
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(data_[pos_ - 8 + i])) << (8 * i);
        return v;
    }

    double f64() {
        const std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }

    float f32() {
        const std::uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }

    bool expect_magic(const char* magic4) {
        if (!take(4)) return false;
        return std::memcmp(data_ + pos_ - 4, magic4, 4) == 0;
    }

private:
    bool take(std::size_t k) {
        if (failed_ || size_ - pos_ < k) {
            failed_ = true;
            return false;
        }
        pos_ += k;
        return true;
    }

    const char* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
    bool failed_ = false;
};

/// Whole-file atomic write (temp file in the same directory, then rename).
void write_file_atomic(const std::string& path, const std::string& bytes);

/// Reads a whole file; throws IoError on failure.
std::string read_file(const std::string& path);

} // namespace slsf::detail
