#pragma once

#include <stdexcept>
#include <string>

namespace slsf {

/// Filesystem or file-format failure (missing file, short read, bad magic).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace slsf
