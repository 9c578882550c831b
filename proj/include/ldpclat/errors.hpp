#pragma once
#include <stdexcept>
#include <string>

namespace ldpclat {

// Error categories map onto CLI exit codes: config 2, design 3, I/O 4.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ldpclat
