#pragma once

#include <stdexcept>
#include <string>

namespace turbo {

/// Bad or inconsistent user-facing configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical stage failed its contract (CLI exit code 3).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace turbo
