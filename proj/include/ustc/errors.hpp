#pragma once

#include <stdexcept>
#include <string>

namespace ustc {

// Numeric failures map to CLI exit code 3, validation failures to exit code 2.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CayleySingular : NumericError {
    explicit CayleySingular(const std::string& msg) : NumericError(msg) {}
};

struct ProjectionFailed : NumericError {
    explicit ProjectionFailed(const std::string& msg) : NumericError(msg) {}
};

struct QuadratureError : NumericError {
    explicit QuadratureError(const std::string& msg) : NumericError(msg) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ReductionUnavailable : std::runtime_error {
    explicit ReductionUnavailable(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ustc
