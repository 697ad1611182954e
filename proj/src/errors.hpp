#pragma once

#include <stdexcept>
#include <string>

namespace mdclt {

// Bad inputs: shapes, indices, parameter ranges, malformed configs/files.
// Maps to exit/status code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric failures discovered while computing: degenerate covariances,
// non-finite samples, capacity overruns, kink-adjacent gradient queries.
// Maps to exit/status code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mdclt
