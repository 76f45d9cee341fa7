#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace chaoskit {

/// Bad arguments, malformed files, violated preconditions. CLI maps this to exit 1.
struct param_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure at runtime (divergent integration, no qualifying anchors, ...).
/// CLI maps this to exit 2.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Format a double with 17 significant digits (round-trip exact for IEEE doubles).
std::string fmt17(double v);

/// splitmix64 step; the standard finalizer, used for seed derivation.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derive an independent RNG seed from a master seed and up to three stream indices.
/// Same inputs always give the same seed; distinct indices give decorrelated streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

/// FNV-1a 64-bit hash of a byte string, as a 16-char lowercase hex string.
std::string fnv1a_hex(const std::string& bytes);

/// Euclidean distance between two points of the given dimension.
inline double point_distance(const double* a, const double* b, int dim) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace chaoskit
