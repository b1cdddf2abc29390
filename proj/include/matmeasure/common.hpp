#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace matmeasure {

using Complex = std::complex<double>;

// Shared relative-tolerance defaults. All checks scale by (1 + magnitude)
// so that zero and O(1) inputs are treated uniformly.
inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kClusterTol = 1e-8;
inline constexpr double kRankCutoff = 1e-10;
inline constexpr int kMaxPolyDegree = 64;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
    using Error::Error;
};
struct NotPSD : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct UnsupportedFunction : Error {
    using Error::Error;
};
struct DegreeOverflow : Error {
    using Error::Error;
};
struct RangeViolation : Error {
    using Error::Error;
};
struct InSpectrum : Error {
    using Error::Error;
};
struct TrivialSpace : Error {
    using Error::Error;
};
struct NotCyclic : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct UnknownSuite : Error {
    using Error::Error;
};

}  // namespace matmeasure
