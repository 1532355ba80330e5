#ifndef IFSLAB_ERRORS_HPP
#define IFSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ifslab {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct EqualWords : Error {
    using Error::Error;
};
struct UnsupportedKind : Error {
    using Error::Error;
};
struct ContractionTooWeak : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    using Error::Error;
};
struct NotContracting : Error {
    using Error::Error;
};
struct ZeroMass : Error {
    using Error::Error;
};
struct DegenerateGap : Error {
    using Error::Error;
};
struct NonpositiveLyapunov : Error {
    using Error::Error;
};
struct EmptyBall : Error {
    using Error::Error;
};
struct NotInU : Error {
    using Error::Error;
};
// Raised by the CLI layer for malformed flags/config files (exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace ifslab

#endif
