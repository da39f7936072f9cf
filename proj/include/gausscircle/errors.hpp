#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace gausscircle {

/// A precondition on an argument was violated (maps to CLI exit status 1).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A configured resource cap (memory, magnitude) was exceeded (exit status 2).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A kernel produced a non-finite value or an internal consistency check
/// failed (quadrature non-convergence, conjugate-symmetry violation).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

inline double finite_or_throw(double v, const char* where) {
    if (!std::isfinite(v))
        throw NumericalError(std::string(where) + ": non-finite value");
    return v;
}

}  // namespace detail
}  // namespace gausscircle
