#pragma once

#include <stdexcept>
#include <string>

namespace cocoon {

// Precondition violation: bad limit, malformed threshold, out-of-range query.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Requested limit would blow the configured memory bound for the bit array.
class MemoryCapError : public DomainError {
public:
    using DomainError::DomainError;
};

// A computed quantity contradicts one of the exact relations the scheme
// guarantees: a consecutive-composite gap outside {2,4,6}, or a counting
// identity that fails integer equality. Such an event falsifies the
// implementation and must halt; it is never downgraded to a warning.
class TheoremViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace cocoon
