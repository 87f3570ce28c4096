#pragma once

#include <stdexcept>
#include <string>

namespace ssamt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the data make a statistic undefined (zero variance, zero
/// norm, zero denominator). Callers that process many variables usually
/// catch this one, record a warning and carry on.
class DegenerateError : public Error {
public:
    using Error::Error;
};

} // namespace ssamt
