#pragma once

#include <stdexcept>
#include <string>

namespace cqsoliton {

/// A parameter lies outside the range where the requested object exists.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure could not produce a trustworthy result
/// (singular linear system, vanishing norm, non-finite values).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cqsoliton
