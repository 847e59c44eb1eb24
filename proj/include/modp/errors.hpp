#pragma once

#include <stdexcept>
#include <string>

namespace modp {

// Input outside the mathematical domain of an operation (poles, s <= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Request exceeding a memory or enumeration guard.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Invalid parameters when building a distribution or sampler.
class ConstructionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Unknown identifiers or malformed requests coming from callers or the CLI.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace modp
