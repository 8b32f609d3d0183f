#pragma once

#include <stdexcept>
#include <string>

namespace sfdbp {

/// Argument outside the mathematical domain of an operation (e.g. non-positive depth).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Shapes or sizes of inputs disagree, or data is malformed (non-finite costs, bad file).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller violated a usage precondition (too few observations, index out of range, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Depth range straddles a focus distance, so blur cannot identify depth uniquely.
class AmbiguityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid or incomplete run configuration. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace sfdbp
