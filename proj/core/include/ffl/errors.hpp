#pragma once

#include <stdexcept>
#include <string>

namespace ffl {

// Base class for every domain error thrown by this library. CLI maps these to
// exit codes: ConfigError -> 2, BudgetExceeded / InsufficientPrecision -> 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg = "division by zero") : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg = "dimension mismatch") : Error(msg) {}
};

struct ZeroVector : Error {
    explicit ZeroVector(const std::string& msg = "zero vector not allowed here") : Error(msg) {}
};

struct InvalidWeights : Error {
    explicit InvalidWeights(const std::string& msg = "invalid weight vector") : Error(msg) {}
};

struct SingularBasis : Error {
    explicit SingularBasis(const std::string& msg = "basis rows are dependent") : Error(msg) {}
};

struct NonUnimodular : Error {
    explicit NonUnimodular(const std::string& msg = "lattice is not unimodular") : Error(msg) {}
};

struct DependentVectors : Error {
    explicit DependentVectors(const std::string& msg = "vectors are linearly dependent") : Error(msg) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg = "enumeration budget exceeded") : Error(msg) {}
};

struct InsufficientPrecision : Error {
    explicit InsufficientPrecision(const std::string& msg = "matrix depth below required precision")
        : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg = "invalid configuration") : Error(msg) {}
};

struct DegenerateFit : Error {
    explicit DegenerateFit(const std::string& msg = "not enough distinct points for a fit") : Error(msg) {}
};

}  // namespace ffl
