#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace voronoi3 {

/// Base class of every error raised by the library. `module()` and
/// `operation()` name where the failure originated so the CLI can report it.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string operation, const std::string& what)
        : std::runtime_error(what), module_(std::move(module)), operation_(std::move(operation)) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& operation() const noexcept { return operation_; }

private:
    std::string module_;
    std::string operation_;
};

/// Violated precondition on a user-supplied argument.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    NotInvertible(std::int64_t a, std::int64_t k)
        : Error("kloosterman", "mod_inverse",
                "NotInvertible: gcd(" + std::to_string(a) + ", " + std::to_string(k) + ") != 1") {}
};

/// A coefficient outside the range covered by a table was requested.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

class MissingPrimeSeed : public Error {
public:
    explicit MissingPrimeSeed(std::int64_t p)
        : Error("hecke_coefficients", "build_table",
                "MissingPrimeSeed: no seed for prime " + std::to_string(p)),
          prime(p) {}
    std::int64_t prime;
};

class MalformedSeedFile : public Error {
public:
    MalformedSeedFile(std::size_t line, const std::string& detail)
        : Error("hecke_coefficients", "build_table",
                "MalformedSeedFile: line " + std::to_string(line) + ": " + detail),
          line(line) {}
    std::size_t line;
};

class PoleAt : public Error {
public:
    explicit PoleAt(const std::string& where)
        : Error("special_functions", "complex_gamma", "PoleAt: " + where) {}
};

class UnsupportedOrder : public Error {
public:
    explicit UnsupportedOrder(double order)
        : Error("special_functions", "bessel_j",
                "UnsupportedOrder: " + std::to_string(order) +
                    " is neither an integer nor a half-integer") {}
};

/// Quadrature could not reach the requested tolerance within its panel budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class NoAdmissibleNk : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

}  // namespace voronoi3
