#pragma once

#include <stdexcept>
#include <string>

namespace slcm {

// Base of everything the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad context or descriptor data: composite p, cover not dividing q-1, ...
struct ConfigError : Error {
    using Error::Error;
};

// Multiplicative inverse of zero.
struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero") {}
};

// Values from contexts with different cyclotomic orders were combined.
struct OrderMismatchError : Error {
    OrderMismatchError() : Error("cyclotomic order mismatch between operands") {}
    explicit OrderMismatchError(const std::string& what) : Error(what) {}
};

// Rational function evaluated at a pole.
struct PoleError : Error {
    PoleError() : Error("evaluation at a pole") {}
    explicit PoleError(const std::string& what) : Error(what) {}
};

// A shell sum would need roots of unity deeper than the context provides.
struct DepthError : Error {
    using Error::Error;
};

// A closed form was requested outside its stated hypotheses.
struct UnsupportedCaseError : Error {
    using Error::Error;
};

} // namespace slcm
