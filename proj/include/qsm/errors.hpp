#pragma once

#include <stdexcept>
#include <string>

namespace qsm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact arithmetic: denominator became zero.
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

// Modular evaluation hit a vanishing denominator; caller should resample q0.
struct BadEvaluationPoint : Error {
    BadEvaluationPoint() : Error("bad evaluation point: denominator vanishes at q0") {}
};

// A reduction was requested above the configured degree cap.
struct DegreeOverflow : Error {
    explicit DegreeOverflow(int degree, int cap)
        : Error("degree overflow: degree " + std::to_string(degree) +
                " exceeds cap " + std::to_string(cap)) {}
};

// Constant term of a series (or series matrix) is not invertible.
struct NotAUnit : Error {
    explicit NotAUnit(const std::string& what) : Error("not a unit in series model: " + what) {}
};

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error("parse error at position " + std::to_string(pos) + ": " + what), position(pos) {}
};

struct IndexError : Error {
    using Error::Error;
};

// A theorem's side condition is violated by the requested instance.
struct HypothesisNotMet : Error {
    using Error::Error;
};

// A graded operation received an operand without definite parity.
struct NonHomogeneous : Error {
    NonHomogeneous() : Error("non-homogeneous operand") {}
};

} // namespace qsm
