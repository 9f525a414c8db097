#pragma once

#include <stdexcept>
#include <string>

namespace epslab {

// Every failure mode has a named type so callers (and the CLI) can report
// which contract was violated rather than a bare what() string.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define EPSLAB_DEFINE_ERROR(NAME)                                   \
    class NAME : public Error {                                     \
    public:                                                         \
        explicit NAME(const std::string& msg) : Error(#NAME, msg) {} \
    }

EPSLAB_DEFINE_ERROR(PrimeError);          // non-prime modulus
EPSLAB_DEFINE_ERROR(LevelError);          // level n < 1 or otherwise unusable
EPSLAB_DEFINE_ERROR(UnitError);           // argument not a unit
EPSLAB_DEFINE_ERROR(ZeroError);           // valuation/decomposition of zero
EPSLAB_DEFINE_ERROR(PrecisionError);      // unit class not known to required precision
EPSLAB_DEFINE_ERROR(OrderError);          // root-of-unity order < 1
EPSLAB_DEFINE_ERROR(IllDefinedSumError);  // sum depends on coset representatives
EPSLAB_DEFINE_ERROR(PoleError);           // L-factor pole at chi(pi) = 1
EPSLAB_DEFINE_ERROR(PreconditionError);   // hypothesis of a formula violated
EPSLAB_DEFINE_ERROR(SearchFailure);       // brute-force solver found no/ambiguous witness
EPSLAB_DEFINE_ERROR(ZeroJacobiError);     // division by a vanishing Jacobi sum
EPSLAB_DEFINE_ERROR(ScaleError);          // request exceeds the desk-scale guard
EPSLAB_DEFINE_ERROR(ParseError);          // malformed CLI/JSON input

#undef EPSLAB_DEFINE_ERROR

} // namespace epslab
