#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace freemeixner {

using Rational = mpq_class;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unknown cell, mismatched spaces or dimensions.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Enumeration or basis size beyond the supported bound.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// A documented precondition does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Series with vanishing linear coefficient passed to compositional inversion.
class SingularSeriesError : public Error {
public:
  using Error::Error;
};

/// Iterative solver failure or non-finite numeric result.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Parses "p/q", an integer, or a finite decimal such as "-0.25" exactly.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is one).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

Rational abs(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

/// Rational r with r >= sqrt(q) and r - sqrt(q) < 2^-bits; exact for perfect squares.
Rational sqrt_upper(const Rational& q, unsigned bits = 64);

/// Rational r with r <= sqrt(q) and sqrt(q) - r < 2^-bits; exact for perfect squares.
Rational sqrt_lower(const Rational& q, unsigned bits = 64);

}  // namespace freemeixner
