#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace simpson {

using Rational = boost::rational<std::int64_t>;

/// A p-adic valuation normalised so that v(p) = 1. An empty value means the
/// element is indistinguishable from zero at the working precision.
using Valuation = std::optional<Rational>;

inline Valuation valuation_min(const Valuation &a, const Valuation &b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

/// True when `v` is at least `bound`, counting the empty valuation as +infinity.
inline bool valuation_at_least(const Valuation &v, const Rational &bound) {
  return !v || *v >= bound;
}

std::string to_string(const Rational &r);
std::string to_string(const Valuation &v);

/// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ContextError : public Error {
public:
  using Error::Error;
};

class NonUnitError : public Error {
public:
  NonUnitError(const Valuation &v)
      : Error("non-unit: valuation " + to_string(v)), valuation(v) {}
  Valuation valuation;
};

/// Raised when an exact division is requested but the numerator does not
/// carry enough p-adic divisibility.
class PrecisionError : public Error {
public:
  using Error::Error;
};

}  // namespace simpson
