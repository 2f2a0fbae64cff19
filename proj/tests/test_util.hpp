#pragma once

#include <doctest.h>

#include "simpson/valuation.hpp"

namespace doctest {
template <> struct StringMaker<simpson::Rational> {
  static String convert(const simpson::Rational &r) { return simpson::to_string(r).c_str(); }
};
}  // namespace doctest
