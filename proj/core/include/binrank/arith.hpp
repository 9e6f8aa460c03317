#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace binrank {

/// Arbitrary-precision integer used wherever exactness matters.
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational; all probabilities and discrepancies are values of this type.
using Rational = boost::multiprecision::cpp_rational;

/// 2^e as an exact rational, e may be negative.
inline Rational pow2(long e) {
  if (e >= 0) {
    return Rational(BigInt(1) << e);
  }
  return Rational(1, BigInt(1) << -e);
}

}  // namespace binrank
