#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
  }
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " - " + std::to_string(b));
  }
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return r;
}

inline Int checked_neg(Int a) { return checked_sub(0, a); }

/// Non-negative gcd; gcd(0, 0) == 0.
inline Int gcd(Int a, Int b) {
  if (a == INT64_MIN || b == INT64_MIN) {
    throw OverflowError("gcd of INT64_MIN");
  }
  return std::gcd(a, b);
}

/// Floor modulus into [0, n).
inline Int mod_floor(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace sumsetlab
