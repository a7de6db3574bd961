#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "cohom/error.hpp"

namespace cohom {

using BigInt = boost::multiprecision::cpp_int;

// Overloads used by the templated elimination code. The int64 versions throw
// IntegerOverflow so callers can retry the same algorithm over BigInt.
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::IntegerOverflow, "int64 addition");
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::IntegerOverflow, "int64 subtraction");
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::IntegerOverflow, "int64 multiplication");
  return r;
}
inline std::int64_t neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorKind::IntegerOverflow, "int64 negation");
  return -a;
}
inline std::int64_t abs_value(std::int64_t a) { return a < 0 ? neg(a) : a; }

inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt neg(const BigInt& a) { return -a; }
inline BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

/// Least non-negative residue; modulus 0 means "no reduction" (a free factor).
inline std::int64_t reduce_mod(std::int64_t a, std::int64_t modulus) {
  if (modulus == 0) return a;
  std::int64_t r = a % modulus;
  return r < 0 ? r + modulus : r;
}

inline BigInt reduce_mod(const BigInt& a, const BigInt& modulus) {
  if (modulus == 0) return a;
  BigInt r = a % modulus;
  return r < 0 ? BigInt(r + modulus) : r;
}

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorKind::IntegerOverflow, "value " + v.str() + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}
inline std::int64_t to_int64(std::int64_t v) { return v; }

template <class T>
T from_int64(std::int64_t v) {
  return T(v);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return mul(a / std::gcd(a, b), b);
}

}  // namespace cohom
