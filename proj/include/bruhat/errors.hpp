#pragma once

#include <stdexcept>
#include <string>

namespace bruhat {

/* Enumeration or word-length budget exceeded. The CLI maps this to its
   resource exit code. */
struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Coefficient arithmetic left the 64-bit range. */
struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/* The elimination was fed an ab-polynomial outside the span of cd-words. */
struct NotInCdSpanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in +");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in *");
  return r;
}

}  // namespace bruhat
