#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "c2lab/poly.hpp"

namespace c2lab {

// q with q*q == p and positive leading coefficient, if p is a perfect square.
std::optional<Poly> sqrt_poly(const Poly& p);

// Primitive, sign-normalized gcd(p, dp/dv) in Z[others][v].
Poly sq_gcd(const Poly& p, unsigned v);

// Full multivariate gcd over Z (primitive-part recursion with subresultant
// remainder sequences in the top variable). Result has positive leading coefficient.
WidePoly gcd(const WidePoly& a, const WidePoly& b);

// Pseudo-remainder of a by b with respect to v.
WidePoly prem(const WidePoly& a, const WidePoly& b, unsigned v);

// gcd of the coefficients of p viewed as a polynomial in v.
WidePoly content_in(const WidePoly& p, unsigned v);

// Cheap sound rejection: false means p is certainly not a square.
bool maybe_square(const Poly& p);

// Cheap sound rejection for a repeated factor in v: false means p is
// squarefree as a polynomial in v over the function field.
bool maybe_repeated_factor(const Poly& p, unsigned v);

// Arithmetic modulo the Mersenne prime 2^61 - 1, used for random images.
namespace m61 {
inline constexpr uint64_t kP = (uint64_t{1} << 61) - 1;
inline uint64_t mul(uint64_t a, uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  uint64_t lo = static_cast<uint64_t>(z & kP);
  uint64_t hi = static_cast<uint64_t>(z >> 61);
  uint64_t r = lo + hi;
  return r >= kP ? r - kP : r;
}
inline uint64_t add(uint64_t a, uint64_t b) {
  uint64_t r = a + b;
  return r >= kP ? r - kP : r;
}
inline uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + kP - b; }
uint64_t pow(uint64_t a, uint64_t e);
uint64_t inv(uint64_t a);
}  // namespace m61

}  // namespace c2lab
