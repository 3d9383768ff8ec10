#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace c2lab {

// Thrown when an exact division has a nonzero remainder.
class NotDivisible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Integer with an int64 fast path. Overflow promotes to mpz, and results
// that fit again are demoted, so the representation is canonical.
class Integer {
 public:
  Integer() = default;
  Integer(int64_t v) : rep_(v) {}
  Integer(int v) : rep_(static_cast<int64_t>(v)) {}
  explicit Integer(const mpz_class& v);

  static Integer parse(std::string_view text);

  bool is_zero() const;
  bool is_small() const { return std::holds_alternative<int64_t>(rep_); }
  int sign() const;
  int64_t small() const { return std::get<int64_t>(rep_); }
  bool fits_int64() const { return is_small(); }
  mpz_class to_mpz() const;
  std::string str() const;

  // Non-negative residue modulo m (m > 0).
  uint64_t mod(uint64_t m) const;

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  // Exact quotient; throws NotDivisible when b does not divide a.
  friend Integer exact_div(const Integer& a, const Integer& b);
  friend bool divides(const Integer& d, const Integer& a);
  friend Integer gcd(const Integer& a, const Integer& b);
  friend Integer abs(const Integer& a);
  friend Integer pow(const Integer& a, unsigned e);

  // Integer square root if the value is a perfect square (>= 0).
  friend bool exact_sqrt(const Integer& a, Integer& root);

  size_t hash() const;

 private:
  static Integer normalize(mpz_class v);
  std::variant<int64_t, mpz_class> rep_{int64_t{0}};
};

Integer exact_div(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
Integer abs(const Integer& a);
Integer pow(const Integer& a, unsigned e);
bool exact_sqrt(const Integer& a, Integer& root);
std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace c2lab

template <>
struct std::hash<c2lab::Integer> {
  size_t operator()(const c2lab::Integer& v) const noexcept { return v.hash(); }
};
