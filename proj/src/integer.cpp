#include "c2lab/integer.hpp"

#include <climits>
#include <numeric>
#include <ostream>

namespace c2lab {

namespace {

mpz_class mpz_from_int64(int64_t v) {
  mpz_class r;
  // mpz_set_si takes long, which is 64-bit on the supported platforms.
  static_assert(sizeof(long) == sizeof(int64_t));
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

}  // namespace

Integer::Integer(const mpz_class& v) : rep_(normalize(v).rep_) {}

Integer Integer::normalize(mpz_class v) {
  Integer out;
  if (mpz_fits_slong_p(v.get_mpz_t()) != 0) {
    out.rep_ = static_cast<int64_t>(mpz_get_si(v.get_mpz_t()));
  } else {
    out.rep_ = std::move(v);
  }
  return out;
}

Integer Integer::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  mpz_class v;
  size_t start = (s[0] == '+') ? 1 : 0;
  if (v.set_str(s.substr(start), 10) != 0) {
    throw std::invalid_argument("malformed integer literal: " + s);
  }
  return normalize(std::move(v));
}

bool Integer::is_zero() const {
  if (const auto* s = std::get_if<int64_t>(&rep_)) return *s == 0;
  return false;
}

int Integer::sign() const {
  if (const auto* s = std::get_if<int64_t>(&rep_)) return (*s > 0) - (*s < 0);
  return sgn(std::get<mpz_class>(rep_));
}

mpz_class Integer::to_mpz() const {
  if (const auto* s = std::get_if<int64_t>(&rep_)) return mpz_from_int64(*s);
  return std::get<mpz_class>(rep_);
}

std::string Integer::str() const {
  if (const auto* s = std::get_if<int64_t>(&rep_)) return std::to_string(*s);
  return std::get<mpz_class>(rep_).get_str();
}

uint64_t Integer::mod(uint64_t m) const {
  if (const auto* s = std::get_if<int64_t>(&rep_)) {
    int64_t r = static_cast<int64_t>(static_cast<__int128>(*s) % static_cast<__int128>(m));
    if (r < 0) r += static_cast<int64_t>(m);
    return static_cast<uint64_t>(r);
  }
  return mpz_fdiv_ui(std::get<mpz_class>(rep_).get_mpz_t(), m);
}

Integer Integer::operator-() const {
  if (const auto* s = std::get_if<int64_t>(&rep_)) {
    if (*s != INT64_MIN) return Integer(-*s);
  }
  return normalize(-to_mpz());
}

Integer& Integer::operator+=(const Integer& o) {
  auto* a = std::get_if<int64_t>(&rep_);
  const auto* b = std::get_if<int64_t>(&o.rep_);
  if (a != nullptr && b != nullptr) {
    int64_t r;
    if (!__builtin_add_overflow(*a, *b, &r)) {
      *a = r;
      return *this;
    }
  }
  *this = normalize(to_mpz() + o.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  auto* a = std::get_if<int64_t>(&rep_);
  const auto* b = std::get_if<int64_t>(&o.rep_);
  if (a != nullptr && b != nullptr) {
    int64_t r;
    if (!__builtin_sub_overflow(*a, *b, &r)) {
      *a = r;
      return *this;
    }
  }
  *this = normalize(to_mpz() - o.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  auto* a = std::get_if<int64_t>(&rep_);
  const auto* b = std::get_if<int64_t>(&o.rep_);
  if (a != nullptr && b != nullptr) {
    int64_t r;
    if (!__builtin_mul_overflow(*a, *b, &r)) {
      *a = r;
      return *this;
    }
  }
  *this = normalize(to_mpz() * o.to_mpz());
  return *this;
}

bool operator==(const Integer& a, const Integer& b) {
  const auto* x = std::get_if<int64_t>(&a.rep_);
  const auto* y = std::get_if<int64_t>(&b.rep_);
  if (x != nullptr && y != nullptr) return *x == *y;
  if (x != nullptr || y != nullptr) return false;  // normalized: big never fits int64
  return std::get<mpz_class>(a.rep_) == std::get<mpz_class>(b.rep_);
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  const auto* x = std::get_if<int64_t>(&a.rep_);
  const auto* y = std::get_if<int64_t>(&b.rep_);
  if (x != nullptr && y != nullptr) return *x <=> *y;
  int c = cmp(a.to_mpz(), b.to_mpz());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Integer exact_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw NotDivisible("division by zero");
  const auto* x = std::get_if<int64_t>(&a.rep_);
  const auto* y = std::get_if<int64_t>(&b.rep_);
  if (x != nullptr && y != nullptr && !(*x == INT64_MIN && *y == -1)) {
    if (*x % *y != 0) throw NotDivisible("integer not divisible");
    return Integer(*x / *y);
  }
  mpz_class A = a.to_mpz();
  mpz_class B = b.to_mpz();
  if (mpz_divisible_p(A.get_mpz_t(), B.get_mpz_t()) == 0) {
    throw NotDivisible("integer not divisible");
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  return Integer::normalize(std::move(q));
}

bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  const auto* x = std::get_if<int64_t>(&a.rep_);
  const auto* y = std::get_if<int64_t>(&d.rep_);
  if (x != nullptr && y != nullptr) {
    if (*y == -1) return true;
    return *x % *y == 0;
  }
  mpz_class A = a.to_mpz();
  mpz_class D = d.to_mpz();
  return mpz_divisible_p(A.get_mpz_t(), D.get_mpz_t()) != 0;
}

Integer gcd(const Integer& a, const Integer& b) {
  const auto* x = std::get_if<int64_t>(&a.rep_);
  const auto* y = std::get_if<int64_t>(&b.rep_);
  if (x != nullptr && y != nullptr && *x != INT64_MIN && *y != INT64_MIN) {
    return Integer(std::gcd(*x, *y));
  }
  mpz_class g;
  mpz_class A = a.to_mpz();
  mpz_class B = b.to_mpz();
  mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  return Integer::normalize(std::move(g));
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer pow(const Integer& a, unsigned e) {
  Integer r(1);
  Integer base = a;
  while (e != 0) {
    if ((e & 1U) != 0) r *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return r;
}

bool exact_sqrt(const Integer& a, Integer& root) {
  if (a.sign() < 0) return false;
  mpz_class A = a.to_mpz();
  if (mpz_perfect_square_p(A.get_mpz_t()) == 0) return false;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), A.get_mpz_t());
  root = Integer::normalize(std::move(r));
  return true;
}

size_t Integer::hash() const {
  if (const auto* s = std::get_if<int64_t>(&rep_)) return std::hash<int64_t>{}(*s);
  return std::hash<std::string>{}(str());
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

}  // namespace c2lab
