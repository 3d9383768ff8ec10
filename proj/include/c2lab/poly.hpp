#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "c2lab/integer.hpp"

namespace c2lab {

// Raised when a product would push a variable past the layout's exponent cap.
class DegreeOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Packed exponent vector. Variable 0 sits in the most significant field of
// word 0, so comparing words as unsigned integers is lex order with
// x0 > x1 > ... ; the cached total degree makes the order graded.
template <unsigned Bits, unsigned Words, unsigned Cap>
struct MonoT {
  static constexpr unsigned kBits = Bits;
  static constexpr unsigned kWords = Words;
  static constexpr unsigned kPerWord = 64 / Bits;
  static constexpr unsigned kMaxVars = kPerWord * Words;
  static constexpr unsigned kCap = Cap;
  static constexpr uint64_t kMask = (uint64_t{1} << Bits) - 1;
  static_assert(Cap <= kMask);

  std::array<uint64_t, Words> w{};
  uint32_t deg = 0;

  static constexpr unsigned shift(unsigned j) { return 64 - Bits * (j + 1); }

  unsigned get(unsigned v) const {
    return static_cast<unsigned>((w[v / kPerWord] >> shift(v % kPerWord)) & kMask);
  }

  void set(unsigned v, unsigned e) {
    if (v >= kMaxVars) throw std::out_of_range("variable index beyond monomial layout");
    if (e > Cap) throw DegreeOverflow("exponent exceeds per-variable cap");
    unsigned old = get(v);
    uint64_t& word = w[v / kPerWord];
    unsigned s = shift(v % kPerWord);
    word = (word & ~(kMask << s)) | (uint64_t{e} << s);
    deg = deg - old + e;
  }

  static MonoT var(unsigned v, unsigned e = 1) {
    MonoT m;
    m.set(v, e);
    return m;
  }

  bool is_one() const { return deg == 0; }

  // Product; throws DegreeOverflow past the cap.
  friend MonoT operator*(const MonoT& a, const MonoT& b) {
    MonoT r;
    if (!mul_into(a, b, r)) throw DegreeOverflow("product exceeds per-variable cap");
    return r;
  }

  static bool mul_into(const MonoT& a, const MonoT& b, MonoT& r) {
    r.deg = a.deg + b.deg;
    if constexpr (Bits == 3 && Cap == 4) {
      constexpr uint64_t L = 0x2492492492492492ULL;  // low bit of each field
      constexpr uint64_t H = L << 2;
      for (unsigned i = 0; i < Words; ++i) {
        uint64_t x = a.w[i], y = b.w[i];
        uint64_t nzx = (x | (x >> 1) | (x >> 2)) & L;
        uint64_t nzy = (y | (y >> 1) | (y >> 2)) & L;
        if ((((x & H) >> 2) & nzy) != 0 || (((y & H) >> 2) & nzx) != 0) return false;
        uint64_t s = x + y;
        if ((((s & H) >> 2) & ((s | (s >> 1)) & L)) != 0) return false;
        r.w[i] = s;
      }
      return true;
    } else {
      for (unsigned i = 0; i < Words; ++i) {
        uint64_t x = a.w[i], y = b.w[i];
        if (y == 0) {
          r.w[i] = x;
          continue;
        }
        if (x == 0) {
          r.w[i] = y;
          continue;
        }
        uint64_t out = 0;
        for (unsigned j = 0; j < kPerWord; ++j) {
          uint64_t s = ((x >> shift(j)) & kMask) + ((y >> shift(j)) & kMask);
          if (s > Cap) return false;
          out |= s << shift(j);
        }
        r.w[i] = out;
      }
      return true;
    }
  }

  // True if a divides b.
  static bool divides(const MonoT& a, const MonoT& b) {
    if (a.deg > b.deg) return false;
    for (unsigned i = 0; i < Words; ++i) {
      uint64_t x = a.w[i], y = b.w[i];
      if (x == 0) continue;
      for (unsigned j = 0; j < kPerWord; ++j) {
        if (((x >> shift(j)) & kMask) > ((y >> shift(j)) & kMask)) return false;
      }
    }
    return true;
  }

  // b / a, assuming divides(a, b).
  static MonoT quotient(const MonoT& b, const MonoT& a) {
    MonoT r;
    for (unsigned i = 0; i < Words; ++i) r.w[i] = b.w[i] - a.w[i];  // fieldwise, no borrows
    r.deg = b.deg - a.deg;
    return r;
  }

  uint64_t var_mask() const {
    uint64_t m = 0;
    for (unsigned i = 0; i < Words; ++i) {
      if (w[i] == 0) continue;
      for (unsigned j = 0; j < kPerWord; ++j) {
        if (((w[i] >> shift(j)) & kMask) != 0) {
          unsigned v = i * kPerWord + j;
          if (v < 64) m |= uint64_t{1} << v;
        }
      }
    }
    return m;
  }

  friend bool operator==(const MonoT& a, const MonoT& b) { return a.w == b.w; }
  friend std::strong_ordering operator<=>(const MonoT& a, const MonoT& b) {
    if (a.deg != b.deg) return a.deg <=> b.deg;
    for (unsigned i = 0; i < Words; ++i) {
      if (a.w[i] != b.w[i]) return a.w[i] <=> b.w[i];
    }
    return std::strong_ordering::equal;
  }

  size_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (unsigned i = 0; i < Words; ++i) {
      h ^= w[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h ^ (h >> 31));
  }

  struct Hasher {
    size_t operator()(const MonoT& m) const { return m.hash(); }
  };
};

// Sparse polynomial over Z. Terms are kept sorted in descending graded-lex
// order, with no zero coefficients.
template <class M>
class PolyT {
 public:
  using Mono = M;
  struct Term {
    M m;
    Integer c;
    friend bool operator==(const Term& a, const Term& b) { return a.m == b.m && a.c == b.c; }
  };

  PolyT() = default;
  PolyT(const Integer& c) {  // constant
    if (!c.is_zero()) terms_.push_back({M{}, c});
  }
  PolyT(int c) : PolyT(Integer(c)) {}

  static PolyT var(unsigned v, unsigned e = 1) {
    PolyT p;
    p.terms_.push_back({M::var(v, e), Integer(1)});
    return p;
  }
  static PolyT monomial(const M& m, const Integer& c) {
    PolyT p;
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }

  // Sorts, merges equal monomials and drops zeros.
  static PolyT from_terms(std::vector<Term> t) {
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
    PolyT p;
    for (auto& x : t) {
      if (!p.terms_.empty() && p.terms_.back().m == x.m) {
        p.terms_.back().c += x.c;
        if (p.terms_.back().c.is_zero()) p.terms_.pop_back();
      } else if (!x.c.is_zero()) {
        p.terms_.push_back(std::move(x));
      }
    }
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  Integer constant_value() const {
    if (terms_.empty()) return Integer(0);
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_[0].c;
  }
  // Coefficient of the monomial 1.
  Integer constant_term() const {
    if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
    return Integer(0);
  }
  const Term& leading() const { return terms_.front(); }

  // -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().m.deg); }
  int low_degree() const {
    int d = -1;
    for (const auto& t : terms_) {
      if (d < 0 || static_cast<int>(t.m.deg) < d) d = static_cast<int>(t.m.deg);
    }
    return d;
  }
  bool is_homogeneous() const {
    return terms_.empty() || terms_.front().m.deg == terms_.back().m.deg;
  }
  int degree_in(unsigned v) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.get(v)));
    return d;
  }
  uint64_t var_mask() const {
    uint64_t m = 0;
    for (const auto& t : terms_) m |= t.m.var_mask();
    return m;
  }
  std::vector<unsigned> variables() const {
    std::vector<unsigned> out;
    uint64_t m = var_mask();
    for (unsigned v = 0; v < 64; ++v) {
      if ((m >> v) & 1U) out.push_back(v);
    }
    return out;
  }

  PolyT operator-() const {
    PolyT r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend PolyT operator+(const PolyT& a, const PolyT& b) { return merge(a, b, false); }
  friend PolyT operator-(const PolyT& a, const PolyT& b) { return merge(a, b, true); }
  PolyT& operator+=(const PolyT& o) { return *this = *this + o; }
  PolyT& operator-=(const PolyT& o) { return *this = *this - o; }
  PolyT& operator*=(const PolyT& o) { return *this = *this * o; }

  friend PolyT operator*(const PolyT& a, const PolyT& b) {
    if (a.is_zero() || b.is_zero()) return PolyT();
    if (a.size() == 1) return b.mul_term(a.terms_[0].m, a.terms_[0].c);
    if (b.size() == 1) return a.mul_term(b.terms_[0].m, b.terms_[0].c);
    std::unordered_map<M, Integer, typename M::Hasher> acc;
    acc.reserve(std::min<size_t>(a.size() * b.size(), size_t{1} << 22));
    M prod;
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        if (!M::mul_into(x.m, y.m, prod)) throw DegreeOverflow("product exceeds per-variable cap");
        auto [it, fresh] = acc.try_emplace(prod, x.c);
        if (fresh) {
          it->second *= y.c;
        } else {
          it->second += x.c * y.c;
        }
      }
    }
    std::vector<Term> t;
    t.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (!c.is_zero()) t.push_back({m, std::move(c)});
    }
    std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return x.m > y.m; });
    PolyT r;
    r.terms_ = std::move(t);
    return r;
  }

  PolyT mul_term(const M& m, const Integer& c) const {
    if (c.is_zero()) return PolyT();
    PolyT r;
    r.terms_.reserve(terms_.size());
    M prod;
    for (const auto& t : terms_) {
      if (!M::mul_into(t.m, m, prod)) throw DegreeOverflow("product exceeds per-variable cap");
      r.terms_.push_back({prod, t.c * c});
    }
    return r;  // multiplying by a monomial preserves the order
  }
  PolyT scaled(const Integer& c) const { return mul_term(M{}, c); }

  friend bool operator==(const PolyT& a, const PolyT& b) { return a.terms_ == b.terms_; }

  PolyT pow(unsigned e) const {
    PolyT r(1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  // Exact quotient by leading-term division. Throws NotDivisible.
  friend PolyT exact_div(const PolyT& a, const PolyT& b) {
    auto q = try_exact_div(a, b);
    if (!q) throw NotDivisible("polynomial not divisible");
    return std::move(*q);
  }

  friend std::optional<PolyT> try_exact_div(const PolyT& a, const PolyT& b) {
    if (b.is_zero()) throw NotDivisible("division by zero polynomial");
    if (a.is_zero()) return PolyT();
    if (b.size() == 1) {
      const auto& [bm, bc] = b.terms_[0];
      PolyT r;
      r.terms_.reserve(a.size());
      for (const auto& t : a.terms_) {
        if (!M::divides(bm, t.m) || !divides(bc, t.c)) return std::nullopt;
        r.terms_.push_back({M::quotient(t.m, bm), exact_div(t.c, bc)});
      }
      return r;
    }
    if (a.total_degree() < b.total_degree()) return std::nullopt;
    std::map<M, Integer, std::greater<M>> rem;
    for (const auto& t : a.terms_) rem.emplace_hint(rem.end(), t.m, t.c);
    const Term& lead = b.terms_.front();
    PolyT q;
    M prod;
    while (!rem.empty()) {
      auto it = rem.begin();
      if (!M::divides(lead.m, it->first) || !divides(lead.c, it->second)) return std::nullopt;
      M qm = M::quotient(it->first, lead.m);
      Integer qc = exact_div(it->second, lead.c);
      rem.erase(it);
      for (size_t k = 1; k < b.terms_.size(); ++k) {
        if (!M::mul_into(qm, b.terms_[k].m, prod)) return std::nullopt;
        auto [pos, fresh] = rem.try_emplace(prod, Integer(0));
        pos->second -= qc * b.terms_[k].c;
        if (pos->second.is_zero()) rem.erase(pos);
      }
      q.terms_.push_back({qm, std::move(qc)});
    }
    return q;
  }

  // Coefficients c_0..c_k of the expansion in v; the vector has at least 5 entries.
  std::vector<PolyT> coeffs_in(unsigned v) const {
    int d = std::max(degree_in(v), 4);
    std::vector<std::vector<Term>> buckets(static_cast<size_t>(d) + 1);
    for (const auto& t : terms_) {
      unsigned e = t.m.get(v);
      M m = t.m;
      m.set(v, 0);
      buckets[e].push_back({m, t.c});
    }
    std::vector<PolyT> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
      PolyT p;
      p.terms_ = std::move(b);  // stripping one variable may reorder terms
      p.resort();
      out.push_back(std::move(p));
    }
    return out;
  }

  static PolyT from_coeffs(unsigned v, const std::vector<PolyT>& c) {
    std::vector<Term> t;
    for (size_t k = 0; k < c.size(); ++k) {
      if (c[k].is_zero()) continue;
      if (k == 0) {
        t.insert(t.end(), c[k].terms_.begin(), c[k].terms_.end());
        continue;
      }
      PolyT s = c[k].mul_term(M::var(v, static_cast<unsigned>(k)), Integer(1));
      t.insert(t.end(), s.terms_.begin(), s.terms_.end());
    }
    return from_terms(std::move(t));
  }

  // Coefficient of v^k.
  PolyT coeff(unsigned v, unsigned k) const {
    std::vector<Term> t;
    for (const auto& x : terms_) {
      if (x.m.get(v) != k) continue;
      M m = x.m;
      m.set(v, 0);
      t.push_back({m, x.c});
    }
    PolyT p;
    p.terms_ = std::move(t);
    p.resort();
    return p;
  }

  PolyT substitute(unsigned v, const Integer& value) const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& x : terms_) {
      unsigned e = x.m.get(v);
      if (e == 0) {
        t.push_back(x);
        continue;
      }
      if (value.is_zero()) continue;
      M m = x.m;
      m.set(v, 0);
      t.push_back({m, x.c * c2lab::pow(value, e)});
    }
    return from_terms(std::move(t));
  }

  PolyT derivative(unsigned v) const {
    std::vector<Term> t;
    for (const auto& x : terms_) {
      unsigned e = x.m.get(v);
      if (e == 0) continue;
      M m = x.m;
      m.set(v, e - 1);
      t.push_back({m, x.c * Integer(static_cast<int64_t>(e))});
    }
    return from_terms(std::move(t));
  }

  Integer content() const {
    Integer g(0);
    for (const auto& t : terms_) {
      g = gcd(g, t.c);
      if (g == Integer(1)) break;
    }
    return g;
  }

  // Divides out the integer content and makes the leading coefficient positive.
  PolyT primitive() const {
    if (is_zero()) return *this;
    Integer g = content();
    if (terms_.front().c.sign() < 0) g = -g;
    if (g == Integer(1)) return *this;
    PolyT r = *this;
    for (auto& t : r.terms_) t.c = exact_div(t.c, g);
    return r;
  }

  uint64_t eval_mod(const std::vector<uint64_t>& point, uint64_t p) const {
    unsigned __int128 acc = 0;
    for (const auto& t : terms_) {
      unsigned __int128 term = t.c.mod(p);
      for (unsigned v = 0; v < M::kMaxVars && term != 0; ++v) {
        unsigned e = t.m.get(v);
        if (e == 0) continue;
        uint64_t x = v < point.size() ? point[v] % p : 0;
        for (unsigned k = 0; k < e; ++k) term = term * x % p;
      }
      acc = (acc + term) % p;
    }
    return static_cast<uint64_t>(acc);
  }

  Integer eval(const std::vector<Integer>& point) const {
    Integer acc(0);
    for (const auto& t : terms_) {
      Integer term = t.c;
      for (unsigned v = 0; v < M::kMaxVars; ++v) {
        unsigned e = t.m.get(v);
        if (e == 0) continue;
        Integer x = v < point.size() ? point[v] : Integer(0);
        term *= c2lab::pow(x, e);
      }
      acc += term;
    }
    return acc;
  }

  template <class P2>
  P2 convert() const {
    using M2 = typename P2::Mono;
    std::vector<typename P2::Term> t;
    t.reserve(terms_.size());
    for (const auto& x : terms_) {
      M2 m;
      for (unsigned v = 0; v < M::kMaxVars; ++v) {
        unsigned e = x.m.get(v);
        if (e != 0) m.set(v, e);
      }
      t.push_back({m, x.c});
    }
    return P2::from_terms(std::move(t));
  }

  // One term per line: "<coeff> <var:exp> ...", in descending term order.
  std::string serialize() const {
    std::ostringstream os;
    for (const auto& t : terms_) {
      os << t.c.str();
      for (unsigned v = 0; v < M::kMaxVars; ++v) {
        unsigned e = t.m.get(v);
        if (e != 0) os << ' ' << v << ':' << e;
      }
      os << '\n';
    }
    return os.str();
  }

  static PolyT parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Term> t;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string tok;
      if (!(ls >> tok)) continue;
      Term term{M{}, Integer::parse(tok)};
      while (ls >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("malformed factor: " + tok);
        int v = std::stoi(tok.substr(0, colon));
        int e = std::stoi(tok.substr(colon + 1));
        if (v < 0 || e < 0) throw std::invalid_argument("malformed factor: " + tok);
        if (term.m.get(static_cast<unsigned>(v)) != 0) throw std::invalid_argument("repeated variable in term");
        term.m.set(static_cast<unsigned>(v), static_cast<unsigned>(e));
      }
      t.push_back(std::move(term));
    }
    return from_terms(std::move(t));
  }

  // Human-readable form with variables named a<id>.
  std::string pretty() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      Integer c = t.c;
      bool neg = c.sign() < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      bool one = c == Integer(1);
      if (!one || t.m.is_one()) os << c.str();
      bool need_star = !one;
      for (unsigned v = 0; v < M::kMaxVars; ++v) {
        unsigned e = t.m.get(v);
        if (e == 0) continue;
        if (need_star) os << '*';
        os << 'a' << v;
        if (e > 1) os << '^' << e;
        need_star = true;
      }
    }
    return os.str();
  }

  size_t hash() const {
    size_t h = terms_.size();
    for (const auto& t : terms_) h = h * 1000003u ^ (t.m.hash() + 31 * t.c.hash());
    return h;
  }

 private:
  std::vector<Term> terms_;

  void resort() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
  }

  static PolyT merge(const PolyT& a, const PolyT& b, bool subtract) {
    PolyT r;
    r.terms_.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a.terms_[i].m > b.terms_[j].m)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || b.terms_[j].m > a.terms_[i].m) {
        r.terms_.push_back({b.terms_[j].m, subtract ? -b.terms_[j].c : b.terms_[j].c});
        ++j;
      } else {
        Integer c = subtract ? a.terms_[i].c - b.terms_[j].c : a.terms_[i].c + b.terms_[j].c;
        if (!c.is_zero()) r.terms_.push_back({a.terms_[i].m, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

};

// Per-variable degree at most 4, up to 42 variables (id 0 is the auxiliary
// variable, edge labels use their own ids).
using Mono = MonoT<3, 2, 4>;
using Poly = PolyT<Mono>;

// Unrestricted exponents for gcd internals and tests that need them.
using WideMono = MonoT<8, 6, 255>;
using WidePoly = PolyT<WideMono>;

inline constexpr unsigned kMaxVars = Mono::kMaxVars;

}  // namespace c2lab

template <class M>
struct std::hash<c2lab::PolyT<M>> {
  size_t operator()(const c2lab::PolyT<M>& p) const noexcept { return p.hash(); }
};
