#include "c2lab/polyalg.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace c2lab {

namespace m61 {

uint64_t pow(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e != 0) {
    if ((e & 1U) != 0) r = mul(r, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return r;
}

uint64_t inv(uint64_t a) { return pow(a, kP - 2); }

}  // namespace m61

namespace {

unsigned top_var(uint64_t mask) { return static_cast<unsigned>(std::countr_zero(mask)); }

// Values of p at a point, with the point given as powers table x[v][e].
template <class P>
uint64_t eval_m61(const P& p, const std::vector<std::array<uint64_t, 5>>& xp) {
  uint64_t acc = 0;
  for (const auto& t : p.terms()) {
    uint64_t term = t.c.mod(m61::kP);
    for (unsigned v = 0; v < xp.size() && term != 0; ++v) {
      unsigned e = t.m.get(v);
      if (e != 0) term = m61::mul(term, xp[v][e]);
    }
    acc = m61::add(acc, term);
  }
  return acc;
}

std::vector<std::array<uint64_t, 5>> random_point(std::mt19937_64& rng) {
  std::vector<std::array<uint64_t, 5>> xp(kMaxVars);
  for (auto& row : xp) {
    uint64_t x = rng() % m61::kP;
    row[0] = 1;
    for (unsigned e = 1; e < 5; ++e) row[e] = m61::mul(row[e - 1], x);
  }
  return xp;
}

// Univariate gcd degree mod 2^61-1; coefficients low to high.
int gcd_degree(std::vector<uint64_t> a, std::vector<uint64_t> b) {
  auto trim = [](std::vector<uint64_t>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    uint64_t inv_lb = m61::inv(b.back());
    while (a.size() >= b.size()) {
      uint64_t factor = m61::mul(a.back(), inv_lb);
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) {
        a[off + i] = m61::sub(a[off + i], m61::mul(factor, b[i]));
      }
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

std::optional<Poly> sqrt_rec(const Poly& p) {
  if (p.is_zero()) return Poly();
  if (p.is_constant()) {
    Integer r;
    if (!exact_sqrt(p.constant_value(), r)) return std::nullopt;
    return Poly(r);
  }
  unsigned v = top_var(p.var_mask());
  int d = p.degree_in(v);
  if (d % 2 != 0) return std::nullopt;
  int k = d / 2;
  auto c = p.coeffs_in(v);
  std::vector<Poly> b(static_cast<size_t>(k) + 1);
  auto top = sqrt_rec(c[static_cast<size_t>(d)]);
  if (!top) return std::nullopt;
  b[static_cast<size_t>(k)] = *top;
  Poly two_top = top->scaled(Integer(2));
  for (int j = k - 1; j >= 0; --j) {
    Poly rest = c[static_cast<size_t>(k + j)];
    for (int i = j + 1; i < k; ++i) {
      int l = k + j - i;
      if (l <= j || l >= k) continue;
      rest -= b[static_cast<size_t>(i)] * b[static_cast<size_t>(l)];
    }
    auto q = try_exact_div(rest, two_top);
    if (!q) return std::nullopt;
    b[static_cast<size_t>(j)] = std::move(*q);
  }
  Poly root = Poly::from_coeffs(v, b);
  if (root * root != p) return std::nullopt;
  return root;
}

// Image of p as a polynomial in u, other variables at x (mod 2^61-1).
std::vector<uint64_t> univariate_image(const WidePoly& p, unsigned u, const std::vector<uint64_t>& x) {
  std::vector<uint64_t> out(static_cast<size_t>(p.degree_in(u)) + 1, 0);
  for (const auto& t : p.terms()) {
    uint64_t term = t.c.mod(m61::kP);
    for (unsigned v = 0; v < x.size() && term != 0; ++v) {
      unsigned e = t.m.get(v);
      if (e != 0 && v != u) term = m61::mul(term, m61::pow(x[v], e));
    }
    auto& slot = out[t.m.get(u)];
    slot = m61::add(slot, term);
  }
  return out;
}

// True only if gcd(a, b) is certainly free of every variable: for each common
// variable the images keep their degree and have a constant gcd. Images can
// only overestimate the gcd degree, so a true answer is sound.
bool coprime_images(const WidePoly& a, const WidePoly& b) {
  uint64_t common = a.var_mask() & b.var_mask();
  std::mt19937_64 rng(0x9cd5ULL ^ (a.size() * 131 + b.size()));
  std::vector<uint64_t> x(WideMono::kMaxVars);
  for (unsigned u = 0; common != 0; ++u, common >>= 1U) {
    if ((common & 1U) == 0) continue;
    for (auto& xi : x) xi = rng() % m61::kP;
    auto fa = univariate_image(a, u, x), fb = univariate_image(b, u, x);
    if (fa.back() == 0 || fb.back() == 0) return false;
    if (gcd_degree(fa, fb) >= 1) return false;
  }
  return true;
}

WidePoly lc_in(const WidePoly& p, unsigned v) { return p.coeff(v, static_cast<unsigned>(p.degree_in(v))); }

WidePoly sign_normalized(WidePoly p) {
  if (!p.is_zero() && p.leading().c.sign() < 0) p = -p;
  return p;
}

}  // namespace

bool maybe_square(const Poly& p) {
  if (p.is_zero()) return true;
  Integer r;
  if (!exact_sqrt(p.leading().c, r)) return false;
  if (p.total_degree() % 2 != 0) return false;
  if (p.low_degree() % 2 != 0) return false;
  std::mt19937_64 rng(0x5eed5eedULL ^ p.size());
  const uint64_t half = (m61::kP - 1) / 2;
  for (int trial = 0; trial < 4; ++trial) {
    auto xp = random_point(rng);
    uint64_t y = eval_m61(p, xp);
    if (y != 0 && m61::pow(y, half) != 1) return false;
  }
  return true;
}

bool maybe_repeated_factor(const Poly& p, unsigned v) {
  int d = p.degree_in(v);
  if (d < 2) return false;
  auto c = p.coeffs_in(v);
  std::mt19937_64 rng(0xfacefeedULL ^ p.size());
  for (int trial = 0; trial < 3; ++trial) {
    auto xp = random_point(rng);
    std::vector<uint64_t> f(static_cast<size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) f[static_cast<size_t>(k)] = eval_m61(c[static_cast<size_t>(k)], xp);
    if (f.back() == 0) continue;  // unlucky specialization drops the degree
    std::vector<uint64_t> df(static_cast<size_t>(d));
    for (int k = 1; k <= d; ++k) {
      df[static_cast<size_t>(k - 1)] = m61::mul(f[static_cast<size_t>(k)], static_cast<uint64_t>(k));
    }
    return gcd_degree(f, df) >= 1;
  }
  return true;  // could not decide cheaply
}

std::optional<Poly> sqrt_poly(const Poly& p) {
  if (!maybe_square(p)) return std::nullopt;
  try {
    auto r = sqrt_rec(p);
    if (r && !r->is_zero() && r->leading().c.sign() < 0) *r = -*r;
    return r;
  } catch (const DegreeOverflow&) {
    return std::nullopt;
  }
}

WidePoly prem(const WidePoly& a, const WidePoly& b, unsigned v) {
  int m = a.degree_in(v);
  int n = b.degree_in(v);
  if (b.is_zero()) throw NotDivisible("pseudo-remainder by zero");
  if (m < n) return a;
  WidePoly lb = lc_in(b, v);
  WidePoly r = a;
  int e = m - n + 1;
  while (!r.is_zero() && r.degree_in(v) >= n) {
    int d = r.degree_in(v);
    WidePoly t = r.coeff(v, static_cast<unsigned>(d));
    WidePoly shifted = t.mul_term(WideMono::var(v, static_cast<unsigned>(d - n)), Integer(1));
    r = lb * r - shifted * b;
    --e;
  }
  for (int i = 0; i < e; ++i) r = r * lb;
  return r;
}

WidePoly content_in(const WidePoly& p, unsigned v) {
  if (p.is_zero()) return p;
  WidePoly g;
  for (const auto& c : p.coeffs_in(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant() && g.constant_value() == Integer(1)) break;
  }
  return g;
}

WidePoly gcd(const WidePoly& a, const WidePoly& b) {
  if (a.is_zero()) return sign_normalized(b);
  if (b.is_zero()) return sign_normalized(a);
  if (a.is_constant()) return WidePoly(abs(gcd(a.constant_value(), b.content())));
  if (b.is_constant()) return WidePoly(abs(gcd(b.constant_value(), a.content())));
  if (coprime_images(a, b)) return WidePoly(abs(gcd(a.content(), b.content())));
  // one often divides the other (contents in particular)
  const WidePoly& small = a.size() <= b.size() ? a : b;
  const WidePoly& big = a.size() <= b.size() ? b : a;
  WidePoly sp = sign_normalized(small.primitive());
  bool divides_big = false;
  try {
    divides_big = try_exact_div(big, sp).has_value();
  } catch (const DegreeOverflow&) {
  }
  if (divides_big) return sign_normalized(sp.scaled(gcd(small.content(), big.content())));
  // main variable: a shared one of least degree keeps the remainder sequence short
  unsigned v = top_var(a.var_mask() | b.var_mask());
  uint64_t common = a.var_mask() & b.var_mask();
  int best = 1 << 20;
  for (unsigned u = 0; common != 0; ++u, common >>= 1U) {
    if ((common & 1U) == 0) continue;
    int du = std::max(a.degree_in(u), b.degree_in(u));
    if (du < best) best = du, v = u;
  }
  int da = a.degree_in(v);
  int db = b.degree_in(v);
  if (da == 0) return gcd(a, content_in(b, v));
  if (db == 0) return gcd(content_in(a, v), b);

  WidePoly ca = content_in(a, v);
  WidePoly cb = content_in(b, v);
  WidePoly c = gcd(ca, cb);
  WidePoly f1 = exact_div(a, ca);
  WidePoly f2 = exact_div(b, cb);
  if (f1.degree_in(v) < f2.degree_in(v)) std::swap(f1, f2);

  // Subresultant remainder sequence.
  WidePoly g(1), h(1);
  while (true) {
    int delta = f1.degree_in(v) - f2.degree_in(v);
    WidePoly r = prem(f1, f2, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      f2 = WidePoly(1);
      break;
    }
    WidePoly divisor = g * h.pow(static_cast<unsigned>(delta));
    f1 = std::move(f2);
    f2 = exact_div(r, divisor);
    g = lc_in(f1, v);
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact_div(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  WidePoly pp = f2.is_constant() ? WidePoly(1) : exact_div(f2, content_in(f2, v));
  return sign_normalized(c * pp);
}

Poly sq_gcd(const Poly& p, unsigned v) {
  WidePoly w = p.convert<WidePoly>();
  WidePoly g = gcd(w, w.derivative(v));
  return g.primitive().convert<Poly>();
}

}  // namespace c2lab
