#include "c2lab/fpcount.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <thread>

#include "c2lab/dodgson.hpp"

namespace c2lab {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<uint64_t> odd_primes_upto(uint64_t bound) {
  std::vector<uint64_t> out;
  for (uint64_t p = 3; p <= bound; p += 2) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

uint64_t mod_residue(int64_t x, uint64_t p) {
  int64_t m = x % static_cast<int64_t>(p);
  return static_cast<uint64_t>(m < 0 ? m + static_cast<int64_t>(p) : m);
}

namespace {

void require_odd_prime(uint64_t p) {
  if (p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e != 0) {
    if ((e & 1U) != 0) r = static_cast<uint64_t>((static_cast<unsigned __int128>(r) * a) % p);
    a = static_cast<uint64_t>((static_cast<unsigned __int128>(a) * a) % p);
    e >>= 1U;
  }
  return r;
}

int euler(uint64_t a, uint64_t p) {
  if (a % p == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

uint64_t checked_points(uint64_t p, size_t n, uint64_t cap) {
  unsigned __int128 pts = 1;
  for (size_t i = 0; i < n; ++i) {
    pts *= p;
    if (pts > cap) {
      throw BudgetExceeded("grid of " + std::to_string(p) + "^" + std::to_string(n) + " points exceeds the budget of " +
                           std::to_string(cap));
    }
  }
  return static_cast<uint64_t>(pts);
}

// ---------------------------------------------------------------------------
// Grid engine. Polynomials are reduced mod p over an explicit list of ambient
// variables. Outer variables are specialized on a sparse term list; once the
// dense coefficient box of the rest is small, the walk switches to dense
// Horner tables so the inner loops touch univariate data only.

struct Sparse {
  unsigned nv = 0;             // variables left
  std::vector<uint8_t> e;      // exponents, nv per term
  std::vector<uint32_t> c;     // coefficients mod p
  size_t terms() const { return c.size(); }
};

struct Dense {
  unsigned nv = 0;
  std::vector<unsigned> deg;
  std::vector<size_t> stride;
  std::vector<uint32_t> c;
};

constexpr size_t kDenseLimit = size_t{1} << 18;

template <class P>
Sparse to_sparse(const P& f, const std::vector<unsigned>& vars, uint64_t p) {
  for (unsigned v : f.variables()) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
      throw std::invalid_argument("polynomial has a variable outside the ambient set");
    }
  }
  Sparse s;
  s.nv = static_cast<unsigned>(vars.size());
  for (const auto& t : f.terms()) {
    uint32_t c = static_cast<uint32_t>(t.c.mod(p));
    if (c == 0) continue;
    for (unsigned v : vars) {
      unsigned e = t.m.get(v);
      if (e > 255) throw std::invalid_argument("exponent too large for counting");
      s.e.push_back(static_cast<uint8_t>(e));
    }
    s.c.push_back(c);
  }
  return s;
}

size_t dense_size(const Sparse& s, std::vector<unsigned>* deg = nullptr) {
  std::vector<unsigned> d(s.nv, 0);
  for (size_t t = 0; t < s.terms(); ++t) {
    for (unsigned i = 0; i < s.nv; ++i) d[i] = std::max<unsigned>(d[i], s.e[t * s.nv + i]);
  }
  size_t size = 1;
  for (unsigned x : d) {
    size *= x + 1;
    if (size > kDenseLimit) size = kDenseLimit + 1;
  }
  if (deg != nullptr) *deg = std::move(d);
  return size;
}

Dense to_dense(const Sparse& s, uint64_t p) {
  Dense d;
  d.nv = s.nv;
  dense_size(s, &d.deg);
  d.stride.assign(s.nv, 1);
  size_t size = 1;
  for (unsigned i = s.nv; i-- > 0;) {
    d.stride[i] = size;
    size *= d.deg[i] + 1;
  }
  d.c.assign(size, 0);
  for (size_t t = 0; t < s.terms(); ++t) {
    size_t idx = 0;
    for (unsigned i = 0; i < s.nv; ++i) idx += s.e[t * s.nv + i] * d.stride[i];
    d.c[idx] = static_cast<uint32_t>((d.c[idx] + s.c[t]) % p);
  }
  return d;
}

// Fix the first variable of s to x.
Sparse specialize(const Sparse& s, uint64_t x, uint64_t p) {
  Sparse out;
  out.nv = s.nv - 1;
  std::vector<std::pair<std::basic_string<uint8_t>, uint32_t>> rows;
  rows.reserve(s.terms());
  for (size_t t = 0; t < s.terms(); ++t) {
    const uint8_t* e = &s.e[t * s.nv];
    uint64_t c = s.c[t] * powmod(x, e[0], p) % p;
    if (c == 0) continue;
    rows.emplace_back(std::basic_string<uint8_t>(e + 1, e + s.nv), static_cast<uint32_t>(c));
  }
  std::sort(rows.begin(), rows.end());
  for (size_t i = 0; i < rows.size();) {
    uint64_t c = 0;
    size_t j = i;
    for (; j < rows.size() && rows[j].first == rows[i].first; ++j) c += rows[j].second;
    c %= p;
    if (c != 0) {
      out.e.insert(out.e.end(), rows[i].first.begin(), rows[i].first.end());
      out.c.push_back(static_cast<uint32_t>(c));
    }
    i = j;
  }
  return out;
}

// Block callback: values of every polynomial at `count` consecutive points.
using Block = std::function<int64_t(const std::vector<const uint32_t*>&, size_t)>;

class Walker {
 public:
  Walker(uint64_t p, unsigned max_deg, const Block& block) : p_(p), width_(max_deg + 1), block_(block) {
    pw_.assign(p * width_, 0);
    for (uint64_t x = 0; x < p; ++x) {
      uint64_t v = 1;
      for (unsigned k = 0; k < width_; ++k) {
        pw_[x * width_ + k] = static_cast<uint32_t>(v);
        v = v * x % p;
      }
    }
  }

  int64_t dense(const std::vector<Dense>& ds) {
    unsigned nv = ds.front().nv;
    if (nv == 0) {
      vals_.assign(ds.size(), std::vector<uint32_t>(1));
      std::vector<const uint32_t*> ptrs;
      for (size_t j = 0; j < ds.size(); ++j) {
        vals_[j][0] = ds[j].c[0];
        ptrs.push_back(vals_[j].data());
      }
      return block_(ptrs, 1);
    }
    scratch_.assign(nv, std::vector<std::vector<uint32_t>>(ds.size()));
    vals_.assign(ds.size(), std::vector<uint32_t>(p_));
    std::vector<const uint32_t*> in;
    for (const auto& d : ds) in.push_back(d.c.data());
    return walk(ds, 0, in);
  }

 private:
  int64_t walk(const std::vector<Dense>& ds, unsigned level, const std::vector<const uint32_t*>& in) {
    unsigned nv = ds.front().nv;
    if (level + 1 == nv) {
      std::vector<const uint32_t*> ptrs(ds.size());
      for (size_t j = 0; j < ds.size(); ++j) {
        unsigned d = ds[j].deg[level];
        const uint32_t* c = in[j];
        uint32_t* out = vals_[j].data();
        if (d == 0) {
          std::fill(out, out + p_, c[0]);
        } else if (d == 1) {
          uint64_t v = c[0];
          for (uint64_t x = 0; x < p_; ++x) {
            out[x] = static_cast<uint32_t>(v);
            v += c[1];
            if (v >= p_) v -= p_;
          }
        } else {
          for (uint64_t x = 0; x < p_; ++x) {
            const uint32_t* pw = &pw_[x * width_];
            uint64_t acc = 0;
            for (unsigned k = 0; k <= d; ++k) acc += static_cast<uint64_t>(c[k]) * pw[k];
            out[x] = static_cast<uint32_t>(acc % p_);
          }
        }
        ptrs[j] = out;
      }
      return block_(ptrs, p_);
    }
    int64_t total = 0;
    std::vector<const uint32_t*> next(ds.size());
    for (uint64_t x = 0; x < p_; ++x) {
      const uint32_t* pw = &pw_[x * width_];
      for (size_t j = 0; j < ds.size(); ++j) {
        const Dense& D = ds[j];
        unsigned d = D.deg[level];
        size_t s = D.stride[level];
        auto& buf = scratch_[level + 1][j];
        buf.resize(s);
        const uint32_t* c = in[j];
        for (size_t r = 0; r < s; ++r) {
          uint64_t acc = 0;
          for (unsigned k = 0; k <= d; ++k) acc += static_cast<uint64_t>(c[k * s + r]) * pw[k];
          buf[r] = static_cast<uint32_t>(acc % p_);
        }
        next[j] = buf.data();
      }
      total += walk(ds, level + 1, next);
    }
    return total;
  }

  uint64_t p_;
  unsigned width_;
  const Block& block_;
  std::vector<uint32_t> pw_;
  std::vector<std::vector<std::vector<uint32_t>>> scratch_;
  std::vector<std::vector<uint32_t>> vals_;
};

unsigned max_degree(const std::vector<Sparse>& ss) {
  unsigned m = 1;
  for (const auto& s : ss) {
    for (uint8_t e : s.e) m = std::max<unsigned>(m, e);
  }
  return m;
}

int64_t grid_sequential(const std::vector<Sparse>& ss, uint64_t p, Walker& w) {
  size_t worst = 0;
  for (const auto& s : ss) worst = std::max(worst, dense_size(s));
  if (worst <= kDenseLimit || ss.front().nv == 0) {
    std::vector<Dense> ds;
    for (const auto& s : ss) ds.push_back(to_dense(s, p));
    return w.dense(ds);
  }
  int64_t total = 0;
  for (uint64_t x = 0; x < p; ++x) {
    std::vector<Sparse> next;
    for (const auto& s : ss) next.push_back(specialize(s, x, p));
    total += grid_sequential(next, p, w);
  }
  return total;
}

// Splits on the first variables so that each worker gets whole sub-grids.
int64_t grid(const std::vector<Sparse>& ss, uint64_t p, const Block& block, const CountOptions& opt) {
  unsigned nv = ss.front().nv;
  checked_points(p, nv, opt.max_points);
  unsigned threads = opt.threads != 0 ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  unsigned md = max_degree(ss);
  if (threads == 1 || nv < 2) {
    Walker w(p, md, block);
    return grid_sequential(ss, p, w);
  }
  unsigned split = 1;
  uint64_t tasks = p;
  while (split + 1 < nv && tasks < 8ULL * threads) {
    ++split;
    tasks *= p;
  }
  std::atomic<uint64_t> next{0};
  std::atomic<int64_t> total{0};
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned id) {
    try {
      Walker w(p, md, block);
      int64_t local = 0;
      for (uint64_t t = next++; t < tasks; t = next++) {
        std::vector<Sparse> cur = ss;
        uint64_t rest = t;
        std::vector<uint64_t> digits(split);
        for (unsigned i = split; i-- > 0;) {
          digits[i] = rest % p;
          rest /= p;
        }
        for (unsigned i = 0; i < split; ++i) {
          for (auto& s : cur) s = specialize(s, digits[i], p);
        }
        local += grid_sequential(cur, p, w);
      }
      total += local;
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work, i);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return total;
}

std::vector<int8_t> chi_table(uint64_t p) {
  std::vector<int8_t> chi(p, -1);
  chi[0] = 0;
  for (uint64_t x = 1; x < p; ++x) chi[x * x % p] = 1;
  return chi;
}

template <class P>
int64_t legendre_sum_impl(const P& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt) {
  require_odd_prime(p);
  auto chi = chi_table(p);
  Block block = [&chi](const std::vector<const uint32_t*>& v, size_t n) {
    int64_t acc = 0;
    for (size_t i = 0; i < n; ++i) acc += chi[v[0][i]];
    return acc;
  };
  return grid({to_sparse(f, vars, p)}, p, block, opt);
}

template <class P>
int64_t zero_count_impl(const P& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  Block block = [](const std::vector<const uint32_t*>& v, size_t n) {
    int64_t acc = 0;
    for (size_t i = 0; i < n; ++i) acc += v[0][i] == 0 ? 1 : 0;
    return acc;
  };
  return grid({to_sparse(f, vars, p)}, p, block, opt);
}

std::vector<unsigned> without(std::vector<unsigned> vars, unsigned v) {
  vars.erase(std::remove(vars.begin(), vars.end(), v), vars.end());
  return vars;
}

}  // namespace

int legendre(const Integer& a, uint64_t p) {
  require_odd_prime(p);
  return euler(a.mod(p), p);
}

int legendre(int64_t a, uint64_t p) {
  require_odd_prime(p);
  return euler(mod_residue(a, p), p);
}

int64_t legendre_sum(const Poly& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt) {
  return legendre_sum_impl(f, p, vars, opt);
}
int64_t legendre_sum(const Poly& f, uint64_t p, const CountOptions& opt) {
  return legendre_sum_impl(f, p, f.variables(), opt);
}
int64_t legendre_sum(const WidePoly& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt) {
  return legendre_sum_impl(f, p, vars, opt);
}
int64_t zero_count(const Poly& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt) {
  return zero_count_impl(f, p, vars, opt);
}
int64_t zero_count(const Poly& f, uint64_t p, const CountOptions& opt) {
  return zero_count_impl(f, p, f.variables(), opt);
}
int64_t zero_count(const WidePoly& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt) {
  return zero_count_impl(f, p, vars, opt);
}

uint64_t affine_legendre_sum(const Poly& f, uint64_t p, AffineMode mode, const std::vector<unsigned>& vars,
                             const CountOptions& opt) {
  require_odd_prime(p);
  size_t N = vars.size();
  if (f.is_zero()) return 0;
  if (!f.is_homogeneous() || f.total_degree() != static_cast<int>(2 * N)) {
    throw std::invalid_argument("affine reduction needs a homogeneous polynomial of degree 2N");
  }
  if (N == 0) return mod_residue(legendre(f.constant_value(), p), p);
  unsigned v1 = vars[0];
  auto rest = without(vars, v1);
  int64_t acc = -legendre_sum(f.substitute(v1, Integer(1)), p, rest, opt);
  if (N == 1) return mod_residue(acc, p);
  Poly f0 = f.substitute(v1, Integer(0));
  if (mode == AffineMode::lemma) {
    unsigned v2 = rest[0];
    auto rest2 = without(rest, v2);
    acc -= legendre_sum(f0.substitute(v2, Integer(1)), p, rest2, opt);
    acc += legendre_sum(f0.substitute(v2, Integer(0)), p, rest2, opt);
    return mod_residue(acc, p);
  }
  uint64_t r = mod_residue(acc, p);
  for (unsigned vi : rest) {
    Poly top = f0.coeff(vi, 4);
    uint64_t t = affine_legendre_sum(top, p, mode, without(rest, vi), opt);
    r = (r + p - t) % p;
  }
  return r;
}

uint64_t affine_legendre_sum(const Poly& f, uint64_t p, AffineMode mode, const CountOptions& opt) {
  return affine_legendre_sum(f, p, mode, f.variables(), opt);
}

uint64_t cw_residue(const Poly& f, uint64_t p, const std::vector<unsigned>& vars) {
  require_odd_prime(p);
  size_t N = vars.size();
  if (f.total_degree() > static_cast<int>(2 * N)) throw std::invalid_argument("degree exceeds 2N");
  for (unsigned v : f.variables()) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
      throw std::invalid_argument("polynomial has a variable outside the ambient set");
    }
  }
  if (f.is_zero()) return 0;
  // Dense box of exponents 0..p-1 per variable; anything beyond p-1 cannot
  // reach the target monomial and is dropped.
  size_t box = checked_points(p, N, 50'000'000);
  std::vector<uint32_t> acc(box, 0), tmp(box);
  acc[0] = 1;
  std::vector<std::pair<std::vector<unsigned>, uint32_t>> terms;
  for (const auto& t : f.terms()) {
    std::vector<unsigned> e;
    for (unsigned v : vars) e.push_back(t.m.get(v));
    terms.emplace_back(std::move(e), static_cast<uint32_t>(t.c.mod(p)));
  }
  std::vector<size_t> stride(N, 1);
  for (size_t i = N; i-- > 1;) stride[i - 1] = stride[i] * p;
  std::vector<unsigned> digit(N);
  for (uint64_t k = 0; k < (p - 1) / 2; ++k) {
    std::fill(tmp.begin(), tmp.end(), 0);
    for (size_t idx = 0; idx < box; ++idx) {
      if (acc[idx] == 0) continue;
      size_t r = idx;
      for (size_t i = 0; i < N; ++i) {
        digit[i] = static_cast<unsigned>(r / stride[i]);
        r %= stride[i];
      }
      for (const auto& [e, c] : terms) {
        size_t to = 0;
        bool ok = true;
        for (size_t i = 0; i < N && ok; ++i) {
          unsigned d = digit[i] + e[i];
          if (d > p - 1) ok = false;
          to += d * stride[i];
        }
        if (ok) tmp[to] = static_cast<uint32_t>((tmp[to] + static_cast<uint64_t>(acc[idx]) * c) % p);
      }
    }
    std::swap(acc, tmp);
  }
  uint64_t coeff = acc[box - 1];  // all exponents p-1
  return N % 2 == 0 ? coeff : (p - coeff) % p;
}

uint64_t cw_residue(const Poly& f, uint64_t p) { return cw_residue(f, p, f.variables()); }

uint64_t c2_oracle(const Multigraph& g, uint64_t p, const CountOptions& opt) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (g.vertex_count() < 3) throw std::invalid_argument("the c2 invariant needs at least three vertices");
  checked_points(p, g.edge_count(), opt.max_points);
  Poly psi = dodgson(g);
  int64_t count = zero_count(psi, p, g.edge_ids(), opt);
  int64_t p2 = static_cast<int64_t>(p * p);
  if (count % p2 != 0) {
    throw std::logic_error("point count " + std::to_string(count) + " is not divisible by p^2");
  }
  return mod_residue(count / p2, p);
}

uint64_t c2_from_state(const ReductionState& s, uint64_t p, const CountOptions& opt) {
  if (p == 2) throw std::invalid_argument("quadratic invariants do not count at p = 2");
  require_odd_prime(p);
  if (s.status == Status::weight_drop || s.invariant.is_zero()) return 0;
  uint64_t sign_odd = (s.n - 1) % 2;  // (-1)^(n-1) = -1 when this is 1
  auto signed_res = [&](uint64_t r) { return sign_odd != 0 ? (p - r) % p : r; };
  const Poly& f = s.invariant;
  size_t N = s.remaining.size();
  if (N == 0) return signed_res(mod_residue(legendre(f.constant_value(), p), p));
  if (f.total_degree() < static_cast<int>(2 * N)) return 0;  // Chevalley-Warning
  if (f.is_homogeneous() && f.total_degree() == static_cast<int>(2 * N)) {
    return signed_res(affine_legendre_sum(f, p, AffineMode::theorem, s.remaining, opt));
  }
  return signed_res(mod_residue(legendre_sum(f, p, s.remaining, opt), p));
}

std::optional<uint64_t> c2_at_two(const ReductionState& s, const CountOptions& opt) {
  if (s.status == Status::weight_drop) return 0;
  if (!s.last_standard) return std::nullopt;
  const auto& snap = *s.last_standard;
  int64_t count = zero_count(snap.root, 2, snap.variables, opt);
  return static_cast<uint64_t>(count % 2);
}

void check_dodgson_pair(const Poly& f, const Poly& g) {
  auto vars = f.variables();
  auto gv = g.variables();
  vars.insert(vars.end(), gv.begin(), gv.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  int N = static_cast<int>(vars.size());
  if (f.is_zero() || g.is_zero() || !f.is_homogeneous() || !g.is_homogeneous()) {
    throw std::invalid_argument("Dodgson pair members must be nonzero and homogeneous");
  }
  for (unsigned v : vars) {
    if (f.degree_in(v) > 1 || g.degree_in(v) > 1) throw std::invalid_argument("Dodgson pair members must be multilinear");
  }
  int d = f.total_degree(), e = g.total_degree();
  if (d <= 0 || e <= 0 || d + e != N) throw std::invalid_argument("Dodgson pair degrees must be d, N-d with 0 < d < N");
}

namespace {

int64_t pair_grid(const Poly& f, const Poly& g, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt) {
  Block block = [](const std::vector<const uint32_t*>& v, size_t n) {
    int64_t acc = 0;
    for (size_t i = 0; i < n; ++i) acc += (v[0][i] == 0 && v[1][i] == 0) ? 1 : 0;
    return acc;
  };
  return grid({to_sparse(f, vars, p), to_sparse(g, vars, p)}, p, block, opt);
}

}  // namespace

int64_t pair_intersection_exact(const Poly& f, const Poly& g, uint64_t p, PairMethod method, const CountOptions& opt) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  check_dodgson_pair(f, g);
  auto vars = f.variables();
  auto gv = g.variables();
  vars.insert(vars.end(), gv.begin(), gv.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (method == PairMethod::grid) return pair_grid(f, g, p, vars, opt);
  // Both members are homogeneous: every nonzero solution lies on a line
  // through the origin, so the count is 1 + (p-1) * (projective solutions),
  // and the projective count splits into affine charts a_1 = ... = a_{i-1} = 0, a_i = 1.
  int64_t projective = 0;
  Poly fi = f, gi = g;
  std::vector<unsigned> rest = vars;
  for (unsigned v : vars) {
    rest = without(rest, v);
    projective += pair_grid(fi.substitute(v, Integer(1)), gi.substitute(v, Integer(1)), p, rest, opt);
    fi = fi.substitute(v, Integer(0));
    gi = gi.substitute(v, Integer(0));
  }
  return 1 + static_cast<int64_t>(p - 1) * projective;
}

uint64_t pair_intersection_count(const Poly& f, const Poly& g, uint64_t p, const CountOptions& opt) {
  return mod_residue(pair_intersection_exact(f, g, p, PairMethod::projective, opt), p);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::oracle:
      return "oracle";
    case Provenance::quadratic_invariant:
      return "quadratic_invariant";
    case Provenance::standard_invariant:
      return "standard_invariant";
    case Provenance::intersection:
      return "intersection";
  }
  return "oracle";
}

}  // namespace c2lab
