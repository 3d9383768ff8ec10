#include "c2lab/identify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace c2lab {

namespace {

using Series = std::vector<Integer>;

// prod (1 - q^n) via pentagonal numbers, truncated to degree < len.
Series euler_product(size_t len) {
  Series s(len, Integer(0));
  for (long k = 0;; ++k) {
    bool any = false;
    for (long sign : {1L, -1L}) {
      if (k == 0 && sign == -1) continue;
      long kk = sign * k;
      long e = kk * (3 * kk - 1) / 2;
      if (e < static_cast<long>(len)) {
        s[static_cast<size_t>(e)] = (k % 2 == 0) ? Integer(1) : Integer(-1);
        any = true;
      }
    }
    if (!any && k > 0) break;
  }
  return s;
}

Series mul(const Series& a, const Series& b) {
  Series r(a.size(), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; i + j < r.size(); ++j) {
      if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  return r;
}

// Inverse of a series with constant term 1.
Series inverse(const Series& a) {
  Series r(a.size(), Integer(0));
  r[0] = Integer(1);
  for (size_t n = 1; n < a.size(); ++n) {
    Integer acc(0);
    for (size_t k = 1; k <= n; ++k) acc = acc + a[k] * r[n - k];
    r[n] = -acc;
  }
  return r;
}

Series dilate(const Series& a, int m) {
  Series r(a.size(), Integer(0));
  for (size_t i = 0; i * static_cast<size_t>(m) < a.size(); ++i) r[i * static_cast<size_t>(m)] = a[i];
  return r;
}

}  // namespace

std::vector<Integer> eta_coeffs(const EtaSpec& spec, unsigned nmax) {
  if (nmax < 1) throw std::invalid_argument("nmax must be at least 1");
  long weighted = 0;
  for (auto [m, e] : spec) {
    if (m <= 0) throw std::invalid_argument("eta multiplier must be positive");
    weighted += static_cast<long>(m) * e;
  }
  if (weighted % 24 != 0 || weighted / 24 != 1) {
    throw std::invalid_argument("eta product does not start at q^1 (sum m e = " + std::to_string(weighted) + ")");
  }
  size_t len = nmax;  // degrees 0 .. nmax-1 of the product, i.e. a_1 .. a_nmax
  Series base = euler_product(len);
  Series inv = inverse(base);
  Series acc(len, Integer(0));
  acc[0] = Integer(1);
  for (auto [m, e] : spec) {
    const Series& f = e >= 0 ? base : inv;
    Series d = dilate(f, m);
    for (int i = 0; i < std::abs(e); ++i) acc = mul(acc, d);
  }
  return acc;
}

std::string NewformSpec::name() const { return "[" + std::to_string(weight) + "," + std::to_string(level) + "]"; }

NewformSpec eta_newform(int weight, int level, const EtaSpec& spec, uint64_t bound) {
  NewformSpec f;
  f.weight = weight;
  f.level = level;
  f.eta = spec;
  f.source = NewformSource::eta_product;
  f.bound = bound;
  auto a = eta_coeffs(spec, static_cast<unsigned>(bound));
  for (uint64_t p = 2; p <= bound; ++p) {
    if (is_prime(p)) f.coeffs[p] = a[p - 1].small();
  }
  return f;
}

std::vector<NewformSpec> bundled_newforms(uint64_t bound) {
  return {
      eta_newform(2, 11, {{1, 2}, {11, 2}}, bound),
      eta_newform(2, 14, {{1, 1}, {2, 1}, {7, 1}, {14, 1}}, bound),
      eta_newform(2, 15, {{1, 1}, {3, 1}, {5, 1}, {15, 1}}, bound),
      eta_newform(3, 7, {{1, 3}, {7, 3}}, bound),
      eta_newform(3, 8, {{1, 2}, {2, 1}, {4, 1}, {8, 2}}, bound),
      eta_newform(3, 12, {{2, 3}, {6, 3}}, bound),
      eta_newform(4, 5, {{1, 4}, {5, 4}}, bound),
      eta_newform(4, 6, {{1, 2}, {2, 2}, {3, 2}, {6, 2}}, bound),
      eta_newform(5, 4, {{1, 4}, {2, 2}, {4, 4}}, bound),
      eta_newform(6, 3, {{1, 6}, {3, 6}}, bound),
      eta_newform(8, 2, {{1, 8}, {2, 8}}, bound),
  };
}

std::vector<NewformSpec> load_newform_table(const std::string& text) {
  std::vector<NewformSpec> out;
  std::set<std::pair<int, int>> seen;
  std::optional<NewformSpec> cur;
  auto close = [&]() {
    if (!cur) return;
    if (cur->coeffs.empty()) throw std::invalid_argument("newform " + cur->name() + " has no coefficients");
    if (cur->bound == 0) cur->bound = cur->coeffs.rbegin()->first;
    for (uint64_t p = 2; p <= cur->bound; ++p) {
      if (is_prime(p) && cur->coeffs.count(p) == 0) {
        throw std::invalid_argument("newform " + cur->name() + " misses prime " + std::to_string(p) + " below its bound " +
                                    std::to_string(cur->bound));
      }
    }
    out.push_back(*cur);
    cur.reset();
  };
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    auto bad = [&]() { return std::invalid_argument("malformed newform table line " + std::to_string(lineno)); };
    if (tok.empty()) {
      // Comment-only lines do not end a block; truly blank lines do.
      if (hash == std::string::npos) close();
      continue;
    }
    try {
      if (tok[0] == "w") {
        close();
        if ((tok.size() != 4 && tok.size() != 6) || tok[2] != "l") throw bad();
        NewformSpec f;
        f.weight = std::stoi(tok[1]);
        f.level = std::stoi(tok[3]);
        if (tok.size() == 6) {
          if (tok[4] != "b") throw bad();
          f.bound = std::stoull(tok[5]);
        }
        if (f.weight < 2 || f.level < 1) throw bad();
        if (!seen.insert({f.weight, f.level}).second) {
          throw std::invalid_argument("duplicate newform " + f.name() + " at line " + std::to_string(lineno));
        }
        f.source = NewformSource::external_file;
        cur = f;
        continue;
      }
      if (!cur || tok.size() != 2) throw bad();
      size_t used = 0;
      uint64_t p = std::stoull(tok[0], &used);
      if (used != tok[0].size() || !is_prime(p)) throw bad();
      int64_t ap = std::stoll(tok[1], &used);
      if (used != tok[1].size()) throw bad();
      if (!cur->coeffs.emplace(p, ap).second) throw bad();
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw bad();
    }
  }
  close();
  return out;
}

std::string Candidate::name() const {
  switch (kind) {
    case Kind::constant:
      return "constant " + std::to_string(value);
    case Kind::legendre:
      return "legendre " + std::to_string(value);
    case Kind::newform:
      return "newform " + form->name() + (form->source == NewformSource::external_file ? " external-data" : "");
  }
  return "";
}

std::optional<uint64_t> Candidate::residue(uint64_t p) const {
  switch (kind) {
    case Kind::constant:
      return mod_residue(value, p);
    case Kind::legendre:
      if (p == 2) return static_cast<uint64_t>(value % 2 != 0 ? 1 : 0);
      return mod_residue(-legendre(value, p), p);
    case Kind::newform: {
      auto it = form->coeffs.find(p);
      if (it == form->coeffs.end()) return std::nullopt;
      return mod_residue(-it->second, p);
    }
  }
  return std::nullopt;
}

CandidatePool default_pool(const std::vector<NewformSpec>& external, uint64_t bound) {
  CandidatePool pool;
  for (int64_t c : {0, -1}) pool.candidates.push_back({Candidate::Kind::constant, c, nullptr});
  std::vector<int64_t> xs;
  for (int64_t a = 1; a <= 20; ++a) {
    bool squarefree = true;
    for (int64_t d = 2; d * d <= a; ++d) squarefree = squarefree && a % (d * d) != 0;
    if (!squarefree) continue;
    if (a != 1) xs.push_back(a);
    xs.push_back(-a);
  }
  for (int64_t x : {4, -4, 9, -12}) xs.push_back(x);
  std::sort(xs.begin(), xs.end(), [](int64_t a, int64_t b) {
    return std::make_pair(std::abs(a), a < 0) < std::make_pair(std::abs(b), b < 0);
  });
  for (int64_t x : xs) pool.candidates.push_back({Candidate::Kind::legendre, x, nullptr});
  auto forms = bundled_newforms(bound);
  forms.insert(forms.end(), external.begin(), external.end());
  std::stable_sort(forms.begin(), forms.end(), [](const NewformSpec& a, const NewformSpec& b) {
    return std::make_pair(a.weight, a.level) < std::make_pair(b.weight, b.level);
  });
  for (auto& f : forms) {
    pool.candidates.push_back({Candidate::Kind::newform, 0, std::make_shared<const NewformSpec>(std::move(f))});
  }
  return pool;
}

std::string to_string(IdentificationResult::Status s) {
  switch (s) {
    case IdentificationResult::Status::unique:
      return "unique";
    case IdentificationResult::Status::ambiguous:
      return "ambiguous";
    case IdentificationResult::Status::unidentified:
      return "unidentified";
  }
  return "unidentified";
}

IdentificationResult match_c2(const C2Prefix& prefix, const CandidatePool& pool) {
  IdentificationResult r;
  for (const auto& [p, e] : prefix.residues) r.primes_checked.push_back(p);
  if (r.primes_checked.empty()) return r;
  for (const auto& c : pool.candidates) {
    bool ok = true;
    for (const auto& [p, e] : prefix.residues) {
      auto want = c.residue(p);
      if (!want || *want != e.residue) {
        ok = false;
        break;
      }
    }
    if (ok) r.matches.push_back(c);
  }
  if (r.matches.size() == 1) {
    r.status = IdentificationResult::Status::unique;
  } else if (r.matches.size() > 1) {
    r.status = IdentificationResult::Status::ambiguous;
  }
  return r;
}

std::vector<std::pair<std::string, std::string>> inseparable_pairs(const CandidatePool& pool, uint64_t bound) {
  std::vector<uint64_t> primes{2};
  auto odd = odd_primes_upto(bound);
  primes.insert(primes.end(), odd.begin(), odd.end());
  std::vector<std::pair<std::string, std::string>> out;
  const auto& cs = pool.candidates;
  for (size_t i = 0; i < cs.size(); ++i) {
    for (size_t j = i + 1; j < cs.size(); ++j) {
      bool same = true;
      for (uint64_t p : primes) {
        auto a = cs[i].residue(p), b = cs[j].residue(p);
        if (a && b && *a != *b) {
          same = false;
          break;
        }
      }
      if (same) out.emplace_back(cs[i].name(), cs[j].name());
    }
  }
  return out;
}

std::optional<unsigned> dimension_bound(const ReductionState& s) {
  if (s.status == Status::weight_drop || s.invariant.is_zero()) return std::nullopt;
  size_t r = s.remaining.size();
  return r == 0 ? 0U : static_cast<unsigned>(r - 1);
}

}  // namespace c2lab
