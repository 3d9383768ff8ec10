#include "c2lab/dodgson.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace c2lab {

int word_sign(const EdgeWord& w) {
  int sign = 1;
  for (size_t i = 0; i < w.size(); ++i) {
    for (size_t j = i + 1; j < w.size(); ++j) {
      if (w[i] == w[j]) return 0;
      if (w[i] > w[j]) sign = -sign;
    }
  }
  return sign;
}

std::vector<Letter> natural_order(const Multigraph& g) {
  std::vector<Letter> order;
  for (const auto& e : g.edges()) order.push_back({false, e.id});
  for (unsigned v = 0; v < g.vertex_count(); ++v) order.push_back({true, v});
  return order;
}

LaplacianMatrix expanded_laplacian(const Multigraph& g) { return expanded_laplacian(g, natural_order(g)); }

LaplacianMatrix expanded_laplacian(const Multigraph& g, const std::vector<Letter>& order) {
  size_t m = order.size();
  if (m != g.edge_count() + g.vertex_count()) throw std::invalid_argument("ordering must list every letter once");
  std::map<unsigned, size_t> epos, vpos;
  for (size_t i = 0; i < m; ++i) {
    auto& slot = order[i].vertex ? vpos : epos;
    if (!slot.emplace(order[i].id, i).second) throw std::invalid_argument("repeated letter in ordering");
  }
  LaplacianMatrix L;
  L.letters = order;
  L.m.assign(m, std::vector<Poly>(m));
  for (const auto& e : g.edges()) {
    auto it = epos.find(e.id);
    if (it == epos.end()) throw std::invalid_argument("ordering misses an edge");
    size_t r = it->second;
    if (e.id >= kMaxVars) throw std::out_of_range("edge label exceeds the variable universe");
    L.m[r][r] = Poly::var(e.id);
    if (e.is_loop()) continue;
    size_t t = vpos.at(e.tail), h = vpos.at(e.head);
    L.m[r][t] = Poly(1);
    L.m[t][r] = Poly(1);
    L.m[r][h] = Poly(-1);
    L.m[h][r] = Poly(-1);
  }
  return L;
}

Poly determinant(PolyMatrix m) {
  size_t k = m.size();
  if (k == 0) return Poly(1);
  int sign = 1;
  Poly prev(1);
  for (size_t s = 0; s < k; ++s) {
    // Pivot: units first, then other constants, then fewest terms.
    size_t pr = k, pc = k;
    size_t best = 0;
    for (size_t i = s; i < k; ++i) {
      for (size_t j = s; j < k; ++j) {
        const Poly& x = m[i][j];
        if (x.is_zero()) continue;
        size_t score;
        if (x.is_constant()) {
          Integer c = abs(x.constant_value());
          score = c == Integer(1) ? 0 : 1;
        } else {
          score = 1 + x.size();
        }
        if (pr == k || score < best) {
          pr = i;
          pc = j;
          best = score;
        }
      }
      if (pr != k && best == 0) break;
    }
    if (pr == k) return Poly();
    if (pr != s) {
      std::swap(m[pr], m[s]);
      sign = -sign;
    }
    if (pc != s) {
      for (auto& row : m) std::swap(row[pc], row[s]);
      sign = -sign;
    }
    const Poly& piv = m[s][s];
    bool trivial_prev = prev.is_constant() && abs(prev.constant_value()) == Integer(1);
    for (size_t i = s + 1; i < k; ++i) {
      const Poly& lead = m[i][s];
      for (size_t j = s + 1; j < k; ++j) {
        Poly num = piv * m[i][j];
        if (!lead.is_zero() && !m[s][j].is_zero()) num -= lead * m[s][j];
        if (trivial_prev) {
          m[i][j] = prev.constant_value() == Integer(1) ? std::move(num) : -num;
        } else {
          m[i][j] = exact_div(num, prev);
        }
      }
      m[i][s] = Poly();
    }
    prev = m[s][s];
  }
  Poly d = m[k - 1][k - 1];
  return sign < 0 ? -d : d;
}

namespace {

int permutation_sign_by(const std::vector<size_t>& keys) {
  int sign = 1;
  for (size_t i = 0; i < keys.size(); ++i) {
    for (size_t j = i + 1; j < keys.size(); ++j) {
      if (keys[i] == keys[j]) return 0;
      if (keys[i] > keys[j]) sign = -sign;
    }
  }
  return sign;
}

std::string cache_key(const Multigraph& g, const EdgeWord& I, const EdgeWord& J, const EdgeSet& K) {
  std::ostringstream os;
  os << g.vertex_count() << ';';
  for (const auto& e : g.edges()) os << e.id << ':' << e.tail << '>' << e.head << ',';
  os << "|I";
  for (unsigned x : I) os << x << ',';
  os << "|J";
  for (unsigned x : J) os << x << ',';
  os << "|K";
  for (unsigned x : K) os << x << ',';
  return os.str();
}

}  // namespace

Poly dodgson_raw(const Multigraph& g, const EdgeWord& I, const EdgeWord& J, const EdgeSet& K,
                 const std::vector<Letter>& order, unsigned struck) {
  for (const auto* word : {&I, &J}) {
    for (unsigned x : *word) {
      if (!g.has_edge(x)) throw std::invalid_argument("unknown edge label " + std::to_string(x));
    }
  }
  for (unsigned x : K) {
    if (!g.has_edge(x)) throw std::invalid_argument("unknown edge label " + std::to_string(x));
  }
  if (I.size() != J.size()) return Poly();
  if (g.vertex_count() == 0) return I.empty() ? Poly(1) : Poly();
  if (struck >= g.vertex_count()) throw std::invalid_argument("struck vertex out of range");

  LaplacianMatrix L = expanded_laplacian(g, order);
  auto pos_of = [&](Letter l) {
    auto it = std::find(order.begin(), order.end(), l);
    return static_cast<size_t>(it - order.begin());
  };
  std::vector<size_t> rows_out, cols_out;
  for (unsigned x : I) rows_out.push_back(pos_of({false, x}));
  for (unsigned x : J) cols_out.push_back(pos_of({false, x}));
  size_t vp = pos_of({true, struck});
  rows_out.push_back(vp);
  cols_out.push_back(vp);
  int sI = permutation_sign_by(rows_out);
  int sJ = permutation_sign_by(cols_out);
  if (sI == 0 || sJ == 0) return Poly();

  size_t parity = g.vertex_count() - 1;
  for (size_t i = 0; i + 1 < rows_out.size(); ++i) parity += rows_out[i] + 1;
  for (size_t i = 0; i + 1 < cols_out.size(); ++i) parity += cols_out[i] + 1;
  int sign = ((parity % 2 == 0) ? 1 : -1) * sI * sJ;

  for (unsigned k : K) {
    size_t p = pos_of({false, k});
    L.m[p][p] = Poly();
  }
  std::vector<bool> drop_r(order.size(), false), drop_c(order.size(), false);
  for (size_t r : rows_out) drop_r[r] = true;
  for (size_t c : cols_out) drop_c[c] = true;
  PolyMatrix sub;
  for (size_t r = 0; r < order.size(); ++r) {
    if (drop_r[r]) continue;
    std::vector<Poly> row;
    for (size_t c = 0; c < order.size(); ++c) {
      if (!drop_c[c]) row.push_back(L.m[r][c]);
    }
    sub.push_back(std::move(row));
  }
  Poly d = determinant(std::move(sub));
  return sign < 0 ? -d : d;
}

bool DodgsonCache::lookup(const std::string& key, Poly& out) const {
  std::shared_lock lock(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) return false;
  out = it->second;
  return true;
}

void DodgsonCache::store(const std::string& key, const Poly& value) {
  std::unique_lock lock(mu_);
  map_.emplace(key, value);
}

size_t DodgsonCache::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

Poly dodgson(const Multigraph& g, const EdgeWord& I, const EdgeWord& J, const EdgeSet& K, DodgsonCache* cache) {
  std::string key;
  if (cache != nullptr) {
    key = cache_key(g, I, J, K);
    Poly hit;
    if (cache->lookup(key, hit)) return hit;
  }
  unsigned struck = g.vertex_count() == 0 ? 0 : g.vertex_count() - 1;
  Poly r = dodgson_raw(g, I, J, K, natural_order(g), struck);
  if (cache != nullptr) cache->store(key, r);
  return r;
}

Poly dodgson(const GraphSum& g, const EdgeWord& I, const EdgeWord& J, const EdgeSet& K, DodgsonCache* cache) {
  Poly sum;
  for (const auto& [c, term] : g.terms) sum += dodgson(term, I, J, K, cache).scaled(c);
  return sum;
}

Poly spanning_tree_poly(const Multigraph& g) {
  unsigned n = g.vertex_count();
  if (n == 0) return Poly(1);
  const auto& edges = g.edges();
  Mono all;
  for (const auto& e : edges) all.set(e.id, 1);
  std::vector<Poly::Term> terms;
  // Depth-first choice of tree edges with a copyable union-find.
  std::vector<unsigned> parent(n);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [](std::vector<unsigned>& p, unsigned x) {
    while (p[x] != x) x = p[x];
    return x;
  };
  std::vector<unsigned> chosen;
  auto rec = [&](auto&& self, size_t idx, std::vector<unsigned> p) -> void {
    if (chosen.size() == n - 1) {
      Mono m = all;
      for (unsigned id : chosen) m.set(id, 0);
      terms.push_back({m, Integer(1)});
      return;
    }
    if (edges.size() - idx < (n - 1) - chosen.size()) return;
    const Edge& e = edges[idx];
    unsigned a = find(p, e.tail), b = find(p, e.head);
    if (a != b) {
      auto q = p;
      q[a] = b;
      chosen.push_back(e.id);
      self(self, idx + 1, std::move(q));
      chosen.pop_back();
    }
    self(self, idx + 1, std::move(p));
  };
  rec(rec, 0, parent);
  return Poly::from_terms(std::move(terms));
}

Multigraph orient_outward(const Multigraph& g, unsigned v) {
  Multigraph h = g;
  for (const auto& e : g.edges()) {
    if (!e.is_loop() && e.head == v) h = h.reversed(e.id);
  }
  return h;
}

ThreeValentData three_valent_data(const Multigraph& g, unsigned v) {
  auto inc = g.incident(v);
  if (inc.size() != 3 || g.degree(v) != 3) throw std::invalid_argument("vertex is not 3-valent");
  return three_valent_data(g, v, inc[0], inc[1], inc[2]);
}

ThreeValentData three_valent_data(const Multigraph& g, unsigned v, unsigned e1, unsigned e2, unsigned e3) {
  if (g.degree(v) != 3) throw std::invalid_argument("vertex is not 3-valent");
  auto inc = g.incident(v);
  std::vector<unsigned> want{e1, e2, e3};
  std::sort(want.begin(), want.end());
  if (inc != want) throw std::invalid_argument("edges are not the three edges at the vertex");
  for (unsigned id : inc) {
    if (g.edge(id).is_loop()) throw std::invalid_argument("self-loop at 3-valent vertex");
  }
  Multigraph h = orient_outward(g, v);
  ThreeValentData d;
  d.e1 = e1;
  d.e2 = e2;
  d.e3 = e3;
  d.f0 = dodgson(h, {e1, e2}, {e1, e2}, {e3});
  d.f1 = dodgson(h, {e2}, {e3}, {e1});
  d.f2 = dodgson(h, {e1}, {e3}, {e2});
  d.f3 = dodgson(h, {e1}, {e2}, {e3});
  d.f123 = dodgson(h, {}, {}, {e1, e2, e3});
  return d;
}

Poly five_invariant(const Multigraph& g, unsigned e1, unsigned e2, unsigned e3, unsigned e4, unsigned e5) {
  if (g.edge_count() < 5) throw std::invalid_argument("five-invariant needs at least five edges");
  if (word_sign({e1, e2, e3, e4, e5}) == 0) throw std::invalid_argument("repeated edge label");
  return dodgson(g, {e1, e2, e5}, {e3, e4, e5}) * dodgson(g, {e1, e3}, {e2, e4}, {e5}) -
         dodgson(g, {e1, e3, e5}, {e2, e4, e5}) * dodgson(g, {e1, e2}, {e3, e4}, {e5});
}

}  // namespace c2lab
