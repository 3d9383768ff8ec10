#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace c2lab::testkit {

Multigraph complete_graph(unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> e;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Multigraph(n, e);
}

Multigraph circulant(unsigned n, std::vector<unsigned> steps) {
  std::set<std::pair<unsigned, unsigned>> e;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned s : steps) {
      unsigned j = (i + s) % n;
      e.insert({std::min(i, j), std::max(i, j)});
    }
  }
  return Multigraph(n, {e.begin(), e.end()});
}

Multigraph random_connected(std::mt19937_64& rng, unsigned vmin, unsigned vmax, unsigned emax, bool loops,
                            bool simple) {
  unsigned n = std::uniform_int_distribution<unsigned>(vmin, vmax)(rng);
  std::vector<std::pair<unsigned, unsigned>> edges;
  std::set<std::pair<unsigned, unsigned>> seen;
  for (unsigned v = 1; v < n; ++v) {
    unsigned u = std::uniform_int_distribution<unsigned>(0, v - 1)(rng);
    edges.emplace_back(u, v);
    seen.insert({u, v});
  }
  unsigned room = emax > edges.size() ? emax - static_cast<unsigned>(edges.size()) : 0;
  unsigned k = std::uniform_int_distribution<unsigned>(0, room)(rng);
  std::uniform_int_distribution<unsigned> pick(0, n - 1);
  for (unsigned tries = 0; k > 0 && tries < 200; ++tries) {
    unsigned a = pick(rng), b = pick(rng);
    if (a == b && !loops) continue;
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    if (simple && (a == b || seen.count(key))) continue;
    seen.insert(key);
    edges.emplace_back(a, b);
    --k;
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  for (auto& e : edges) {
    if (rng() & 1) std::swap(e.first, e.second);
  }
  return Multigraph(n, edges);
}

Multigraph random_graph(std::mt19937_64& rng, unsigned vmax, unsigned emax) {
  unsigned n = std::uniform_int_distribution<unsigned>(1, vmax)(rng);
  unsigned m = std::uniform_int_distribution<unsigned>(0, emax)(rng);
  std::uniform_int_distribution<unsigned> pick(0, n - 1);
  std::vector<std::pair<unsigned, unsigned>> edges;
  for (unsigned i = 0; i < m; ++i) edges.emplace_back(pick(rng), pick(rng));
  return Multigraph(n, edges);
}

namespace {

using Pairs = std::vector<std::pair<unsigned, unsigned>>;

struct Shape {
  unsigned n = 0;
  Pairs edges;  // unordered, a <= b
};

Pairs relabel(const Pairs& e, const std::vector<unsigned>& perm) {
  Pairs r;
  r.reserve(e.size());
  for (auto [a, b] : e) {
    unsigned x = perm[a], y = perm[b];
    r.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(r.begin(), r.end());
  return r;
}

// Minimum sorted edge list over relabelings that respect the degree/loop classes.
Pairs canonical(const Shape& s) {
  std::vector<std::pair<unsigned, unsigned>> key(s.n);  // (degree, loops)
  for (auto [a, b] : s.edges) {
    key[a].first++;
    key[b].first++;
    if (a == b) key[a].second++;
  }
  std::vector<unsigned> order(s.n);
  for (unsigned i = 0; i < s.n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](unsigned x, unsigned y) { return key[x] > key[y]; });
  // blocks of equal key in order
  std::vector<std::pair<size_t, size_t>> blocks;
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j < order.size() && key[order[j]] == key[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  Pairs best;
  bool have = false;
  std::vector<unsigned> perm(s.n);
  std::function<void(size_t)> rec = [&](size_t b) {
    if (b == blocks.size()) {
      for (unsigned pos = 0; pos < s.n; ++pos) perm[order[pos]] = pos;
      Pairs r = relabel(s.edges, perm);
      if (!have || r < best) {
        best = std::move(r);
        have = true;
      }
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi));
    do {
      rec(b + 1);
    } while (std::next_permutation(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi)));
  };
  rec(0);
  return best;
}

}  // namespace

std::vector<Multigraph> connected_multigraphs(unsigned max_edges) {
  std::vector<Multigraph> out;
  std::set<std::pair<unsigned, Pairs>> level{{1, {{0, 0}}}, {2, {{0, 1}}}};
  for (unsigned e = 1; e <= max_edges; ++e) {
    for (const auto& [n, edges] : level) {
      out.push_back(Multigraph(n, edges));
    }
    if (e == max_edges) break;
    std::set<std::pair<unsigned, Pairs>> next;
    for (const auto& [n, edges] : level) {
      for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = a; b < n; ++b) {
          Shape s{n, edges};
          s.edges.emplace_back(a, b);
          next.insert({n, canonical(s)});
        }
        Shape s{n + 1, edges};
        s.edges.emplace_back(a, n);
        next.insert({n + 1, canonical(s)});
      }
    }
    level = std::move(next);
  }
  return out;
}

Poly random_poly(std::mt19937_64& rng, const std::vector<unsigned>& vars, unsigned max_deg_per_var,
                 unsigned max_total, int c, unsigned terms) {
  Poly p;
  std::uniform_int_distribution<int> coef(-c, c);
  std::uniform_int_distribution<unsigned> deg(0, max_deg_per_var);
  for (unsigned t = 0; t < terms; ++t) {
    Poly m(Integer(coef(rng)));
    unsigned total = 0;
    for (unsigned v : vars) {
      unsigned d = std::min(deg(rng), max_total - total);
      total += d;
      if (d) m = m * Poly::var(v, d);
    }
    p = p + m;
  }
  return p;
}

Poly random_homogeneous(std::mt19937_64& rng, const std::vector<unsigned>& vars, unsigned degree, int c,
                        unsigned terms) {
  Poly p;
  std::uniform_int_distribution<int> coef(-c, c);
  std::uniform_int_distribution<size_t> which(0, vars.size() - 1);
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<unsigned> exps(vars.size(), 0);
    for (unsigned k = 0; k < degree;) {
      size_t i = which(rng);
      if (exps[i] < 4) {
        exps[i]++;
        ++k;
      }
    }
    Poly m(Integer(coef(rng)));
    for (size_t i = 0; i < vars.size(); ++i) {
      if (exps[i]) m = m * Poly::var(vars[i], exps[i]);
    }
    p = p + m;
  }
  return p;
}

}  // namespace c2lab::testkit
