#include "c2lab/multigraph.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace c2lab {

Multigraph::Multigraph(unsigned vertices, const std::vector<std::pair<unsigned, unsigned>>& edges)
    : n_(vertices) {
  unsigned id = 1;
  for (auto [t, h] : edges) {
    if (t >= n_ || h >= n_) throw std::invalid_argument("vertex index out of range");
    edges_.push_back({t, h, id++});
  }
}

Multigraph Multigraph::with_edges(unsigned vertices, std::vector<Edge> edges) {
  Multigraph g;
  g.n_ = vertices;
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].tail >= vertices || edges[i].head >= vertices) {
      throw std::invalid_argument("vertex index out of range");
    }
    if (edges[i].id == 0 || (i > 0 && edges[i].id <= edges[i - 1].id)) {
      throw std::invalid_argument("edge labels must be positive and increasing");
    }
  }
  g.edges_ = std::move(edges);
  return g;
}

std::vector<unsigned> Multigraph::edge_ids() const {
  std::vector<unsigned> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.id);
  return out;
}

std::optional<size_t> Multigraph::position(unsigned id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, unsigned x) { return e.id < x; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<size_t>(it - edges_.begin());
}

const Edge& Multigraph::edge(unsigned id) const {
  auto pos = position(id);
  if (!pos) throw std::invalid_argument("unknown edge label " + std::to_string(id));
  return edges_[*pos];
}

unsigned Multigraph::degree(unsigned v) const {
  unsigned d = 0;
  for (const auto& e : edges_) d += (e.tail == v) + (e.head == v);
  return d;
}

std::vector<unsigned> Multigraph::incident(unsigned v) const {
  std::vector<unsigned> out;
  for (const auto& e : edges_) {
    if (e.tail == v || e.head == v) out.push_back(e.id);
  }
  return out;
}

std::vector<unsigned> Multigraph::neighbors(unsigned v) const {
  std::vector<unsigned> out;
  for (const auto& e : edges_) {
    if (e.is_loop()) continue;
    if (e.tail == v) out.push_back(e.head);
    if (e.head == v) out.push_back(e.tail);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

unsigned Multigraph::edges_between(unsigned u, unsigned v) const {
  unsigned k = 0;
  for (const auto& e : edges_) {
    if ((e.tail == u && e.head == v) || (e.tail == v && e.head == u)) ++k;
  }
  return k;
}

Multigraph Multigraph::deleted(const EdgeSet& ids) const {
  Multigraph g;
  g.n_ = n_;
  for (const auto& e : edges_) {
    if (ids.count(e.id) == 0) g.edges_.push_back(e);
  }
  return g;
}

std::optional<Multigraph> Multigraph::contracted(unsigned id) const {
  const Edge& ce = edge(id);
  if (ce.is_loop()) return std::nullopt;
  unsigned keep = std::min(ce.tail, ce.head);
  unsigned gone = std::max(ce.tail, ce.head);
  auto map = [&](unsigned v) {
    if (v == gone) v = keep;
    return v > gone ? v - 1 : v;
  };
  Multigraph g;
  g.n_ = n_ - 1;
  for (const auto& e : edges_) {
    if (e.id == id) continue;
    g.edges_.push_back({map(e.tail), map(e.head), e.id});
  }
  return g;
}

Multigraph Multigraph::without_vertex(unsigned v) const { return without_vertices({v}); }

Multigraph Multigraph::without_vertices(std::vector<unsigned> vertices) const {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<int> map(n_, 0);
  unsigned next = 0;
  for (unsigned v = 0; v < n_; ++v) {
    map[v] = std::binary_search(vertices.begin(), vertices.end(), v) ? -1 : static_cast<int>(next++);
  }
  Multigraph g;
  g.n_ = next;
  for (const auto& e : edges_) {
    if (map[e.tail] < 0 || map[e.head] < 0) continue;
    g.edges_.push_back({static_cast<unsigned>(map[e.tail]), static_cast<unsigned>(map[e.head]), e.id});
  }
  return g;
}

Multigraph Multigraph::reversed(unsigned id) const {
  Multigraph g = *this;
  auto& e = g.edges_[*position(id)];
  std::swap(e.tail, e.head);
  return g;
}

Multigraph Multigraph::renumbered() const {
  Multigraph g = *this;
  for (size_t i = 0; i < g.edges_.size(); ++i) g.edges_[i].id = static_cast<unsigned>(i + 1);
  return g;
}

Multigraph Multigraph::with_extra_edge(unsigned tail, unsigned head, unsigned id) const {
  if (tail >= n_ || head >= n_) throw std::invalid_argument("vertex index out of range");
  if (has_edge(id)) throw std::invalid_argument("edge label already present");
  Multigraph g = *this;
  Edge e{tail, head, id};
  auto it = std::lower_bound(g.edges_.begin(), g.edges_.end(), id,
                             [](const Edge& x, unsigned k) { return x.id < k; });
  g.edges_.insert(it, e);
  return g;
}

std::string Multigraph::serialize() const {
  std::ostringstream os;
  os << "v " << n_ << '\n';
  for (const auto& e : edges_) os << "e " << e.tail << ' ' << e.head << '\n';
  return os.str();
}

std::string Multigraph::hash() const {
  // FNV-1a over the canonical text plus the labels.
  uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  feed(serialize());
  for (const auto& e : edges_) feed(std::to_string(e.id) + ",");
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

struct ParsedLine {
  char kind = 0;
  std::vector<long long> args;
};

std::optional<ParsedLine> parse_line(const std::string& raw, size_t lineno) {
  std::string line = raw;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  size_t first = line.find_first_not_of(" \t");
  if (first == std::string::npos || line[first] == '#') return std::nullopt;
  std::istringstream ls(line);
  std::string tok;
  ls >> tok;
  if (tok != "v" && tok != "e") {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed line");
  }
  ParsedLine p;
  p.kind = tok[0];
  while (ls >> tok) {
    try {
      size_t used = 0;
      long long x = std::stoll(tok, &used);
      if (used != tok.size() || x < 0) throw std::invalid_argument("bad");
      p.args.push_back(x);
    } catch (const std::exception&) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed line");
    }
  }
  size_t want = p.kind == 'v' ? 1 : 2;
  if (p.args.size() != want) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed line");
  }
  return p;
}

}  // namespace

std::vector<Multigraph> parse_graphs(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  size_t lineno = 0;
  std::vector<Multigraph> out;
  bool open = false;
  unsigned n = 0;
  std::vector<std::pair<unsigned, unsigned>> edges;
  auto flush = [&]() {
    if (open) out.emplace_back(n, edges);
    edges.clear();
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto p = parse_line(raw, lineno);
    if (!p) continue;
    if (p->kind == 'v') {
      flush();
      open = true;
      n = static_cast<unsigned>(p->args[0]);
      continue;
    }
    if (!open) throw std::invalid_argument("line " + std::to_string(lineno) + ": missing header");
    auto t = p->args[0], h = p->args[1];
    if (t >= n || h >= n) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": vertex index out of range");
    }
    edges.emplace_back(static_cast<unsigned>(t), static_cast<unsigned>(h));
  }
  flush();
  if (out.empty()) throw std::invalid_argument("missing header");
  return out;
}

Multigraph parse_graph(const std::string& text) {
  auto all = parse_graphs(text);
  if (all.size() != 1) throw std::invalid_argument("expected exactly one graph");
  return all.front();
}

void GraphSum::add(const Integer& c, const Multigraph& g) {
  if (c.is_zero()) return;
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    if (it->second == g) {
      it->first += c;
      if (it->first.is_zero()) terms.erase(it);
      return;
    }
  }
  terms.emplace_back(c, g);
}

GraphSum& GraphSum::operator+=(const GraphSum& o) {
  for (const auto& [c, g] : o.terms) add(c, g);
  return *this;
}

GraphSum& GraphSum::operator-=(const GraphSum& o) {
  for (const auto& [c, g] : o.terms) add(-c, g);
  return *this;
}

GraphSum minor(const Multigraph& g, const EdgeSet& del, const EdgeSet& con) {
  for (unsigned e : del) {
    if (con.count(e) != 0) throw std::invalid_argument("edge both deleted and contracted");
    if (!g.has_edge(e)) throw std::invalid_argument("unknown edge label " + std::to_string(e));
  }
  for (unsigned e : con) {
    if (!g.has_edge(e)) throw std::invalid_argument("unknown edge label " + std::to_string(e));
  }
  Multigraph h = g.deleted(del);
  for (unsigned e : con) {
    auto next = h.contracted(e);
    if (!next) return GraphSum();
    h = std::move(*next);
  }
  return GraphSum(std::move(h));
}

GraphSum minor(const GraphSum& g, const EdgeSet& del, const EdgeSet& con) {
  GraphSum out;
  for (const auto& [c, term] : g.terms) {
    for (const auto& [c2, m] : minor(term, del, con).terms) out.add(c * c2, m);
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<unsigned> parent;
  explicit DisjointSets(unsigned n) : parent(n) { std::iota(parent.begin(), parent.end(), 0U); }
  unsigned find(unsigned x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(unsigned a, unsigned b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

Betti betti(const Multigraph& g) {
  DisjointSets ds(g.vertex_count());
  unsigned merges = 0;
  for (const auto& e : g.edges()) merges += ds.unite(e.tail, e.head) ? 1 : 0;
  Betti b;
  b.h0 = g.vertex_count() - merges;
  b.h1 = g.edge_count() - merges;
  return b;
}

bool is_connected(const Multigraph& g) { return betti(g).h0 <= 1; }

Multigraph decompletion(const Multigraph& g, unsigned v) {
  if (v >= g.vertex_count()) throw std::invalid_argument("vertex index out of range");
  return g.without_vertex(v).renumbered();
}

Multigraph completion(const Multigraph& g) {
  std::vector<unsigned> three;
  for (unsigned v = 0; v < g.vertex_count(); ++v) {
    unsigned d = g.degree(v);
    if (d == 3) {
      three.push_back(v);
    } else if (d != 4) {
      throw std::invalid_argument("completion needs four 3-valent vertices and all others 4-valent");
    }
  }
  for (const auto& e : g.edges()) {
    if (e.is_loop()) throw std::invalid_argument("completion needs a graph without self-loops");
  }
  if (three.size() != 4) {
    throw std::invalid_argument("completion needs four 3-valent vertices and all others 4-valent");
  }
  std::vector<std::pair<unsigned, unsigned>> edges;
  for (const auto& e : g.edges()) edges.emplace_back(e.tail, e.head);
  unsigned inf = g.vertex_count();
  for (unsigned v : three) edges.emplace_back(v, inf);
  return Multigraph(inf + 1, edges);
}

unsigned triangles_on(const Multigraph& g, unsigned u, unsigned v) {
  auto nu = g.neighbors(u);
  auto nv = g.neighbors(v);
  std::vector<unsigned> common;
  std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
  unsigned k = 0;
  for (unsigned w : common) k += (w != u && w != v) ? 1 : 0;
  return k;
}

std::optional<Multigraph> double_triangle_step(const Multigraph& g) {
  for (unsigned a = 0; a < g.vertex_count(); ++a) {
    if (g.degree(a) != 4) continue;
    auto na = g.neighbors(a);
    if (na.size() != 4) continue;  // needs four distinct neighbours and no loops
    for (unsigned b : na) {
      auto nb = g.neighbors(b);
      std::vector<unsigned> common;
      std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
      if (common.size() != 2) continue;
      unsigned c = common[0], d = common[1];
      unsigned e = 0;
      for (unsigned x : na) {
        if (x != b && x != c && x != d) e = x;
      }
      if (std::binary_search(nb.begin(), nb.end(), e)) continue;
      std::vector<std::pair<unsigned, unsigned>> edges;
      for (const auto& ed : g.edges()) {
        if (ed.tail != a && ed.head != a) edges.emplace_back(ed.tail, ed.head);
      }
      edges.emplace_back(c, d);
      edges.emplace_back(b, e);
      auto shift = [a](unsigned x) { return x > a ? x - 1 : x; };
      for (auto& [t, h] : edges) {
        t = shift(t);
        h = shift(h);
      }
      return Multigraph(g.vertex_count() - 1, edges);
    }
  }
  return std::nullopt;
}

Multigraph double_triangle_reduce(const Multigraph& g) {
  Multigraph cur = g;
  while (auto next = double_triangle_step(cur)) cur = std::move(*next);
  return cur;
}

namespace {

// Max flow with unit capacities per parallel edge, stopping once it exceeds limit.
int bounded_flow(const std::vector<std::vector<int>>& cap0, const std::vector<unsigned>& sources,
                 const std::vector<unsigned>& sinks, int limit) {
  size_t n = cap0.size();
  // Extra super source n and super sink n+1.
  std::vector<std::vector<int>> cap(n + 2, std::vector<int>(n + 2, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) cap[i][j] = cap0[i][j];
  }
  const int big = 1 << 20;
  for (unsigned s : sources) cap[n][s] = big;
  for (unsigned t : sinks) cap[t][n + 1] = big;
  int flow = 0;
  std::vector<int> prev(n + 2);
  while (flow <= limit) {
    std::fill(prev.begin(), prev.end(), -1);
    std::vector<size_t> queue{n};
    prev[n] = static_cast<int>(n);
    for (size_t qi = 0; qi < queue.size() && prev[n + 1] < 0; ++qi) {
      size_t u = queue[qi];
      for (size_t v = 0; v < n + 2; ++v) {
        if (prev[v] < 0 && cap[u][v] > 0) {
          prev[v] = static_cast<int>(u);
          queue.push_back(v);
        }
      }
    }
    if (prev[n + 1] < 0) break;
    for (size_t v = n + 1; v != n; v = static_cast<size_t>(prev[v])) {
      size_t u = static_cast<size_t>(prev[v]);
      cap[u][v] -= 1;
      cap[v][u] += 1;
    }
    ++flow;
  }
  return flow;
}

}  // namespace

int min_nontrivial_edge_cut(const Multigraph& g, int stop_above) {
  unsigned n = g.vertex_count();
  if (n < 4) return -1;
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    cap[e.tail][e.head] += 1;
    cap[e.head][e.tail] += 1;
  }
  int best = -1;
  for (unsigned s = 1; s < n; ++s) {
    for (unsigned t = 1; t < n; ++t) {
      if (t == s) continue;
      for (unsigned t2 = t + 1; t2 < n; ++t2) {
        if (t2 == s) continue;
        int limit = best < 0 ? stop_above : std::min(best - 1, stop_above);
        int f = bounded_flow(cap, {0, s}, {t, t2}, limit);
        if (best < 0 || f < best) best = f;
      }
    }
  }
  return best;
}

unsigned vertex_connectivity(const Multigraph& g) {
  unsigned n = g.vertex_count();
  if (n <= 1) return 0;
  // Smallest k such that removing some k vertices disconnects the rest.
  for (unsigned k = 0; k + 2 <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::vector<unsigned> removed;
      for (unsigned v = 0; v < n; ++v) {
        if (pick[v]) removed.push_back(v);
      }
      if (!is_connected(g.without_vertices(removed))) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return n - 1;
}

PrimeAncestorReport is_prime_ancestor(const Multigraph& g) {
  PrimeAncestorReport r;
  unsigned n = g.vertex_count();
  if (n < 5) r.failed.emplace_back("fewer than five vertices");
  bool regular = true;
  for (unsigned v = 0; v < n; ++v) regular = regular && g.degree(v) == 4;
  for (const auto& e : g.edges()) regular = regular && !e.is_loop();
  if (!regular) r.failed.emplace_back("not 4-regular");
  if (!is_connected(g)) {
    r.failed.emplace_back("not connected");
  } else {
    int cut = min_nontrivial_edge_cut(g, 6);
    if (cut >= 0 && cut <= 5) r.failed.emplace_back("not internally 6-connected");
    if (vertex_connectivity(g) < 4) r.failed.emplace_back("vertex connectivity below 4");
  }
  for (const auto& e : g.edges()) {
    if (!e.is_loop() && triangles_on(g, e.tail, e.head) == 2) {
      r.failed.emplace_back("edge in exactly two triangles");
      break;
    }
  }
  r.prime = r.failed.empty();
  return r;
}

std::vector<unsigned> Fig1Case::plotted_vertices() const {
  std::vector<unsigned> v{x, y};
  if (w) v.push_back(*w);
  if (z) v.push_back(*z);
  return v;
}

std::vector<unsigned> Fig1Case::plotted_edges() const {
  std::vector<unsigned> out;
  for (unsigned id : {e1, e2, e3, a, b, c, e4, e5, d, e}) {
    if (id != 0) out.push_back(id);
  }
  return out;
}

std::vector<unsigned> Fig1Case::order() const {
  std::vector<unsigned> out{e2, b, e3, c, e1, a};
  if (e4 != 0) {
    out.push_back(e4);
    out.push_back(e5);
  }
  if (d != 0) {
    out.push_back(d);
    out.push_back(e);
  }
  return out;
}

unsigned Fig1Case::steps() const { return static_cast<unsigned>(order().size()); }

std::string Fig1Case::name() const {
  switch (kind) {
    case Fig1Kind::generic:
      return "generic";
    case Fig1Kind::triangle:
      return "triangle";
    case Fig1Kind::hourglass:
      return "hourglass";
  }
  return "generic";
}

std::vector<unsigned> Fig2Case::solid_edges() const { return {e1, e2, e3, A, B, C, a, b, c, e4}; }

std::vector<unsigned> Fig2Case::order() const { return {e2, b, e3, c, e1, a, A, B, C, e4}; }

namespace {

// 3-valent, loop-free, three distinct neighbours.
bool simple_three(const Multigraph& g, unsigned v) {
  return g.degree(v) == 3 && g.neighbors(v).size() == 3;
}

unsigned edge_to(const Multigraph& g, unsigned u, unsigned v) {
  for (const auto& e : g.edges()) {
    if ((e.tail == u && e.head == v) || (e.tail == v && e.head == u)) return e.id;
  }
  return 0;
}

unsigned other_end(const Multigraph& g, unsigned id, unsigned v) {
  const Edge& e = g.edge(id);
  return e.tail == v ? e.head : e.tail;
}

bool adjacent_any(const Multigraph& g, unsigned v, const std::vector<unsigned>& set) {
  auto nv = g.neighbors(v);
  for (unsigned s : set) {
    if (std::binary_search(nv.begin(), nv.end(), s)) return true;
  }
  return false;
}

// The two edges at v other than the one towards u, sorted.
std::pair<unsigned, unsigned> remaining_pair(const Multigraph& g, unsigned v, unsigned skip) {
  std::vector<unsigned> rest;
  for (unsigned id : g.incident(v)) {
    if (id != skip) rest.push_back(id);
  }
  return {rest[0], rest[1]};
}

}  // namespace

StructureReport find_structures(const Multigraph& g) {
  StructureReport rep;
  unsigned n = g.vertex_count();
  std::vector<unsigned> threes;
  for (unsigned v = 0; v < n; ++v) {
    if (g.degree(v) == 3) rep.three_valent.push_back({v, g.incident(v)});
    if (simple_three(g, v)) threes.push_back(v);
  }

  auto abc_for = [&](Fig1Case& fc) {
    auto plotted = fc.plotted_vertices();
    for (unsigned u : threes) {
      if (std::find(plotted.begin(), plotted.end(), u) != plotted.end()) continue;
      if (adjacent_any(g, u, plotted)) continue;
      fc.abc_vertices.push_back(u);
    }
  };

  // Adjacent 3-valent pairs joined by a single edge.
  std::vector<std::pair<unsigned, unsigned>> legs;
  for (unsigned x : threes) {
    for (unsigned w : threes) {
      if (x != w && g.edges_between(x, w) == 1) legs.emplace_back(x, w);
    }
  }

  // (1) generic pairs.
  for (size_t i = 0; i < threes.size(); ++i) {
    for (size_t j = i + 1; j < threes.size(); ++j) {
      unsigned x = threes[i], y = threes[j];
      if (g.edges_between(x, y) != 0) continue;
      Fig1Case fc;
      fc.kind = Fig1Kind::generic;
      fc.x = x;
      fc.y = y;
      auto ix = g.incident(x), iy = g.incident(y);
      fc.e1 = ix[0], fc.e2 = ix[1], fc.e3 = ix[2];
      fc.a = iy[0], fc.b = iy[1], fc.c = iy[2];
      abc_for(fc);
      rep.fig1_cases.push_back(fc);
    }
  }
  // (2) triangle: x-w leg plus a separate y.
  for (auto [x, w] : legs) {
    for (unsigned y : threes) {
      if (y == x || y == w) continue;
      if (g.edges_between(x, y) != 0 || g.edges_between(w, y) != 0) continue;
      Fig1Case fc;
      fc.kind = Fig1Kind::triangle;
      fc.x = x;
      fc.w = w;
      fc.y = y;
      fc.e1 = edge_to(g, x, w);
      std::tie(fc.e2, fc.e3) = remaining_pair(g, x, fc.e1);
      std::tie(fc.e4, fc.e5) = remaining_pair(g, w, fc.e1);
      auto iy = g.incident(y);
      fc.a = iy[0], fc.b = iy[1], fc.c = iy[2];
      abc_for(fc);
      rep.fig1_cases.push_back(fc);
    }
  }
  // (3) hourglass: two disjoint legs x-w and y-z.
  for (auto [x, w] : legs) {
    for (auto [y, z] : legs) {
      std::vector<unsigned> four{x, w, y, z};
      std::sort(four.begin(), four.end());
      if (std::unique(four.begin(), four.end()) != four.end()) continue;
      if (g.edges_between(x, y) + g.edges_between(x, z) + g.edges_between(w, y) + g.edges_between(w, z) != 0) {
        continue;
      }
      if (std::make_pair(x, w) > std::make_pair(y, z)) continue;  // x-w carries 1; avoid mirrored duplicates
      Fig1Case fc;
      fc.kind = Fig1Kind::hourglass;
      fc.x = x;
      fc.w = w;
      fc.y = y;
      fc.z = z;
      fc.e1 = edge_to(g, x, w);
      std::tie(fc.e2, fc.e3) = remaining_pair(g, x, fc.e1);
      std::tie(fc.e4, fc.e5) = remaining_pair(g, w, fc.e1);
      fc.a = edge_to(g, y, z);
      std::tie(fc.b, fc.c) = remaining_pair(g, y, fc.a);
      std::tie(fc.d, fc.e) = remaining_pair(g, z, fc.a);
      abc_for(fc);
      rep.fig1_cases.push_back(fc);
    }
  }

  // Figure 2: x and abc share their three neighbours.
  for (unsigned x : threes) {
    auto nx = g.neighbors(x);
    for (unsigned abc : threes) {
      if (abc == x || g.neighbors(abc) != nx) continue;
      for (unsigned y : threes) {
        if (y == x || y == abc) continue;
        if (g.edges_between(y, x) != 0 || g.edges_between(y, abc) != 0) continue;
        for (unsigned q2 : nx) {
          if (g.edges_between(y, q2) != 1 || g.degree(q2) != 4) continue;
          if (g.edges_between(q2, x) != 1 || g.edges_between(q2, abc) != 1) continue;
          unsigned a = edge_to(g, y, q2);
          unsigned e3 = edge_to(g, x, q2);
          unsigned A = edge_to(g, abc, q2);
          unsigned e4 = 0;
          for (unsigned id : g.incident(q2)) {
            if (id != a && id != e3 && id != A) e4 = id;
          }
          if (g.edge(e4).is_loop()) continue;
          unsigned far = other_end(g, e4, q2);
          if (far == x || far == y || far == abc) continue;
          std::vector<unsigned> rest;
          for (unsigned q : nx) {
            if (q != q2) rest.push_back(q);
          }
          auto [b0, c0] = remaining_pair(g, y, a);
          unsigned bend = other_end(g, b0, y), cend = other_end(g, c0, y);
          auto in_rest = [&](unsigned v) { return v == rest[0] || v == rest[1]; };
          Fig2Case fc;
          fc.x = x;
          fc.y = y;
          fc.abc = abc;
          fc.q2 = q2;
          if (!in_rest(bend) && !in_rest(cend)) {
            fc.variant = Fig2Variant::eight;
            fc.q3 = rest[0];
            fc.q4 = rest[1];
            fc.b = b0;
            fc.c = c0;
          } else if (in_rest(bend) != in_rest(cend)) {
            fc.variant = Fig2Variant::twelve;
            unsigned hit = in_rest(bend) ? bend : cend;
            fc.q3 = hit;
            fc.q4 = hit == rest[0] ? rest[1] : rest[0];
            fc.c = in_rest(bend) ? b0 : c0;
            fc.b = in_rest(bend) ? c0 : b0;
          } else {
            continue;
          }
          fc.a = a;
          fc.e3 = e3;
          fc.A = A;
          fc.e4 = e4;
          fc.e1 = edge_to(g, x, fc.q4);
          fc.e2 = edge_to(g, x, fc.q3);
          fc.B = edge_to(g, abc, fc.q3);
          fc.C = edge_to(g, abc, fc.q4);
          rep.fig2_squares.push_back(fc);
        }
      }
    }
  }
  return rep;
}

}  // namespace c2lab
