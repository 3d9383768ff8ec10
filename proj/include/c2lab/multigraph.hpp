#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "c2lab/integer.hpp"

namespace c2lab {

struct Edge {
  unsigned tail = 0;
  unsigned head = 0;
  unsigned id = 0;  // persistent label; variable alpha_id
  bool is_loop() const { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

using EdgeSet = std::set<unsigned>;

// Oriented multigraph with a fixed edge order. Freshly built graphs label
// edges 1..E by position; minors keep the surviving labels, so labels stay
// increasing along the edge sequence.
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(unsigned vertices, const std::vector<std::pair<unsigned, unsigned>>& edges);
  static Multigraph with_edges(unsigned vertices, std::vector<Edge> edges);

  unsigned vertex_count() const { return n_; }
  unsigned edge_count() const { return static_cast<unsigned>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<unsigned> edge_ids() const;
  bool has_edge(unsigned id) const { return position(id).has_value(); }
  std::optional<size_t> position(unsigned id) const;
  const Edge& edge(unsigned id) const;
  unsigned max_id() const { return edges_.empty() ? 0 : edges_.back().id; }

  // Loops count twice.
  unsigned degree(unsigned v) const;
  std::vector<unsigned> incident(unsigned v) const;
  std::vector<unsigned> neighbors(unsigned v) const;  // distinct, sorted, excluding v
  unsigned edges_between(unsigned u, unsigned v) const;

  Multigraph deleted(const EdgeSet& ids) const;
  // Contracting a self-loop gives the zero graph.
  std::optional<Multigraph> contracted(unsigned id) const;
  Multigraph without_vertex(unsigned v) const;
  Multigraph without_vertices(std::vector<unsigned> vertices) const;
  Multigraph reversed(unsigned id) const;
  Multigraph renumbered() const;
  Multigraph with_extra_edge(unsigned tail, unsigned head, unsigned id) const;

  std::string serialize() const;
  std::string hash() const;

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  unsigned n_ = 0;
  std::vector<Edge> edges_;
};

Multigraph parse_graph(const std::string& text);
// A file may hold several graphs, each starting at its own "v" line.
std::vector<Multigraph> parse_graphs(const std::string& text);

// Formal Z-linear combination of graphs.
struct GraphSum {
  std::vector<std::pair<Integer, Multigraph>> terms;

  GraphSum() = default;
  explicit GraphSum(Multigraph g) { terms.emplace_back(Integer(1), std::move(g)); }
  bool is_zero() const { return terms.empty(); }
  void add(const Integer& c, const Multigraph& g);
  GraphSum& operator+=(const GraphSum& o);
  GraphSum& operator-=(const GraphSum& o);
  friend GraphSum operator+(GraphSum a, const GraphSum& b) { return a += b; }
  friend GraphSum operator-(GraphSum a, const GraphSum& b) { return a -= b; }
};

GraphSum minor(const Multigraph& g, const EdgeSet& del, const EdgeSet& con);
GraphSum minor(const GraphSum& g, const EdgeSet& del, const EdgeSet& con);

struct Betti {
  unsigned h0 = 0;
  unsigned h1 = 0;
  friend bool operator==(const Betti&, const Betti&) = default;
};
Betti betti(const Multigraph& g);
bool is_connected(const Multigraph& g);

Multigraph decompletion(const Multigraph& g, unsigned v);
Multigraph completion(const Multigraph& g);

// One reduction at the lexicographically smallest (a, b), if any applies.
std::optional<Multigraph> double_triangle_step(const Multigraph& g);
Multigraph double_triangle_reduce(const Multigraph& g);

struct PrimeAncestorReport {
  bool prime = false;
  std::vector<std::string> failed;
};
PrimeAncestorReport is_prime_ancestor(const Multigraph& g);
// Smallest edge cut with at least two vertices on each side, or -1 if none exists.
int min_nontrivial_edge_cut(const Multigraph& g, int stop_above = 1 << 20);
unsigned vertex_connectivity(const Multigraph& g);
// Number of triangles (distinct third vertices) on the vertex pair u, v.
unsigned triangles_on(const Multigraph& g, unsigned u, unsigned v);

struct ThreeValent {
  unsigned vertex = 0;
  std::vector<unsigned> edges;
};

enum class Fig1Kind { generic = 1, triangle = 2, hourglass = 3 };

// Edge labels are 0 where absent. Vertices: x carries 1,2,3; y carries a,b,c;
// w carries 1,4,5 (triangle, hourglass); z carries a,d,e (hourglass).
struct Fig1Case {
  Fig1Kind kind = Fig1Kind::generic;
  unsigned x = 0, y = 0;
  std::optional<unsigned> w, z;
  unsigned e1 = 0, e2 = 0, e3 = 0, a = 0, b = 0, c = 0;
  unsigned e4 = 0, e5 = 0, d = 0, e = 0;
  std::vector<unsigned> abc_vertices;  // usable oriented 3-valent vertices in G0
  std::vector<unsigned> plotted_vertices() const;
  std::vector<unsigned> plotted_edges() const;
  std::vector<unsigned> order() const;  // elimination order 2,b,3,c,1,a,4,5,d,e
  unsigned steps() const;
  std::string name() const;
};

enum class Fig2Variant { eight, twelve };

struct Fig2Case {
  Fig2Variant variant = Fig2Variant::eight;
  unsigned x = 0, y = 0, abc = 0, q2 = 0, q3 = 0, q4 = 0;
  unsigned e1 = 0, e2 = 0, e3 = 0, A = 0, B = 0, C = 0, a = 0, b = 0, c = 0, e4 = 0;
  std::vector<unsigned> solid_edges() const;
  std::vector<unsigned> order() const;  // 2,b,3,c,1,a,A,B,C,4
};

struct StructureReport {
  std::vector<ThreeValent> three_valent;
  std::vector<Fig1Case> fig1_cases;
  std::vector<Fig2Case> fig2_squares;
};

StructureReport find_structures(const Multigraph& g);

}  // namespace c2lab
