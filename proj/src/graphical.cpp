// Initial reductions from three-valent substructures of decompleted graphs.
#include <algorithm>
#include <stdexcept>

#include "c2lab/denred.hpp"
#include "c2lab/polyalg.hpp"

namespace c2lab {

namespace {

ReductionState make_state(const Multigraph& g, const std::vector<unsigned>& order, Poly inv, std::string origin,
                          bool standard) {
  ReductionState s;
  s.edge_count = g.edge_count();
  s.graph_hash = g.hash();
  s.origin = std::move(origin);
  s.n = static_cast<unsigned>(order.size());
  s.used = order;
  for (unsigned id : g.edge_ids()) {
    if (std::find(order.begin(), order.end(), id) == order.end()) s.remaining.push_back(id);
  }
  s.invariant = std::move(inv);
  for (size_t i = 3; i < order.size(); ++i) {
    s.history.push_back({order[i], StepCase::graphical, 0, s.invariant.total_degree(), s.invariant.size()});
  }
  s.root = s.invariant.is_zero() ? std::optional<Poly>(Poly()) : sqrt_poly(s.invariant);
  if (s.invariant.is_zero()) {
    s.status = Status::weight_drop;
  } else if (s.remaining.empty()) {
    s.status = Status::exhausted;
  }
  s.standard_chain = standard && s.root.has_value();
  if (s.standard_chain && !s.remaining.empty() && !s.invariant.is_zero()) {
    s.last_standard = StandardSnapshot{s.n, *s.root, s.remaining};
  }
  return s;
}

void require_edges(const Multigraph& g, const std::vector<unsigned>& ids) {
  for (unsigned id : ids) {
    if (id == 0 || !g.has_edge(id)) throw std::invalid_argument("structure mismatch: missing edge");
  }
}

void require_three(const Multigraph& g, unsigned v, std::vector<unsigned> edges) {
  std::sort(edges.begin(), edges.end());
  if (v >= g.vertex_count() || g.degree(v) != 3 || g.incident(v) != edges) {
    throw std::invalid_argument("structure mismatch at vertex " + std::to_string(v));
  }
}

GraphSum fig1_H(const Multigraph& g, const Fig1Case& c) {
  switch (c.kind) {
    case Fig1Kind::generic:
      return minor(g, {}, {c.e1, c.a});
    case Fig1Kind::triangle:
      return minor(g, {c.e4}, {c.e1, c.e5, c.a}) - minor(g, {c.e5}, {c.e1, c.e4, c.a});
    case Fig1Kind::hourglass:
      return minor(g, {c.e4, c.d}, {c.e1, c.e5, c.a, c.e}) - minor(g, {c.e5, c.d}, {c.e1, c.e4, c.a, c.e}) -
             minor(g, {c.e4, c.e}, {c.e1, c.e5, c.a, c.d}) + minor(g, {c.e5, c.e}, {c.e1, c.e4, c.a, c.d});
  }
  return {};
}

unsigned shifted(unsigned v, const std::vector<unsigned>& removed) {
  unsigned below = 0;
  for (unsigned r : removed) below += r < v ? 1 : 0;
  return v - below;
}

}  // namespace

ReductionState graphical_init(const Multigraph& g, const Fig1Case& c, std::optional<unsigned> abc) {
  require_edges(g, c.plotted_edges());
  require_three(g, c.x, {c.e1, c.e2, c.e3});
  if (c.kind == Fig1Kind::hourglass) {
    require_three(g, c.y, {c.a, c.b, c.c});
    require_three(g, *c.z, {c.a, c.d, c.e});
  } else {
    require_three(g, c.y, {c.a, c.b, c.c});
  }
  if (c.kind != Fig1Kind::generic) require_three(g, *c.w, {c.e1, c.e4, c.e5});

  auto plotted = c.plotted_vertices();
  Multigraph g0 = g.without_vertices(plotted);
  GraphSum H = fig1_H(g, c);
  auto order = c.order();

  Poly base = dodgson(g0) * dodgson(H, {c.e2, c.e3}, {c.b, c.c});
  if (!abc) return make_state(g, order, base * base, "fig1 " + c.name(), true);

  if (std::find(c.abc_vertices.begin(), c.abc_vertices.end(), *abc) == c.abc_vertices.end()) {
    throw std::invalid_argument("structure mismatch: vertex is not a usable ABC vertex");
  }
  auto inc = g.incident(*abc);
  unsigned A = inc[0], B = inc[1], C = inc[2];
  auto f = three_valent_data(g0, shifted(*abc, plotted), A, B, C);
  Poly g0v = dodgson(H, {c.e2, c.e3, A, B}, {c.b, c.c, A, B}, {C});
  Poly gA = dodgson(H, {c.e2, c.e3, A}, {c.b, c.c, A}, {B, C});
  Poly gB = dodgson(H, {c.e2, c.e3, B}, {c.b, c.c, B}, {A, C});
  Poly gC = dodgson(H, {c.e2, c.e3, C}, {c.b, c.c, C}, {A, B});
  Poly inner = f.f0 * kallen(gA, gB, gC) - g0v * (f.f1 * gA + f.f2 * gB + f.f3 * gC + f.f123 * g0v) * Poly(4);
  auto base_order = order;
  order.insert(order.end(), {A, B, C});
  // The quadratic steps in A, B, C need not be standard ones; keep the
  // standard invariant reached before them.
  auto s = make_state(g, order, f.f0 * inner, "fig1 " + c.name() + " abc", false);
  if (!base.is_zero()) {
    std::vector<unsigned> vars = s.remaining;
    vars.insert(vars.end(), {A, B, C});
    std::sort(vars.begin(), vars.end());
    s.last_standard = StandardSnapshot{static_cast<unsigned>(base_order.size()), base, vars};
  }
  return s;
}

ReductionState graphical_init(const Multigraph& g, const Fig2Case& c) {
  require_edges(g, c.solid_edges());
  require_three(g, c.x, {c.e1, c.e2, c.e3});
  require_three(g, c.y, {c.a, c.b, c.c});
  require_three(g, c.abc, {c.A, c.B, c.C});

  Multigraph g0 = g.without_vertices({c.x, c.y});
  GraphSum h0 = minor(g.without_vertex(c.abc), {}, {c.e1, c.a});
  EdgeWord I{c.e2, c.e3}, J{c.b, c.c};
  Poly h0_del = dodgson(minor(h0, {c.e4}, {}), I, J);
  Poly h0_con = dodgson(minor(h0, {}, {c.e4}), I, J);
  Poly lead = dodgson(minor(g0, {c.A, c.B}, {c.e4, c.C})) * h0_del;
  Poly bracket = dodgson(minor(g0, {c.e4}, {c.A, c.B, c.C})) * h0_con - dodgson(minor(g0, {}, {c.e4, c.A, c.B, c.C})) * h0_del;
  return make_state(g, c.order(), lead * bracket * Poly(4),
                    c.variant == Fig2Variant::eight ? "fig2 eight" : "fig2 twelve", false);
}

}  // namespace c2lab
