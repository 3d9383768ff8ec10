#include "c2lab/denred.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "c2lab/polyalg.hpp"

namespace c2lab {

std::string to_string(Status s) {
  switch (s) {
    case Status::active:
      return "active";
    case Status::terminated:
      return "terminated";
    case Status::weight_drop:
      return "weight_drop";
    case Status::exhausted:
      return "exhausted";
  }
  return "active";
}

std::string to_string(StepCase c) {
  switch (c) {
    case StepCase::square_quartic:
      return "square-quartic";
    case StepCase::square_linear_factor:
      return "square-linear-factor";
    case StepCase::both:
      return "both";
    case StepCase::graphical:
      return "graphical";
  }
  return "graphical";
}

namespace {

Poly primitive_in(const Poly& p, unsigned v) {
  if (p.is_zero()) return p;
  WidePoly w = p.convert<WidePoly>();
  WidePoly c = content_in(w, v);
  return exact_div(w, c).primitive().convert<Poly>();
}

// Factors of g linear in v that may divide p twice. g is the gcd of p and
// its v-derivative, so every factor of g has multiplicity >= 2 in p.
std::vector<Poly> linear_candidates(const Poly& g, unsigned v) {
  Poly h = primitive_in(g, v);
  while (h.degree_in(v) >= 2) {
    if (h.degree_in(v) == 2) {
      if (auto r = sqrt_poly(h); r && r->degree_in(v) == 1) return {primitive_in(*r, v)};
      Poly A = h.coeff(v, 2), B = h.coeff(v, 1), C = h.coeff(v, 0);
      auto s = sqrt_poly(B * B - A * C * Poly(4));
      if (!s) return {};
      Poly x = Poly::var(v);
      Poly twoA = A * Poly(2);
      return {primitive_in(twoA * x + B - *s, v), primitive_in(twoA * x + B + *s, v)};
    }
    Poly next = primitive_in(sq_gcd(h, v), v);
    if (next.degree_in(v) < 1) return {};
    h = next;
  }
  if (h.degree_in(v) == 1) return {h};
  return {};
}

void finish(ReductionState& s, unsigned v, StepCase kind, int dv, Poly result) {
  bool chain = s.standard_chain && s.root.has_value();
  s.invariant = std::move(result);
  s.n += 1;
  s.used.push_back(v);
  s.remaining.erase(std::find(s.remaining.begin(), s.remaining.end(), v));
  s.root = s.invariant.is_zero() ? std::optional<Poly>(Poly()) : sqrt_poly(s.invariant);
  if (kind == StepCase::square_quartic && s.root) kind = StepCase::both;
  s.standard_chain = chain && s.root.has_value();
  s.history.push_back({v, kind, dv, s.invariant.total_degree(), s.invariant.size()});
  if (s.invariant.is_zero()) {
    s.status = Status::weight_drop;
  } else if (s.remaining.empty()) {
    s.status = Status::exhausted;
  }
  if (s.standard_chain && !s.remaining.empty() && !s.invariant.is_zero()) {
    s.last_standard = StandardSnapshot{s.n, *s.root, s.remaining};
  }
}

void check_edges(const Multigraph& g, const std::vector<unsigned>& ids) {
  for (unsigned id : ids) {
    if (!g.has_edge(id)) throw std::invalid_argument("unknown edge label " + std::to_string(id));
  }
  if (word_sign(ids) == 0) throw std::invalid_argument("repeated edge label");
}

}  // namespace

ReductionState init3(const Multigraph& g, unsigned e1, unsigned e2, unsigned e3) {
  if (g.edge_count() < 3) throw std::invalid_argument("need at least three edges");
  check_edges(g, {e1, e2, e3});
  ReductionState s;
  s.edge_count = g.edge_count();
  s.graph_hash = g.hash();
  s.origin = "init3";
  s.n = 3;
  s.used = {e1, e2, e3};
  for (unsigned id : g.edge_ids()) {
    if (id != e1 && id != e2 && id != e3) s.remaining.push_back(id);
  }
  Poly root = dodgson(g, {e1, e3}, {e2, e3}) * dodgson(g, {e1}, {e2}, {e3});
  if (!root.is_zero() && root.leading().c.sign() < 0) root = -root;
  s.invariant = root * root;
  s.root = root;
  if (root.is_zero()) {
    s.status = Status::weight_drop;
  } else if (s.remaining.empty()) {
    s.status = Status::exhausted;
  } else {
    s.last_standard = StandardSnapshot{3, root, s.remaining};
  }
  return s;
}

ReductionState qdr_step(const ReductionState& s, unsigned v) {
  if (s.status != Status::active) throw std::logic_error("reduction state is not active");
  if (!std::binary_search(s.remaining.begin(), s.remaining.end(), v)) {
    throw std::invalid_argument("variable " + std::to_string(v) + " is not remaining");
  }
  ReductionState out = s;
  const Poly& p = s.invariant;
  int d = p.degree_in(v);

  if (d <= 2) {
    // D = 0 reading of the linear-factor case: the result is the v^2 coefficient.
    bool square = s.root.has_value();
    finish(out, v, square ? StepCase::both : StepCase::square_linear_factor, d, p.coeff(v, 2));
    return out;
  }

  if (s.root) {
    const Poly& r = *s.root;
    if (r.degree_in(v) <= 2) {
      Poly A = r.coeff(v, 2), B = r.coeff(v, 1), C = r.coeff(v, 0);
      finish(out, v, StepCase::square_quartic, d, B * B - A * C * Poly(4));
      return out;
    }
  }

  if (maybe_repeated_factor(p, v)) {
    Poly g = sq_gcd(p, v);
    if (g.degree_in(v) >= 1) {
      for (const Poly& L : linear_candidates(g, v)) {
        auto Q = try_exact_div(p, L * L);
        if (!Q || Q->degree_in(v) > 2) continue;
        Poly A = Q->coeff(v, 2), B = Q->coeff(v, 1), C = Q->coeff(v, 0);
        Poly D = L.coeff(v, 1), E = L.coeff(v, 0);
        finish(out, v, StepCase::square_linear_factor, d, A * E * E - B * D * E + C * D * D);
        return out;
      }
    }
  }
  out.status = Status::terminated;
  return out;
}

Strategy parse_strategy(const std::string& text) {
  Strategy st;
  if (text == "greedy") return st;
  if (text == "file-order") {
    st.kind = Strategy::Kind::file_order;
    return st;
  }
  // Comma separated edge labels.
  st.kind = Strategy::Kind::user;
  st.graphical = false;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    auto a = tok.find_first_not_of(' '), b = tok.find_last_not_of(' ');
    std::string t = a == std::string::npos ? "" : tok.substr(a, b - a + 1);
    bool digits = !t.empty() && t.size() <= 9 && std::all_of(t.begin(), t.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    if (!digits || std::stoul(t) == 0) {
      throw std::invalid_argument("bad strategy '" + text + "' (greedy, file-order or a comma separated edge order)");
    }
    st.order.push_back(static_cast<unsigned>(std::stoul(t)));
  }
  if (st.order.size() < 3) throw std::invalid_argument("an edge order needs at least three edges");
  return st;
}

std::string to_string(const Strategy& s) {
  switch (s.kind) {
    case Strategy::Kind::greedy:
      return "greedy";
    case Strategy::Kind::file_order:
      return "file-order";
    case Strategy::Kind::user: {
      std::string out;
      for (unsigned id : s.order) out += (out.empty() ? "" : ",") + std::to_string(id);
      return out;
    }
  }
  return "greedy";
}

namespace {

ReductionState initial_state(const Multigraph& g, const Strategy& st) {
  if (st.kind == Strategy::Kind::user) {
    check_edges(g, st.order);
    return init3(g, st.order[0], st.order[1], st.order[2]);
  }
  auto rep = find_structures(g);
  if (st.graphical) {
    int best = 0;
    const Fig1Case* f1 = nullptr;
    const Fig2Case* f2 = nullptr;
    for (const auto& c : rep.fig1_cases) {
      int n = static_cast<int>(c.steps()) + (c.abc_vertices.empty() ? 0 : 3);
      if (n > best) best = n, f1 = &c, f2 = nullptr;
    }
    for (const auto& c : rep.fig2_squares) {
      if (10 > best) best = 10, f2 = &c, f1 = nullptr;
    }
    if (f2 != nullptr) return graphical_init(g, *f2);
    if (f1 != nullptr) {
      if (f1->abc_vertices.empty()) return graphical_init(g, *f1);
      return graphical_init(g, *f1, f1->abc_vertices.front());
    }
  }
  for (const auto& t : rep.three_valent) {
    if (t.edges.size() == 3 && g.neighbors(t.vertex).size() == 3) {
      return init3(g, t.edges[0], t.edges[1], t.edges[2]);
    }
  }
  auto ids = g.edge_ids();
  return init3(g, ids[0], ids[1], ids[2]);
}

}  // namespace

ReductionState continue_run(ReductionState s, const Strategy& st) {
  if (s.status == Status::active && s.remaining.empty()) s.status = Status::exhausted;
  while (s.status == Status::active) {
    if (st.kind == Strategy::Kind::user) {
      auto next = std::find_if(st.order.begin(), st.order.end(), [&](unsigned id) {
        return std::find(s.used.begin(), s.used.end(), id) == s.used.end();
      });
      if (next == st.order.end()) break;  // order consumed; state stays active
      s = qdr_step(s, *next);
      continue;
    }
    if (st.kind == Strategy::Kind::file_order) {
      bool moved = false;
      for (unsigned v : s.remaining) {
        auto t = qdr_step(s, v);
        if (t.status != Status::terminated) {
          s = std::move(t);
          moved = true;
          break;
        }
      }
      if (!moved) s.status = Status::terminated;
      continue;
    }
    // Greedy one-step lookahead: weight drop wins, then fewest terms.
    std::optional<ReductionState> best;
    for (unsigned v : s.remaining) {
      auto t = qdr_step(s, v);
      if (t.status == Status::terminated) continue;
      if (t.status == Status::weight_drop) {
        best = std::move(t);
        break;
      }
      if (!best || t.invariant.size() < best->invariant.size()) best = std::move(t);
    }
    if (best) {
      s = std::move(*best);
    } else {
      s.status = Status::terminated;
    }
  }
  return s;
}

ReductionState run(const Multigraph& g, const Strategy& st) {
  if (g.edge_count() < 3) throw std::invalid_argument("need at least three edges");
  if (2 * betti(g).h1 > g.edge_count()) throw std::invalid_argument("2 h1 exceeds the edge count");
  return continue_run(initial_state(g, st), st);
}

Poly kallen(const Poly& a, const Poly& b, const Poly& c) {
  Poly t = a - b - c;
  return t * t - b * c * Poly(4);
}

std::string dump(const ReductionState& s) {
  std::ostringstream os;
  os << "# graph " << s.graph_hash << "\n";
  os << "# n " << s.n << "\n";
  os << "# used";
  for (unsigned id : s.used) os << ' ' << id;
  os << "\n# remaining";
  for (unsigned id : s.remaining) os << ' ' << id;
  os << "\n# status " << to_string(s.status) << "\n";
  os << "# origin " << s.origin << "\n";
  os << s.invariant.serialize();
  return os.str();
}

}  // namespace c2lab
