#pragma once

#include <optional>
#include <string>
#include <vector>

#include "c2lab/dodgson.hpp"
#include "c2lab/multigraph.hpp"
#include "c2lab/poly.hpp"

namespace c2lab {

enum class Status { active, terminated, weight_drop, exhausted };
enum class StepCase { square_quartic, square_linear_factor, both, graphical };

std::string to_string(Status s);
std::string to_string(StepCase c);

struct StepRecord {
  unsigned variable = 0;
  StepCase kind = StepCase::square_quartic;
  int degree_in_variable = 0;  // before the step
  int total_degree = 0;        // after the step
  size_t terms = 0;            // after the step
};

// Root of the invariant at the last stage where it was a perfect square and
// at least one variable was left. Needed for counting at p = 2.
struct StandardSnapshot {
  unsigned n = 0;
  Poly root;
  std::vector<unsigned> variables;
};

struct ReductionState {
  Poly invariant;  // the quadratic n-invariant
  unsigned n = 0;
  std::vector<unsigned> used;
  std::vector<unsigned> remaining;  // sorted
  std::vector<StepRecord> history;
  Status status = Status::active;
  unsigned edge_count = 0;
  std::string graph_hash;
  std::string origin;
  std::optional<Poly> root;  // square root of the invariant, if any
  // True while every step so far was also a standard reduction, so that root
  // is the standard n-invariant (up to sign).
  bool standard_chain = true;
  std::optional<StandardSnapshot> last_standard;

  bool is_perfect_square() const { return root.has_value(); }
};

ReductionState init3(const Multigraph& g, unsigned e1, unsigned e2, unsigned e3);

// Never throws on a failed reduction; the returned state carries the status.
ReductionState qdr_step(const ReductionState& s, unsigned v);

struct Strategy {
  enum class Kind { greedy, file_order, user } kind = Kind::greedy;
  std::vector<unsigned> order;  // user order, starting with the three initial edges
  bool graphical = true;
};

Strategy parse_strategy(const std::string& text);
std::string to_string(const Strategy& s);

ReductionState run(const Multigraph& g, const Strategy& strategy = {});

// Continue an existing state with the given strategy.
ReductionState continue_run(ReductionState s, const Strategy& strategy);

// Initial reductions from a three-valent substructure. abc picks an entry of
// c.abc_vertices (or none for the n = 6/8/10 state).
ReductionState graphical_init(const Multigraph& g, const Fig1Case& c, std::optional<unsigned> abc = std::nullopt);
ReductionState graphical_init(const Multigraph& g, const Fig2Case& c);

Poly kallen(const Poly& a, const Poly& b, const Poly& c);

// Header lines plus the serialized invariant.
std::string dump(const ReductionState& s);

}  // namespace c2lab
