#pragma once

#include <random>
#include <string>
#include <vector>

namespace c2lab::testkit {

struct Tally {
  size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && checked > 0; }
};

// Each runs `instances` random instances of one Dodgson identity.
Tally check_contraction_deletion(std::mt19937_64& rng, size_t instances);
Tally check_cut_cycle_vanishing(std::mt19937_64& rng, size_t instances);
Tally check_loop_vanishing(std::mt19937_64& rng, size_t instances);     // self-loop outside IJ
Tally check_vertex_sum(std::mt19937_64& rng, size_t instances);         // oriented vertex
Tally check_cycle_sum(std::mt19937_64& rng, size_t instances);          // attached oriented cycle
Tally check_two_three_valent(std::mt19937_64& rng, size_t instances);   // 2/3-valent contraction
Tally check_dodgson_identity(std::mt19937_64& rng, size_t instances);
Tally check_three_valent_structure(std::mt19937_64& rng, size_t instances);
Tally check_degree_law(std::mt19937_64& rng, size_t instances);
Tally check_order_independence(std::mt19937_64& rng, size_t instances);  // edge order and struck vertex
Tally check_determinant_vs_trees(std::mt19937_64& rng, size_t instances);

}  // namespace c2lab::testkit
