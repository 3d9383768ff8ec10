#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "identities.hpp"

namespace c2lab::testkit {

// Multiplicativity, Euler criterion against root counting, power sums.
Tally check_legendre_basics(uint64_t p);

// The three one-variable congruences, over every coefficient tuple in F_p.
Tally check_one_variable_counts(uint64_t p);

// Both affine reductions against the direct sum, plus (F)_p = 0 mod p below degree 2N.
Tally check_affine_reductions(std::mt19937_64& rng, size_t instances, uint64_t pmax);

// [f]_p = p^N - (f^2)_p exactly.
Tally check_zero_count_vs_legendre(std::mt19937_64& rng, size_t instances);

// The model identity for invariants reached on random graphs. as_stated subtracts
// the alpha_N = 0 restriction; corrected adds it (and drops it with one variable left).
enum class ModelForm { as_stated, corrected };
Tally check_model_identity(std::mt19937_64& rng, size_t instances, ModelForm form);

// [Psi]_p divisible by p^2.
Tally check_q2_divisibility(std::mt19937_64& rng, size_t instances);

struct SweepResult {
  size_t graphs = 0;
  size_t states = 0;
  std::map<unsigned, size_t> states_by_edges;
  std::map<unsigned, size_t> failures_by_edges;
  std::vector<std::string> examples;  // first few failures
  bool ok() const { return failures_by_edges.empty() && states > 0; }
};

// Every quadratic invariant reachable from every edge order, on every connected
// multigraph with min_edges..max_edges edges, 2 h1 <= E and at least three vertices.
SweepResult reduction_sweep(unsigned min_edges, unsigned max_edges, const std::vector<uint64_t>& primes);

}  // namespace c2lab::testkit
