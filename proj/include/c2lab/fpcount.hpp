#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "c2lab/denred.hpp"
#include "c2lab/multigraph.hpp"
#include "c2lab/poly.hpp"

namespace c2lab {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(uint64_t n);
std::vector<uint64_t> odd_primes_upto(uint64_t bound);
uint64_t mod_residue(int64_t x, uint64_t p);

// Euler criterion; p must be an odd prime.
int legendre(const Integer& a, uint64_t p);
int legendre(int64_t a, uint64_t p);

struct CountOptions {
  uint64_t max_points = 1'000'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Exact sums over F_p^N where N is the size of vars (default: the variables of f).
int64_t legendre_sum(const Poly& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt = {});
int64_t legendre_sum(const Poly& f, uint64_t p, const CountOptions& opt = {});
int64_t legendre_sum(const WidePoly& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt = {});
int64_t zero_count(const Poly& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt = {});
int64_t zero_count(const Poly& f, uint64_t p, const CountOptions& opt = {});
int64_t zero_count(const WidePoly& f, uint64_t p, const std::vector<unsigned>& vars, const CountOptions& opt = {});

enum class AffineMode { lemma, theorem };

// Residue of the Legendre sum of a homogeneous f of degree 2N modulo p.
uint64_t affine_legendre_sum(const Poly& f, uint64_t p, AffineMode mode, const std::vector<unsigned>& vars,
                             const CountOptions& opt = {});
uint64_t affine_legendre_sum(const Poly& f, uint64_t p, AffineMode mode, const CountOptions& opt = {});

// (-1)^N times the coefficient of (a_1...a_N)^(p-1) in f^((p-1)/2), mod p.
uint64_t cw_residue(const Poly& f, uint64_t p, const std::vector<unsigned>& vars);
uint64_t cw_residue(const Poly& f, uint64_t p);

// [Psi]_p / p^2 mod p by enumerating F_p^E.
uint64_t c2_oracle(const Multigraph& g, uint64_t p, const CountOptions& opt = {});

// (-1)^(n-1) (invariant)_p mod p for odd p.
uint64_t c2_from_state(const ReductionState& s, uint64_t p, const CountOptions& opt = {});

// Residue mod 2 from the last standard invariant, if one was reached.
std::optional<uint64_t> c2_at_two(const ReductionState& s, const CountOptions& opt = {});

// Throws unless (f, g) is a Dodgson pair on the union of their variables.
void check_dodgson_pair(const Poly& f, const Poly& g);

enum class PairMethod { projective, grid };

// Exact number of common zeros in F_p^N (N = variables of f and g).
int64_t pair_intersection_exact(const Poly& f, const Poly& g, uint64_t p, PairMethod method = PairMethod::projective,
                                const CountOptions& opt = {});
uint64_t pair_intersection_count(const Poly& f, const Poly& g, uint64_t p, const CountOptions& opt = {});

enum class Provenance { oracle, quadratic_invariant, standard_invariant, intersection };
std::string to_string(Provenance p);

struct C2Entry {
  uint64_t residue = 0;
  Provenance source = Provenance::quadratic_invariant;
};

struct C2Prefix {
  std::map<uint64_t, C2Entry> residues;
  std::string graph_hash;
};

}  // namespace c2lab
