#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "c2lab/denred.hpp"
#include "c2lab/fpcount.hpp"

namespace c2lab {

// (multiplier m, exponent e) pairs of eta(m z)^e.
using EtaSpec = std::vector<std::pair<int, int>>;

// a_1 .. a_nmax of the eta product; index 0 of the result is a_1.
std::vector<Integer> eta_coeffs(const EtaSpec& spec, unsigned nmax);

enum class NewformSource { eta_product, external_file };

struct NewformSpec {
  int weight = 0;
  int level = 0;
  std::map<uint64_t, int64_t> coeffs;  // prime -> a_p
  NewformSource source = NewformSource::eta_product;
  EtaSpec eta;
  uint64_t bound = 0;  // all primes up to here are present
  std::string name() const;  // "[w,l]"
};

NewformSpec eta_newform(int weight, int level, const EtaSpec& spec, uint64_t bound);
// The eleven bundled weight/level pairs with their eta products.
std::vector<NewformSpec> bundled_newforms(uint64_t bound = 101);

// Blocks "w <weight> l <level> [b <bound>]", then "<prime> <a_p>" lines, ended
// by a blank line. Without b the bound is the largest listed prime.
std::vector<NewformSpec> load_newform_table(const std::string& text);

struct Candidate {
  enum class Kind { constant, legendre, newform } kind = Kind::constant;
  int64_t value = 0;  // constant c, or x of (x/p)
  std::shared_ptr<const NewformSpec> form;
  std::string name() const;
  // Expected c2 residue mod p, if the candidate is defined at p.
  std::optional<uint64_t> residue(uint64_t p) const;
};

struct CandidatePool {
  std::vector<Candidate> candidates;
};

// Constants, then Legendre symbols, then newforms by (weight, level).
CandidatePool default_pool(const std::vector<NewformSpec>& external = {}, uint64_t bound = 101);

struct IdentificationResult {
  enum class Status { unique, ambiguous, unidentified } status = Status::unidentified;
  std::vector<Candidate> matches;
  std::vector<uint64_t> primes_checked;
  std::optional<unsigned> dimension_note;
};

std::string to_string(IdentificationResult::Status s);

IdentificationResult match_c2(const C2Prefix& prefix, const CandidatePool& pool);

// Pairs of candidates that agree at every prime up to bound (2 included).
std::vector<std::pair<std::string, std::string>> inseparable_pairs(const CandidatePool& pool, uint64_t bound);

// Remaining variables minus one; none after a weight drop.
std::optional<unsigned> dimension_bound(const ReductionState& s);

}  // namespace c2lab
