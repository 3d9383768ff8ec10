#include <gtest/gtest.h>

#include <numeric>

#include "c2lab/identify.hpp"
#include "support.hpp"

using namespace c2lab;

namespace {

std::vector<int64_t> small(const std::vector<Integer>& v) {
  std::vector<int64_t> out;
  for (const auto& a : v) out.push_back(std::stoll(a.str()));
  return out;
}

const NewformSpec& find_form(const std::vector<NewformSpec>& fs, int w, int l) {
  for (const auto& f : fs) {
    if (f.weight == w && f.level == l) return f;
  }
  throw std::runtime_error("missing form");
}

C2Prefix prefix_of(const std::map<uint64_t, uint64_t>& m) {
  C2Prefix p;
  for (auto [q, r] : m) p.residues[q] = C2Entry{r, Provenance::oracle};
  return p;
}

}  // namespace

TEST(Eta, Level11Weight2) {
  auto a = small(eta_coeffs({{1, 2}, {11, 2}}, 13));
  std::vector<int64_t> expect{1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4};
  EXPECT_EQ(a, expect);
}

TEST(Eta, DeltaLikeProducts) {
  // weight 3 level 7 has CM by Q(sqrt -7): inert primes vanish
  auto f = eta_newform(3, 7, {{1, 3}, {7, 3}}, 50);
  EXPECT_EQ(f.coeffs.at(2), -3);
  EXPECT_EQ(f.coeffs.at(3), 0);
  EXPECT_EQ(f.coeffs.at(5), 0);
  EXPECT_EQ(f.coeffs.at(7), -7);
  auto g = eta_newform(6, 3, {{1, 6}, {3, 6}}, 10);
  EXPECT_EQ(g.coeffs.at(2), -6);
  EXPECT_EQ(g.coeffs.at(3), 9);
  EXPECT_EQ(g.coeffs.at(5), 6);
  EXPECT_EQ(g.name(), "[6,3]");
}

TEST(Eta, RejectsBadProducts) {
  EXPECT_THROW(eta_coeffs({{1, 2}}, 5), std::invalid_argument);
  EXPECT_THROW(eta_coeffs({{0, 24}}, 5), std::invalid_argument);
}

TEST(Eta, BundledFormsAreHeckeEigenforms) {
  const unsigned N = 60;
  for (const auto& f : bundled_newforms(N)) {
    auto a = small(eta_coeffs(f.eta, N));
    auto at = [&](unsigned n) { return a[n - 1]; };
    EXPECT_EQ(at(1), 1) << f.name();
    for (unsigned m = 2; m * m <= N; ++m) {
      for (unsigned n = m + 1; m * n <= N; ++n) {
        if (std::gcd(m, n) != 1) continue;
        EXPECT_EQ(at(m * n), at(m) * at(n)) << f.name() << " " << m << "*" << n;
      }
    }
    // a_{p^2} = a_p^2 - chi(p) p^(w-1); chi is trivial for even weight and
    // (-level / p) for odd weight
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      if (f.level % p == 0 || p * p > N) continue;
      int64_t pw = 1;
      for (int i = 1; i < f.weight; ++i) pw *= p;
      if (f.weight % 2 != 0) pw *= p == 2 ? 1 : legendre(-static_cast<int64_t>(f.level), p);  // -7 = 1 mod 8
      EXPECT_EQ(at(p * p), at(p) * at(p) - pw) << f.name() << " p=" << p;
    }
  }
}

TEST(Eta, ElevenBundledForms) {
  auto fs = bundled_newforms(31);
  EXPECT_EQ(fs.size(), 11u);
  for (const auto& f : fs) {
    EXPECT_EQ(f.source, NewformSource::eta_product);
    EXPECT_EQ(f.bound, 31u);
    for (uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) EXPECT_EQ(f.coeffs.count(p), 1u) << f.name();
  }
  EXPECT_EQ(find_form(fs, 2, 11).coeffs.at(13), 4);
}

TEST(Table, Parses) {
  auto fs = load_newform_table(
      "# a hand table\n"
      "w 4 l 13 b 5\n"
      "2 -5\n"
      "3 -2 # trailing comment\n"
      "5 -4\n"
      "7 1\n"
      "\n"
      "w 2 l 37\n"
      "2 -2\n"
      "3 -3\n");
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].name(), "[4,13]");
  EXPECT_EQ(fs[0].bound, 5u);
  EXPECT_EQ(fs[0].coeffs.at(7), 1);
  EXPECT_EQ(fs[0].source, NewformSource::external_file);
  EXPECT_EQ(fs[1].bound, 3u);
}

TEST(Table, Errors) {
  EXPECT_THROW(load_newform_table("2 1\n"), std::invalid_argument);                   // no header
  EXPECT_THROW(load_newform_table("w 2 l 37\n2 1\n5 1\n"), std::invalid_argument);    // misses 3
  EXPECT_THROW(load_newform_table("w 2 l 37 b 7\n2 1\n3 1\n5 1\n"), std::invalid_argument);
  EXPECT_THROW(load_newform_table("w 2 l 37\n4 1\n"), std::invalid_argument);         // not prime
  EXPECT_THROW(load_newform_table("w 2 l 37\n2 x\n"), std::invalid_argument);
  EXPECT_THROW(load_newform_table("w 2 l 37\n2 1\n2 1\n"), std::invalid_argument);    // repeated prime
  EXPECT_THROW(load_newform_table("w 2 l 37\n\n"), std::invalid_argument);            // empty block
  EXPECT_THROW(load_newform_table("w 2 37\n2 1\n"), std::invalid_argument);
  EXPECT_THROW(load_newform_table("w 2 l 37\n2 1\n\nw 2 l 37\n2 1\n"), std::invalid_argument);
  EXPECT_THROW(load_newform_table("w 1 l 37\n2 1\n"), std::invalid_argument);
}

TEST(Pool, DefaultHas42Candidates) {
  auto pool = default_pool();
  ASSERT_EQ(pool.candidates.size(), 42u);
  EXPECT_EQ(pool.candidates[0].name(), "constant 0");
  EXPECT_EQ(pool.candidates[1].name(), "constant -1");
  size_t legendres = 0, forms = 0;
  for (const auto& c : pool.candidates) {
    legendres += c.kind == Candidate::Kind::legendre;
    forms += c.kind == Candidate::Kind::newform;
  }
  EXPECT_EQ(legendres, 29u);
  EXPECT_EQ(forms, 11u);
}

TEST(Pool, SeparatedUpTo101) {
  auto pool = default_pool();
  auto bad = inseparable_pairs(pool, 101);
  for (const auto& [a, b] : bad) ADD_FAILURE() << a << " ~ " << b;
}

TEST(Pool, TwoIsNeededToSplitSquares) {
  Candidate minus_one{Candidate::Kind::constant, -1, nullptr};
  Candidate four{Candidate::Kind::legendre, 4, nullptr};
  for (uint64_t p : odd_primes_upto(101)) EXPECT_EQ(minus_one.residue(p), four.residue(p));
  EXPECT_NE(minus_one.residue(2), four.residue(2));
}

TEST(Pool, ExternalFormsJoinInOrder) {
  auto ext = load_newform_table("w 2 l 37\n2 -2\n3 -3\n");
  auto pool = default_pool(ext);
  ASSERT_EQ(pool.candidates.size(), 43u);
  // weight 2 forms by level: 11, 14, 15, 37
  EXPECT_EQ(pool.candidates[34].name(), "newform [2,37] external-data");
  EXPECT_FALSE(pool.candidates[34].residue(5).has_value());
  EXPECT_EQ(pool.candidates[34].residue(3), std::optional<uint64_t>(0));
}

TEST(Candidate, Residues) {
  Candidate c{Candidate::Kind::legendre, -3, nullptr};
  EXPECT_EQ(c.residue(7), std::optional<uint64_t>(6));  // (-3/7) = 1
  EXPECT_EQ(c.residue(5), std::optional<uint64_t>(1));  // (-3/5) = -1
  EXPECT_EQ(c.residue(3), std::optional<uint64_t>(0));
  EXPECT_EQ(c.residue(2), std::optional<uint64_t>(1));
  Candidate z{Candidate::Kind::constant, 0, nullptr};
  EXPECT_EQ(z.residue(11), std::optional<uint64_t>(0));
}

TEST(Match, K4IsConstantMinusOne) {
  std::map<uint64_t, uint64_t> m;
  for (uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) m[p] = p - 1;
  auto r = match_c2(prefix_of(m), default_pool());
  EXPECT_EQ(r.status, IdentificationResult::Status::unique);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_EQ(r.matches[0].name(), "constant -1");
  EXPECT_EQ(r.primes_checked, (std::vector<uint64_t>{2, 3, 5, 7, 11, 13}));
}

TEST(Match, ShortPrefixIsAmbiguous) {
  auto r = match_c2(prefix_of({{3, 2}}), default_pool());
  EXPECT_EQ(r.status, IdentificationResult::Status::ambiguous);
  EXPECT_GT(r.matches.size(), 1u);
  EXPECT_EQ(to_string(r.status), "ambiguous");
}

TEST(Match, NothingFits) {
  auto r = match_c2(prefix_of({{3, 1}, {5, 3}, {7, 3}, {11, 7}, {13, 2}}), default_pool());
  EXPECT_EQ(r.status, IdentificationResult::Status::unidentified);
  EXPECT_TRUE(r.matches.empty());
  auto e = match_c2(C2Prefix{}, default_pool());
  EXPECT_EQ(e.status, IdentificationResult::Status::unidentified);
}

TEST(Match, NewformByItsCoefficients) {
  auto forms = bundled_newforms(31);
  const auto& f = find_form(forms, 3, 8);
  std::map<uint64_t, uint64_t> m;
  for (auto [p, ap] : f.coeffs) m[p] = mod_residue(-ap, p);
  auto r = match_c2(prefix_of(m), default_pool());
  ASSERT_EQ(r.status, IdentificationResult::Status::unique);
  EXPECT_EQ(r.matches[0].name(), "newform [3,8]");
}

TEST(Dimension, Bound) {
  ReductionState s;
  s.invariant = Poly::var(1);
  s.remaining = {1, 2, 3};
  EXPECT_EQ(dimension_bound(s), std::optional<unsigned>(2));
  s.remaining.clear();
  EXPECT_EQ(dimension_bound(s), std::optional<unsigned>(0));
  s.status = Status::weight_drop;
  EXPECT_FALSE(dimension_bound(s).has_value());
}
