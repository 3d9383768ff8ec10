#include <gtest/gtest.h>

#include "c2lab/fpcount.hpp"
#include "counting.hpp"

using namespace c2lab;
using testkit::Tally;

namespace {

void expect_ok(const Tally& t) {
  EXPECT_GT(t.checked, 0u);
  for (size_t i = 0; i < t.failures.size() && i < 5; ++i) ADD_FAILURE() << t.failures[i];
  EXPECT_TRUE(t.failures.empty()) << t.failures.size() << " of " << t.checked;
}

}  // namespace

TEST(Legendre, BasicsUpTo13) {
  for (uint64_t p : {3u, 5u, 7u, 11u, 13u}) expect_ok(testkit::check_legendre_basics(p));
}

TEST(OneVariable, ExhaustiveSmallPrimes) {
  for (uint64_t p : {3u, 5u, 7u}) expect_ok(testkit::check_one_variable_counts(p));
}

TEST(Affine, LemmaAndTheoremMatchDirectSum) {
  std::mt19937_64 rng(9);
  expect_ok(testkit::check_affine_reductions(rng, 60, 13));
}

TEST(ZeroCount, EqualsPowerMinusSquareSum) {
  std::mt19937_64 rng(10);
  expect_ok(testkit::check_zero_count_vs_legendre(rng, 100));
}

TEST(ModelIdentity, CorrectedFormHolds) {
  std::mt19937_64 rng(11);
  expect_ok(testkit::check_model_identity(rng, 100, testkit::ModelForm::corrected));
}

TEST(ModelIdentity, SubtractedRestrictionHasCounterexamples) {
  // the minus sign only works when the restricted sum happens to vanish
  std::mt19937_64 rng(11);
  auto t = testkit::check_model_identity(rng, 100, testkit::ModelForm::as_stated);
  EXPECT_FALSE(t.failures.empty());
  EXPECT_LT(t.failures.size(), t.checked);
}

TEST(ZeroCount, GraphPolynomialDivisibleBySquare) {
  std::mt19937_64 rng(12);
  expect_ok(testkit::check_q2_divisibility(rng, 40));
}

TEST(Reduction, EveryReachableInvariantFromFiveEdges) {
  auto r = testkit::reduction_sweep(5, 6, {3, 5});
  EXPECT_GT(r.graphs, 50u);
  EXPECT_GT(r.states, 5000u);
  for (const auto& e : r.examples) ADD_FAILURE() << e;
  EXPECT_TRUE(r.ok());
}

TEST(Reduction, FewerThanFiveEdgesCanDisagree) {
  // the triangle: counting the 3-invariant gives the wrong residue
  auto r = testkit::reduction_sweep(3, 4, {3, 5});
  EXPECT_EQ(r.states_by_edges.at(3), 6u);
  EXPECT_EQ(r.failures_by_edges.at(3), 4u);
  EXPECT_EQ(r.failures_by_edges.at(4), 41u);
}
