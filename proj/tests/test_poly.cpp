#include <gtest/gtest.h>

#include <random>

#include "c2lab/poly.hpp"
#include "support.hpp"

using namespace c2lab;

namespace {
Poly x(unsigned v, unsigned e = 1) { return Poly::var(v, e); }
}  // namespace

TEST(Poly, BasicArithmetic) {
  Poly p = x(1) + x(2);
  Poly q = p * p;
  EXPECT_EQ(q, x(1, 2) + Poly(2) * x(1) * x(2) + x(2, 2));
  EXPECT_EQ(q - q, Poly());
  EXPECT_EQ(q.total_degree(), 2);
  EXPECT_TRUE(q.is_homogeneous());
  EXPECT_EQ(q.degree_in(1), 2);
  EXPECT_EQ(q.variables(), (std::vector<unsigned>{1, 2}));
  EXPECT_EQ(p.pow(3), p * p * p);
}

TEST(Poly, ExponentCapIsEnforced) {
  EXPECT_NO_THROW(x(1, 4));
  EXPECT_THROW(x(1, 3) * x(1, 2), DegreeOverflow);
}

TEST(Poly, CoefficientsAndSubstitution) {
  Poly p = Poly(3) * x(1, 2) * x(2) - x(1) + Poly(5);
  auto c = p.coeffs_in(1);
  ASSERT_GE(c.size(), 3u);
  for (size_t k = 3; k < c.size(); ++k) EXPECT_TRUE(c[k].is_zero());
  EXPECT_EQ(c[0], Poly(5));
  EXPECT_EQ(c[1], Poly(-1));
  EXPECT_EQ(c[2], Poly(3) * x(2));
  EXPECT_EQ(Poly::from_coeffs(1, c), p);
  EXPECT_EQ(p.substitute(1, Integer(2)), Poly(12) * x(2) + Poly(3));
  EXPECT_EQ(p.derivative(1), Poly(6) * x(1) * x(2) - Poly(1));
  EXPECT_EQ(p.coeff(1, 2), Poly(3) * x(2));
}

TEST(Poly, SerializeRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Poly p = testkit::random_poly(rng, {1, 2, 5, 9}, 3, 8, 50, 12);
    EXPECT_EQ(Poly::parse(p.serialize()), p);
  }
  EXPECT_EQ(Poly::parse("# comment\n2 1:1\n-1\n"), Poly(2) * x(1) - Poly(1));
  EXPECT_THROW(Poly::parse("1 1:1 1:2\n"), std::invalid_argument);
  EXPECT_THROW(Poly::parse("1 3\n"), std::invalid_argument);
  EXPECT_THROW(Poly::parse("1 1:5\n"), DegreeOverflow);
}

TEST(Poly, EvalModMatchesExact) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    Poly p = testkit::random_poly(rng, {0, 1, 2}, 4, 12, 1000, 10);
    std::vector<uint64_t> pt{rng() % 7, rng() % 7, rng() % 7};
    std::vector<Integer> ipt{Integer(static_cast<int64_t>(pt[0])), Integer(static_cast<int64_t>(pt[1])),
                             Integer(static_cast<int64_t>(pt[2]))};
    EXPECT_EQ(p.eval_mod(pt, 7), p.eval(ipt).mod(7));
  }
}

TEST(Poly, ContentAndPrimitive) {
  Poly p = Poly(6) * x(1) + Poly(-9) * x(2);
  EXPECT_EQ(p.content(), Integer(3));
  EXPECT_EQ(p.primitive(), Poly(2) * x(1) - Poly(3) * x(2));
}

TEST(Poly, RingLawsOnRandomInputs) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Poly a = testkit::random_poly(rng, {1, 2, 3}, 1, 3, 9, 5);
    Poly b = testkit::random_poly(rng, {1, 2, 3}, 1, 3, 9, 5);
    Poly c = testkit::random_poly(rng, {1, 2, 3}, 1, 3, 9, 5);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a - b) + b, a);
  }
}
