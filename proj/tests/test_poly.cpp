#include <gtest/gtest.h>

#include "common.hpp"

using namespace pt;

TEST(Poly, Arithmetic)
{
  EXPECT_EQ(P("x1+x2", 2) * P("x1-x2", 2), P("x1^2-x2^2", 2));
  EXPECT_TRUE((P("x1+3", 2) * Polynomial(Q, 2)).is_zero());
  const Ring z4 = Ring::mod_ring(4);
  EXPECT_TRUE((P("2*x1", 1, z4) * P("2*x1", 1, z4)).is_zero());
}

TEST(Poly, ArityMismatchIsAnError)
{
  try {
    (void)(P("x1", 1) + P("x1", 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ArityMismatch);
  }
}

TEST(Poly, Substitute)
{
  EXPECT_EQ(substitute(P("x1^2", 1), {P("x1+x2", 2)}), P("x1^2+2*x1*x2+x2^2", 2));
  Tuple F{P("x2", 2), P("x1-x2^2", 2)};
  EXPECT_EQ(substitute(P("x1", 2), F), F[0]);
  EXPECT_EQ(substitute(P("x2+x1^2", 2), F), P("x1", 2));
}

TEST(Poly, SubstituteBudget)
{
  try {
    substitute(P("x1^30", 2), {P("x1+x2+1", 2), P("x2", 2)}, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetExceeded);
  }
}

TEST(Poly, Partial)
{
  EXPECT_EQ(P("x1^2*x2", 2).partial(0), P("2*x1*x2", 2));
  EXPECT_TRUE(P("x1", 2).partial(1).is_zero());
  EXPECT_TRUE(P("x1^3", 1, Ring::prime_field(3)).partial(0).is_zero());
}

TEST(Poly, NonZeroDivisorExamples)
{
  EXPECT_TRUE(P("x1+1", 1).is_nonzerodivisor());
  EXPECT_FALSE(P("2*x1+2", 1, Ring::mod_ring(4)).is_nonzerodivisor());
  EXPECT_TRUE(P("2*x1+3", 1, Ring::mod_ring(6)).is_nonzerodivisor());
}

TEST(Poly, EmbedPadsVariables)
{
  Polynomial f = P("x1*x2+1", 2).embed(4);
  EXPECT_EQ(f.nvars(), 4u);
  EXPECT_EQ(f, P("x1*x2+1", 4));
}

TEST(Poly, ChangeRingNormalizes)
{
  EXPECT_EQ(P("7*x1 - 1", 1).change_ring(Ring::mod_ring(6)), P("x1+5", 1, Ring::mod_ring(6)));
}

TEST(PolyProperty, CompositionOfSubstitutions)
{
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    Polynomial g = random_poly(rng, Q, 2, 3, 2);
    Tuple F{random_poly(rng, Q, 2, 2, 2), random_poly(rng, Q, 2, 2, 2)};
    Tuple G{random_poly(rng, Q, 2, 2, 2), random_poly(rng, Q, 2, 2, 2)};
    // (F o G)_i = F_i(G).
    Tuple FG{substitute(F[0], G), substitute(F[1], G)};
    EXPECT_EQ(substitute(substitute(g, F), G), substitute(g, FG));
  }
}

TEST(PolyProperty, RingLawsAndLeibniz)
{
  std::mt19937_64 rng(5);
  for (const Ring& ring : {Ring::rationals(), Ring::mod_ring(6)})
    for (int k = 0; k < 100; ++k) {
      Polynomial a = random_poly(rng, ring, 3, 3, 2), b = random_poly(rng, ring, 3, 3, 2),
                 c = random_poly(rng, ring, 3, 3, 2);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ((a * b).partial(i), a.partial(i) * b + a * b.partial(i));
    }
}

// A zero divisor over Z/m is killed by some polynomial with support in a small box;
// the scalar annihilators found that way are the only ones that matter.
TEST(PolyProperty, NonZeroDivisorMatchesBruteForce)
{
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> mod(2, 8);
  for (int k = 0; k < 200; ++k) {
    const Ring ring = Ring::mod_ring(mod(rng));
    Polynomial f = random_poly(rng, ring, 2, 3, 2, 8);
    if (f.is_zero())
      continue;
    const long m = ring.modulus().get_si();
    bool killed = false;
    for (long c = 1; c < m && !killed; ++c)
      for (std::uint32_t e0 = 0; e0 <= 1 && !killed; ++e0)
        for (std::uint32_t e1 = 0; e1 <= 1 && !killed; ++e1)
          killed = (f * Polynomial::monomial(ring, {e0, e1}, c)).is_zero();
    // Two-term multipliers catch nothing new when a monomial multiplier fails, but include them.
    for (long c = 1; c < m && !killed; ++c)
      for (long d = 1; d < m && !killed; ++d)
        killed = (f * (Polynomial::constant(ring, 2, c) + Polynomial::monomial(ring, {1, 0}, d))).is_zero();
    EXPECT_EQ(f.is_nonzerodivisor(), !killed) << to_string(f) << " over " << ring.name();
  }
}

TEST(Parse, Examples)
{
  Polynomial f = P("x1^2 - 3/2*x2", 2);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.coefficient({2, 0}), Scalar(1));
  EXPECT_EQ(f.coefficient({0, 1}), Scalar(-3, 2));
  EXPECT_EQ(P("(x1+x2)^3", 2).size(), 4u);
  EXPECT_EQ(P("(x1+x2)^3", 2), P("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3", 2));
  EXPECT_EQ(to_string(P("x2 + x1^2 - 1", 2)), "x1^2 + x2 - 1");
}

TEST(Parse, ErrorOffsets)
{
  try {
    P("x1 +", 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(P("2x1", 1), ParseError);
  EXPECT_THROW(P("x3", 2), Error);
  EXPECT_THROW(P("x1^-1", 1), ParseError);
  EXPECT_THROW(P("(x1", 1), ParseError);
}

TEST(ParseProperty, PrintParseRoundTrip)
{
  std::mt19937_64 rng(13);
  for (int k = 0; k < 1000; ++k) {
    Polynomial f = random_poly(rng, Q, 3, 5, 3, 9);
    const std::string s = to_string(f);
    EXPECT_EQ(P(s, 3), f) << s;
    EXPECT_EQ(to_string(P(s, 3)), s);
  }
}
