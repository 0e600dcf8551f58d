#include <random>

#include <gtest/gtest.h>

#include "common.hpp"

using namespace pt;

TEST(Coeff, RationalArithmetic)
{
  EXPECT_EQ(Q.add(Scalar(1, 3), Scalar(1, 6)), Scalar(1, 2));
  EXPECT_TRUE(Q.is_unit(5));
  EXPECT_FALSE(Q.is_unit(0));
  EXPECT_EQ(Q.try_inverse(Scalar(-2, 3)), Scalar(-3, 2));
}

TEST(Coeff, ModRingUnits)
{
  const Ring z4 = Ring::mod_ring(4), z6 = Ring::mod_ring(6);
  EXPECT_EQ(z4.try_inverse(3), Scalar(3));
  try {
    z4.try_inverse(2);
    FAIL() << "2 is not a unit mod 4";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonUnit);
  }
  EXPECT_TRUE(z6.is_unit(5));
  EXPECT_FALSE(z6.is_unit(3));
}

TEST(Coeff, NormalizationIntoResidues)
{
  const Ring z6 = Ring::mod_ring(6), f5 = Ring::prime_field(5);
  EXPECT_EQ(z6.normalize(-1), Scalar(5));
  EXPECT_EQ(z6.parse_scalar("-7"), Scalar(5));
  // 1/2 in F5 is 3.
  EXPECT_EQ(f5.parse_scalar("1/2"), Scalar(3));
  EXPECT_TRUE(f5.is_field());
  EXPECT_FALSE(z6.is_field());
}

TEST(Coeff, RingParsing)
{
  EXPECT_TRUE(Ring::parse("Q").is_rationals());
  EXPECT_EQ(Ring::parse("Fp:7"), Ring::prime_field(7));
  EXPECT_EQ(Ring::parse("Zmod:6"), Ring::mod_ring(6));
  for (const char* bad : {"Fp:6", "Zmod:0", "R", "Fp:"})
    EXPECT_THROW(Ring::parse(bad), Error) << bad;
}

// Ring axioms on random residues, field axioms where the ring is a field.
TEST(Coeff, AxiomsOnRandomSamples)
{
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (const Ring& ring : {Ring::rationals(), Ring::prime_field(7), Ring::mod_ring(4), Ring::mod_ring(6)}) {
    auto pick = [&] {
      if (ring.is_rationals())
        return ring.normalize(Scalar(num(rng), den(rng)));
      return ring.normalize(num(rng));
    };
    for (int k = 0; k < 300; ++k) {
      Scalar a = pick(), b = pick(), c = pick();
      EXPECT_EQ(ring.add(a, b), ring.add(b, a));
      EXPECT_EQ(ring.mul(a, b), ring.mul(b, a));
      EXPECT_EQ(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
      EXPECT_EQ(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
      EXPECT_EQ(ring.add(a, ring.neg(a)), Scalar(0));
      EXPECT_EQ(ring.mul(a, 1), a);
      EXPECT_EQ(ring.sub(a, b), ring.add(a, ring.neg(b)));
      if (ring.is_unit(a)) {
        EXPECT_EQ(ring.mul(a, ring.try_inverse(a)), Scalar(1));
      }
      if (ring.is_field()) {
        EXPECT_EQ(ring.is_unit(a), a != 0);
      }
    }
  }
}
