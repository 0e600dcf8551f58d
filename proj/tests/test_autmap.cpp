#include <random>

#include <gtest/gtest.h>

#include "common.hpp"

using namespace pt;

namespace {

AutWord word(std::size_t n, std::vector<Generator> gens, const Ring& ring = Q)
{
  return AutWord::from_generators(ring, n, gens);
}

ElementaryGen elem(std::size_t l, Scalar a, const std::string& p, std::size_t n, const Ring& ring = Q)
{
  return ElementaryGen{l, a, P(p, n, ring)};
}

} // namespace

TEST(AutWord, GeneratorConventions)
{
  // Elem(l, a, p): T_l <- a T_l + p(T).
  EXPECT_EQ(strs(word(2, {elem(1, 1, "x1^2", 2)}).tuple()), (std::vector<std::string>{"x1", "x1^2 + x2"}));
  // Component i becomes x_sigma(i).
  EXPECT_EQ(strs(word(3, {PermutationGen{{2, 0, 1}}}).tuple()), (std::vector<std::string>{"x3", "x1", "x2"}));
  // A word g1 g2 is g1 o g2: the second generator acts on the first one's output.
  AutWord f = word(2, {elem(1, 1, "x1^2", 2), PermutationGen{{1, 0}}});
  EXPECT_EQ(strs(f.tuple()), (std::vector<std::string>{"x1^2 + x2", "x1"}));
  AffineGen a{{{1, 1}, {0, 1}}, {3, 0}};
  EXPECT_EQ(strs(word(2, {a}).tuple()), (std::vector<std::string>{"x1 + x2 + 3", "x2"}));
}

TEST(AutWord, ValidationRejectsBadGenerators)
{
  EXPECT_THROW(word(2, {ElementaryGen{0, 1, P("x1", 2)}}), Error);
  EXPECT_THROW(word(2, {ElementaryGen{0, 0, P("x2", 2)}}), Error);
  EXPECT_THROW(word(2, {PermutationGen{{0, 0}}}), Error);
  EXPECT_THROW(word(2, {AffineGen{{{1, 1}, {1, 1}}, {0, 0}}}), Error);
  EXPECT_THROW(word(2, {ElementaryGen{0, 2, P("x2", 2, Ring::mod_ring(4))}}, Ring::mod_ring(4)), Error);
}

TEST(Compose, Examples)
{
  AutWord F = word(2, {elem(1, 1, "x1^2", 2), PermutationGen{{1, 0}}});
  EXPECT_EQ(compose(F, AutWord(Q, 2)).tuple(), F.tuple());
  EXPECT_TRUE(is_identity(compose(word(2, {elem(1, 1, "x1^2", 2)}), word(2, {elem(1, 1, "-x1^2", 2)})).tuple()));
  AutWord a = word(3, {elem(1, 1, "x1^2", 3)}), b = word(3, {elem(2, 1, "x1^3", 3)});
  EXPECT_EQ(compose(a, b).tuple(), compose(b, a).tuple());
}

TEST(Invert, Examples)
{
  EXPECT_TRUE(is_identity(invert(AutWord(Q, 3)).tuple()));
  AutWord F = word(2, {elem(0, 2, "x2", 2)});
  AutWord G = invert(F);
  ASSERT_EQ(G.length(), 1u);
  const auto& g = std::get<ElementaryGen>(G.generators()[0]);
  EXPECT_EQ(g.index, 0u);
  EXPECT_EQ(g.unit, Scalar(1, 2));
  EXPECT_EQ(g.p, P("-1/2*x2", 2));
  EXPECT_EQ(G.tuple(), T({"1/2*x1 - 1/2*x2", "x2"}));
  EXPECT_TRUE(is_identity(compose(F, G).tuple()));
}

TEST(Invert, RandomWordsComposeToIdentity)
{
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    AutWord F = random_tame(3, Q, 5, 100000, seed);
    EXPECT_TRUE(is_identity(compose(F, invert(F)).tuple()));
    EXPECT_TRUE(is_identity(compose(invert(F), F).tuple()));
  }
}

TEST(InEw, Examples)
{
  EXPECT_TRUE(in_E_w(AutWord(Q, 3), W({1, 2, 3})));
  const Ring z4 = Ring::mod_ring(4);
  AutWord F = word(2, {PermutationGen{{1, 0}}, elem(0, 1, "2*x2", 2, z4)}, z4);
  EXPECT_EQ(F.tuple(), T({"2*x1 + x2", "x1"}, z4));
  EXPECT_FALSE(in_E_w(F, W({2, 1})));
  EXPECT_TRUE(in_E_w(F, W({1, 2})));
  try {
    in_E_w(word(2, {AffineGen{{{1, 0}, {0, 1}}, {1, 0}}}), W({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotElementaryWord);
  }
}

TEST(IndexSets, Examples)
{
  IndexSets s = thm11_sets(T({"x1", "x2", "x3"}), {0, 1, 2}, W({3, 5, 7}));
  EXPECT_EQ(s.J, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(s.I0.empty());
  IndexSets e = thm11_sets(T({"x1+x2", "x2", "x3"}), {0}, W({1, 1, 1}));
  EXPECT_TRUE(e.J.empty());
  EXPECT_EQ(e.I0, (std::vector<std::size_t>{0}));
}

TEST(Dichotomy, Examples)
{
  Dichotomy a = thm11_dichotomy(T({"x1", "x2", "x3"}), {0, 1}, W({2, 3, 7}), W({1, 1, 1}));
  EXPECT_EQ(a.which, Dichotomy::Case::A);
  EXPECT_EQ(a.sigma, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}}));

  Dichotomy b = thm11_dichotomy(T({"x1", "x2+x1^2", "x3"}), {0, 1, 2}, W({1, 1, 1}), W({0, 0, 0}));
  EXPECT_EQ(b.which, Dichotomy::Case::B);
  EXPECT_EQ(b.witness, 1u);

  Dichotomy c = thm11_dichotomy(T({"x1+x2", "x2"}), {0, 1}, W({1, 1}), W({1, 1}));
  EXPECT_EQ(c.which, Dichotomy::Case::A);
}

TEST(FreeIndex, Examples)
{
  EXPECT_EQ(cor12_index(T({"x1", "x2+x1^2", "x3"}), W({1, 1, 1})), 0u);
  EXPECT_FALSE(cor12_index(T({"x1", "x2", "x3"}), W({3, 5, 7})));
  EXPECT_EQ(cor12_index(T({"x1", "x2", "x3"}), W({2, 3, 7})), 2u);
}

TEST(RandomTame, DeterministicAndVerified)
{
  EXPECT_TRUE(is_identity(random_tame(3, Q, 0, 1000, 5).tuple()));
  AutWord a = random_tame(3, Q, 6, 100000, 42), b = random_tame(3, Q, 6, 100000, 42);
  EXPECT_EQ(a.tuple(), b.tuple());
  EXPECT_EQ(a.length(), 6u);
  EXPECT_TRUE(verify_inverse(a));
  AutWord z6 = random_tame(3, Ring::mod_ring(6), 6, 100000, 42);
  EXPECT_FALSE(z6.has_affine());
  EXPECT_TRUE(verify_inverse(z6));
}

TEST(AutmapProperty, JacobianIsUnitConstant)
{
  for (const Ring& ring : {Ring::rationals(), Ring::prime_field(5), Ring::mod_ring(6)})
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      AutWord F = random_tame(3, ring, 1 + seed % 7, 100000, seed);
      EXPECT_TRUE(jacobian_is_unit_constant(F.tuple())) << ring.name() << " seed " << seed;
    }
}

TEST(AutmapProperty, InverseKeepsMultidegreeW)
{
  std::mt19937_64 rng(41);
  int hits = 0;
  for (int k = 0; k < 300; ++k) {
    harness::Rng hr(rng());
    AutWord F = harness::sample_word(hr, 3, Q, 1 + k % 8);
    for (int j = 0; j < 10; ++j) {
      Weight w = random_weight(rng, 3, 1, 3);
      if (degrees_of(F.tuple(), w) != w.entries())
        continue;
      ++hits;
      EXPECT_EQ(degrees_of(invert(F).tuple(), w), w.entries());
    }
  }
  EXPECT_GT(hits, 20);
}

TEST(AutmapProperty, FreeIndexExistsAboveMinimum)
{
  std::mt19937_64 rng(42);
  for (int k = 0; k < 300; ++k) {
    harness::Rng hr(rng());
    AutWord F = harness::sample_word(hr, 3, Q, 1 + k % 8);
    Weight w = random_weight(rng, 3, 1, 5);
    if (mdeg_w(F.tuple(), w).total > DegValue(w.total())) {
      EXPECT_TRUE(cor12_index(F.tuple(), w));
    }
  }
}

// Components of automorphisms in m = 4 variables that lie in k[x1..xn].
TEST(AutmapProperty, StableCoordinateDegrees)
{
  std::mt19937_64 rng(43);
  RandomWordOptions opt;
  opt.allow_affine = false;
  int checked_any = 0, checked_c = 0;
  for (int k = 0; k < 400; ++k) {
    harness::Rng hr(rng());
    AutWord F = harness::sample_word(hr, 4, Q, 1 + k % 6, opt);
    for (const auto& f : F.tuple())
      for (std::size_t n : {2u, 3u}) {
        std::vector<bool> allowed(4, false);
        for (std::size_t i = 0; i < n; ++i)
          allowed[i] = true;
        if (!f.only_uses(allowed) || f.is_constant())
          continue;
        Polynomial g(Q, n);
        for (const auto& [e, c] : f.terms())
          g.add_term(Exponent(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n)), c);
        // Arbitrary signs.
        Weight w = random_weight(rng, n, -3, 4);
        const Gamma d = deg_w(g, w).value();
        bool some = false;
        for (std::size_t i = 0; i < n && !some; ++i) {
          std::vector<Gamma> rest;
          for (std::size_t l = 0; l < n; ++l)
            if (l != i)
              rest.push_back(w[l]);
          some = in_semigroup(d, rest);
        }
        ++checked_any;
        EXPECT_TRUE(some) << to_string(g) << " w=" << to_json(w).dump();
        // Nonnegative weights: the degree is a C(w) degree or some w_i.
        Weight wn = random_weight(rng, n, 0, 4);
        ++checked_c;
        EXPECT_TRUE(cw_witness(deg_w(g, wn).value(), wn)) << to_string(g) << " w=" << to_json(wn).dump();
      }
  }
  EXPECT_GT(checked_any, 100);
  EXPECT_GT(checked_c, 100);
}
