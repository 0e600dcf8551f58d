#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "common.hpp"

using namespace pt;

TEST(Gamma, LexOrder)
{
  EXPECT_LT((Gamma{0, 5}), (Gamma{1, -9}));
  EXPECT_LT((Gamma{1, -1}), (Gamma{1, 0}));
  EXPECT_TRUE((Gamma{0, 1}).is_positive());
  EXPECT_FALSE((Gamma{0, 0}).is_positive());
  EXPECT_FALSE((Gamma{-1, 7}).is_nonneg());
  EXPECT_EQ(integer_ratio(Gamma{6, 9}, Gamma{2, 3}), 3);
  EXPECT_FALSE(integer_ratio(Gamma{6, 8}, Gamma{2, 3}));
}

TEST(Gamma, MinusInfinityIsBelowEverything)
{
  DegValue ninf = DegValue::minus_infinity();
  EXPECT_LT(ninf, DegValue(Gamma{-100}));
  EXPECT_FALSE((ninf + DegValue(Gamma{3})).is_finite());
}

TEST(Degree, Examples)
{
  EXPECT_EQ(deg_w(P("x2", 2), W({2, 7})), DegValue(Gamma{7}));
  EXPECT_FALSE(deg_w(Polynomial(Q, 2), W({1, 1})).is_finite());
  EXPECT_EQ(deg_w(P("x1+x2^3", 2), W({2, 1})), DegValue(Gamma{3}));
  // Rank 2: x1 has degree (0,1), x2 has (1,0).
  Weight lex(std::vector<Gamma>{Gamma{0, 1}, Gamma{1, 0}});
  EXPECT_EQ(deg_w(P("x1^5 + x2", 2), lex), DegValue(Gamma{1, 0}));
}

TEST(InitialForm, Examples)
{
  EXPECT_EQ(initial_form(P("x1+x2^2", 2), W({2, 1})), P("x1+x2^2", 2));
  EXPECT_EQ(initial_form(P("x1+x2^2", 2), W({1, 1})), P("x2^2", 2));
  Polynomial h = P("x1^2 + 3*x1*x2 - x2^2", 2);
  EXPECT_EQ(initial_form(h, W({1, 1})), h);
  EXPECT_TRUE(is_homogeneous(h, W({1, 1})));
}

TEST(Multidegree, Examples)
{
  Multidegree id = mdeg_w(T({"x1", "x2", "x3"}), W({2, 3, 5}));
  EXPECT_EQ(id.total, DegValue(Gamma{10}));
  EXPECT_EQ(degrees_of(T({"x1", "x2+x1^2", "x3+x1^3"}), W({1, 1, 1})), D({1, 2, 3}));
  Tuple nagata = T({"x1 - 2*x2*(x2^2 + x1*x3) - x3*(x2^2 + x1*x3)^2", "x2 + x3*(x2^2 + x1*x3)", "x3"});
  EXPECT_EQ(degrees_of(nagata, W({1, 1, 1})), D({5, 3, 1}));
  EXPECT_TRUE(jacobian_determinant(nagata) == Polynomial::constant(Q, 3, 1));
}

TEST(Wedge, Examples)
{
  EXPECT_EQ(wedge_deg({P("x1", 2), P("x2", 2)}, W({4, 9})), DegValue(Gamma{13}));
  EXPECT_FALSE(wedge_deg({P("x1", 2), P("x1^2", 2)}, W({1, 1})).is_finite());
  EXPECT_EQ(wedge_deg({P("x1+x2^2", 2), P("x2", 2)}, W({3, 1})), DegValue(Gamma{4}));
  // A single form: deg of df.
  EXPECT_EQ(wedge_deg({P("x1*x2", 2)}, W({1, 1})), DegValue(Gamma{2}));
}

TEST(InitialTuple, Examples)
{
  EXPECT_EQ(initial_tuple(T({"x1", "x2"}), W({1, 1})), T({"x1", "x2"}));
  EXPECT_EQ(initial_tuple(T({"x1+1", "x2"}), W({1, 1})), T({"x1", "x2"}));
  // x2 and x1^2 both have degree 2 here.
  EXPECT_EQ(initial_tuple(T({"x1+x2", "x2+x1^2"}), W({1, 2})), T({"x2", "x2+x1^2"}));
  EXPECT_EQ(initial_tuple(T({"x1+x2", "x2+x1^3"}), W({1, 2})), T({"x2", "x1^3"}));
}

TEST(InitialInjective, Examples)
{
  EXPECT_TRUE(initial_injective(T({"x1", "x2", "x3"}), W({1, 2, 3})));
  EXPECT_FALSE(initial_injective(T({"x1*x2", "x1*x2+1"}), W({1, 1})));
  EXPECT_TRUE(initial_injective(T({"2*x1+x2+1", "x1-x2"}), W({1, 1})));
  try {
    initial_injective(T({"x1", "x2"}, Ring::mod_ring(4)), W({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAField);
  }
}

TEST(WorderProperty, ProductRule)
{
  std::mt19937_64 rng(21);
  for (const Ring& ring : {Ring::rationals(), Ring::mod_ring(4), Ring::mod_ring(6)})
    for (int k = 0; k < 200; ++k) {
      Weight w = random_weight(rng, 3, -2, 4);
      Polynomial f = random_poly(rng, ring, 3, 3, 2), g = random_poly(rng, ring, 3, 3, 2);
      if (f.is_zero() || g.is_zero())
        continue;
      Polynomial fw = initial_form(f, w), gw = initial_form(g, w);
      if (!ring.is_rationals() && !fw.is_nonzerodivisor() && !gw.is_nonzerodivisor())
        continue;
      EXPECT_EQ(deg_w(f * g, w), deg_w(f, w) + deg_w(g, w));
      EXPECT_EQ(initial_form(f * g, w), fw * gw);
    }
}

// Sum of a family: degree at most the max, equal iff the top initial forms do not cancel.
TEST(WorderProperty, SumDegreeBound)
{
  std::mt19937_64 rng(22);
  for (int k = 0; k < 300; ++k) {
    Weight w = random_weight(rng, 2, -1, 3);
    std::vector<Polynomial> fs;
    for (int i = 0; i < 3; ++i)
      fs.push_back(random_poly(rng, Q, 2, 2, 2, 2));
    // Plant cancellation now and then.
    if (k % 3 == 0)
      fs[1] = fs[1] - initial_form(fs[0], w);
    DegValue delta;
    for (const auto& f : fs)
      delta = std::max(delta, deg_w(f, w));
    if (!delta.is_finite())
      continue;
    Polynomial sum(Q, 2), top(Q, 2);
    for (const auto& f : fs) {
      sum += f;
      if (deg_w(f, w) == delta)
        top += initial_form(f, w);
    }
    EXPECT_LE(deg_w(sum, w), delta);
    EXPECT_EQ(deg_w(sum, w) == delta, !top.is_zero());
    if (!top.is_zero()) {
      EXPECT_EQ(initial_form(sum, w), top);
    }
  }
}

// deg_w g(F) <= deg_{w_F} g, with equality exactly when g^{w_F}(F^w) is nonzero.
TEST(WorderProperty, SubstitutionBound)
{
  std::mt19937_64 rng(23);
  for (int k = 0; k < 300; ++k) {
    Weight w = random_weight(rng, 2, 0, 3);
    Tuple F{random_poly(rng, Q, 2, 2, 2, 2), random_poly(rng, Q, 2, 2, 2, 2)};
    if (k % 4 == 0)
      F[1] = F[0] * F[0] + P("x2", 2);
    if (F[0].is_zero() || F[1].is_zero())
      continue;
    Weight wF = composite_weight(F, w);
    Polynomial g = random_poly(rng, Q, 2, 3, 2, 2);
    if (k % 4 == 0)
      g = P("x2 - x1^2 + x1", 2);
    DegValue lhs = deg_w(substitute(g, F), w), rhs = deg_w(g, wF);
    EXPECT_LE(lhs, rhs);
    Polynomial top = substitute(initial_form(g, wF), initial_tuple(F, w));
    EXPECT_EQ(lhs == rhs, !top.is_zero() || g.is_zero());
    if (!top.is_zero()) {
      EXPECT_EQ(initial_form(substitute(g, F), w), top);
    }
  }
}

// When the initial forms are algebraically independent, initial forms commute with substitution.
TEST(WorderProperty, InitialAlgebraOfInjectiveTuple)
{
  std::mt19937_64 rng(24);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    Weight w = random_weight(rng, 2, 1, 3);
    Tuple F{random_poly(rng, Q, 2, 3, 2, 2), random_poly(rng, Q, 2, 3, 2, 2)};
    if (F[0].is_zero() || F[1].is_zero() || !initial_injective(F, w))
      continue;
    ++checked;
    Polynomial g = random_poly(rng, Q, 2, 3, 2, 2);
    Weight wF = composite_weight(F, w);
    EXPECT_EQ(initial_form(substitute(g, F), w), substitute(initial_form(g, wF), initial_tuple(F, w)));
  }
  EXPECT_GT(checked, 50);
}

// Z-independent degrees force initial_injective.
TEST(WorderProperty, IndependentDegreesAreInjective)
{
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<std::int64_t> u(-2, 3);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    Weight w(std::vector<Gamma>{Gamma{u(rng), u(rng)}, Gamma{u(rng), u(rng)}});
    Tuple F{random_poly(rng, Q, 2, 3, 2, 2), random_poly(rng, Q, 2, 3, 2, 2)};
    if (F[0].is_zero() || F[1].is_zero())
      continue;
    auto d = degrees_of(F, w);
    if (d[0][0] * d[1][1] - d[0][1] * d[1][0] == 0)
      continue;
    ++checked;
    EXPECT_TRUE(initial_injective(F, w));
  }
  EXPECT_GT(checked, 50);
}

// deg_w of a wedge is at most the sum of degrees, with equality iff the top forms' wedge survives.
TEST(WorderProperty, WedgeDegreeBound)
{
  std::mt19937_64 rng(26);
  for (int k = 0; k < 300; ++k) {
    Weight w = random_weight(rng, 2, -1, 3);
    Tuple F{random_poly(rng, Q, 2, 3, 2, 2), random_poly(rng, Q, 2, 3, 2, 2)};
    if (k % 3 == 0)
      F[1] = F[0].pow(2) + random_poly(rng, Q, 2, 1, 1, 2);
    if (F[0].is_zero() || F[1].is_zero())
      continue;
    DegValue wd = wedge_deg(F, w), sum = mdeg_w(F, w).total;
    EXPECT_LE(wd, sum);
    const bool survives = !jacobian_determinant(initial_tuple(F, w)).is_zero();
    EXPECT_EQ(wd == sum, survives);
  }
}

namespace {

// Components sorted by degree and variables relabelled so that w ascends.
Tuple sorted_instance(const Tuple& F, const Weight& w, Weight& ws)
{
  const std::size_t n = F.size();
  std::vector<std::size_t> vars(n), comps(n);
  std::iota(vars.begin(), vars.end(), 0);
  std::stable_sort(vars.begin(), vars.end(), [&](auto a, auto b) { return w[a] < w[b]; });
  std::vector<Gamma> we;
  Tuple rename;
  for (std::size_t i = 0; i < n; ++i) {
    we.push_back(w[vars[i]]);
  }
  // x_{vars[i]} becomes x_i.
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i)
    pos[vars[i]] = i;
  for (std::size_t v = 0; v < n; ++v)
    rename.push_back(Polynomial::variable(F[0].ring(), n, pos[v]));
  ws = Weight(we);
  Tuple G;
  for (const auto& f : F)
    G.push_back(substitute(f, rename));
  std::stable_sort(G.begin(), G.end(), [&](const Polynomial& a, const Polynomial& b) { return deg_w(a, ws) < deg_w(b, ws); });
  return G;
}

} // namespace

TEST(WorderProperty, SortedAutomorphisms)
{
  std::mt19937_64 rng(27);
  int triangular_checks = 0;
  for (int k = 0; k < 300; ++k) {
    harness::Rng hr(rng());
    AutWord word = harness::sample_word(hr, 3, Q, 1 + k % 5);
    Weight w0 = random_weight(rng, 3, 1, 4);
    Weight w;
    Tuple F = sorted_instance(word.tuple(), w0, w);
    auto d = degrees_of(F, w);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (d[i] < w[j]) {
          EXPECT_LT(i, j);
        }
    bool premise = true;
    for (std::size_t i = 0; i + 1 < 3; ++i)
      premise = premise && d[i] < w[i + 1];
    if (premise) {
      ++triangular_checks;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t v = i + 1; v < 3; ++v)
          EXPECT_FALSE(F[i].involves(v));
    }
  }
  EXPECT_GT(triangular_checks, 0);
}

TEST(WorderProperty, DegreeLowerBoundAndMinimality)
{
  std::mt19937_64 rng(28);
  for (int k = 0; k < 200; ++k) {
    harness::Rng hr(rng());
    AutWord word = harness::sample_word(hr, 3, Q, 1 + k % 6);
    Weight w = random_weight(rng, 3, 1, 5);
    Multidegree md = mdeg_w(word.tuple(), w);
    EXPECT_GE(md.total, DegValue(w.total()));
    std::vector<Gamma> d = degrees_of(word.tuple(), w), ws = w.entries();
    std::sort(d.begin(), d.end());
    std::sort(ws.begin(), ws.end());
    const bool eq = md.total == DegValue(w.total());
    EXPECT_EQ(eq, d == ws);
    EXPECT_EQ(eq, initial_injective(word.tuple(), w));
  }
}
