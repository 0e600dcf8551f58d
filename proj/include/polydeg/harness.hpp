#ifndef POLYDEG_HARNESS_HPP
#define POLYDEG_HARNESS_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "autmap.hpp"
#include "io.hpp"
#include "sured.hpp"
#include "tamecert.hpp"
#include "wapprox.hpp"
#include "worder.hpp"

namespace polydeg::harness {

struct Options {
  std::size_t cases = 0;  // 0 selects the suite default
  std::uint64_t seed = 1;
  std::size_t budget = 64;
};

struct Report {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failure_count = 0;
  std::map<std::string, std::size_t> counters;
  std::vector<std::string> failures;
  double seconds = 0;

  bool ok() const { return failure_count == 0; }
  std::size_t& operator[](const std::string& k) { return counters[k]; }
  std::size_t get(const std::string& k) const
  {
    auto it = counters.find(k);
    return it == counters.end() ? 0 : it->second;
  }
  void fail_case(std::string what)
  {
    ++failure_count;
    if (failures.size() < 20)
      failures.push_back(std::move(what));
  }
};

inline json to_json(const Report& r)
{
  json c = json::object();
  for (const auto& [k, v] : r.counters)
    c[k] = v;
  return json{{"suite", r.suite}, {"cases", r.cases}, {"ok", r.ok()}, {"failures", r.failure_count},
              {"counters", c}, {"examples", r.failures}};
}

// ---------------------------------------------------------------------------
// Sampling.

class Rng {
public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(g_); }
  bool chance(int num, int den) { return uniform(0, den - 1) < num; }
  std::uint64_t next() { return g_(); }
  std::mt19937_64& engine() { return g_; }

  Permutation permutation(std::size_t n)
  {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), g_);
    return p;
  }

private:
  std::mt19937_64 g_;
};

inline Gamma random_gamma(Rng& rng, std::size_t rank, bool positive, std::int64_t hi = 5)
{
  if (rank == 1)
    return Gamma{rng.uniform(positive ? 1 : 0, hi)};
  std::vector<std::int64_t> c(rank);
  c[0] = rng.uniform(0, 2);
  for (std::size_t k = 1; k < rank; ++k)
    c[k] = rng.uniform(-3, 3);
  if (c[0] == 0) {
    for (std::size_t k = 1; k < rank; ++k)
      c[k] = rng.uniform(0, 3);
    if (positive)
      c[1] = rng.uniform(1, 3);
  }
  return Gamma(c);
}

inline Weight random_weight(Rng& rng, std::size_t n, std::size_t rank, bool positive = true, std::int64_t hi = 5)
{
  std::vector<Gamma> e;
  for (std::size_t i = 0; i < n; ++i)
    e.push_back(random_gamma(rng, rank, positive, hi));
  return Weight(e);
}

inline Weight random_signed_weight(Rng& rng, std::size_t n, std::size_t rank, std::int64_t hi = 3)
{
  std::vector<Gamma> e;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> c(rank);
    for (auto& x : c)
      x = rng.uniform(-hi, hi);
    e.emplace_back(c);
  }
  return Weight(e);
}

inline AutWord sample_word(Rng& rng, std::size_t n, const Ring& ring, std::size_t length,
                           const RandomWordOptions& opt = {}, std::size_t budget = 2000)
{
  for (int attempt = 0; attempt < 200; ++attempt) {
    try {
      return random_tame(n, ring, length, budget, rng.next(), opt);
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded)
        throw;
    }
  }
  fail(Errc::BudgetExceeded, "could not sample a word within the term budget");
}

inline std::string show(const AutWord& w) { return to_json(w).dump(); }
inline std::string show(const Weight& w) { return to_json(w).dump(); }
inline std::string show(const std::vector<Gamma>& d) { return to_json(d).dump(); }

// Exponent vectors in [0, hi]^n.
inline std::vector<Exponent> exponent_box(std::size_t n, std::uint32_t hi)
{
  std::vector<Exponent> out;
  Exponent e(n, 0);
  for (;;) {
    out.push_back(e);
    std::size_t k = 0;
    while (k < n && e[k] == hi)
      e[k++] = 0;
    if (k == n)
      return out;
    ++e[k];
  }
}

inline Scalar random_coeff(Rng& rng, std::int64_t range = 3)
{
  for (;;) {
    std::int64_t v = rng.uniform(-range, range);
    if (v != 0)
      return Scalar(v);
  }
}

// Terms whose exponents satisfy pred, picked at random from a small box.
inline Polynomial random_terms(Rng& rng, const Ring& ring, std::size_t n, std::size_t count,
                               const std::function<bool(const Exponent&)>& pred, std::uint32_t hi = 3)
{
  std::vector<Exponent> pool;
  for (auto& e : exponent_box(n, hi))
    if (pred(e))
      pool.push_back(e);
  Polynomial p(ring, n);
  for (std::size_t k = 0; k < count && !pool.empty(); ++k)
    p.add_term(pool[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(pool.size()) - 1))],
               random_coeff(rng));
  return p;
}

// ---------------------------------------------------------------------------
// Suites.

inline std::size_t cases_or(const Options& o, std::size_t dflt) { return o.cases ? o.cases : dflt; }

// Degree lower bound, the three-way minimality equivalence and inverse degrees.
inline Report suite_thm33(const Options& o)
{
  Report r;
  r.suite = "thm33";
  Rng rng(o.seed);
  const Ring Q = Ring::rationals();
  r.cases = cases_or(o, 300);
  for (std::size_t c = 0; c < r.cases; ++c) {
    AutWord F = sample_word(rng, 3, Q, static_cast<std::size_t>(rng.uniform(1, 8)));
    const Tuple& T = F.tuple();
    for (int k = 0; k < 10; ++k) {
      Weight w = random_weight(rng, 3, k < 7 ? 1 : 2, true);
      Multidegree md = mdeg_w(T, w);
      ++r["c1_checks"];
      if (md.total < DegValue(w.total())) {
        ++r["c1_violations"];
        r.fail_case("deg_w F < |w| for w=" + show(w) + " F=" + show(F));
      }
      std::vector<Gamma> d;
      for (const auto& e : md.entries)
        d.push_back(e.value());
      const bool eq = md.total == DegValue(w.total());
      const bool perm = detail::match_permutation(d, w).has_value();
      const bool inj = initial_injective(T, w);
      ++r["c2_checks"];
      if (eq)
        ++r["c2_minimal"];
      if (!(eq == perm && perm == inj)) {
        ++r["c2_mismatch"];
        r.fail_case("minimality tests disagree for w=" + show(w) + " F=" + show(F));
      }
      if (d == w.entries()) {
        try {
          AutWord inv = invert(F, 20000);
          ++r["c3_checks"];
          if (mdeg_w(inv.tuple(), w) != md) {
            ++r["c3_mismatch"];
            r.fail_case("mdeg of the inverse differs from w for w=" + show(w) + " F=" + show(F));
          }
        } catch (const Error& e) {
          if (e.code() != Errc::BudgetExceeded)
            throw;
          ++r["c3_budget"];
        }
      }
    }
  }
  return r;
}

// Case (a) or (b) of the dichotomy for every nonempty I, and a free index above the minimum.
inline Report suite_dichotomy(const Options& o)
{
  Report r;
  r.suite = "dichotomy";
  Rng rng(o.seed);
  const Ring Q = Ring::rationals();
  r.cases = cases_or(o, 200);
  for (std::size_t c = 0; c < r.cases; ++c) {
    AutWord F = sample_word(rng, 3, Q, static_cast<std::size_t>(rng.uniform(1, 8)));
    const Tuple& T = F.tuple();
    for (int k = 0; k < 5; ++k) {
      const std::size_t rank = k < 4 ? 1 : 2;
      Weight w = random_weight(rng, 3, rank, true);
      Weight v = random_signed_weight(rng, 3, rank, 2);
      for (unsigned mask = 1; mask < 8; ++mask) {
        std::vector<std::size_t> I;
        for (std::size_t i = 0; i < 3; ++i)
          if (mask & (1u << i))
            I.push_back(i);
        ++r["checks"];
        try {
          Dichotomy d = thm11_dichotomy(T, I, w, v);
          if (d.which == Dichotomy::Case::A) {
            ++r["case_a"];
            for (auto [j, i] : d.sigma)
              if (deg_w(T[j], w) != DegValue(w[i]))
                r.fail_case("case (a) bijection has a degree mismatch: F=" + show(F));
          } else {
            ++r["case_b"];
            const auto& I0 = d.sets.I0;
            if (std::find(I0.begin(), I0.end(), d.witness) == I0.end())
              r.fail_case("case (b) witness outside I0: F=" + show(F));
            for (auto j : d.sets.J) {
              const Polynomial top = initial_form(initial_form(T[j], w), v);
              bool divides = !top.is_zero();
              for (const auto& [e, cf] : top.terms())
                divides = divides && e[d.witness] > 0;
              if (divides)
                r.fail_case("case (b) witness divides a leading form: F=" + show(F));
            }
          }
        } catch (const Error& e) {
          if (e.code() != Errc::TheoremViolated)
            throw;
          ++r["violations"];
          r.fail_case(std::string(e.what()) + " w=" + show(w) + " F=" + show(F));
        }
      }
      if (mdeg_w(T, w).total > DegValue(w.total())) {
        ++r["cor12_checks"];
        if (!cor12_index(T, w))
          r.fail_case("no free index above the minimum for w=" + show(w) + " F=" + show(F));
      }
    }
  }
  return r;
}

// Feasibility against a box search, weight approximation and refinement.
inline Report suite_approx(const Options& o)
{
  Report r;
  r.suite = "approx";
  Rng rng(o.seed);
  const Ring Q = Ring::rationals();
  r.cases = cases_or(o, 500);
  for (std::size_t c = 0; c < r.cases; ++c) {
    const std::size_t dim = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<IntVec> S(static_cast<std::size_t>(rng.uniform(1, 4)), IntVec(dim));
    for (auto& a : S)
      for (auto& x : a)
        x = rng.uniform(-4, 4);
    auto fm = strict_positive_vector(S, dim);
    bool box = false;
    IntVec v(dim, -5);
    for (;;) {
      bool all = true;
      for (const auto& a : S)
        all = all && dot(a, v) >= 1;
      if (all) {
        box = true;
        break;
      }
      std::size_t k = 0;
      while (k < dim && v[k] == 5)
        v[k++] = -5;
      if (k == dim)
        break;
      ++v[k];
    }
    ++r["fm_checks"];
    if (fm) {
      ++r["fm_feasible"];
      for (const auto& a : S)
        if (dot(a, *fm) < 1)
          r.fail_case("Fourier-Motzkin vector violates a.v >= 1");
      if (!box)
        ++r["fm_outside_box"];
    } else {
      ++r["fm_infeasible"];
      if (box)
        r.fail_case("Fourier-Motzkin reports infeasible but the box has a solution");
    }
  }

  for (std::size_t c = 0; c < r.cases; ++c) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t rank = static_cast<std::size_t>(rng.uniform(1, 2));
    std::vector<IntVec> S(static_cast<std::size_t>(rng.uniform(1, 6)), IntVec(n));
    for (auto& a : S)
      for (auto& x : a)
        x = rng.uniform(-2, 3);
    Weight w = random_signed_weight(rng, n, rank, 3);
    const bool signs = rng.chance(1, 2);
    ++r["approx_checks"];
    try {
      EquivWitness ew = approximate_weight(S, w, signs);
      std::vector<IntVec> all = S;
      if (signs) {
        all.emplace_back(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
          IntVec e(n, 0);
          e[i] = 1;
          all.push_back(e);
        }
      }
      bool ok = true;
      for (const auto& a : all)
        for (const auto& b : all)
          ok = ok && ((dot(a, w) >= dot(b, w)) == (dot(a, ew.v) >= dot(b, ew.v)));
      if (signs)
        for (std::size_t i = 0; i < n; ++i) {
          const Gamma zero(rank);
          ok = ok && ((w[i] > zero) == (ew.v[i] > 0)) && ((w[i] < zero) == (ew.v[i] < 0));
        }
      if (!ok)
        r.fail_case("approximate_weight output fails the pair table for w=" + show(w));
    } catch (const Error& e) {
      r.fail_case(std::string("approximate_weight: ") + e.what());
    }
  }

  for (std::size_t c = 0; c < r.cases; ++c) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<Polynomial> fs;
    for (std::int64_t k = rng.uniform(1, 2); k > 0; --k) {
      Polynomial f = random_terms(rng, Q, n, static_cast<std::size_t>(rng.uniform(1, 4)),
                                  [](const Exponent&) { return true; });
      if (f.is_zero())
        f = Polynomial::constant(Q, n, 1);
      fs.push_back(f);
    }
    std::vector<Weight> ws;
    const bool positive_first = rng.chance(1, 2);
    for (std::int64_t k = rng.uniform(1, 3); k > 0; --k) {
      const std::size_t rank = static_cast<std::size_t>(rng.uniform(1, 2));
      ws.push_back(ws.empty() && positive_first ? random_weight(rng, n, rank, true, 4)
                                                : random_signed_weight(rng, n, rank, 3));
    }
    ++r["refine_checks"];
    try {
      Weight v = refine_weight(ws, fs);
      bool ok = !ws.front().all_pos() || v.all_pos();
      for (const auto& f : fs)
        ok = ok && initial_form(f, v) == iterated_initial_form(f, ws);
      if (!ok)
        r.fail_case("refine_weight output fails the iterated initial form check");
    } catch (const Error& e) {
      r.fail_case(std::string("refine_weight: ") + e.what());
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Realizer requests.

namespace sample {

// d built along a chain so that chain_realize's hypotheses hold with e = w.
struct ChainRequest {
  Weight w;
  Permutation sigma, tau;
  std::size_t r = 0;
  std::vector<Gamma> d;
};

inline ChainRequest random_chain_request(Rng& rng, std::size_t n, std::size_t rank)
{
  ChainRequest q;
  q.w = random_weight(rng, n, rank, true, 5);
  q.sigma = rng.permutation(n);
  q.tau = rng.permutation(n);
  q.r = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n)));
  std::vector<Gamma> ep(n), dp(n);
  for (std::size_t i = 0; i < n; ++i)
    ep[i] = q.w[q.tau[i]];
  dp = ep;
  for (std::size_t k = 0; k < q.r; ++k) {
    std::vector<Gamma> pool;
    for (std::size_t j = 0; j < n; ++j)
      if (j != k)
        pool.push_back(j < k ? dp[j] : ep[j]);
    bool placed = false;
    for (int attempt = 0; attempt < 30 && !placed; ++attempt) {
      Gamma s(rank);
      for (const auto& g : pool)
        s += rng.uniform(0, 2) * g;
      if (s >= ep[k] && !s.is_zero()) {
        dp[k] = s;
        placed = true;
      }
    }
    if (!placed) {
      q.r = k;
      break;
    }
  }
  q.d.assign(n, Gamma(rank));
  for (std::size_t k = 0; k < n; ++k)
    q.d[q.sigma[k]] = dp[k];
  return q;
}

inline bool thm72_hypotheses(const std::vector<Gamma>& d, const Weight& w)
{
  if (!in_semigroup(d[0], {w[1], w[2]}) || !in_semigroup(d[1], {d[0], w[2]}) || !in_semigroup(d[2], {d[0], d[1]}))
    return false;
  return d[0] <= d[1] || d[1] >= w[1] || d[1] == w[2] || in_semigroup(d[0], {w[2]}) ||
         in_semigroup(d[0], {w[1], d[1]});
}

} // namespace sample

inline Report suite_realize(const Options& o)
{
  Report r;
  r.suite = "realize";
  Rng rng(o.seed);
  const Ring Q = Ring::rationals();
  const std::vector<Ring> others{Ring::prime_field(5), Ring::mod_ring(4), Ring::mod_ring(6)};
  r.cases = cases_or(o, 200);

  auto cross_check = [&](const Certificate& c, const std::string& what) {
    ++r["certificates"];
    if (!c.ok() || !reverify(c))
      r.fail_case(what + ": certificate fails over Q");
    for (const auto& ring : others) {
      auto cc = recertify_over(c, ring);
      ++r["ring_checks"];
      if (!cc)
        r.fail_case(what + ": certificate fails over " + ring.name());
    }
  };

  for (std::size_t c = 0; c < r.cases; ++c) {
    const int kind = static_cast<int>(c % 3);
    if (kind == 0) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(3, 4));
      auto q = sample::random_chain_request(rng, n, rng.chance(1, 4) ? 2 : 1);
      const std::string what = "chain w=" + show(q.w) + " d=" + show(q.d);
      try {
        Certificate cert = chain_realize(AutWord(Q, n), q.w, q.sigma, q.tau, q.r, q.d, q.w.entries());
        ++r["chain"];
        cross_check(cert, what);
      } catch (const Error& e) {
        r.fail_case(what + ": " + e.what());
      }
    } else if (kind == 1) {
      bool done = false;
      for (int attempt = 0; attempt < 2000 && !done; ++attempt) {
        std::vector<std::int64_t> wv{rng.uniform(1, 4), rng.uniform(1, 4), rng.uniform(1, 4)};
        std::sort(wv.begin(), wv.end());
        Weight w = Weight::rank1(wv);
        const std::size_t l = static_cast<std::size_t>(rng.uniform(0, 2));
        const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 2));
        Gamma dp = w[l];
        if (rng.chance(1, 2)) {
          Gamma s(1);
          for (std::size_t j = 0; j < 3; ++j)
            if (j != l)
              s += rng.uniform(0, 2) * w[j];
          if (!(s > w[l]))
            continue;
          dp = s;
        }
        std::vector<std::int64_t> e{rng.uniform(1, 4), rng.uniform(1, 4), rng.uniform(1, 4)};
        std::sort(e.begin(), e.end());
        std::vector<Gamma> d;
        for (auto k : e)
          d.push_back(k * dp);
        ++r["lem73_attempts"];
        try {
          Certificate cert = realize_lem73(d, w, dp, l, m, Q);
          ++r["lem73"];
          done = true;
          cross_check(cert, "lem73 w=" + show(w) + " d=" + show(d));
        } catch (const Error& err) {
          if (err.code() != Errc::PreconditionFailed)
            r.fail_case(std::string("lem73: ") + err.what());
        }
      }
      if (!done)
        ++r["lem73_unsampled"];
    } else {
      bool done = false;
      for (int attempt = 0; attempt < 2000 && !done; ++attempt) {
        auto q = sample::random_chain_request(rng, 3, 1);
        if (!sample::thm72_hypotheses(q.d, q.w))
          continue;
        done = true;
        const std::string what = "thm72 w=" + show(q.w) + " d=" + show(q.d);
        try {
          Certificate cert = realize_thm72(q.d, q.w, Q);
          ++r["thm72"];
          cross_check(cert, what);
        } catch (const Error& e) {
          r.fail_case(what + ": " + e.what());
        }
      }
      if (!done)
        ++r["thm72_unsampled"];
    }
  }

  // Ascending degrees over w = (1, ..., 1) with a prefix-semigroup member.
  for (std::size_t n = 3; n <= 5; ++n)
    for (int k = 0; k < 10; ++k) {
      std::vector<std::int64_t> d;
      for (std::size_t i = 0; i + 1 < n; ++i)
        d.push_back(rng.uniform(1, 6));
      std::sort(d.begin(), d.end());
      const std::int64_t extra = rng.uniform(0, 2) * d[0] + rng.uniform(0, 1) * d[n - 2];
      d.push_back(std::max(extra, d.back()));
      std::sort(d.begin(), d.end());
      try {
        Certificate cert = realize_karas(d, Q);
        ++r["karas"];
        cross_check(cert, "karas n=" + std::to_string(n));
      } catch (const Error& e) {
        if (e.code() != Errc::PreconditionFailed)
          throw;
        ++r["karas_skipped"];
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// Minimal-degree automorphisms built from degree-preserving generators.

namespace sample {

inline Generator weight_preserving_generator(Rng& rng, const Weight& w, const Ring& ring)
{
  const std::size_t n = w.size();
  for (;;) {
    const auto roll = rng.uniform(0, 9);
    if (roll < 3) {
      AffineGen a = polydeg::detail::permutation_matrix(polydeg::detail::identity_perm(n));
      for (std::size_t i = 0; i < n; ++i) {
        a.matrix[i][i] = random_unit(ring, rng.engine());
        if (rng.chance(1, 3))
          a.shift[i] = random_coeff(rng, 2);
        for (std::size_t j = 0; j < n; ++j)
          if (j != i && w[j] == w[i] && rng.chance(1, 2))
            a.matrix[i][j] = random_coeff(rng, 2);
      }
      if (ring.is_unit(scalar_determinant(a.matrix, ring)))
        return a;
      continue;
    }
    if (roll < 4) {
      Permutation p = rng.permutation(n);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i)
        ok = ok && w[p[i]] == w[i];
      if (ok)
        return PermutationGen{p};
      continue;
    }
    const std::size_t l = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    Polynomial p = random_terms(rng, ring, n, static_cast<std::size_t>(rng.uniform(1, 3)), [&](const Exponent& e) {
      return e[l] == 0 && exponent_degree(e, w) <= w[l];
    });
    return ElementaryGen{l, random_unit(ring, rng.engine()), p};
  }
}

} // namespace sample

inline Report suite_factor(const Options& o)
{
  Report r;
  r.suite = "factor";
  Rng rng(o.seed);
  const Ring Q = Ring::rationals();
  r.cases = cases_or(o, 100);
  for (std::size_t c = 0; c < r.cases; ++c) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
    Weight w = random_weight(rng, n, 1, true, 3);
    AutWord word(Q, n);
    for (std::int64_t k = rng.uniform(1, 8); k > 0; --k)
      word.append(sample::weight_preserving_generator(rng, w, Q));
    word.append(PermutationGen{rng.permutation(n)});
    const Tuple& F = word.tuple();
    if (mdeg_w(F, w).total != DegValue(w.total())) {
      r.fail_case("generator produced a non-minimal map: " + show(word));
      continue;
    }
    try {
      Certificate cert = factor_min_degree(F, w);
      AutWord again = AutWord::from_generators(Q, n, cert.word.generators());
      ++r["factored"];
      r["generators"] += cert.word.length();
      if (again.tuple() != F || !cert.ok())
        r.fail_case("recomposition differs from the input: " + show(word));
    } catch (const Error& e) {
      r.fail_case(std::string(e.what()) + " w=" + show(w) + " word=" + show(word));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Elements of S(w, Q) in T_3.

namespace sample {

inline std::optional<AutWord> random_S_element(Rng& rng, const Weight& w, std::size_t max_len)
{
  const Ring Q = Ring::rationals();
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<Generator> gens;
    Polynomial p = random_terms(rng, Q, 3, static_cast<std::size_t>(rng.uniform(0, 2)), [&](const Exponent& e) {
      return e[2] == 0 && exponent_degree(e, w) <= w[2];
    });
    gens.push_back(ElementaryGen{2, random_unit(Q, rng.engine()), p});
    for (std::int64_t k = rng.uniform(1, static_cast<std::int64_t>(max_len)); k > 0; --k) {
      if (rng.chance(1, 6)) {
        gens.push_back(PermutationGen{polydeg::detail::transposition(3, 0, 1)});
        continue;
      }
      const std::size_t l = static_cast<std::size_t>(rng.uniform(0, 1));
      Polynomial q = random_terms(rng, Q, 3, static_cast<std::size_t>(rng.uniform(1, 2)), [&](const Exponent& e) {
        std::uint32_t t = e[0] + e[1] + e[2];
        return e[l] == 0 && t >= 1 && t <= 3;
      });
      gens.push_back(ElementaryGen{l, random_unit(Q, rng.engine()), q});
    }
    try {
      AutWord word = AutWord::from_generators(Q, 3, gens, 4000);
      if (in_S_shape(word.tuple(), w))
        return word;
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded)
        throw;
    }
  }
  return std::nullopt;
}

inline bool degree_in_others(const std::vector<Gamma>& d)
{
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::vector<Gamma> rest;
    for (std::size_t j = 0; j < d.size(); ++j)
      if (j != i)
        rest.push_back(d[j]);
    if (in_semigroup(d[i], rest))
      return true;
  }
  return false;
}

} // namespace sample

inline Report suite_reduction(const Options& o)
{
  Report r;
  r.suite = "reduction";
  Rng rng(o.seed);
  r.cases = cases_or(o, 100);
  for (std::size_t c = 0; c < r.cases; ++c) {
    Weight w = random_weight(rng, 3, 1, true, 4);
    auto word = sample::random_S_element(rng, w, 4);
    if (!word) {
      ++r["unsampled"];
      continue;
    }
    const Tuple& F = word->tuple();
    ReductionResult res = elementary_reduction_search(F, w, o.budget);
    switch (res.status) {
    case ReductionResult::Status::Found: {
      ++r["found"];
      Tuple expect = F;
      expect[res.index] = F[res.index] - res.h;
      if (!(res.new_deg < res.old_deg) || expect != res.reduced)
        r.fail_case("reported reduction does not lower the degree: " + show(*word));
      break;
    }
    case ReductionResult::Status::Budget:
      ++r["budget_flagged"];
      break;
    case ReductionResult::Status::Exhausted:
      r.fail_case("no elementary reduction for an element of S(w,Q): w=" + show(w) + " F=" + show(*word));
      break;
    }

    std::vector<Gamma> d;
    for (const auto& e : mdeg_w(F, w).entries)
      d.push_back(e.value());
    ++r["membership_checks"];
    if (!sample::degree_in_others(d)) {
      r.fail_case("no degree lies in the semigroup of the others: d=" + show(d));
      continue;
    }
    try {
      Certificate cert = realize_sc(d, w);
      ++r["fixed_x3_realized"];
      if (!recertify_over(cert, Ring::mod_ring(4)))
        r.fail_case("fixed-x3 realization fails over Z/4: d=" + show(d));
    } catch (const Error& e) {
      if (e.code() != Errc::PreconditionFailed)
        throw;
      ++r["fixed_x3_missing"];
      r.fail_case("no fixed-x3 realization for d=" + show(d) + " w=" + show(w));
    }
  }
  return r;
}

// Candidate partners G for F in S(w, Q); every one must fail an SU condition.
inline Report suite_sured(const Options& o)
{
  Report r;
  r.suite = "sured";
  Rng rng(o.seed);
  const Ring Q = Ring::rationals();
  r.cases = cases_or(o, 50);
  for (std::size_t c = 0; c < r.cases; ++c) {
    Weight w = random_weight(rng, 3, 1, true, 3);
    auto word = sample::random_S_element(rng, w, 3);
    if (!word) {
      ++r["unsampled"];
      continue;
    }
    const Tuple& F = word->tuple();
    for (const auto& sigma : detail::all_permutations(3)) {
      const Polynomial &f1 = F[sigma[0]], &f2 = F[sigma[1]], &f3 = F[sigma[2]];
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
          for (int cc = -1; cc <= 1; ++cc) {
            Polynomial g1 = f1 + (f3 * f3).scaled(a) + f3.scaled(cc);
            Polynomial g2 = f2 + f3.scaled(b);
            if (g1.is_constant() || g2.is_constant())
              continue;
            std::vector<Polynomial> Qs{Polynomial(Q, 2)};
            try {
              if (auto comb = detail::homog_combination(initial_form(f3, w), {g1, g2}, w)) {
                Polynomial lift(Q, 2);
                for (const auto& [ex, cf] : *comb)
                  lift.add_term(Exponent(ex.begin(), ex.end()), -cf);
                Qs.push_back(lift);
              }
            } catch (const Error& e) {
              if (e.code() != Errc::BudgetExceeded && e.code() != Errc::Unbounded)
                throw;
            }
            for (const auto& Qp : Qs) {
              Tuple G(3, Polynomial(Q, 3));
              G[sigma[0]] = g1;
              G[sigma[1]] = g2;
              try {
                G[sigma[2]] = f3 + substitute(Qp, {g1, g2}, 20000);
                Refutation ref = no_sured_in_S(F, sigma, G, Qp, w);
                ++r["refuted"];
                ++r["refuted_" + ref.condition];
              } catch (const Error& e) {
                if (e.code() == Errc::TheoremViolated)
                  r.fail_case(std::string(e.what()) + ": F=" + show(*word) + " w=" + show(w));
                else if (e.code() == Errc::BudgetExceeded)
                  ++r["budget_flagged"];
                else
                  throw;
              }
            }
          }
    }
  }
  return r;
}

// Two-variable words: the initial forms are powers of each other up to scalars.
inline Report suite_lemma61(const Options& o)
{
  Report r;
  r.suite = "lemma61";
  Rng rng(o.seed);
  const Ring Q = Ring::rationals();
  r.cases = cases_or(o, 300);
  for (std::size_t c = 0; c < r.cases; ++c) {
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      Weight w = Weight::rank1({rng.uniform(0, 4), rng.uniform(0, 4)});
      if (rng.chance(1, 5))
        w = random_weight(rng, 2, 2, false, 3);
      AutWord F = sample_word(rng, 2, Q, static_cast<std::size_t>(rng.uniform(1, 6)));
      Multidegree md = mdeg_w(F.tuple(), w);
      if (!(md.total > DegValue(w.total())))
        continue;
      found = true;
      ++r["checks"];
      const Gamma D1 = md.entries[0].value(), D2 = md.entries[1].value();
      const Polynomial h1 = initial_form(F.tuple()[0], w), h2 = initial_form(F.tuple()[1], w);
      bool ok = D1.is_positive() && D2.is_positive();
      if (ok) {
        bool prop = false;
        if (auto u = detail::positive_ratio(D1, D2); u && *u <= 200)
          prop = prop || proportional_scalar(h1, h2.pow(static_cast<std::uint32_t>(*u))).has_value();
        if (auto u = detail::positive_ratio(D2, D1); u && *u <= 200)
          prop = prop || proportional_scalar(h2, h1.pow(static_cast<std::uint32_t>(*u))).has_value();
        ok = prop;
      }
      if (!ok) {
        r.fail_case("initial forms are not proportional powers: w=" + show(w) + " F=" + show(F));
        continue;
      }
      std::vector<Gamma> d{D1, D2};
      if (realize_2var(d, w))
        ++r["realized"];
      else
        r.fail_case("no two-variable realization of d=" + show(d) + " w=" + show(w));
    }
    if (!found)
      ++r["unsampled"];
  }
  return r;
}

// Planted representations p = sum c_ij f^i g^j whose top terms cancel.
inline Report suite_suineq(const Options& o)
{
  Report r;
  r.suite = "suineq";
  Rng rng(o.seed);
  const Ring Q = Ring::rationals();
  r.cases = cases_or(o, 100);
  auto homogeneous = [&](std::size_t n, const Weight& w, Gamma& D) {
    Exponent e0(n, 0);
    while (std::all_of(e0.begin(), e0.end(), [](std::uint32_t x) { return x == 0; }))
      for (auto& x : e0)
        x = static_cast<std::uint32_t>(rng.uniform(0, 2));
    D = exponent_degree(e0, w);
    Polynomial u = Polynomial::monomial(Q, e0, random_coeff(rng));
    u += random_terms(rng, Q, n, static_cast<std::size_t>(rng.uniform(0, 1)),
                      [&](const Exponent& e) { return exponent_degree(e, w) == D; }, 2);
    return u;
  };
  auto lower = [&](std::size_t n, const Weight& w, const Gamma& bound) {
    return random_terms(rng, Q, n, static_cast<std::size_t>(rng.uniform(0, 2)),
                        [&](const Exponent& e) { return exponent_degree(e, w) < bound; }, 2);
  };
  for (std::size_t c = 0; c < r.cases; ++c) {
    bool done = false;
    for (int attempt = 0; attempt < 200 && !done; ++attempt) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 3));
      Weight w = rng.chance(1, 4) ? random_weight(rng, n, 2, true, 2) : random_weight(rng, n, 1, true, 3);
      Gamma D;
      Polynomial u = homogeneous(n, w, D);
      if (u.is_zero() || !is_homogeneous(u, w))
        continue;
      ExprWitness x;
      const Scalar cst = random_coeff(rng, 2);
      if (c % 2 == 0) {
        const std::uint32_t k = static_cast<std::uint32_t>(rng.uniform(2, 3));
        x.f = u + lower(n, w, D);
        x.g = u.pow(k).scaled(cst) + lower(n, w, static_cast<std::int64_t>(k) * D);
        x.coeffs = {{{0, 1}, Scalar(1)}, {{k, 0}, Scalar(-cst)}};
        x.p = x.g - x.f.pow(k).scaled(cst);
      } else {
        static const std::pair<std::uint32_t, std::uint32_t> ab[] = {{2, 3}, {3, 2}, {1, 2}, {2, 1}, {3, 4}, {2, 5}};
        auto [a, b] = ab[rng.uniform(0, 5)];
        x.f = u.pow(a) + lower(n, w, static_cast<std::int64_t>(a) * D);
        x.g = u.pow(b).scaled(cst) + lower(n, w, static_cast<std::int64_t>(b) * D);
        Scalar ca = 1;
        for (std::uint32_t k = 0; k < a; ++k)
          ca *= cst;
        x.coeffs = {{{0, a}, Scalar(1)}, {{b, 0}, Scalar(-ca)}};
        x.p = x.g.pow(a) - x.f.pow(b).scaled(ca);
      }
      try {
        InequalityVerdict v = su_inequality_check(x, w);
        done = true;
        ++r["checks"];
        if (v.vacuous)
          r.fail_case("planted witness has deg^S p = deg p: p=" + to_string(x.p));
        else
          ++r["holds"];
      } catch (const Error& e) {
        if (e.code() == Errc::NotIndependent)
          continue;
        done = true;
        r.fail_case(std::string(e.what()) + ": f=" + to_string(x.f) + " g=" + to_string(x.g) + " w=" + show(w));
      }
    }
    if (!done)
      ++r["unsampled"];
  }
  return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names()
{
  static const std::vector<std::string> names{"thm33",     "dichotomy", "approx", "realize", "factor",
                                              "reduction", "sured",     "lemma61", "suineq"};
  return names;
}

inline Report run(const std::string& suite, const Options& o)
{
  using Fn = Report (*)(const Options&);
  static const std::map<std::string, Fn> table{
      {"thm33", suite_thm33},     {"dichotomy", suite_dichotomy}, {"approx", suite_approx},
      {"realize", suite_realize}, {"factor", suite_factor},       {"reduction", suite_reduction},
      {"sured", suite_sured},     {"lemma61", suite_lemma61},     {"suineq", suite_suineq}};
  auto it = table.find(suite);
  if (it == table.end())
    fail(Errc::InvalidArgument, "unknown suite '" + suite + "'");
  auto t0 = std::chrono::steady_clock::now();
  Report r = it->second(o);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

} // namespace polydeg::harness

#endif
