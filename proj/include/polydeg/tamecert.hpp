#ifndef POLYDEG_TAMECERT_HPP
#define POLYDEG_TAMECERT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "autmap.hpp"
#include "wapprox.hpp"
#include "worder.hpp"

namespace polydeg {

inline constexpr std::size_t kNoFixedTail = std::numeric_limits<std::size_t>::max();

struct CheckRecord {
  std::string name;
  bool ok = false;
};

// A generator word together with the postconditions it was built to meet.
// Every check is recomputed from the generators by reverify().
struct Certificate {
  std::string realizer;
  Weight w;
  std::vector<Gamma> target;
  AutWord word;
  std::size_t fixed_from = kNoFixedTail;  // components >= fixed_from must equal x_i
  std::optional<Tuple> expected;         // exact tuple to reproduce, if any
  std::vector<CheckRecord> checks;

  bool ok() const
  {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.ok; });
  }
};

inline std::vector<CheckRecord> run_checks(const Certificate& c)
{
  std::vector<CheckRecord> out;
  const std::size_t n = c.word.nvars();
  AutWord again = AutWord::from_generators(c.word.ring(), n, c.word.generators());
  out.push_back({"recomposition", again.tuple() == c.word.tuple()});
  const Tuple& T = again.tuple();

  Multidegree md = mdeg_w(T, c.w);
  bool mdeg_ok = md.entries.size() == c.target.size();
  for (std::size_t i = 0; mdeg_ok && i < c.target.size(); ++i)
    mdeg_ok = md.entries[i] == DegValue(c.target[i]);
  out.push_back({"mdeg", mdeg_ok});

  if (again.has_affine())
    out.push_back({"in_aut_w", in_aut_w(T, c.w)});
  else
    out.push_back({"in_E_w", in_E_w(again, c.w)});

  if (c.fixed_from < n) {
    bool fixed = true;
    for (std::size_t i = c.fixed_from; i < n; ++i)
      fixed = fixed && T[i] == Polynomial::variable(c.word.ring(), n, i);
    out.push_back({"fixed_tail", fixed});
  }
  if (c.expected)
    out.push_back({"matches_input", T == *c.expected});
  return out;
}

inline bool reverify(const Certificate& c)
{
  auto checks = run_checks(c);
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& r) { return r.ok; });
}

inline std::optional<Certificate> try_certify(std::string realizer, const Weight& w, std::vector<Gamma> target,
                                              AutWord word, std::size_t fixed_from = kNoFixedTail,
                                              std::optional<Tuple> expected = std::nullopt)
{
  Certificate c{std::move(realizer), w, std::move(target), std::move(word), fixed_from, std::move(expected), {}};
  c.checks = run_checks(c);
  if (!c.ok())
    return std::nullopt;
  return c;
}

inline Certificate certify(std::string realizer, const Weight& w, std::vector<Gamma> target, AutWord word,
                           std::size_t fixed_from = kNoFixedTail, std::optional<Tuple> expected = std::nullopt)
{
  Certificate c{std::move(realizer), w, std::move(target), std::move(word), fixed_from, std::move(expected), {}};
  c.checks = run_checks(c);
  for (const auto& r : c.checks)
    if (!r.ok)
      fail(Errc::InternalInfeasible, c.realizer + ": construction failed check " + r.name);
  return c;
}

// The same generator word read over another coefficient ring.
inline AutWord transport(const AutWord& word, const Ring& ring, std::size_t budget = kDefaultTermBudget)
{
  std::vector<Generator> gens;
  for (const auto& g : word.generators()) {
    if (auto* e = std::get_if<ElementaryGen>(&g)) {
      gens.push_back(ElementaryGen{e->index, ring.normalize(e->unit), e->p.change_ring(ring)});
    } else if (auto* a = std::get_if<AffineGen>(&g)) {
      AffineGen b = *a;
      for (auto& row : b.matrix)
        for (auto& c : row)
          c = ring.normalize(c);
      for (auto& c : b.shift)
        c = ring.normalize(c);
      gens.push_back(std::move(b));
    } else {
      gens.push_back(g);
    }
  }
  return AutWord::from_generators(ring, word.nvars(), gens, budget);
}

inline std::optional<Certificate> recertify_over(const Certificate& c, const Ring& ring)
{
  return try_certify(c.realizer, c.w, c.target, transport(c.word, ring), c.fixed_from);
}

namespace detail {

// Coefficient-1 monomial prod x_v^k over the listed (v, k) pairs.
inline Polynomial monomial(const Ring& ring, std::size_t n, std::initializer_list<std::pair<std::size_t, std::uint64_t>> f)
{
  Exponent e(n, 0);
  for (auto [v, k] : f)
    e[v] += static_cast<std::uint32_t>(k);
  return Polynomial::monomial(ring, std::move(e), 1);
}

inline Polynomial monomial(const Ring& ring, const std::vector<std::uint64_t>& a)
{
  Exponent e(a.begin(), a.end());
  return Polynomial::monomial(ring, std::move(e), 1);
}

inline Permutation identity_perm(std::size_t n)
{
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Permutation transposition(std::size_t n, std::size_t a, std::size_t b)
{
  Permutation p = identity_perm(n);
  std::swap(p[a], p[b]);
  return p;
}

inline bool is_identity_perm(const Permutation& p)
{
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i)
      return false;
  return true;
}

inline void push_perm(std::vector<Generator>& gens, const Permutation& p)
{
  if (!is_identity_perm(p))
    gens.push_back(PermutationGen{p});
}

inline void push_elem(std::vector<Generator>& gens, std::size_t l, Polynomial p)
{
  if (!p.is_zero())
    gens.push_back(ElementaryGen{l, 1, std::move(p)});
}

inline AffineGen permutation_matrix(const Permutation& s)
{
  const std::size_t n = s.size();
  AffineGen a;
  a.matrix.assign(n, std::vector<Scalar>(n, 0));
  a.shift.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    a.matrix[i][s[i]] = 1;
  return a;
}

// sigma with d_i = w_{sigma(i)}, if d is a rearrangement of w.
inline std::optional<Permutation> match_permutation(const std::vector<Gamma>& d, const Weight& w)
{
  const std::size_t n = d.size();
  if (n != w.size())
    return std::nullopt;
  std::vector<bool> used(n, false);
  Permutation s(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < n && !found; ++j)
      if (!used[j] && w[j] == d[i]) {
        used[j] = true;
        s[i] = j;
        found = true;
      }
    if (!found)
      return std::nullopt;
  }
  return s;
}

// Semigroup decompositions of d over gens, trying both generator orders so
// that both extreme lexicographic solutions are offered.
inline std::vector<std::vector<std::uint64_t>> decompositions(const Gamma& d, const std::vector<Gamma>& gens)
{
  std::vector<std::vector<std::uint64_t>> out;
  if (auto a = semigroup_member(d, gens))
    out.push_back(*a);
  std::vector<Gamma> rev(gens.rbegin(), gens.rend());
  if (auto b = semigroup_member(d, rev)) {
    std::vector<std::uint64_t> back(b->rbegin(), b->rend());
    if (out.empty() || out.front() != back)
      out.push_back(back);
  }
  return out;
}

inline std::optional<std::uint64_t> positive_ratio(const Gamma& a, const Gamma& b)
{
  if (b.is_zero())
    return std::nullopt;
  auto k = integer_ratio(a, b);
  if (!k || *k < 1)
    return std::nullopt;
  return static_cast<std::uint64_t>(*k);
}

inline std::vector<Permutation> all_permutations(std::size_t n)
{
  std::vector<Permutation> out;
  Permutation p = identity_perm(n);
  do
    out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Stable-coordinate degrees.

struct CwWitness {
  enum class Kind { Variable, Composite } kind = Kind::Variable;
  std::size_t index = 0;
  std::vector<std::uint64_t> exponents;  // a_j, with a_index = 0
  Polynomial coordinate;
};

// A coordinate of w-degree d: x_i when d = w_i, else x_i + prod_{j != i} x_j^{a_j}
// for d in C(w).  nullopt means no stable coordinate has degree d.
inline std::optional<CwWitness> cw_witness(const Gamma& d, const Weight& w, const Ring& ring = Ring::rationals())
{
  require(w.all_nonneg(), Errc::PreconditionFailed, "weights must be nonnegative");
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i)
    if (w[i] == d)
      return CwWitness{CwWitness::Kind::Variable, i, std::vector<std::uint64_t>(n, 0),
                       Polynomial::variable(ring, n, i)};
  for (std::size_t i = n; i-- > 0;) {
    if (d < w[i])
      continue;
    std::vector<Gamma> gens;
    for (std::size_t j = 0; j < n; ++j)
      gens.push_back(j == i ? Gamma(w.rank()) : w[j]);
    auto a = semigroup_member(d, gens);
    if (!a)
      continue;
    Polynomial c = Polynomial::variable(ring, n, i) + detail::monomial(ring, *a);
    if (deg_w(c, w) != DegValue(d))
      fail(Errc::InternalInfeasible, "coordinate degree mismatch");
    return CwWitness{CwWitness::Kind::Composite, i, *a, std::move(c)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Factorization of automorphisms of minimal w-degree.

namespace detail {

// Generators whose composite has components G_0..G_{m-1} in their first m
// slots and fixes the rest.  G_i uses only x_<m, w is ascending and
// deg_w G_i = w_i.
inline void factor_prefix(const Tuple& G, std::size_t m, const Weight& w, std::vector<Generator>& out)
{
  if (m == 0)
    return;
  const Ring& ring = G.front().ring();
  const std::size_t n = G.size();
  std::size_t l = m - 1;
  while (l > 0 && w[l - 1] == w[m - 1])
    --l;

  AffineGen A = permutation_matrix(identity_perm(n));
  std::vector<Polynomial> h(m, Polynomial(ring, n));
  std::vector<bool> low(n, false);
  for (std::size_t j = 0; j < l; ++j)
    low[j] = true;

  for (std::size_t i = l; i < m; ++i) {
    A.matrix[i][i] = 0;
    for (const auto& [e, c] : G[i].terms()) {
      Polynomial t = Polynomial::monomial(ring, e, c);
      if (t.only_uses(low)) {
        h[i].add_term(e, c);
        continue;
      }
      std::size_t var = n, total = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (e[j] != 0) {
          var = j;
          total += e[j];
        }
      if (total != 1 || var < l || var >= m)
        fail(Errc::PreconditionFailed, "component " + std::to_string(i + 1) +
                                           " is not linear in the top weight block plus lower terms");
      A.matrix[i][var] = c;
    }
  }

  std::vector<std::vector<Scalar>> block;
  for (std::size_t i = l; i < m; ++i)
    block.emplace_back(A.matrix[i].begin() + static_cast<std::ptrdiff_t>(l),
                       A.matrix[i].begin() + static_cast<std::ptrdiff_t>(m));
  if (!ring.is_unit(scalar_determinant(block, ring)))
    fail(Errc::PreconditionFailed, "top weight block is not invertible");

  if (l == 0) {
    for (std::size_t i = 0; i < m; ++i)
      A.shift[i] = h[i].constant_term();
    if (!(A.matrix == permutation_matrix(identity_perm(n)).matrix) ||
        std::any_of(A.shift.begin(), A.shift.end(), [](const Scalar& s) { return s != 0; }))
      out.push_back(A);
    return;
  }

  if (!(A.matrix == permutation_matrix(identity_perm(n)).matrix))
    out.push_back(A);
  for (std::size_t i = l; i < m; ++i)
    push_elem(out, i, h[i]);

  for (std::size_t i = 0; i < l; ++i)
    if (!G[i].only_uses(low))
      fail(Errc::PreconditionFailed, "lower block component " + std::to_string(i + 1) +
                                         " involves top-weight variables");
  factor_prefix(G, l, w, out);
}

} // namespace detail

// Affine and elementary word composing exactly to F, for deg_w F = |w|.
inline Certificate factor_min_degree(const Tuple& F, const Weight& w)
{
  require(!F.empty() && F.size() == F.front().nvars() && F.size() == w.size(), Errc::ArityMismatch,
          "tuple, variables and weight must agree in size");
  require(w.all_pos(), Errc::PreconditionFailed, "weight must be strictly positive");
  const std::size_t n = F.size();
  const Ring& ring = F.front().ring();
  Multidegree md = mdeg_w(F, w);
  if (md.total != DegValue(w.total()))
    fail(Errc::PreconditionFailed, "deg_w F = " + md.total.str() + " differs from |w| = " + w.total().str());

  Permutation rho = detail::identity_perm(n), tau = detail::identity_perm(n);
  std::stable_sort(rho.begin(), rho.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  std::stable_sort(tau.begin(), tau.end(), [&](std::size_t a, std::size_t b) { return md.entries[a] < md.entries[b]; });
  const Permutation rho_inv = inverse_permutation(rho);

  // G = P_{rho^-1} o F o P_tau: sorted components in renamed variables.
  Tuple rename;
  for (std::size_t j = 0; j < n; ++j)
    rename.push_back(Polynomial::variable(ring, n, rho_inv[j]));
  Tuple G;
  std::vector<Gamma> ws;
  for (std::size_t i = 0; i < n; ++i) {
    G.push_back(substitute(F[tau[i]], rename));
    ws.push_back(w[rho[i]]);
  }
  Weight wsorted(ws);

  std::vector<Generator> gens;
  if (!detail::is_identity_perm(rho))
    gens.push_back(detail::permutation_matrix(rho));
  detail::factor_prefix(G, n, wsorted, gens);
  const Permutation tau_inv = inverse_permutation(tau);
  if (!detail::is_identity_perm(tau_inv))
    gens.push_back(detail::permutation_matrix(tau_inv));

  std::vector<Gamma> target;
  for (const auto& e : md.entries)
    target.push_back(e.value());
  return certify("factor", w, std::move(target), AutWord::from_generators(ring, n, gens), kNoFixedTail, F);
}

// ---------------------------------------------------------------------------
// Two-variable realizations, acting on x_1, x_2 and fixing the rest.

namespace detail {

inline std::vector<std::vector<Generator>> pair_candidates(const Gamma& d0, const Gamma& d1, const Weight& w,
                                                           const Ring& ring)
{
  const std::size_t n = w.size();
  std::vector<std::vector<Generator>> out;
  const Gamma d[2] = {d0, d1};
  if (d0 == w[0] && d1 == w[1])
    out.push_back({});
  if (d0 == w[1] && d1 == w[0])
    out.push_back({PermutationGen{transposition(n, 0, 1)}});

  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t j = 1 - i;
    for (std::size_t r = 0; r < 2; ++r) {
      const std::size_t s = 1 - r;
      if (!w[r].is_positive())
        continue;
      // g_j = x_r, g_i = x_s + x_r^u
      if (d[j] == w[r])
        if (auto u = positive_ratio(d[i], w[r])) {
          std::vector<Generator> g;
          push_elem(g, s, monomial(ring, n, {{r, *u}}));
          if (i != s)
            g.push_back(PermutationGen{transposition(n, 0, 1)});
          out.push_back(std::move(g));
        }
      auto lr = positive_ratio(d[j], w[r]);
      if (!lr || d[j] < w[s])
        continue;
      auto u = positive_ratio(d[i], d[j]);
      if (!u)
        continue;
      std::vector<Generator> g;
      push_elem(g, s, monomial(ring, n, {{r, *lr}}));
      if (d[i] > w[r])
        push_elem(g, r, monomial(ring, n, {{s, *u}}));
      else if (d[i] != w[r])
        continue;
      if (i != r)
        g.push_back(PermutationGen{transposition(n, 0, 1)});
      out.push_back(std::move(g));
    }
  }
  return out;
}

} // namespace detail

// Elementary word in two variables with w-multidegree d, or nullopt when d
// lacks the proportionality structure every such multidegree has.
inline std::optional<Certificate> realize_2var(const std::vector<Gamma>& d, const Weight& w,
                                               const Ring& ring = Ring::rationals())
{
  require(d.size() == 2 && w.size() == 2, Errc::ArityMismatch, "two degrees and two weights expected");
  require(w.all_nonneg(), Errc::PreconditionFailed, "weights must be nonnegative");
  for (auto& gens : detail::pair_candidates(d[0], d[1], w, ring)) {
    AutWord word = AutWord::from_generators(ring, 2, gens);
    if (auto c = try_certify("vdk2", w, d, std::move(word)))
      return c;
  }
  return std::nullopt;
}

// Realization fixing x_3..x_n for multidegrees of the form covered by the
// two-variable reduction.  If the source automorphism is given, its shape
// conditions are checked as well.
inline Certificate realize_vdk3(const std::vector<Gamma>& d, const Weight& w, const Ring& ring = Ring::rationals(),
                                const Tuple* source = nullptr)
{
  const std::size_t n = w.size();
  require(n >= 2 && d.size() == n, Errc::ArityMismatch, "target and weight sizes differ");
  require(w.all_nonneg(), Errc::PreconditionFailed, "weights must be nonnegative");
  if (!(d[0] + d[1] > w[0] + w[1]))
    fail(Errc::PreconditionFailed, "(b) deg f1 + deg f2 > w1 + w2 fails");
  for (std::size_t i = 2; i < n; ++i)
    if (d[i] != w[i])
      fail(Errc::PreconditionFailed, "(c) deg f" + std::to_string(i + 1) + " = w" + std::to_string(i + 1) + " fails");
  if (source) {
    require(source->size() == n, Errc::ArityMismatch, "source has the wrong size");
    std::vector<bool> first_two(n, false);
    first_two[0] = first_two[1] = true;
    for (std::size_t i = 0; i < 2; ++i)
      if (!initial_form((*source)[i], w).only_uses(first_two))
        fail(Errc::PreconditionFailed, "(a) initial form of f" + std::to_string(i + 1) + " leaves k[x1,x2]");
    Multidegree md = mdeg_w(*source, w);
    for (std::size_t i = 0; i < n; ++i)
      if (md.entries[i] != DegValue(d[i]))
        fail(Errc::PreconditionFailed, "source multidegree differs from the target");
    Tuple tail = Polynomial::identity((*source)[0].ring(), n);
    for (std::size_t i = 2; i < n; ++i)
      tail[i] = (*source)[i];
    bool coordinate_system = false;
    if (w.all_pos()) {
      try {
        factor_min_degree(tail, w);
        coordinate_system = true;
      } catch (const Error& e) {
        if (e.code() != Errc::PreconditionFailed)
          throw;
      }
    } else {
      coordinate_system = jacobian_is_unit_constant(tail);
    }
    if (!coordinate_system)
      fail(Errc::PreconditionFailed, "(d) x1, x2, f3, ..., fn do not generate the polynomial ring");
  }
  for (auto& gens : detail::pair_candidates(d[0], d[1], w, ring)) {
    AutWord word = AutWord::from_generators(ring, n, gens);
    if (auto c = try_certify("vdk", w, d, std::move(word), 2))
      return *c;
  }
  fail(Errc::PreconditionFailed, "the first two degrees are not proportional in the required way");
}

// ---------------------------------------------------------------------------
// Chains of elementary maps.

// psi o phi with mdeg_w = d, where phi raises degrees one index at a time
// along sigma, using d-values already placed and e-values still pending.
inline Certificate chain_realize(const AutWord& psi, const Weight& w, const Permutation& sigma,
                                 const Permutation& tau, std::size_t r, const std::vector<Gamma>& d,
                                 const std::vector<Gamma>& e)
{
  const std::size_t n = psi.nvars();
  require(w.size() == n && d.size() == n && e.size() == n && sigma.size() == n && tau.size() == n,
          Errc::ArityMismatch, "chain data sizes differ");
  require(is_permutation(sigma) && is_permutation(tau), Errc::InvalidArgument, "sigma and tau must be permutations");
  require(r <= n, Errc::InvalidArgument, "r exceeds n");
  Multidegree md = mdeg_w(psi.tuple(), w);
  for (std::size_t i = 0; i < n; ++i)
    if (md.entries[i] != DegValue(e[i]))
      fail(Errc::PreconditionFailed, "mdeg of psi differs from e at index " + std::to_string(i + 1));
  if (!in_aut_w(psi.tuple(), w))
    fail(Errc::PreconditionFailed, "psi has a zero-divisor initial form");

  std::vector<Gamma> dp(n), ep(n);
  for (std::size_t i = 0; i < n; ++i) {
    dp[i] = d[sigma[i]];
    ep[i] = e[tau[i]];
  }
  for (std::size_t k = r; k < n; ++k)
    if (dp[k] != ep[k])
      fail(Errc::PreconditionFailed, "position " + std::to_string(k + 1) + " beyond r must keep its degree");

  const Ring& ring = psi.ring();
  std::vector<Generator> gens(psi.generators());
  detail::push_perm(gens, tau);
  for (std::size_t k = 0; k < r; ++k) {
    if (dp[k] < ep[k])
      fail(Errc::PreconditionFailed, "position " + std::to_string(k + 1) + ": target degree below current degree");
    std::vector<Gamma> pool(n, Gamma(w.rank()));
    for (std::size_t j = 0; j < n; ++j)
      if (j != k)
        pool[j] = j < k ? dp[j] : ep[j];
    auto a = semigroup_member(dp[k], pool);
    if (!a)
      fail(Errc::PreconditionFailed, "position " + std::to_string(k + 1) + ": degree " + dp[k].str() +
                                         " is not in the available semigroup");
    if (dp[k] > ep[k])
      detail::push_elem(gens, k, detail::monomial(ring, *a));
  }
  detail::push_perm(gens, inverse_permutation(sigma));
  return certify("chain", w, d, AutWord::from_generators(ring, n, gens));
}

// Karas-type realization over w = (1, ..., 1) for ascending positive
// integers where some d_i lies in the semigroup of its predecessors.
inline Certificate realize_karas(const std::vector<std::int64_t>& d, const Ring& ring = Ring::rationals())
{
  const std::size_t n = d.size();
  require(n >= 2, Errc::PreconditionFailed, "need at least two degrees");
  for (std::size_t i = 0; i < n; ++i) {
    require(d[i] >= 1, Errc::PreconditionFailed, "degrees must be positive");
    require(i == 0 || d[i - 1] <= d[i], Errc::PreconditionFailed, "degrees must be ascending");
  }
  Weight w = Weight::rank1(std::vector<std::int64_t>(n, 1));
  std::vector<Gamma> dg, e(n, Gamma{1});
  for (auto v : d)
    dg.push_back(Gamma{v});
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<Gamma> prev(dg.begin(), dg.begin() + static_cast<std::ptrdiff_t>(i));
    if (!in_semigroup(dg[i], prev))
      continue;
    Permutation sigma;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i)
        sigma.push_back(j);
    sigma.push_back(i);
    Certificate c = chain_realize(AutWord(ring, n), w, sigma, detail::identity_perm(n), n, dg, e);
    c.realizer = "karas";
    return c;
  }
  fail(Errc::PreconditionFailed, "no degree lies in the semigroup of its predecessors");
}

// ---------------------------------------------------------------------------
// Realizations with the last variable fixed (n = 3).

namespace detail {

inline std::vector<Gamma> multiples_below(const Gamma& base, const Gamma& bound, std::size_t cap = 32)
{
  std::vector<Gamma> out;
  if (!base.is_positive())
    return out;
  Gamma cur = base;
  for (std::size_t k = 0; k < cap && cur < bound; ++k) {
    out.push_back(cur);
    cur += base;
  }
  return out;
}

// Generator lists on three variables with components of degrees (d0, d1)
// and third component x_3.
inline std::vector<std::vector<Generator>> sc_candidates(const Gamma& d0, const Gamma& d1, const Weight& w,
                                                         const Ring& ring)
{
  const std::size_t n = 3;
  const Gamma d[2] = {d0, d1};
  auto out = pair_candidates(d0, d1, w, ring);
  const Permutation swap = transposition(n, 0, 1);

  // (x_r + a(x_s + b x_r^p x_3^q)^l2 x_3^l3, x_s + b x_r^p x_3^q, x_3)
  for (std::size_t t = 0; t < 2; ++t) {
    const std::size_t o = 1 - t;
    for (std::size_t r = 0; r < 2; ++r) {
      const std::size_t s = 1 - r;
      if (d[t] < w[r] || d[o] < w[s])
        continue;
      const bool alpha = d[t] > w[r], beta = d[o] > w[s];
      auto outer = alpha ? decompositions(d[t], {d[o], w[2]}) : std::vector<std::vector<std::uint64_t>>{{0, 0}};
      auto inner = beta ? decompositions(d[o], {w[r], w[2]}) : std::vector<std::vector<std::uint64_t>>{{0, 0}};
      for (const auto& L : outer)
        for (const auto& P : inner) {
          std::vector<Generator> g;
          if (beta)
            push_elem(g, s, monomial(ring, n, {{r, P[0]}, {2, P[1]}}));
          if (alpha)
            push_elem(g, r, monomial(ring, n, {{s, L[0]}, {2, L[1]}}));
          if (t != r)
            g.push_back(PermutationGen{swap});
          out.push_back(std::move(g));
        }
    }
  }

  // (x_i + x_3^e, x_l + x_i^u x_3^v, x_3) in either component order.
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < 2; ++i) {
      const std::size_t l = 1 - i;
      std::optional<std::uint64_t> e0 = 0;
      if (d[c] != w[i])
        e0 = d[c] > w[i] ? positive_ratio(d[c], w[2]) : std::nullopt;
      if (!e0)
        continue;
      std::vector<std::vector<std::uint64_t>> uv{{0, 0}};
      if (d[1 - c] != w[l]) {
        if (d[1 - c] < w[l])
          continue;
        uv = decompositions(d[1 - c], {w[i], w[2]});
      }
      for (const auto& a : uv) {
        std::vector<Generator> g;
        if (d[1 - c] != w[l])
          push_elem(g, l, monomial(ring, n, {{i, a[0]}, {2, a[1]}}));
        if (*e0 > 0)
          push_elem(g, i, monomial(ring, n, {{2, *e0}}));
        if (c != i)
          g.push_back(PermutationGen{swap});
        out.push_back(std::move(g));
      }
    }

  // (g_i, g_j + g_i^l1 x_3^l3, x_3) over a two-variable pair (g_i, g_j).
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t j = 1 - i;
    auto lifts = decompositions(d[j], {d[i], w[2]});
    if (lifts.empty())
      continue;
    std::vector<Gamma> lower{w[0], w[1]};
    for (const auto& base : {w[0], w[1], d[i]})
      for (auto& v : multiples_below(base, d[j]))
        lower.push_back(v);
    std::sort(lower.begin(), lower.end());
    lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
    for (const auto& dl : lower) {
      if (!(dl < d[j]))
        continue;
      Gamma pd[2];
      pd[i] = d[i];
      pd[j] = dl;
      for (auto& base : pair_candidates(pd[0], pd[1], w, ring))
        for (const auto& L : lifts) {
          auto g = base;
          push_elem(g, j, monomial(ring, n, {{i, L[0]}, {2, L[1]}}));
          out.push_back(std::move(g));
        }
    }
  }
  return out;
}

} // namespace detail

// Elementary word (g_1, g_2, x_3) with w-multidegree d (so d_3 = w_3).
inline Certificate realize_sc(const std::vector<Gamma>& d, const Weight& w, const Ring& ring = Ring::rationals())
{
  require(d.size() == 3 && w.size() == 3, Errc::ArityMismatch, "three degrees and three weights expected");
  require(w.all_nonneg(), Errc::PreconditionFailed, "weights must be nonnegative");
  if (d[2] != w[2])
    fail(Errc::PreconditionFailed, "third degree must equal w3 when the third component is x3");
  for (auto& gens : detail::sc_candidates(d[0], d[1], w, ring)) {
    AutWord word = AutWord::from_generators(ring, 3, gens);
    if (auto c = try_certify("sc", w, d, std::move(word), 2))
      return *c;
  }
  fail(Errc::PreconditionFailed, "no construction with fixed x3 reaches this multidegree");
}

namespace detail {

// Candidates for ascending w with d0, d1 <= w2.
inline std::vector<std::vector<Generator>> thm16_sorted(const std::vector<Gamma>& d, const Weight& w, const Ring& ring)
{
  const std::size_t n = 3;
  std::vector<std::vector<Generator>> out;
  const Permutation swap12 = transposition(n, 1, 2);

  // Both of the first two components in k[x1, x2].
  if (d[2] == w[2] || d[2] > w[2]) {
    std::vector<std::vector<std::uint64_t>> tails{{0, 0}};
    if (d[2] > w[2])
      tails = decompositions(d[2], {w[0], w[1]});
    for (const auto& t : tails)
      for (auto g : pair_candidates(d[0], d[1], w, ring)) {
        if (d[2] > w[2])
          push_elem(g, 2, monomial(ring, n, {{0, t[0]}, {1, t[1]}}));
        out.push_back(std::move(g));
      }
  }
  if (d[2] == w[2])
    for (auto& g : sc_candidates(d[0], d[1], w, ring))
      out.push_back(std::move(g));
  // Second component linear in x3.
  if (d[1] == w[2])
    for (auto g : sc_candidates(d[0], d[2], w, ring)) {
      g.push_back(PermutationGen{swap12});
      out.push_back(std::move(g));
    }
  // Both linear in x3: realize (d', d2, w3) and put x3 in the middle.
  if (d[0] == w[2] && d[1] == w[2]) {
    std::vector<Gamma> lows{w[0], w[1], w[2]};
    for (const auto& base : {w[0], w[1]})
      for (auto& v : multiples_below(base, w[2]))
        lows.push_back(v);
    std::sort(lows.begin(), lows.end());
    lows.erase(std::unique(lows.begin(), lows.end()), lows.end());
    for (const auto& dl : lows)
      for (auto g : sc_candidates(dl, d[2], w, ring)) {
        g.push_back(PermutationGen{swap12});
        if (dl < w[2])
          push_elem(g, 0, monomial(ring, n, {{1, 1}}));
        out.push_back(std::move(g));
      }
  }
  return out;
}

} // namespace detail

// Realization when at least two target degrees are at most max(w).
inline Certificate realize_thm16(const std::vector<Gamma>& d, const Weight& w, const Ring& ring = Ring::rationals())
{
  require(d.size() == 3 && w.size() == 3, Errc::ArityMismatch, "three degrees and three weights expected");
  require(w.all_pos(), Errc::PreconditionFailed, "weights must be positive");
  Gamma wmax = std::max({w[0], w[1], w[2]});
  int small = 0;
  for (const auto& x : d)
    small += x <= wmax ? 1 : 0;
  if (small < 2)
    fail(Errc::PreconditionFailed, "fewer than two degrees are at most max(w)");

  if (auto s = detail::match_permutation(d, w))
    return certify("thm16", w, d, AutWord::from_generators(ring, 3, {PermutationGen{*s}}));

  Permutation rho = detail::identity_perm(3);
  std::stable_sort(rho.begin(), rho.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  Weight ws(std::vector<Gamma>{w[rho[0]], w[rho[1]], w[rho[2]]});
  for (const auto& tau : detail::all_permutations(3)) {
    std::vector<Gamma> dt{d[tau[0]], d[tau[1]], d[tau[2]]};
    if (!(dt[0] <= ws[2] && dt[1] <= ws[2]))
      continue;
    for (auto& inner : detail::thm16_sorted(dt, ws, ring)) {
      std::vector<Generator> gens;
      detail::push_perm(gens, rho);
      gens.insert(gens.end(), inner.begin(), inner.end());
      detail::push_perm(gens, inverse_permutation(tau));
      if (auto c = try_certify("thm16", w, d, AutWord::from_generators(ring, 3, gens)))
        return *c;
    }
  }
  fail(Errc::PreconditionFailed, "no construction reaches this multidegree");
}

// ---------------------------------------------------------------------------
// n = 3 chain conditions.

namespace detail {

inline Permutation perm1(std::initializer_list<std::size_t> one_based)
{
  Permutation p;
  for (auto v : one_based)
    p.push_back(v - 1);
  return p;
}

} // namespace detail

inline Certificate realize_thm72(const std::vector<Gamma>& d, const Weight& w, const Ring& ring = Ring::rationals())
{
  require(d.size() == 3 && w.size() == 3, Errc::ArityMismatch, "three degrees and three weights expected");
  require(w.all_pos(), Errc::PreconditionFailed, "weights must be positive");
  if (auto s = detail::match_permutation(d, w))
    return certify("thm72", w, d, AutWord::from_generators(ring, 3, {PermutationGen{*s}}));

  if (!in_semigroup(d[0], {w[1], w[2]}))
    fail(Errc::PreconditionFailed, "d1 is not in N w2 + N w3");
  if (!in_semigroup(d[1], {d[0], w[2]}))
    fail(Errc::PreconditionFailed, "d2 is not in N d1 + N w3");
  if (!in_semigroup(d[2], {d[0], d[1]}))
    fail(Errc::PreconditionFailed, "d3 is not in N d1 + N d2");
  const bool a = d[0] <= d[1], b = d[1] >= w[1], c = d[1] == w[2];
  const bool d_in_w3 = in_semigroup(d[0], {w[2]});
  const bool dd = d_in_w3 || in_semigroup(d[0], {w[1], d[1]});
  if (!(a || b || c || dd))
    fail(Errc::PreconditionFailed, "none of the conditions (a)-(d) holds");

  using detail::perm1;
  struct Choice {
    Permutation sigma, tau;
    std::size_t r;
  };
  std::vector<Choice> order;
  const Permutation id = perm1({1, 2, 3});
  if (a) {
    order.push_back({id, id, 3});
    for (const auto& rho : {id, perm1({1, 3, 2})}) {
      order.push_back({perm1({2, 1, 3}), rho, 3});
      order.push_back({perm1({2, 3, 1}), rho, 2});
    }
  } else {
    if (b)
      order.push_back({id, id, 3});
    if (c)
      order.push_back({perm1({1, 3, 2}), id, 2});
    if (dd) {
      order.push_back({id, perm1({2, 1, 3}), 3});
      order.push_back({perm1({2, 1, 3}), perm1({1, 3, 2}), 3});
    }
  }
  for (const auto& s : detail::all_permutations(3))
    for (const auto& t : detail::all_permutations(3))
      for (std::size_t r : {3, 2})
        order.push_back({s, t, r});

  std::vector<Gamma> e = w.entries();
  for (const auto& ch : order) {
    try {
      Certificate cert = chain_realize(AutWord(ring, 3), w, ch.sigma, ch.tau, ch.r, d, e);
      cert.realizer = "thm72";
      return cert;
    } catch (const Error& err) {
      if (err.code() != Errc::PreconditionFailed)
        throw;
    }
  }
  try {
    Certificate cert = realize_thm16(d, w, ring);
    cert.realizer = "thm72";
    return cert;
  } catch (const Error& err) {
    if (err.code() != Errc::PreconditionFailed)
      throw;
  }
  fail(Errc::PreconditionFailed, "no (sigma, tau, r) satisfies the chain hypotheses");
}

// ---------------------------------------------------------------------------
// Common-divisor construction (ascending d and w, 0-based l and m).

inline Certificate realize_lem73(const std::vector<Gamma>& d, const Weight& w, const Gamma& dparam, std::size_t l,
                                 std::size_t m, const Ring& ring = Ring::rationals())
{
  const std::size_t n = w.size();
  require(n >= 2 && d.size() == n, Errc::ArityMismatch, "target and weight sizes differ");
  require(l < n && m >= 1 && m < n, Errc::InvalidArgument, "need 1 <= l <= n and 2 <= m <= n");
  require(w.all_pos() && dparam.is_positive(), Errc::PreconditionFailed, "weights and d must be positive");
  for (std::size_t i = 0; i + 1 < n; ++i)
    require(w[i] <= w[i + 1] && d[i] <= d[i + 1], Errc::PreconditionFailed, "d and w must be ascending");
  for (std::size_t i = 0; i < n; ++i)
    require(d[i] >= w[i], Errc::PreconditionFailed, "d_i < w_i at index " + std::to_string(i + 1));

  std::vector<std::uint64_t> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto k = detail::positive_ratio(d[i], dparam);
    if (!k)
      fail(Errc::PreconditionFailed, "(a) d" + std::to_string(i + 1) + " is not a positive multiple of d");
    e[i] = *k;
  }
  Polynomial g = Polynomial::variable(ring, n, l);
  Polynomial q(ring, n);
  if (dparam != w[l]) {
    if (!(dparam > w[l]))
      fail(Errc::PreconditionFailed, "(b) d < w_l");
    std::vector<Gamma> gens(w.entries());
    gens[l] = Gamma(w.rank());
    auto a = semigroup_member(dparam, gens);
    if (!a)
      fail(Errc::PreconditionFailed, "(b) d is not in the semigroup of the other weights");
    q = detail::monomial(ring, *a);
  }
  std::vector<Gamma> prefix(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(m));
  auto cm = semigroup_member(d[m], prefix);
  if (!cm)
    fail(Errc::PreconditionFailed, "(c) d_m is not in the semigroup of d_1..d_{m-1}");
  if (l < m)
    for (std::size_t i = l; i < m; ++i)
      if (d[i] < w[i + 1])
        fail(Errc::PreconditionFailed, "(d) d_i < w_{i+1} at index " + std::to_string(i + 1));

  // phi = E_g o Q o pi: pi is the cyclic shift with pi(m) = l, Q adds the
  // powers of x_l, E_g turns x_l into g.
  Permutation pi = detail::identity_perm(n);
  std::vector<bool> bump(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == m) {
      pi[i] = l;
      continue;
    }
    std::size_t src = i;
    if (m < i && i <= l)
      src = i - 1;
    else if (l <= i && i < m)
      src = i + 1;
    pi[i] = src;
    bump[i] = d[i] > w[src];
  }
  std::vector<Generator> gens;
  detail::push_elem(gens, l, q);
  for (std::size_t i = 0; i < n; ++i)
    if (i != m && bump[i])
      detail::push_elem(gens, pi[i], detail::monomial(ring, n, {{l, e[i]}}));
  detail::push_perm(gens, pi);
  if (d[m] > dparam) {
    std::vector<std::uint64_t> c(n, 0);
    std::copy(cm->begin(), cm->end(), c.begin());
    detail::push_elem(gens, m, detail::monomial(ring, c));
  }
  return certify("lem73", w, d, AutWord::from_generators(ring, n, gens));
}

// The n = 3 refinement with conditions (A) and (B); ascending d and w.
inline Certificate realize_n3_common(const std::vector<Gamma>& d, const Weight& w, const Ring& ring = Ring::rationals(),
                                     std::optional<Gamma> dparam = std::nullopt)
{
  require(d.size() == 3 && w.size() == 3, Errc::ArityMismatch, "three degrees and three weights expected");
  require(w.all_pos(), Errc::PreconditionFailed, "weights must be positive");
  for (std::size_t i = 0; i < 2; ++i)
    require(w[i] <= w[i + 1] && d[i] <= d[i + 1], Errc::PreconditionFailed, "d and w must be ascending");
  if (!(in_semigroup(d[1], {d[0]}) || in_semigroup(d[2], {d[0], d[1]})))
    fail(Errc::PreconditionFailed, "neither d2 in N d1 nor d3 in N d1 + N d2");

  std::vector<Gamma> cands;
  cands.push_back(w[0]);
  if (dparam)
    cands.push_back(*dparam);
  std::int64_t g = 0;
  for (auto v : d[0].coords())
    g = std::gcd(g, v);
  for (std::int64_t k = 1; k <= g && k <= 100000; ++k)
    if (g % k == 0) {
      std::vector<std::int64_t> c;
      for (auto v : d[0].coords())
        c.push_back(v / k);
      cands.push_back(Gamma(c));
    }

  for (const auto& dp : cands) {
    if (!dp.is_positive())
      continue;
    bool A = true;
    for (const auto& x : d)
      A = A && detail::positive_ratio(x, dp).has_value();
    if (!A)
      continue;
    if (d[0] < w[1]) {
      if (!(d[0] == w[0] && dp == w[0]))
        continue;
      std::vector<Generator> gens;
      for (std::size_t i = 1; i < 3; ++i)
        if (d[i] > w[i])
          detail::push_elem(gens, i, detail::monomial(ring, 3, {{0, *detail::positive_ratio(d[i], dp)}}));
      if (auto c = try_certify("n3common", w, d, AutWord::from_generators(ring, 3, gens)))
        return *c;
      continue;
    }
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t m = 1; m < 3; ++m) {
        try {
          Certificate c = realize_lem73(d, w, dp, l, m, ring);
          c.realizer = "n3common";
          return c;
        } catch (const Error& err) {
          if (err.code() != Errc::PreconditionFailed)
            throw;
        }
      }
  }
  try {
    Certificate c = realize_thm16(d, w, ring);
    c.realizer = "n3common";
    return c;
  } catch (const Error& err) {
    if (err.code() != Errc::PreconditionFailed)
      throw;
  }
  fail(Errc::PreconditionFailed, "no common divisor d satisfies (A), (B) with a valid (l, m)");
}

// ---------------------------------------------------------------------------
// Case data read off a tuple by support inspection.

struct CaseData {
  Multidegree mdeg;
  std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> two_var;  // (component, (x_a, x_b))
  bool last_linear = false;     // f_n = a x_n + p, p free of x_n, deg_w p <= w_n
  std::optional<std::pair<std::size_t, std::uint64_t>> proportional;  // (i, u): f_i^w ~ (f_j^w)^u
};

inline std::optional<Scalar> proportional_scalar(const Polynomial& a, const Polynomial& b)
{
  if (a.is_zero() || b.is_zero() || a.size() != b.size())
    return std::nullopt;
  const Ring& ring = a.ring();
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  if (ia->first != ib->first)
    return std::nullopt;
  std::optional<Scalar> lambda;
  try {
    lambda = ring.mul(ia->second, ring.try_inverse(ib->second));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (b.scaled(*lambda) != a)
    return std::nullopt;
  return lambda;
}

inline CaseData analyze(const Tuple& F, const Weight& w)
{
  const std::size_t n = F.size();
  CaseData out;
  out.mdeg = mdeg_w(F, w);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        std::vector<bool> allowed(n, false);
        allowed[a] = allowed[b] = true;
        if (F[i].only_uses(allowed)) {
          out.two_var.push_back({i, {a, b}});
          a = b = n;
        }
      }
  const Polynomial& last = F[n - 1];
  if (last.degree_in(n - 1) == 1) {
    Polynomial p(last.ring(), n);
    bool linear = true;
    for (const auto& [e, c] : last.terms()) {
      if (e[n - 1] == 0) {
        p.add_term(e, c);
        continue;
      }
      Exponent unit(n, 0);
      unit[n - 1] = 1;
      linear = linear && e == unit && last.ring().is_unit(c);
    }
    out.last_linear = linear && (p.is_zero() || deg_w(p, w) <= DegValue(w[n - 1]));
  }
  if (n >= 2) {
    Polynomial i0 = initial_form(F[0], w), i1 = initial_form(F[1], w);
    for (std::size_t i = 0; i < 2 && !out.proportional; ++i) {
      const Polynomial& hi = i == 0 ? i0 : i1;
      const Polynomial& hj = i == 0 ? i1 : i0;
      DegValue di = deg_w(hi, w), dj = deg_w(hj, w);
      if (!di.is_finite() || !dj.is_finite())
        continue;
      auto u = detail::positive_ratio(di.value(), dj.value());
      if (u && *u <= 64 && proportional_scalar(hi, hj.pow(static_cast<std::uint32_t>(*u))))
        out.proportional = std::make_pair(i, *u);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

// Tries the realizers that apply to (d, w) and returns the first certificate.
inline std::optional<Certificate> realize_auto(const std::vector<Gamma>& d, const Weight& w,
                                               const Ring& ring = Ring::rationals(), bool fix_last = false)
{
  const std::size_t n = w.size();
  require(d.size() == n, Errc::ArityMismatch, "target and weight sizes differ");
  auto attempt = [&](auto&& fn) -> std::optional<Certificate> {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.code() != Errc::PreconditionFailed && e.code() != Errc::UnboundedSemigroup)
        throw;
      return std::nullopt;
    }
  };
  if (n == 2 && !fix_last)
    return realize_2var(d, w, ring);
  if (fix_last) {
    if (n == 3)
      return attempt([&] { return std::optional<Certificate>(realize_sc(d, w, ring)); });
    return attempt([&] { return std::optional<Certificate>(realize_vdk3(d, w, ring)); });
  }
  if (auto s = detail::match_permutation(d, w))
    return certify("perm", w, d, AutWord::from_generators(ring, n, {PermutationGen{*s}}));
  if (n == 3) {
    if (auto c = attempt([&] { return std::optional<Certificate>(realize_thm16(d, w, ring)); }))
      return c;
    if (auto c = attempt([&] { return std::optional<Certificate>(realize_thm72(d, w, ring)); }))
      return c;
    bool sorted = w[0] <= w[1] && w[1] <= w[2] && d[0] <= d[1] && d[1] <= d[2];
    if (sorted)
      if (auto c = attempt([&] { return std::optional<Certificate>(realize_n3_common(d, w, ring)); }))
        return c;
  }
  if (n > 6)
    return std::nullopt;
  std::vector<Gamma> e = w.entries();
  for (std::size_t r = n + 1; r-- > 0;)
    for (const auto& s : detail::all_permutations(n))
      for (const auto& t : detail::all_permutations(n))
        if (auto c = attempt([&] { return std::optional<Certificate>(chain_realize(AutWord(ring, n), w, s, t, r, d, e)); }))
          return c;
  return std::nullopt;
}

} // namespace polydeg

#endif
