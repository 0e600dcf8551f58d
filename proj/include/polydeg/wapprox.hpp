#ifndef POLYDEG_WAPPROX_HPP
#define POLYDEG_WAPPROX_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "worder.hpp"

namespace polydeg {

using IntVec = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t to_int64(const mpz_class& z)
{
  if (!z.fits_slong_p())
    fail(Errc::InvalidArgument, "integer " + z.get_str() + " does not fit in 64 bits");
  return z.get_si();
}

// a . v >= b, stored scaled so the largest |a_i| is 1.
using IneqSystem = std::map<std::vector<mpq_class>, mpq_class>;

inline void add_ineq(IneqSystem& sys, std::vector<mpq_class> a, mpq_class b)
{
  mpq_class scale = 0;
  for (const auto& x : a)
    scale = std::max(scale, mpq_class(abs(x)));
  if (scale != 0) {
    for (auto& x : a)
      x /= scale;
    b /= scale;
  }
  auto [it, inserted] = sys.try_emplace(std::move(a), b);
  if (!inserted && b > it->second)
    it->second = b;
}

} // namespace detail

// Integer v with a.v >= 1 for every a in S, or nullopt when the rational
// system {a.v >= 1} is infeasible.  Fourier-Motzkin elimination, then a
// back-substitution that picks the admissible value closest to zero.
inline std::optional<IntVec> strict_positive_vector(const std::vector<IntVec>& S, std::size_t dim)
{
  using detail::IneqSystem;
  std::vector<IneqSystem> levels(dim + 1);
  for (const auto& a : S) {
    require(a.size() == dim, Errc::ArityMismatch, "vector of wrong dimension");
    std::vector<mpq_class> row(a.begin(), a.end());
    detail::add_ineq(levels[0], std::move(row), 1);
  }

  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<std::pair<std::vector<mpq_class>, mpq_class>> pos, neg;
    for (const auto& [a, b] : levels[k]) {
      if (a[k] > 0)
        pos.emplace_back(a, b);
      else if (a[k] < 0)
        neg.emplace_back(a, b);
      else
        detail::add_ineq(levels[k + 1], a, b);
    }
    for (const auto& [pa, pb] : pos)
      for (const auto& [na, nb] : neg) {
        mpq_class p = pa[k], q = -na[k];
        std::vector<mpq_class> a(dim);
        for (std::size_t j = 0; j < dim; ++j)
          a[j] = q * pa[j] + p * na[j];
        a[k] = 0;
        detail::add_ineq(levels[k + 1], std::move(a), q * pb + p * nb);
      }
  }
  for (const auto& [a, b] : levels[dim])
    if (b > 0)
      return std::nullopt;

  std::vector<mpq_class> v(dim, 0);
  for (std::size_t k = dim; k-- > 0;) {
    std::optional<mpq_class> lo, hi;
    for (const auto& [a, b] : levels[k]) {
      if (a[k] == 0)
        continue;
      mpq_class rest = b;
      for (std::size_t j = k + 1; j < dim; ++j)
        rest -= a[j] * v[j];
      mpq_class bound = rest / a[k];
      if (a[k] > 0)
        lo = lo ? std::max(*lo, bound) : bound;
      else
        hi = hi ? std::min(*hi, bound) : bound;
    }
    mpq_class x = 0;
    if (lo && *lo > 0) {
      mpz_class c;
      mpz_cdiv_q(c.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
      x = (!hi || mpq_class(c) <= *hi) ? mpq_class(c) : *lo;
    } else if (hi && *hi < 0) {
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
      x = (!lo || mpq_class(f) >= *lo) ? mpq_class(f) : *hi;
    }
    v[k] = x;
  }

  mpz_class l = 1;
  for (const auto& x : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> iv(dim);
  mpz_class g = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    mpq_class s = v[i] * l;
    iv[i] = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv[i].get_mpz_t());
  }
  IntVec out(dim);
  for (std::size_t i = 0; i < dim; ++i)
    out[i] = detail::to_int64(g > 1 ? mpz_class(iv[i] / g) : iv[i]);
  return out;
}

inline Gamma dot(const IntVec& a, const Weight& w)
{
  require(a.size() == w.size(), Errc::ArityMismatch, "vector and weight sizes differ");
  Gamma d(w.rank());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      d += a[i] * w[i];
  return d;
}

inline std::int64_t dot(const IntVec& a, const IntVec& v)
{
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * v[i];
  return s;
}

inline IntVec to_intvec(const Exponent& e) { return IntVec(e.begin(), e.end()); }

// w ~_S v: every pair of S is compared the same way by w and by v.
inline bool equivalent_on(const std::vector<IntVec>& S, const Weight& w, const IntVec& v)
{
  std::vector<Gamma> dw;
  std::vector<std::int64_t> dv;
  for (const auto& a : S) {
    dw.push_back(dot(a, w));
    dv.push_back(dot(a, v));
  }
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < S.size(); ++j)
      if ((dw[i] >= dw[j]) != (dv[i] >= dv[j]))
        return false;
  return true;
}

struct EquivWitness {
  IntVec v;
  std::vector<IntVec> S;
  Weight w;
};

// Integer v with w ~_S v.  With preserve_signs, S is enlarged by 0 and the
// unit vectors so that v_i and w_i have the same sign.
inline EquivWitness approximate_weight(std::vector<IntVec> S, const Weight& w, bool preserve_signs = false)
{
  const std::size_t n = w.size();
  const std::size_t r = w.rank();
  if (preserve_signs) {
    S.emplace_back(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      S.push_back(std::move(e));
    }
  }
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());

  // Images (a - b)U' in Z^r for pairs with a.w > b.w; pairs with equal
  // degree have zero image, so any v' is compatible with them.
  std::set<IntVec> images;
  for (const auto& a : S)
    for (const auto& b : S) {
      Gamma da = dot(a, w), db = dot(b, w);
      if (da > db)
        images.insert((da - db).coords());
    }
  auto vprime = strict_positive_vector(std::vector<IntVec>(images.begin(), images.end()), r);
  if (!vprime)
    fail(Errc::InternalInfeasible, "no positive functional separates the lexicographic images");
  IntVec v(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < r; ++k)
      v[i] += w[i][k] * (*vprime)[k];
  if (!equivalent_on(S, w, v))
    fail(Errc::InternalInfeasible, "approximating vector fails the pair check");
  return {std::move(v), std::move(S), w};
}

inline std::vector<IntVec> joint_support(const std::vector<Polynomial>& fs)
{
  std::set<IntVec> s;
  for (const auto& f : fs)
    for (const auto& [e, c] : f.terms())
      s.insert(to_intvec(e));
  return {s.begin(), s.end()};
}

// Rank-1 weight (1, B+1, (B+1)^2, ...) with B = 1 + largest exponent; it
// separates all exponent vectors of the inputs, so every initial form is a
// single term.
inline Weight monomializing_weight(const std::vector<Polynomial>& fs)
{
  require(!fs.empty(), Errc::InvalidArgument, "no polynomials");
  std::int64_t maxc = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].is_zero())
      fail(Errc::ZeroComponent, "polynomial " + std::to_string(i + 1) + " is zero");
    for (const auto& [e, c] : fs[i].terms())
      for (auto x : e)
        maxc = std::max<std::int64_t>(maxc, x);
  }
  const std::int64_t base = maxc + 2;
  IntVec v;
  mpz_class p = 1;
  for (std::size_t j = 0; j < fs.front().nvars(); ++j) {
    v.push_back(detail::to_int64(p));
    p *= base;
  }
  return Weight::rank1(v);
}

inline Polynomial iterated_initial_form(Polynomial f, const std::vector<Weight>& ws)
{
  for (const auto& w : ws)
    f = initial_form(f, w);
  return f;
}

// A single rank-1 weight whose initial forms agree with the iterated initial
// forms for ws[0], ..., ws[s-1].  Strictly positive when ws[0] is.
inline Weight refine_weight(const std::vector<Weight>& ws, const std::vector<Polynomial>& fs)
{
  require(!ws.empty(), Errc::InvalidArgument, "no weights to refine");
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (fs[i].is_zero())
      fail(Errc::ZeroComponent, "polynomial " + std::to_string(i + 1) + " is zero");
  const auto S = joint_support(fs);
  const bool positive = ws.front().all_pos();
  const std::size_t n = ws.front().size();

  Weight result;
  if (ws.size() == 1) {
    result = Weight::rank1(approximate_weight(S, ws.front(), positive).v);
  } else {
    const Weight vp = refine_weight(std::vector<Weight>(ws.begin(), ws.end() - 1), fs);
    const IntVec v1 = [&] {
      IntVec v;
      for (const auto& g : vp.entries())
        v.push_back(g[0]);
      return v;
    }();
    const IntVec v2 = approximate_weight(S, ws.back()).v;

    // Largest t0 such that every 0 < t < t0 keeps each f^{v1} on top.
    std::optional<mpq_class> t0;
    auto tighten = [&](const mpq_class& bound) { t0 = t0 ? std::min(*t0, bound) : bound; };
    for (const auto& f : fs) {
      const Polynomial top = initial_form(f, vp);
      const std::int64_t D = deg_w(top, vp).value()[0];
      std::int64_t M = std::numeric_limits<std::int64_t>::min();
      for (const auto& [e, c] : top.terms())
        M = std::max(M, dot(to_intvec(e), v2));
      for (const auto& [e, c] : f.terms()) {
        if (top.terms().count(e))
          continue;
        const IntVec a = to_intvec(e);
        const std::int64_t gap = D - dot(a, v1);
        const std::int64_t slope = dot(a, v2) - M;
        if (slope > 0)
          tighten(mpq_class(gap, slope));
      }
    }
    if (positive)
      for (std::size_t j = 0; j < n; ++j)
        if (v2[j] < 0)
          tighten(mpq_class(v1[j], -v2[j]));
    mpq_class t = t0 ? mpq_class(*t0 / 2) : mpq_class(1);
    t.canonicalize();
    const mpz_class den = t.get_den(), num = t.get_num();
    IntVec v(n);
    mpz_class g = 0;
    std::vector<mpz_class> big(n);
    for (std::size_t j = 0; j < n; ++j) {
      big[j] = den * v1[j] + num * v2[j];
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), big[j].get_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j)
      v[j] = detail::to_int64(g > 1 ? mpz_class(big[j] / g) : big[j]);
    result = Weight::rank1(v);
  }

  for (const auto& f : fs)
    if (initial_form(f, result) != iterated_initial_form(f, ws))
      fail(Errc::InternalInfeasible, "refined weight does not reproduce the iterated initial form");
  if (positive && !result.all_pos())
    fail(Errc::InternalInfeasible, "refined weight lost positivity");
  return result;
}

namespace detail {

inline std::optional<std::vector<std::uint64_t>> semigroup_rank1(std::int64_t d, const std::vector<std::int64_t>& g)
{
  const std::size_t m = g.size();
  std::vector<std::uint64_t> a(m, 0);
  if (d < 0)
    return std::nullopt;
  require(d <= 50000000, Errc::InvalidArgument, "degree too large for the coin table");
  // reach[k][t]: t is a nonnegative combination of g[k..m).
  std::vector<std::vector<char>> reach(m + 1, std::vector<char>(static_cast<std::size_t>(d) + 1, 0));
  reach[m][0] = 1;
  for (std::size_t k = m; k-- > 0;)
    for (std::int64_t t = 0; t <= d; ++t)
      reach[k][t] = reach[k + 1][t] || (t >= g[k] && reach[k][t - g[k]]);
  if (!reach[0][d])
    return std::nullopt;
  std::int64_t rem = d;
  for (std::size_t k = 0; k < m; ++k) {
    std::uint64_t c = 0;
    while (!reach[k + 1][rem]) {
      rem -= g[k];
      ++c;
    }
    a[k] = c;
  }
  return a;
}

inline bool semigroup_rank_r_rec(std::size_t k, const Gamma& rem, const std::vector<Gamma>& g,
                                 const std::vector<std::int64_t>& phi_g, std::int64_t phi_rem,
                                 const IntVec& phi, std::map<std::pair<std::size_t, Gamma>, bool>& memo,
                                 std::vector<std::uint64_t>* out)
{
  if (k == g.size())
    return rem.is_zero();
  if (!out)
    if (auto it = memo.find({k, rem}); it != memo.end())
      return it->second;
  bool found = false;
  Gamma cur = rem;
  std::int64_t phi_cur = phi_rem;
  for (std::uint64_t c = 0; phi_cur >= 0; ++c) {
    if (semigroup_rank_r_rec(k + 1, cur, g, phi_g, phi_cur, phi, memo, nullptr)) {
      if (out) {
        (*out)[k] = c;
        semigroup_rank_r_rec(k + 1, cur, g, phi_g, phi_cur, phi, memo, out);
      }
      found = true;
      break;
    }
    cur -= g[k];
    phi_cur -= phi_g[k];
  }
  if (!out)
    memo[{k, rem}] = found;
  return found;
}

// Generators of both signs span gcd * Z.  Integer coefficients from extended
// gcd, then zero relations |g_n| e_p + g_p e_n lift every entry to >= 0.
inline std::optional<std::vector<std::uint64_t>> semigroup_rank1_mixed(std::int64_t d, const std::vector<Gamma>& gens)
{
  const std::size_t m = gens.size();
  std::vector<mpz_class> g(m), c(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    g[i] = static_cast<long>(gens[i][0]);
  mpz_class acc = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class nd, s, t;
    mpz_gcdext(nd.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), acc.get_mpz_t(), g[i].get_mpz_t());
    // acc' = s*acc + t*g_i, with acc = sum c_j g_j so far.
    for (std::size_t j = 0; j < i; ++j)
      c[j] *= s;
    c[i] = t;
    acc = nd;
  }
  const mpz_class target = static_cast<long>(d);
  if (target % acc != 0)
    return std::nullopt;
  const mpz_class q = target / acc;
  for (auto& x : c)
    x *= q;
  std::size_t pos = m, neg = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (g[i] > 0 && pos == m)
      pos = i;
    if (g[i] < 0 && neg == m)
      neg = i;
  }
  auto lift = [&](std::size_t i, std::size_t partner) {
    if (c[i] >= 0)
      return;
    // Adding k*(|g_partner| e_i + |g_i| e_partner) keeps the sum.
    const mpz_class step = abs(g[partner]) / gcd(g[i], g[partner]);
    const mpz_class k = (-c[i] + step - 1) / step;
    c[i] += k * step;
    c[partner] += k * (abs(g[i]) / gcd(g[i], g[partner]));
  };
  for (std::size_t i = 0; i < m; ++i)
    if (i != pos && i != neg)
      lift(i, g[i] > 0 ? neg : pos);
  lift(pos, neg);
  lift(neg, pos);
  std::vector<std::uint64_t> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    require(c[i] >= 0 && c[i].fits_ulong_p(), Errc::InternalInfeasible, "coefficient lift failed");
    out[i] = c[i].get_ui();
  }
  return out;
}

} // namespace detail

// Nonnegative a with sum a_i * gens_i = d, choosing the lexicographically
// smallest coefficient vector when the generators share a sign; nullopt if d
// is not in the semigroup.
inline std::optional<std::vector<std::uint64_t>> semigroup_member(const Gamma& d, const std::vector<Gamma>& gens)
{
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    require(gens[i].rank() == d.rank(), Errc::ArityMismatch, "generator rank differs from target");
    if (!gens[i].is_zero())
      live.push_back(i);
  }
  std::vector<std::uint64_t> a(gens.size(), 0);
  if (d.is_zero())
    return a;
  if (live.empty())
    return std::nullopt;

  std::vector<Gamma> g;
  for (auto i : live)
    g.push_back(gens[i]);

  auto scatter = [&](const std::vector<std::uint64_t>& c) {
    for (std::size_t k = 0; k < live.size(); ++k)
      a[live[k]] = c[k];
    return a;
  };

  if (d.rank() == 1) {
    bool all_pos = true, all_neg = true;
    for (const auto& x : g) {
      all_pos = all_pos && x[0] > 0;
      all_neg = all_neg && x[0] < 0;
    }
    if (!all_pos && !all_neg) {
      auto c = detail::semigroup_rank1_mixed(d[0], g);
      if (!c)
        return std::nullopt;
      return scatter(*c);
    }
    const std::int64_t s = all_pos ? 1 : -1;
    std::vector<std::int64_t> gi;
    for (const auto& x : g)
      gi.push_back(s * x[0]);
    auto c = detail::semigroup_rank1(s * d[0], gi);
    if (!c)
      return std::nullopt;
    return scatter(*c);
  }

  std::vector<IntVec> rows;
  for (const auto& x : g)
    rows.push_back(x.coords());
  auto phi = strict_positive_vector(rows, d.rank());
  if (!phi)
    fail(Errc::UnboundedSemigroup, "no positive functional on the generators");
  std::vector<std::int64_t> phi_g;
  for (const auto& x : g)
    phi_g.push_back(dot(x.coords(), *phi));
  const std::int64_t phi_d = dot(d.coords(), *phi);
  if (phi_d < 0)
    return std::nullopt;
  std::map<std::pair<std::size_t, Gamma>, bool> memo;
  std::vector<std::uint64_t> c(g.size(), 0);
  if (!detail::semigroup_rank_r_rec(0, d, g, phi_g, phi_d, *phi, memo, &c))
    return std::nullopt;
  return scatter(c);
}

inline bool in_semigroup(const Gamma& d, const std::vector<Gamma>& gens)
{
  return semigroup_member(d, gens).has_value();
}

} // namespace polydeg

#endif
