#ifndef POLYDEG_SURED_HPP
#define POLYDEG_SURED_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "autmap.hpp"
#include "tamecert.hpp"
#include "wapprox.hpp"
#include "worder.hpp"

namespace polydeg {

namespace detail {

// One solution of matrix * x = rhs over a field, or nullopt.
inline std::optional<std::vector<Scalar>> solve_linear(const Ring& ring, std::vector<std::vector<Scalar>> a,
                                                       std::vector<Scalar> rhs)
{
  require(ring.is_field(), Errc::NotAField, "linear solve needs a field");
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0)
      ++p;
    if (p == rows)
      continue;
    std::swap(a[p], a[r]);
    std::swap(rhs[p], rhs[r]);
    Scalar inv = ring.try_inverse(a[r][c]);
    for (std::size_t j = c; j < cols; ++j)
      a[r][j] = ring.mul(a[r][j], inv);
    rhs[r] = ring.mul(rhs[r], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0)
        continue;
      Scalar f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        a[i][j] = ring.sub(a[i][j], ring.mul(f, a[r][j]));
      rhs[i] = ring.sub(rhs[i], ring.mul(f, rhs[r]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0)
      return std::nullopt;
  std::vector<Scalar> x(cols, 0);
  for (std::size_t i = 0; i < r; ++i)
    x[pivot_col[i]] = rhs[i];
  return x;
}

// Nonnegative integer vectors a with sum_k a_k D_k = D, for lex-positive D_k.
inline std::vector<std::vector<std::uint32_t>> exponent_solutions(const Gamma& D, const std::vector<Gamma>& Ds,
                                                                  std::size_t cap = 100000)
{
  for (const auto& g : Ds)
    if (!g.is_positive())
      fail(Errc::Unbounded, "generator degree " + g.str() + " is not positive");
  std::vector<IntVec> S;
  for (const auto& g : Ds)
    S.push_back(g.coords());
  auto v = strict_positive_vector(S, D.rank());
  if (!v)
    fail(Errc::InternalInfeasible, "no positive functional on positive degrees");
  std::vector<std::int64_t> val;
  for (const auto& g : Ds)
    val.push_back(dot(g.coords(), *v));
  const std::int64_t target = dot(D.coords(), *v);
  std::vector<std::vector<std::uint32_t>> out;
  if (target < 0)
    return out;
  std::vector<std::uint32_t> a(Ds.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, Gamma rem, std::int64_t left) -> void {
    if (out.size() > cap)
      fail(Errc::BudgetExceeded, "too many exponent combinations");
    if (k + 1 == Ds.size()) {
      auto q = integer_ratio(rem, Ds[k]);
      if (q && *q >= 0) {
        a[k] = static_cast<std::uint32_t>(*q);
        out.push_back(a);
      } else if (rem.is_zero()) {
        a[k] = 0;
        out.push_back(a);
      }
      return;
    }
    for (std::int64_t t = 0; t * val[k] <= left; ++t) {
      a[k] = static_cast<std::uint32_t>(t);
      self(self, k + 1, rem - t * Ds[k], left - t * val[k]);
    }
  };
  if (Ds.empty()) {
    if (D.is_zero())
      out.push_back({});
    return out;
  }
  rec(rec, 0, D, target);
  return out;
}

inline Polynomial power_product(const std::vector<Polynomial>& gs, const std::vector<std::uint32_t>& a,
                                std::size_t budget = kDefaultTermBudget)
{
  Polynomial p = Polynomial::constant(gs.front().ring(), gs.front().nvars(), 1);
  for (std::size_t k = 0; k < gs.size(); ++k)
    if (a[k] != 0) {
      p = p * gs[k].pow(a[k]);
      if (p.size() > budget)
        fail(Errc::BudgetExceeded, "power product exceeds the term budget");
    }
  return p;
}

// Coefficients c with sum c_a prod_k P_a = target, columns given as polynomials.
inline std::optional<std::vector<Scalar>> solve_combination(const std::vector<Polynomial>& columns,
                                                            const Polynomial& target,
                                                            const std::vector<Exponent>& rows)
{
  const Ring& ring = target.ring();
  std::vector<std::vector<Scalar>> a(rows.size(), std::vector<Scalar>(columns.size(), 0));
  std::vector<Scalar> rhs(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j)
      a[i][j] = columns[j].coefficient(rows[i]);
    rhs[i] = target.coefficient(rows[i]);
  }
  return solve_linear(ring, std::move(a), std::move(rhs));
}

// Combination over k[gens^w] of a w-homogeneous h, keyed by exponent vector.
inline std::optional<std::map<std::vector<std::uint32_t>, Scalar>> homog_combination(const Polynomial& h,
                                                                                     const std::vector<Polynomial>& gens,
                                                                                     const Weight& w)
{
  std::vector<Polynomial> init;
  std::vector<Gamma> degs;
  for (const auto& g : gens) {
    DegValue d = deg_w(g, w);
    if (!d.is_finite() || !d.value().is_positive())
      fail(Errc::Unbounded, "generator degree is not positive");
    init.push_back(initial_form(g, w));
    degs.push_back(d.value());
  }
  std::map<std::vector<std::uint32_t>, Scalar> out;
  if (h.is_zero())
    return out;
  const Gamma D = deg_w(h, w).value();
  auto sols = exponent_solutions(D, degs);
  if (sols.empty())
    return std::nullopt;
  std::vector<Polynomial> cols;
  std::map<Exponent, bool> rowset;
  for (const auto& e : h.support())
    rowset[e] = true;
  for (const auto& a : sols) {
    cols.push_back(power_product(init, a));
    for (const auto& e : cols.back().support())
      rowset[e] = true;
  }
  std::vector<Exponent> rows;
  for (const auto& [e, _] : rowset)
    rows.push_back(e);
  auto x = solve_combination(cols, h, rows);
  if (!x)
    return std::nullopt;
  for (std::size_t j = 0; j < sols.size(); ++j)
    if ((*x)[j] != 0)
      out[sols[j]] = (*x)[j];
  return out;
}

inline Polynomial lift_combination(const std::map<std::vector<std::uint32_t>, Scalar>& comb,
                                   const std::vector<Polynomial>& gens)
{
  Polynomial p(gens.front().ring(), gens.front().nvars());
  for (const auto& [a, c] : comb)
    p += power_product(gens, a).scaled(c);
  return p;
}

inline bool initial_forms_independent(const std::vector<Polynomial>& gs, const Weight& w)
{
  if (gs.front().ring().characteristic() != 0)
    return false;
  return wedge_deg(initial_tuple(gs, w), w).is_finite();
}

} // namespace detail

// ---------------------------------------------------------------------------

struct MembershipResult {
  bool inside = false;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar> combination;
};

// Whether the w-homogeneous h lies in k[g1^w, g2^w].
inline MembershipResult homog_membership(const Polynomial& h, const Polynomial& g1, const Polynomial& g2,
                                         const Weight& w)
{
  const Ring& ring = h.ring();
  require(ring.is_field(), Errc::NotAField, "membership needs a field, got " + ring.name());
  h.check_compatible(g1);
  h.check_compatible(g2);
  require(is_homogeneous(h, w), Errc::InvalidArgument, "h is not w-homogeneous");
  auto comb = detail::homog_combination(h, {g1, g2}, w);
  MembershipResult r;
  if (!comb)
    return r;
  r.inside = true;
  for (const auto& [a, c] : *comb)
    r.combination[{a[0], a[1]}] = c;
  if (detail::lift_combination(*comb, {initial_form(g1, w), initial_form(g2, w)}) != h)
    fail(Errc::InternalInfeasible, "membership combination does not reconstruct h");
  return r;
}

// ---------------------------------------------------------------------------

struct ReductionResult {
  enum class Status { Found, Exhausted, Budget } status = Status::Exhausted;
  std::size_t index = 0;
  Polynomial h;
  Tuple reduced;
  DegValue old_deg, new_deg;
  std::vector<std::size_t> flagged;  // indices where the search could not decide
};

inline std::string_view status_name(ReductionResult::Status s)
{
  switch (s) {
  case ReductionResult::Status::Found:
    return "found";
  case ReductionResult::Status::Exhausted:
    return "exhausted";
  case ReductionResult::Status::Budget:
    return "budget";
  }
  return "?";
}

namespace detail {

// h in k[gens] of bounded exponent total with deg_w(f - h) < deg_w f.
inline std::optional<Polynomial> bounded_lift(const Polynomial& f, const std::vector<Polynomial>& gens,
                                              const Weight& w, std::uint32_t max_total)
{
  const Gamma D = deg_w(f, w).value();
  std::vector<std::vector<std::uint32_t>> exps;
  std::vector<std::uint32_t> a(gens.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, std::uint32_t left) -> void {
    if (k == gens.size()) {
      exps.push_back(a);
      return;
    }
    for (std::uint32_t t = 0; t <= left; ++t) {
      a[k] = t;
      self(self, k + 1, left - t);
    }
  };
  rec(rec, 0, max_total);
  std::vector<Polynomial> cols;
  std::map<Exponent, bool> rowset;
  for (const auto& e : exps) {
    cols.push_back(power_product(gens, e, 20000));
    for (const auto& m : cols.back().support())
      if (exponent_degree(m, w) >= D)
        rowset[m] = true;
  }
  for (const auto& m : f.support())
    if (exponent_degree(m, w) >= D)
      rowset[m] = true;
  std::vector<Exponent> rows;
  for (const auto& [m, _] : rowset)
    rows.push_back(m);
  auto x = solve_combination(cols, initial_form(f, w), rows);
  if (!x)
    return std::nullopt;
  Polynomial h(f.ring(), f.nvars());
  for (std::size_t j = 0; j < cols.size(); ++j)
    if ((*x)[j] != 0)
      h += cols[j].scaled((*x)[j]);
  return h;
}

} // namespace detail

// First index i with some h in k[f_j : j != i] and deg_w(f_i - h) < deg_w f_i.
inline ReductionResult elementary_reduction_search(const Tuple& F, const Weight& w, std::size_t budget = 64)
{
  require(!F.empty() && F.size() == w.size(), Errc::ArityMismatch, "tuple and weight sizes differ");
  const Ring& ring = F.front().ring();
  require(ring.is_field(), Errc::NotAField, "reduction search needs a field, got " + ring.name());
  require(w.all_pos(), Errc::PreconditionFailed, "weight must be strictly positive");
  const std::size_t n = F.size();
  ReductionResult out;
  Multidegree md = mdeg_w(F, w);
  out.old_deg = md.total;
  out.new_deg = md.total;
  if (md.total == DegValue(w.total()))
    return out;

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i)
        others.push_back(F[j]);
    Polynomial cur = F[i];
    Polynomial h(ring, F[i].nvars());
    bool progressed = false;
    for (std::size_t step = 0; step < budget && !cur.is_zero(); ++step) {
      auto comb = detail::homog_combination(initial_form(cur, w), others, w);
      if (!comb)
        break;
      Polynomial lift = detail::lift_combination(*comb, others);
      if (!(deg_w(cur - lift, w) < deg_w(cur, w)))
        fail(Errc::InternalInfeasible, "lifted combination did not cancel the top form");
      cur -= lift;
      h += lift;
      progressed = true;
    }
    if (!progressed) {
      if (detail::initial_forms_independent(others, w))
        continue;
      std::optional<Polynomial> lifted;
      for (std::uint32_t K = 2; K <= 6 && !lifted; ++K) {
        try {
          lifted = detail::bounded_lift(F[i], others, w, K);
        } catch (const Error& e) {
          if (e.code() != Errc::BudgetExceeded)
            throw;
          break;
        }
      }
      if (!lifted) {
        out.flagged.push_back(i);
        continue;
      }
      h = *lifted;
      cur = F[i] - h;
    }
    out.status = ReductionResult::Status::Found;
    out.index = i;
    out.h = h;
    out.reduced = F;
    out.reduced[i] = cur;
    out.new_deg = mdeg_w(out.reduced, w).total;
    return out;
  }
  out.status = out.flagged.empty() ? ReductionResult::Status::Exhausted : ReductionResult::Status::Budget;
  return out;
}

// ---------------------------------------------------------------------------
// Shestakov-Umirbaev conditions.

struct SUWitness {
  Tuple F, G;
  std::optional<Polynomial> Q;  // in two variables: g3 - f3 = Q(g1, g2)
  std::optional<Scalar> a, b, c;
};

struct SUReport {
  std::vector<CheckRecord> su;     // SU1..SU6
  std::vector<CheckRecord> props;  // P1, P5, P6, P7
  std::optional<std::int64_t> s;
  std::optional<Scalar> a, b, c;
  std::optional<Polynomial> Q;

  bool all_su() const
  {
    for (const auto& r : su)
      if (!r.ok)
        return false;
    return true;
  }
  std::optional<std::string> first_failed() const
  {
    for (const auto& r : su)
      if (!r.ok)
        return r.name;
    return std::nullopt;
  }
};

namespace detail {

// Membership of p in k[g1, g2] by repeated top-form cancellation.  Returns
// Q with p = Q(g1, g2), false when provably outside, nullopt when undecided.
struct SubalgebraVerdict {
  std::optional<Polynomial> Q;
  bool outside = false;
};

inline SubalgebraVerdict subalgebra_member(Polynomial p, const Polynomial& g1, const Polynomial& g2, const Weight& w,
                                           std::size_t budget)
{
  const Ring& ring = p.ring();
  Polynomial Q(ring, 2);
  SubalgebraVerdict v;
  const bool independent = initial_forms_independent({g1, g2}, w);
  for (std::size_t step = 0; step <= budget; ++step) {
    if (p.is_zero()) {
      v.Q = Q;
      return v;
    }
    if (p.is_constant()) {
      Q += Polynomial::constant(ring, 2, p.constant_term());
      v.Q = Q;
      return v;
    }
    auto comb = homog_combination(initial_form(p, w), {g1, g2}, w);
    if (!comb) {
      v.outside = independent;
      return v;
    }
    for (const auto& [a, c] : *comb) {
      Exponent e{a[0], a[1]};
      Q += Polynomial::monomial(ring, e, c);
    }
    p -= lift_combination(*comb, {g1, g2});
  }
  return v;
}

inline bool proportional(const Polynomial& a, const Polynomial& b) { return proportional_scalar(a, b).has_value(); }

} // namespace detail

inline SUReport su_check(const SUWitness& wit, const Weight& w)
{
  require(wit.F.size() == 3 && wit.G.size() == 3 && w.size() == 3, Errc::ArityMismatch,
          "the Shestakov-Umirbaev conditions are for n = 3");
  const Ring& ring = wit.F.front().ring();
  if (!ring.is_rationals())
    fail(Errc::Unsupported, "Shestakov-Umirbaev checks need characteristic zero (Q)");
  require(w.all_pos(), Errc::PreconditionFailed, "weight must be strictly positive");
  const auto& F = wit.F;
  const auto& G = wit.G;
  SUReport rep;

  // SU1
  bool su1 = true;
  Polynomial d2 = G[1] - F[1];
  if (wit.b) {
    su1 = d2 == F[2].scaled(*wit.b);
    rep.b = wit.b;
  } else if (d2.is_zero()) {
    rep.b = 0;
  } else if (auto lam = proportional_scalar(d2, F[2])) {
    rep.b = *lam;
  } else {
    su1 = false;
  }
  Polynomial d1 = G[0] - F[0];
  Polynomial f3sq = F[2] * F[2];
  if (wit.a && wit.c) {
    su1 = su1 && d1 == f3sq.scaled(*wit.a) + F[2].scaled(*wit.c);
    rep.a = wit.a;
    rep.c = wit.c;
  } else if (su1) {
    std::map<Exponent, bool> rowset;
    for (const auto& m : d1.support())
      rowset[m] = true;
    for (const auto& m : f3sq.support())
      rowset[m] = true;
    for (const auto& m : F[2].support())
      rowset[m] = true;
    std::vector<Exponent> rows;
    for (const auto& [m, _] : rowset)
      rows.push_back(m);
    auto x = detail::solve_combination({f3sq, F[2]}, d1, rows);
    if (x) {
      rep.a = (*x)[0];
      rep.c = (*x)[1];
    } else {
      su1 = false;
    }
  }
  if (su1) {
    Polynomial d3 = G[2] - F[2];
    if (wit.Q) {
      require(wit.Q->nvars() == 2, Errc::ArityMismatch, "Q must be a polynomial in two variables");
      if (substitute(*wit.Q, {G[0], G[1]}) != d3)
        fail(Errc::BadWitness, "g3 - f3 differs from Q(g1, g2)");
      rep.Q = wit.Q;
    } else {
      auto v = detail::subalgebra_member(d3, G[0], G[1], w, 64);
      if (v.Q)
        rep.Q = v.Q;
      else if (v.outside)
        su1 = false;
      else
        fail(Errc::MissingWitness, "could not decide whether g3 - f3 lies in k[g1, g2]; supply Q");
    }
  }
  rep.su.push_back({"SU1", su1});

  const Gamma F1 = deg_w(F[0], w).value(), F2 = deg_w(F[1], w).value(), F3 = deg_w(F[2], w).value();
  const Gamma D1 = deg_w(G[0], w).value(), D2 = deg_w(G[1], w).value();
  const DegValue D3 = deg_w(G[2], w);
  rep.su.push_back({"SU2", F1 <= D1 && F2 == D2});

  bool su3 = false;
  if (auto s = integer_ratio(2 * D1, D2); s && *s >= 3 && *s % 2 == 1) {
    rep.s = *s;
    if (*s > 1000)
      fail(Errc::BudgetExceeded, "exponent s is too large to compare");
    Polynomial g1w = initial_form(G[0], w), g2w = initial_form(G[1], w);
    su3 = detail::proportional(g1w * g1w, g2w.pow(static_cast<std::uint32_t>(*s)));
  }
  rep.su.push_back({"SU3", su3});

  bool su4 = F3 <= D1;
  if (su4)
    su4 = !homog_membership(initial_form(F[2], w), G[0], G[1], w).inside;
  rep.su.push_back({"SU4", su4});

  rep.su.push_back({"SU5", D3 < DegValue(F3)});
  const DegValue wedge = wedge_deg({G[0], G[1]}, w);
  rep.su.push_back({"SU6", D3 < DegValue(D1 - D2) + wedge});

  // Consequences, in integer form with delta = D2 / 2.
  bool p1 = su3;
  for (auto v : D2.coords())
    p1 = p1 && v % 2 == 0;
  rep.props.push_back({"P1", p1});
  bool p5 = true;
  if (F1 < D1) {
    Polynomial f3w = initial_form(F[2], w);
    p5 = rep.s && *rep.s == 3 && detail::proportional(initial_form(G[0], w), f3w * f3w) && 4 * F3 == 3 * D2 &&
         DegValue(4 * F1) >= DegValue(5 * D2) + DegValue(4 * (wedge.is_finite() ? wedge.value() : Gamma(w.rank()))) &&
         wedge.is_finite();
  }
  rep.props.push_back({"P5", p5});
  rep.props.push_back({"P6", mdeg_w(G, w).total < mdeg_w(F, w).total});
  bool p7 = F2 < F1 && F3 <= F1 && rep.s.has_value();
  for (const auto& Fi : {F1, F2, F3})
    p7 = p7 && rep.s && 2 * Fi > D2 && 2 * Fi <= *rep.s * D2;
  rep.props.push_back({"P7", p7});

  if (rep.all_su())
    for (const auto& p : rep.props)
      if (!p.ok)
        fail(Errc::TheoremViolated, "pair satisfies SU1-SU6 but " + p.name + " fails");
  return rep;
}

// S(w, k) shape: deg_w F > |w| and f3 = alpha x3 + p, p in k[x1, x2], deg_w p <= w3.
inline bool in_S_shape(const Tuple& F, const Weight& w, std::string* why = nullptr)
{
  auto no = [&](const std::string& m) {
    if (why)
      *why = m;
    return false;
  };
  if (F.size() != 3 || w.size() != 3)
    return no("n must be 3");
  if (!w.all_pos())
    return no("weight must be strictly positive");
  if (!(mdeg_w(F, w).total > DegValue(w.total())))
    return no("deg_w F does not exceed |w|");
  const Polynomial& f3 = F[2];
  Exponent x3{0, 0, 1};
  Scalar alpha = f3.coefficient(x3);
  if (alpha == 0)
    return no("f3 has no x3 term");
  Polynomial p = f3 - Polynomial::monomial(f3.ring(), x3, alpha);
  if (p.involves(2))
    return no("f3 - alpha x3 involves x3");
  if (!p.is_zero() && deg_w(p, w) > DegValue(w[2]))
    return no("deg_w p exceeds w3");
  return true;
}

struct Refutation {
  std::string condition;
  SUReport report;
};

// Names an SU condition that (F_sigma, G_sigma) fails, for F in S(w, k).
inline Refutation no_sured_in_S(const Tuple& F, const Permutation& sigma, const Tuple& G,
                                const std::optional<Polynomial>& Q, const Weight& w)
{
  std::string why;
  if (!in_S_shape(F, w, &why))
    fail(Errc::PreconditionFailed, "F is not in S(w,k): " + why);
  require(G.size() == 3 && sigma.size() == 3 && is_permutation(sigma), Errc::ArityMismatch,
          "need a 3-tuple G and a permutation of 3 indices");
  SUWitness wit;
  for (std::size_t i = 0; i < 3; ++i) {
    wit.F.push_back(F[sigma[i]]);
    wit.G.push_back(G[sigma[i]]);
  }
  wit.Q = Q;
  SUReport rep = su_check(wit, w);
  if (auto f = rep.first_failed())
    return {*f, rep};
  fail(Errc::TheoremViolated, "an element of S(w,k) admits a Shestakov-Umirbaev reduction");
}

// ---------------------------------------------------------------------------
// The lower bound for deg_w p in terms of a representation p = sum c_ij f^i g^j.

struct ExprWitness {
  Polynomial p, f, g;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar> coeffs;
};

inline Polynomial reconstruct(const ExprWitness& x)
{
  Polynomial acc(x.p.ring(), x.p.nvars());
  for (const auto& [ij, c] : x.coeffs)
    if (c != 0)
      acc += (x.f.pow(ij.first) * x.g.pow(ij.second)).scaled(c);
  return acc;
}

inline DegValue degS(const ExprWitness& x, const Weight& w)
{
  x.p.check_compatible(x.f);
  x.p.check_compatible(x.g);
  if (reconstruct(x) != x.p)
    fail(Errc::BadWitness, "coefficients do not reconstruct p");
  const DegValue Df = deg_w(x.f, w), Dg = deg_w(x.g, w);
  DegValue best;
  for (const auto& [ij, c] : x.coeffs) {
    if (c == 0)
      continue;
    DegValue d(Gamma(w.rank()));
    for (std::uint32_t k = 0; k < ij.first; ++k)
      d = d + Df;
    for (std::uint32_t k = 0; k < ij.second; ++k)
      d = d + Dg;
    if (d > best)
      best = d;
  }
  return best;
}

struct InequalityVerdict {
  bool vacuous = false;
  std::int64_t l = 0, m = 0;
  DegValue lhs, rhs, deg_s;
};

inline InequalityVerdict su_inequality_check(const ExprWitness& x, const Weight& w)
{
  const Ring& ring = x.p.ring();
  if (!ring.is_rationals())
    fail(Errc::Unsupported, "the inequality is stated in characteristic zero (Q)");
  const DegValue wedge = wedge_deg({x.f, x.g}, w);
  if (!wedge.is_finite())
    fail(Errc::NotIndependent, "f and g are algebraically dependent");
  InequalityVerdict v;
  v.deg_s = degS(x, w);
  v.lhs = deg_w(x.p, w);
  if (!(v.deg_s > v.lhs)) {
    v.vacuous = true;
    return v;
  }
  const Gamma Df = deg_w(x.f, w).value(), Dg = deg_w(x.g, w).value();
  // l * Dg = m * Df with l, m coprime and positive
  std::optional<std::pair<std::int64_t, std::int64_t>> lm;
  for (std::size_t c = 0; c < Df.rank() && !lm; ++c) {
    if (Df[c] == 0)
      continue;
    mpq_class q(Dg[c], Df[c]);
    q.canonicalize();
    std::int64_t m = q.get_num().get_si(), l = q.get_den().get_si();
    if (m > 0 && l > 0 && l * Dg == m * Df)
      lm = std::make_pair(l, m);
  }
  if (!lm)
    fail(Errc::TheoremViolated, "deg^S p > deg p but the degrees of f and g are not proportional");
  v.l = lm->first;
  v.m = lm->second;
  if (v.l > 1000 || v.m > 1000)
    fail(Errc::BudgetExceeded, "exponents l, m are too large to compare");
  Polynomial fw = initial_form(x.f, w), gw = initial_form(x.g, w);
  if (!detail::proportional(gw.pow(static_cast<std::uint32_t>(v.l)), fw.pow(static_cast<std::uint32_t>(v.m))))
    fail(Errc::TheoremViolated, "deg^S p > deg p but (g^w)^l and (f^w)^m are not proportional");
  v.rhs = DegValue(v.m * Df - Df - Dg) + wedge;
  if (!(v.lhs >= v.rhs))
    fail(Errc::TheoremViolated, "deg_w p = " + v.lhs.str() + " is below the bound " + v.rhs.str());
  return v;
}

} // namespace polydeg

#endif
