#ifndef POLYDEG_AUTMAP_HPP
#define POLYDEG_AUTMAP_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "wapprox.hpp"
#include "worder.hpp"

namespace polydeg {

using Tuple = std::vector<Polynomial>;
using Permutation = std::vector<std::size_t>;

// x_i -> sum_j matrix[i][j] x_j + shift[i]
struct AffineGen {
  std::vector<std::vector<Scalar>> matrix;
  std::vector<Scalar> shift;
};

// x_index -> unit * x_index + p, p free of x_index; other variables fixed.
struct ElementaryGen {
  std::size_t index = 0;
  Scalar unit = 1;
  Polynomial p;
};

// x_i -> x_{sigma[i]}
struct PermutationGen {
  Permutation sigma;
};

using Generator = std::variant<AffineGen, ElementaryGen, PermutationGen>;

inline Permutation inverse_permutation(const Permutation& s)
{
  Permutation inv(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    inv[s[i]] = i;
  return inv;
}

inline bool is_permutation(const Permutation& s)
{
  std::vector<bool> seen(s.size(), false);
  for (auto v : s) {
    if (v >= s.size() || seen[v])
      return false;
    seen[v] = true;
  }
  return true;
}

inline Scalar scalar_determinant(const std::vector<std::vector<Scalar>>& m, const Ring& ring)
{
  const std::size_t n = m.size();
  std::vector<std::vector<Polynomial>> pm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      pm[i].push_back(Polynomial::constant(ring, 1, m[i][j]));
  return determinant(pm, ring, 1).constant_term();
}

// Inverse by adjugate; valid over any commutative ring when det is a unit.
inline std::vector<std::vector<Scalar>> scalar_inverse(const std::vector<std::vector<Scalar>>& m, const Ring& ring)
{
  const std::size_t n = m.size();
  const Scalar dinv = ring.try_inverse(scalar_determinant(m, ring));
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<Scalar>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j)
          continue;
        std::vector<Scalar> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i)
            row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Scalar cof = scalar_determinant(minor, ring);
      if ((i + j) % 2 == 1)
        cof = ring.neg(cof);
      inv[i][j] = ring.mul(cof, dinv);
    }
  return inv;
}

inline void validate_generator(const Generator& g, const Ring& ring, std::size_t n)
{
  if (auto a = std::get_if<AffineGen>(&g)) {
    require(a->matrix.size() == n && a->shift.size() == n, Errc::ArityMismatch, "affine generator has wrong size");
    for (const auto& row : a->matrix)
      require(row.size() == n, Errc::ArityMismatch, "affine matrix is not square");
    if (!ring.is_unit(scalar_determinant(a->matrix, ring)))
      fail(Errc::NonUnit, "affine determinant is not a unit");
  } else if (auto e = std::get_if<ElementaryGen>(&g)) {
    require(e->index < n, Errc::ArityMismatch, "elementary index out of range");
    require(e->p.nvars() == n && e->p.ring() == ring, Errc::ArityMismatch, "elementary polynomial has wrong arity or ring");
    if (!ring.is_unit(e->unit))
      fail(Errc::NonUnit, "elementary coefficient is not a unit");
    require(!e->p.involves(e->index), Errc::InvalidArgument, "elementary polynomial involves its own variable");
  } else {
    const auto& s = std::get<PermutationGen>(g).sigma;
    require(s.size() == n && is_permutation(s), Errc::InvalidArgument, "not a permutation of 1..n");
  }
}

// The tuple T o g, i.e. component i becomes g_i(T).
inline Tuple apply_generator(const Tuple& T, const Generator& g, std::size_t budget = kDefaultTermBudget)
{
  const std::size_t n = T.size();
  const Ring& ring = T.front().ring();
  if (auto a = std::get_if<AffineGen>(&g)) {
    Tuple out;
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial c = Polynomial::constant(ring, T.front().nvars(), a->shift[i]);
      for (std::size_t j = 0; j < n; ++j)
        if (a->matrix[i][j] != 0)
          c += T[j].scaled(a->matrix[i][j]);
      if (c.size() > budget)
        fail(Errc::BudgetExceeded, "composition exceeded the term budget");
      out.push_back(std::move(c));
    }
    return out;
  }
  if (auto e = std::get_if<ElementaryGen>(&g)) {
    Tuple out = T;
    out[e->index] = T[e->index].scaled(e->unit) + substitute(e->p, T, budget);
    if (out[e->index].size() > budget)
      fail(Errc::BudgetExceeded, "composition exceeded the term budget");
    return out;
  }
  const auto& s = std::get<PermutationGen>(g).sigma;
  Tuple out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(T[s[i]]);
  return out;
}

inline Generator inverse_generator(const Generator& g, const Ring& ring)
{
  if (auto a = std::get_if<AffineGen>(&g)) {
    AffineGen r;
    r.matrix = scalar_inverse(a->matrix, ring);
    const std::size_t n = a->shift.size();
    r.shift.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      Scalar s = 0;
      for (std::size_t j = 0; j < n; ++j)
        s = ring.add(s, ring.mul(r.matrix[i][j], a->shift[j]));
      r.shift[i] = ring.neg(s);
    }
    return r;
  }
  if (auto e = std::get_if<ElementaryGen>(&g)) {
    const Scalar inv = ring.try_inverse(e->unit);
    return ElementaryGen{e->index, inv, e->p.scaled(ring.neg(inv))};
  }
  return PermutationGen{inverse_permutation(std::get<PermutationGen>(g).sigma)};
}

// An automorphism as a word g_1 g_2 ... g_L, meaning g_1 o g_2 o ... o g_L.
// The tuple is kept in sync: component i is the image of x_i.
class AutWord {
public:
  AutWord() = default;
  AutWord(Ring ring, std::size_t n) : ring_(std::move(ring)), n_(n), tuple_(Polynomial::identity(ring_, n)) {}

  static AutWord from_generators(const Ring& ring, std::size_t n, const std::vector<Generator>& gens,
                                 std::size_t budget = kDefaultTermBudget)
  {
    AutWord w(ring, n);
    for (const auto& g : gens)
      w.append(g, budget);
    return w;
  }

  void append(const Generator& g, std::size_t budget = kDefaultTermBudget)
  {
    validate_generator(g, ring_, n_);
    tuple_ = apply_generator(tuple_, g, budget);
    gens_.push_back(g);
  }

  const Ring& ring() const { return ring_; }
  std::size_t nvars() const { return n_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const Tuple& tuple() const { return tuple_; }
  std::size_t length() const { return gens_.size(); }

  bool has_affine() const
  {
    return std::any_of(gens_.begin(), gens_.end(), [](const Generator& g) { return std::holds_alternative<AffineGen>(g); });
  }

private:
  Ring ring_;
  std::size_t n_ = 0;
  std::vector<Generator> gens_;
  Tuple tuple_;
};

inline bool is_identity(const Tuple& T)
{
  return !T.empty() && T == Polynomial::identity(T.front().ring(), T.size());
}

inline AutWord compose(const AutWord& F, const AutWord& G, std::size_t budget = kDefaultTermBudget)
{
  require(F.nvars() == G.nvars() && F.ring() == G.ring(), Errc::ArityMismatch, "words over different rings or arities");
  AutWord r = F;
  for (const auto& g : G.generators())
    r.append(g, budget);
  return r;
}

inline AutWord invert(const AutWord& F, std::size_t budget = kDefaultTermBudget)
{
  AutWord r(F.ring(), F.nvars());
  for (auto it = F.generators().rbegin(); it != F.generators().rend(); ++it)
    r.append(inverse_generator(*it, F.ring()), budget);
  return r;
}

// F o F^{-1} = id, evaluated generator by generator (intermediate tuples are
// prefixes of F, so this stays cheap).
inline bool verify_inverse(const AutWord& F, std::size_t budget = kDefaultTermBudget)
{
  Tuple T = F.tuple();
  for (auto it = F.generators().rbegin(); it != F.generators().rend(); ++it)
    T = apply_generator(T, inverse_generator(*it, F.ring()), budget);
  return is_identity(T);
}

inline bool in_aut_w(const Tuple& F, const Weight& w)
{
  for (const auto& f : F)
    if (!initial_form(f, w).is_nonzerodivisor())
      return false;
  return true;
}

inline bool in_E_w(const AutWord& F, const Weight& w)
{
  if (F.has_affine())
    fail(Errc::NotElementaryWord, "word contains an affine generator");
  return in_aut_w(F.tuple(), w);
}

inline bool jacobian_is_unit_constant(const Tuple& F)
{
  Polynomial j = jacobian_determinant(F);
  return j.is_constant() && F.front().ring().is_unit(j.constant_term());
}

struct IndexSets {
  std::vector<std::size_t> J;
  std::vector<std::size_t> I0;
};

// J = {j : f_j in k[x_i, i in I]}, I0 = {i0 in I : every deg f_j (j in J)
// lies in the semigroup of w_i, i in I minus i0}.  Indices are 0-based.
inline IndexSets thm11_sets(const Tuple& F, const std::vector<std::size_t>& I, const Weight& w)
{
  require(!I.empty(), Errc::InvalidArgument, "I must be nonempty");
  const std::size_t n = F.size();
  std::vector<bool> inI(n, false);
  for (auto i : I) {
    require(i < n, Errc::ArityMismatch, "index out of range");
    inI[i] = true;
  }
  IndexSets out;
  for (std::size_t j = 0; j < n; ++j)
    if (F[j].only_uses(inI))
      out.J.push_back(j);
  for (auto i0 : I) {
    std::vector<Gamma> gens;
    for (auto i : I)
      if (i != i0)
        gens.push_back(w[i]);
    bool ok = true;
    for (auto j : out.J) {
      DegValue d = deg_w(F[j], w);
      if (!d.is_finite() || !in_semigroup(d.value(), gens)) {
        ok = false;
        break;
      }
    }
    if (ok)
      out.I0.push_back(i0);
  }
  return out;
}

struct Dichotomy {
  enum class Case { A, B } which = Case::A;
  std::vector<std::pair<std::size_t, std::size_t>> sigma;  // (j, sigma(j)) for case A
  std::size_t witness = 0;                                 // i for case B
  IndexSets sets;
};

namespace detail {

inline bool augment(std::size_t j, const std::vector<std::vector<std::size_t>>& adj, std::vector<bool>& seen,
                    std::vector<std::optional<std::size_t>>& match_of_i)
{
  for (auto i : adj[j]) {
    if (seen[i])
      continue;
    seen[i] = true;
    if (!match_of_i[i] || augment(*match_of_i[i], adj, seen, match_of_i)) {
      match_of_i[i] = j;
      return true;
    }
  }
  return false;
}

inline bool variable_divides(std::size_t i, const Polynomial& f)
{
  // x_i divides f iff every term has positive exponent at i.
  if (f.is_zero())
    return true;
  for (const auto& [e, c] : f.terms())
    if (e[i] == 0)
      return false;
  return true;
}

} // namespace detail

inline Dichotomy thm11_dichotomy(const Tuple& F, const std::vector<std::size_t>& I, const Weight& w, const Weight& v)
{
  Dichotomy out;
  out.sets = thm11_sets(F, I, w);
  const auto& J = out.sets.J;
  const std::size_t n = F.size();

  if (J.size() == I.size()) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto j : J)
      for (auto i : I)
        if (deg_w(F[j], w) == DegValue(w[i]))
          adj[j].push_back(i);
    std::vector<std::optional<std::size_t>> match_of_i(n);
    bool perfect = true;
    for (auto j : J) {
      std::vector<bool> seen(n, false);
      if (!detail::augment(j, adj, seen, match_of_i)) {
        perfect = false;
        break;
      }
    }
    if (perfect) {
      out.which = Dichotomy::Case::A;
      for (auto i : I)
        out.sigma.emplace_back(*match_of_i[i], i);
      std::sort(out.sigma.begin(), out.sigma.end());
      return out;
    }
  }

  DegValue sum_j = DegValue(Gamma(w.rank()));
  for (auto j : J)
    sum_j = sum_j + deg_w(F[j], w);
  Gamma sum_i(w.rank());
  for (auto i : I)
    sum_i += w[i];
  const bool degree_gap = sum_j > DegValue(sum_i) || I.size() > J.size();
  if (degree_gap) {
    std::vector<Polynomial> tops;
    for (auto j : J)
      tops.push_back(initial_form(initial_form(F[j], w), v));
    for (auto i : out.sets.I0) {
      bool free = std::none_of(tops.begin(), tops.end(), [&](const Polynomial& t) { return detail::variable_divides(i, t); });
      if (free) {
        out.which = Dichotomy::Case::B;
        out.witness = i;
        return out;
      }
    }
  }
  fail(Errc::TheoremViolated, "neither a degree-matching bijection nor a free index exists");
}

// Index i with every deg_w f_j in the semigroup of the w_l, l != i.
inline std::optional<std::size_t> cor12_index(const Tuple& F, const Weight& w)
{
  for (std::size_t i = 0; i < F.size(); ++i) {
    std::vector<Gamma> gens;
    for (std::size_t l = 0; l < F.size(); ++l)
      if (l != i)
        gens.push_back(w[l]);
    bool ok = true;
    for (const auto& f : F) {
      DegValue d = deg_w(f, w);
      if (!d.is_finite() || !in_semigroup(d.value(), gens)) {
        ok = false;
        break;
      }
    }
    if (ok)
      return i;
  }
  return std::nullopt;
}

struct RandomWordOptions {
  std::size_t max_poly_degree = 2;
  std::size_t max_poly_terms = 2;
  std::int64_t coeff_range = 2;
  bool allow_affine = true;
  bool allow_permutation = true;
  bool verify = true;
};

inline Scalar random_unit(const Ring& ring, std::mt19937_64& rng)
{
  if (ring.is_rationals()) {
    static const long units[] = {1, -1, 2, -2};
    return Scalar(units[rng() % 4]);
  }
  for (;;) {
    Scalar s = ring.from_int(static_cast<long>(rng() % 97) + 1);
    if (ring.is_unit(s))
      return s;
  }
}

inline Scalar random_nonzero(const Ring& ring, std::mt19937_64& rng, std::int64_t range)
{
  for (;;) {
    std::int64_t v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
    Scalar s = ring.from_int(static_cast<long>(v));
    if (s != 0)
      return s;
  }
}

// Random polynomial free of x_skip with terms of degree 1..max_degree.
inline Polynomial random_poly_without(const Ring& ring, std::size_t n, std::size_t skip, std::mt19937_64& rng,
                                      const RandomWordOptions& opt)
{
  Polynomial p(ring, n);
  if (n < 2)
    return p;
  std::size_t terms = 1 + rng() % opt.max_poly_terms;
  for (std::size_t t = 0; t < terms; ++t) {
    Exponent e(n, 0);
    std::size_t deg = 1 + rng() % opt.max_poly_degree;
    for (std::size_t k = 0; k < deg; ++k) {
      std::size_t v = rng() % (n - 1);
      if (v >= skip)
        ++v;
      ++e[v];
    }
    p.add_term(std::move(e), random_nonzero(ring, rng, opt.coeff_range));
  }
  return p;
}

inline Generator random_generator(const Ring& ring, std::size_t n, std::mt19937_64& rng, const RandomWordOptions& opt)
{
  const bool affine_ok = opt.allow_affine && ring.is_field();
  for (;;) {
    std::uint64_t roll = rng() % 20;
    if (roll < 4 && affine_ok) {
      AffineGen a;
      a.matrix.assign(n, std::vector<Scalar>(n, 0));
      a.shift.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        a.matrix[i][i] = random_unit(ring, rng);
      std::size_t extra = 1 + rng() % 2;
      for (std::size_t k = 0; k < extra && n > 1; ++k) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i != j)
          a.matrix[i][j] = random_nonzero(ring, rng, opt.coeff_range);
      }
      for (std::size_t i = 0; i < n; ++i)
        if (rng() % 3 == 0)
          a.shift[i] = random_nonzero(ring, rng, opt.coeff_range);
      if (ring.is_unit(scalar_determinant(a.matrix, ring)))
        return a;
      continue;
    }
    if (roll < 6 && opt.allow_permutation) {
      Permutation s(n);
      std::iota(s.begin(), s.end(), 0);
      std::shuffle(s.begin(), s.end(), rng);
      return PermutationGen{s};
    }
    if (roll < 6)
      continue;
    std::size_t l = rng() % n;
    return ElementaryGen{l, random_unit(ring, rng), random_poly_without(ring, n, l, rng, opt)};
  }
}

// Seeded random tame word; throws BudgetExceeded when a component grows past
// term_budget terms.
inline AutWord random_tame(std::size_t n, const Ring& ring, std::size_t length, std::size_t term_budget,
                           std::uint64_t seed, const RandomWordOptions& opt = {})
{
  std::mt19937_64 rng(seed);
  AutWord w(ring, n);
  for (std::size_t k = 0; k < length; ++k)
    w.append(random_generator(ring, n, rng, opt), term_budget);
  if (opt.verify && !verify_inverse(w, term_budget))
    fail(Errc::InternalInfeasible, "random word does not invert to the identity");
  return w;
}

} // namespace polydeg

#endif
