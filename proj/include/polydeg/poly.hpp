#ifndef POLYDEG_POLY_HPP
#define POLYDEG_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "coeff.hpp"

namespace polydeg {

using Exponent = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultTermBudget = 1000000;

// Sparse polynomial in a fixed number of variables.  Variables are indexed
// from 0 in the C++ interface; text and JSON use x1..xn.
class Polynomial {
public:
  using TermMap = std::map<Exponent, Scalar>;

  Polynomial() = default;
  Polynomial(Ring ring, std::size_t nvars) : ring_(std::move(ring)), nvars_(nvars) {}

  static Polynomial constant(const Ring& ring, std::size_t nvars, const Scalar& c)
  {
    Polynomial p(ring, nvars);
    p.add_term(Exponent(nvars, 0), ring.normalize(c));
    return p;
  }

  static Polynomial variable(const Ring& ring, std::size_t nvars, std::size_t i)
  {
    require(i < nvars, Errc::ArityMismatch, "variable index out of range");
    Exponent e(nvars, 0);
    e[i] = 1;
    Polynomial p(ring, nvars);
    p.terms_.emplace(std::move(e), Scalar(1));
    return p;
  }

  static Polynomial monomial(const Ring& ring, Exponent e, const Scalar& c)
  {
    Polynomial p(ring, e.size());
    p.add_term(std::move(e), ring.normalize(c));
    return p;
  }

  static std::vector<Polynomial> identity(const Ring& ring, std::size_t n)
  {
    std::vector<Polynomial> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(variable(ring, n, i));
    return out;
  }

  const Ring& ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const
  {
    return terms_.empty() || (terms_.size() == 1 && is_zero_exponent(terms_.begin()->first));
  }

  Scalar coefficient(const Exponent& e) const
  {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  Scalar constant_term() const { return coefficient(Exponent(nvars_, 0)); }

  // Adds c * x^e; c must already be normalized for the ring.
  void add_term(Exponent e, const Scalar& c)
  {
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second = ring_.add(it->second, c);
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  std::uint32_t total_degree() const
  {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_)
      d = std::max(d, std::accumulate(e.begin(), e.end(), std::uint32_t(0)));
    return d;
  }

  std::uint32_t degree_in(std::size_t i) const
  {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_)
      d = std::max(d, e[i]);
    return d;
  }

  bool involves(std::size_t i) const
  {
    for (const auto& [e, c] : terms_)
      if (e[i] != 0)
        return true;
    return false;
  }

  // True iff every term only uses variables flagged in `allowed`.
  bool only_uses(const std::vector<bool>& allowed) const
  {
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] != 0 && !allowed[i])
          return false;
    return true;
  }

  std::vector<Exponent> support() const
  {
    std::vector<Exponent> s;
    s.reserve(terms_.size());
    for (const auto& [e, c] : terms_)
      s.push_back(e);
    return s;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b)
  {
    return a.nvars_ == b.nvars_ && a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial operator-() const
  {
    Polynomial r(ring_, nvars_);
    for (const auto& [e, c] : terms_)
      r.terms_.emplace_hint(r.terms_.end(), e, ring_.neg(c));
    return r;
  }

  Polynomial& operator+=(const Polynomial& o)
  {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o)
  {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
      add_term(e, ring_.neg(c));
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
  {
    a.check_compatible(b);
    Polynomial r(a.ring_, a.nvars_);
    if (a.is_zero() || b.is_zero())
      return r;
    const Ring& ring = a.ring_;
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i)
          e[i] = ea[i] + eb[i];
        r.add_term(e, ring.mul(ca, cb));
      }
    return r;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Scalar& s) const
  {
    Scalar c0 = ring_.normalize(s);
    Polynomial r(ring_, nvars_);
    if (c0 == 0)
      return r;
    for (const auto& [e, c] : terms_) {
      Scalar v = ring_.mul(c, c0);
      if (v != 0)
        r.terms_.emplace_hint(r.terms_.end(), e, std::move(v));
    }
    return r;
  }

  Polynomial pow(std::uint32_t k) const
  {
    Polynomial result = constant(ring_, nvars_, 1);
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1u)
        result *= base;
      k >>= 1;
      if (k > 0)
        base *= base;
    }
    return result;
  }

  // Formal partial derivative with respect to variable i.
  Polynomial partial(std::size_t i) const
  {
    require(i < nvars_, Errc::ArityMismatch, "derivative variable out of range");
    Polynomial r(ring_, nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0)
        continue;
      Exponent d = e;
      --d[i];
      r.add_term(std::move(d), ring_.mul(c, ring_.from_int(static_cast<long>(e[i]))));
    }
    return r;
  }

  // Same polynomial viewed in more variables (zero-padded exponents).
  Polynomial embed(std::size_t new_nvars) const
  {
    require(new_nvars >= nvars_, Errc::ArityMismatch, "embed cannot drop variables");
    Polynomial r(ring_, new_nvars);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f.resize(new_nvars, 0);
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  // Same coefficients reinterpreted in another ring (used for cross-ring runs).
  Polynomial change_ring(const Ring& ring) const
  {
    Polynomial r(ring, nvars_);
    for (const auto& [e, c] : terms_)
      r.add_term(e, ring.normalize(c));
    return r;
  }

  // McCoy: a zero divisor iff a nonzero scalar kills every coefficient.
  bool is_nonzerodivisor() const
  {
    if (terms_.empty())
      return false;
    if (ring_.kind() != Ring::Kind::ModRing)
      return true;
    mpz_class g = ring_.modulus();
    for (const auto& [e, c] : terms_)
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    return g == 1;
  }

  void check_compatible(const Polynomial& o) const
  {
    if (nvars_ != o.nvars_)
      fail(Errc::ArityMismatch, "variable counts differ (" + std::to_string(nvars_) + " vs " +
                                    std::to_string(o.nvars_) + ")");
    if (!(ring_ == o.ring_))
      fail(Errc::ArityMismatch, "rings differ (" + ring_.name() + " vs " + o.ring_.name() + ")");
  }

  static bool is_zero_exponent(const Exponent& e)
  {
    return std::all_of(e.begin(), e.end(), [](std::uint32_t v) { return v == 0; });
  }

private:
  Ring ring_;
  std::size_t nvars_ = 0;
  TermMap terms_;
};

inline Polynomial operator*(const Scalar& s, const Polynomial& p) { return p.scaled(s); }

// g(f_1, ..., f_r).  Aborts with BudgetExceeded once an intermediate result
// holds more than `budget` terms.
inline Polynomial substitute(const Polynomial& g, const std::vector<Polynomial>& fs,
                             std::size_t budget = kDefaultTermBudget)
{
  if (g.nvars() != fs.size())
    fail(Errc::ArityMismatch, "substitution expects " + std::to_string(g.nvars()) +
                                  " polynomials, got " + std::to_string(fs.size()));
  require(!fs.empty(), Errc::ArityMismatch, "substitution into an empty tuple");
  const Ring& ring = fs.front().ring();
  const std::size_t n = fs.front().nvars();
  for (const auto& f : fs)
    fs.front().check_compatible(f);
  require(g.ring() == ring, Errc::ArityMismatch, "rings differ in substitution");

  std::vector<std::vector<Polynomial>> powers(fs.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty())
      cache.push_back(Polynomial::constant(ring, n, 1));
    while (cache.size() <= k) {
      cache.push_back(cache.back() * fs[i]);
      if (cache.back().size() > budget)
        fail(Errc::BudgetExceeded, "substitution exceeded " + std::to_string(budget) + " terms");
    }
    return cache[k];
  };

  Polynomial result(ring, n);
  for (const auto& [e, c] : g.terms()) {
    Polynomial term = Polynomial::constant(ring, n, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0)
        term = term * power(i, e[i]);
    result += term;
    if (result.size() > budget || term.size() > budget)
      fail(Errc::BudgetExceeded, "substitution exceeded " + std::to_string(budget) + " terms");
  }
  return result;
}

inline std::vector<Polynomial> substitute_all(const std::vector<Polynomial>& gs,
                                              const std::vector<Polynomial>& fs,
                                              std::size_t budget = kDefaultTermBudget)
{
  std::vector<Polynomial> out;
  out.reserve(gs.size());
  for (const auto& g : gs)
    out.push_back(substitute(g, fs, budget));
  return out;
}

inline std::vector<Polynomial> embed_all(const std::vector<Polynomial>& fs, std::size_t new_nvars)
{
  std::vector<Polynomial> out;
  for (const auto& f : fs)
    out.push_back(f.embed(new_nvars));
  return out;
}

} // namespace polydeg

#endif
