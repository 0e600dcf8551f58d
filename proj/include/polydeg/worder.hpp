#ifndef POLYDEG_WORDER_HPP
#define POLYDEG_WORDER_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "poly.hpp"

namespace polydeg {

// Element of Z^r, ordered lexicographically with the first coordinate dominant.
class Gamma {
public:
  explicit Gamma(std::size_t rank = 1) : c_(rank, 0) {}
  Gamma(std::initializer_list<std::int64_t> coords) : c_(coords) {}
  explicit Gamma(std::vector<std::int64_t> coords) : c_(std::move(coords)) {}

  std::size_t rank() const { return c_.size(); }
  const std::vector<std::int64_t>& coords() const { return c_; }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }

  bool is_zero() const
  {
    for (auto v : c_)
      if (v != 0)
        return false;
    return true;
  }
  bool is_positive() const { return *this > Gamma(rank()); }
  bool is_nonneg() const { return *this >= Gamma(rank()); }

  Gamma& operator+=(const Gamma& o)
  {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      c_[i] += o.c_[i];
    return *this;
  }
  Gamma& operator-=(const Gamma& o)
  {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      c_[i] -= o.c_[i];
    return *this;
  }
  friend Gamma operator+(Gamma a, const Gamma& b) { return a += b; }
  friend Gamma operator-(Gamma a, const Gamma& b) { return a -= b; }
  Gamma operator-() const
  {
    Gamma r = *this;
    for (auto& v : r.c_)
      v = -v;
    return r;
  }
  friend Gamma operator*(std::int64_t k, Gamma a)
  {
    for (auto& v : a.c_)
      v *= k;
    return a;
  }

  friend bool operator==(const Gamma& a, const Gamma& b) = default;
  friend std::strong_ordering operator<=>(const Gamma& a, const Gamma& b)
  {
    a.check(b);
    return a.c_ <=> b.c_;
  }

  std::string str() const
  {
    if (c_.size() == 1)
      return std::to_string(c_[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i)
      s += (i ? "," : "") + std::to_string(c_[i]);
    return s + ")";
  }

private:
  void check(const Gamma& o) const
  {
    if (o.c_.size() != c_.size())
      fail(Errc::ArityMismatch, "Gamma ranks differ");
  }

  std::vector<std::int64_t> c_;
};

// k with a = k*b, if any (b nonzero).
inline std::optional<std::int64_t> integer_ratio(const Gamma& a, const Gamma& b)
{
  std::optional<std::int64_t> k;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (b[i] == 0) {
      if (a[i] != 0)
        return std::nullopt;
      continue;
    }
    if (a[i] % b[i] != 0)
      return std::nullopt;
    std::int64_t q = a[i] / b[i];
    if (k && *k != q)
      return std::nullopt;
    k = q;
  }
  return k;
}

// Either -infinity or an element of Gamma.
class DegValue {
public:
  DegValue() = default;
  DegValue(Gamma g) : v_(std::move(g)) {}
  static DegValue minus_infinity() { return DegValue(); }

  bool is_finite() const { return v_.has_value(); }
  bool is_minus_infinity() const { return !v_; }
  const Gamma& value() const
  {
    require(v_.has_value(), Errc::InvalidArgument, "degree is -infinity");
    return *v_;
  }

  friend DegValue operator+(const DegValue& a, const DegValue& b)
  {
    if (!a.v_ || !b.v_)
      return {};
    return DegValue(*a.v_ + *b.v_);
  }
  friend DegValue operator-(const DegValue& a, const Gamma& b)
  {
    if (!a.v_)
      return {};
    return DegValue(*a.v_ - b);
  }

  friend bool operator==(const DegValue& a, const DegValue& b) = default;
  friend std::strong_ordering operator<=>(const DegValue& a, const DegValue& b)
  {
    if (!a.v_ || !b.v_)
      return a.v_.has_value() <=> b.v_.has_value();
    return *a.v_ <=> *b.v_;
  }

  std::string str() const { return v_ ? v_->str() : "-inf"; }

private:
  std::optional<Gamma> v_;
};

class Weight {
public:
  Weight() = default;
  Weight(std::vector<Gamma> entries) : w_(std::move(entries))
  {
    require(!w_.empty(), Errc::InvalidArgument, "weight must have at least one entry");
    for (const auto& g : w_)
      require(g.rank() == w_.front().rank(), Errc::ArityMismatch, "weight entries of mixed rank");
    nonneg_ = pos_ = true;
    for (const auto& g : w_) {
      nonneg_ = nonneg_ && g.is_nonneg();
      pos_ = pos_ && g.is_positive();
    }
  }

  static Weight rank1(const std::vector<std::int64_t>& v)
  {
    std::vector<Gamma> e;
    for (auto x : v)
      e.push_back(Gamma{x});
    return Weight(std::move(e));
  }

  std::size_t size() const { return w_.size(); }
  std::size_t rank() const { return w_.empty() ? 1 : w_.front().rank(); }
  const Gamma& operator[](std::size_t i) const { return w_[i]; }
  const std::vector<Gamma>& entries() const { return w_; }
  bool all_nonneg() const { return nonneg_; }
  bool all_pos() const { return pos_; }

  Gamma total() const
  {
    Gamma t(rank());
    for (const auto& g : w_)
      t += g;
    return t;
  }

  friend bool operator==(const Weight& a, const Weight& b) { return a.w_ == b.w_; }

private:
  std::vector<Gamma> w_;
  bool nonneg_ = true;
  bool pos_ = true;
};

struct Multidegree {
  std::vector<DegValue> entries;
  DegValue total;

  friend bool operator==(const Multidegree& a, const Multidegree& b) = default;
};

inline Gamma exponent_degree(const Exponent& e, const Weight& w)
{
  Gamma d(w.rank());
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0)
      d += static_cast<std::int64_t>(e[i]) * w[i];
  return d;
}

inline void check_weight(const Polynomial& f, const Weight& w)
{
  if (f.nvars() != w.size())
    fail(Errc::ArityMismatch, "polynomial has " + std::to_string(f.nvars()) + " variables, weight has " +
                                  std::to_string(w.size()) + " entries");
}

inline DegValue deg_w(const Polynomial& f, const Weight& w)
{
  check_weight(f, w);
  DegValue best;
  for (const auto& [e, c] : f.terms()) {
    DegValue d(exponent_degree(e, w));
    if (d > best)
      best = std::move(d);
  }
  return best;
}

inline Polynomial initial_form(const Polynomial& f, const Weight& w)
{
  DegValue top = deg_w(f, w);
  Polynomial r(f.ring(), f.nvars());
  for (const auto& [e, c] : f.terms())
    if (DegValue(exponent_degree(e, w)) == top)
      r.add_term(e, c);
  return r;
}

inline bool is_homogeneous(const Polynomial& f, const Weight& w)
{
  return initial_form(f, w) == f;
}

inline Multidegree mdeg_w(const std::vector<Polynomial>& fs, const Weight& w)
{
  Multidegree m;
  m.total = DegValue(Gamma(w.rank()));
  for (const auto& f : fs) {
    m.entries.push_back(deg_w(f, w));
    m.total = m.total + m.entries.back();
  }
  return m;
}

inline std::vector<Polynomial> initial_tuple(const std::vector<Polynomial>& fs, const Weight& w)
{
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].is_zero())
      fail(Errc::ZeroComponent, "component " + std::to_string(i + 1) + " is zero");
    out.push_back(initial_form(fs[i], w));
  }
  return out;
}

// Weight (deg_w f_1, ..., deg_w f_r) used for substitution degrees.
inline Weight composite_weight(const std::vector<Polynomial>& fs, const Weight& w)
{
  std::vector<Gamma> e;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    DegValue d = deg_w(fs[i], w);
    if (!d.is_finite())
      fail(Errc::ZeroComponent, "component " + std::to_string(i + 1) + " is zero");
    e.push_back(d.value());
  }
  return Weight(std::move(e));
}

// Determinant of a small square matrix of polynomials by cofactor expansion,
// memoized on column subsets.  Works over any commutative ring.
inline Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const Ring& ring,
                              std::size_t nvars)
{
  const std::size_t k = m.size();
  if (k == 0)
    return Polynomial::constant(ring, nvars, 1);
  require(k < 20, Errc::InvalidArgument, "determinant too large");
  std::unordered_map<std::uint32_t, Polynomial> memo;
  // det of rows [row, k) with the columns in mask.
  auto rec = [&](auto&& self, std::size_t row, std::uint32_t mask) -> Polynomial {
    if (row == k)
      return Polynomial::constant(ring, nvars, 1);
    if (auto it = memo.find(mask); it != memo.end())
      return it->second;
    Polynomial acc(ring, nvars);
    bool negate = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask & (1u << j)))
        continue;
      if (!m[row][j].is_zero()) {
        Polynomial t = m[row][j] * self(self, row + 1, mask & ~(1u << j));
        if (negate)
          acc -= t;
        else
          acc += t;
      }
      negate = !negate;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(rec, 0, (1u << k) - 1u);
}

inline Polynomial jacobian_determinant(const std::vector<Polynomial>& fs)
{
  require(!fs.empty(), Errc::ArityMismatch, "empty tuple");
  const std::size_t n = fs.front().nvars();
  require(fs.size() == n, Errc::ArityMismatch, "Jacobian determinant needs a square tuple");
  std::vector<std::vector<Polynomial>> j(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      j[r].push_back(fs[r].partial(c));
  return determinant(j, fs.front().ring(), n);
}

// Degree of df_1 ^ ... ^ df_r: max over column sets of deg_w(minor * x_{i1}...x_{ir}).
inline DegValue wedge_deg(const std::vector<Polynomial>& fs, const Weight& w)
{
  require(!fs.empty(), Errc::ArityMismatch, "wedge of no forms");
  const std::size_t n = fs.front().nvars();
  const std::size_t r = fs.size();
  require(r <= n, Errc::ArityMismatch, "more forms than variables");
  for (const auto& f : fs)
    check_weight(f, w);
  std::vector<std::vector<Polynomial>> jac(r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t c = 0; c < n; ++c)
      jac[a].push_back(fs[a].partial(c));

  DegValue best;
  std::vector<std::size_t> cols(r);
  auto visit = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == r) {
      std::vector<std::vector<Polynomial>> minor(r);
      Gamma shift(w.rank());
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          minor[a].push_back(jac[a][cols[b]]);
      for (auto c : cols)
        shift += w[c];
      DegValue d = deg_w(determinant(minor, fs.front().ring(), n), w);
      if (d.is_finite()) {
        DegValue cand(d.value() + shift);
        if (cand > best)
          best = cand;
      }
      return;
    }
    for (std::size_t c = start; c < n; ++c) {
      cols[pos] = c;
      self(self, pos + 1, c + 1);
    }
  };
  visit(visit, 0, 0);
  return best;
}

// Algebraic independence of the initial forms via the Jacobian criterion.
inline bool initial_injective(const std::vector<Polynomial>& fs, const Weight& w)
{
  require(!fs.empty() && fs.size() == fs.front().nvars(), Errc::ArityMismatch,
          "initial_injective needs a square tuple");
  const Ring& ring = fs.front().ring();
  if (!ring.is_field())
    fail(Errc::NotAField, "Jacobian criterion needs a field, got " + ring.name());
  Polynomial det = jacobian_determinant(initial_tuple(fs, w));
  if (!det.is_zero())
    return true;
  if (ring.characteristic() != 0)
    fail(Errc::Inconclusive, "Jacobian vanishes in positive characteristic");
  return false;
}

} // namespace polydeg

#endif
