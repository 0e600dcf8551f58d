#ifndef POLYDEG_TESTS_COMMON_HPP
#define POLYDEG_TESTS_COMMON_HPP

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <polydeg/polydeg.hpp>

namespace polydeg {

inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const Gamma& g, std::ostream* os) { *os << g.str(); }
inline void PrintTo(const DegValue& d, std::ostream* os) { *os << d.str(); }

} // namespace polydeg

namespace pt {

using namespace polydeg;

inline const Ring Q = Ring::rationals();

inline Polynomial P(const std::string& s, std::size_t n, const Ring& r = Q) { return parse_polynomial(s, r, n); }

inline Tuple T(const std::vector<std::string>& fs, const Ring& r = Q)
{
  Tuple out;
  for (const auto& f : fs)
    out.push_back(P(f, fs.size(), r));
  return out;
}

inline Weight W(std::vector<std::int64_t> w) { return Weight::rank1(std::move(w)); }

inline std::vector<Gamma> D(std::vector<std::int64_t> d)
{
  std::vector<Gamma> out;
  for (auto x : d)
    out.push_back(Gamma{x});
  return out;
}

inline std::vector<Gamma> degrees_of(const Tuple& F, const Weight& w)
{
  std::vector<Gamma> out;
  for (const auto& e : mdeg_w(F, w).entries)
    out.push_back(e.value());
  return out;
}

inline std::vector<std::string> strs(const Tuple& F)
{
  std::vector<std::string> out;
  for (const auto& f : F)
    out.push_back(to_string(f));
  return out;
}

inline Polynomial random_poly(std::mt19937_64& rng, const Ring& ring, std::size_t n, int terms, int maxdeg,
                              int range = 5)
{
  std::uniform_int_distribution<int> e(0, maxdeg), c(-range, range), d(1, 4), k(0, terms);
  Polynomial p(ring, n);
  for (int t = k(rng); t > 0; --t) {
    Exponent ex(n);
    for (auto& x : ex)
      x = static_cast<std::uint32_t>(e(rng));
    Scalar s = ring.is_rationals() ? Scalar(c(rng), d(rng)) : Scalar(c(rng));
    p.add_term(ex, ring.normalize(s));
  }
  return p;
}

inline Weight random_weight(std::mt19937_64& rng, std::size_t n, std::int64_t lo, std::int64_t hi)
{
  std::uniform_int_distribution<std::int64_t> u(lo, hi);
  std::vector<std::int64_t> w(n);
  for (auto& x : w)
    x = u(rng);
  return Weight::rank1(w);
}

} // namespace pt

#endif
