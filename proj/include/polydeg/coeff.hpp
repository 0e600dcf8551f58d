#ifndef POLYDEG_COEFF_HPP
#define POLYDEG_COEFF_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "error.hpp"

namespace polydeg {

// Ring elements are stored as mpq_class values kept in canonical form by
// their Ring: reduced fractions over Q, integers in [0, m) otherwise.
using Scalar = mpq_class;

class Ring {
public:
  enum class Kind { Rationals, PrimeField, ModRing };

  Ring() = default;

  static Ring rationals() { return Ring(); }

  static Ring prime_field(const mpz_class& p)
  {
    require(p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) != 0, Errc::InvalidArgument,
            "Fp modulus must be prime, got " + p.get_str());
    return Ring(Kind::PrimeField, p);
  }

  static Ring mod_ring(const mpz_class& m)
  {
    require(m >= 2, Errc::InvalidArgument, "Zmod modulus must be at least 2, got " + m.get_str());
    return Ring(Kind::ModRing, m);
  }

  // Accepts "Q", "Fp:<p>" and "Zmod:<m>".
  static Ring parse(std::string_view text)
  {
    auto modulus_of = [&](std::size_t skip) {
      std::string digits(text.substr(skip));
      mpz_class m;
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
          m.set_str(digits, 10) != 0)
        fail(Errc::InvalidArgument, "bad ring modulus in '" + std::string(text) + "'");
      return m;
    };
    if (text == "Q")
      return rationals();
    if (text.substr(0, 3) == "Fp:")
      return prime_field(modulus_of(3));
    if (text.substr(0, 5) == "Zmod:")
      return mod_ring(modulus_of(5));
    fail(Errc::InvalidArgument, "unknown ring '" + std::string(text) + "'");
  }

  Kind kind() const { return kind_; }
  bool is_field() const { return kind_ != Kind::ModRing; }
  bool is_rationals() const { return kind_ == Kind::Rationals; }

  // Zero for Q.
  mpz_class characteristic() const { return modulus_ ? *modulus_ : mpz_class(0); }

  const mpz_class& modulus() const
  {
    static const mpz_class zero(0);
    return modulus_ ? *modulus_ : zero;
  }

  std::string name() const
  {
    switch (kind_) {
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "Fp:" + modulus_->get_str();
    case Kind::ModRing: return "Zmod:" + modulus_->get_str();
    }
    return "?";
  }

  friend bool operator==(const Ring& a, const Ring& b)
  {
    if (a.kind_ != b.kind_)
      return false;
    return a.kind_ == Kind::Rationals || *a.modulus_ == *b.modulus_;
  }

  Scalar normalize(const mpq_class& q) const
  {
    if (kind_ == Kind::Rationals) {
      Scalar r(q);
      r.canonicalize();
      return r;
    }
    mpz_class num = q.get_num() % *modulus_;
    if (num < 0)
      num += *modulus_;
    if (q.get_den() == 1)
      return Scalar(num);
    mpz_class den = q.get_den() % *modulus_;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus_->get_mpz_t()) == 0)
      fail(Errc::NonUnit, "denominator " + q.get_den().get_str() + " is not invertible in " + name());
    mpz_class r = (num * inv) % *modulus_;
    return Scalar(r);
  }

  Scalar from_int(long v) const { return normalize(mpq_class(v)); }

  // Decimal integer or fraction, optionally signed: "-3/2", "7".
  Scalar parse_scalar(std::string_view text) const
  {
    std::string s(text);
    mpq_class q;
    bool ok = !s.empty() && s.find_first_not_of("+-0123456789/") == std::string::npos;
    if (ok && s[0] == '+')
      s.erase(0, 1);
    if (ok) {
      auto slash = s.find('/');
      if (slash != std::string::npos && (slash == 0 || slash + 1 == s.size() || s.find('/', slash + 1) != std::string::npos))
        ok = false;
      else if (slash != std::string::npos && s.substr(slash + 1) == std::string(s.size() - slash - 1, '0'))
        ok = false;
      else
        ok = q.set_str(s, 10) == 0;
    }
    if (!ok)
      fail(Errc::InvalidArgument, "bad scalar '" + std::string(text) + "'");
    q.canonicalize();
    return normalize(q);
  }

  Scalar add(const Scalar& a, const Scalar& b) const
  {
    if (kind_ == Kind::Rationals)
      return a + b;
    mpz_class r = a.get_num() + b.get_num();
    if (r >= *modulus_)
      r -= *modulus_;
    return Scalar(r);
  }

  Scalar sub(const Scalar& a, const Scalar& b) const
  {
    if (kind_ == Kind::Rationals)
      return a - b;
    mpz_class r = a.get_num() - b.get_num();
    if (r < 0)
      r += *modulus_;
    return Scalar(r);
  }

  Scalar mul(const Scalar& a, const Scalar& b) const
  {
    if (kind_ == Kind::Rationals)
      return a * b;
    mpz_class r = (a.get_num() * b.get_num()) % *modulus_;
    return Scalar(r);
  }

  Scalar neg(const Scalar& a) const
  {
    if (kind_ == Kind::Rationals)
      return -a;
    if (a == 0)
      return a;
    return Scalar(mpz_class(*modulus_ - a.get_num()));
  }

  bool is_unit(const Scalar& a) const
  {
    if (kind_ == Kind::Rationals)
      return a != 0;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_num().get_mpz_t(), modulus_->get_mpz_t());
    return g == 1;
  }

  Scalar try_inverse(const Scalar& a) const
  {
    if (!is_unit(a))
      fail(Errc::NonUnit, to_string(a) + " is not a unit in " + name());
    if (kind_ == Kind::Rationals)
      return 1 / a;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), a.get_num().get_mpz_t(), modulus_->get_mpz_t());
    return Scalar(inv);
  }

  static std::string to_string(const Scalar& a) { return a.get_str(); }

private:
  Ring(Kind k, const mpz_class& m) : kind_(k), modulus_(std::make_shared<const mpz_class>(m)) {}

  Kind kind_ = Kind::Rationals;
  std::shared_ptr<const mpz_class> modulus_;
};

} // namespace polydeg

#endif
