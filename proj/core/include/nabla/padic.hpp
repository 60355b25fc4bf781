#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nabla {

using Rational = mpq_class;
using Integer = mpz_class;

/// A rational prime p >= 2. Primality is checked on construction.
class Prime {
 public:
  explicit Prime(std::uint32_t p);

  std::uint32_t value() const { return p_; }
  Integer as_integer() const { return Integer(static_cast<unsigned long>(p_)); }

  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint32_t p_;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Rational number extended by +infinity.  Used for log-scale norms and
/// radii: a norm p^{-e} is stored as e, and norm 0 as +infinity.
class Exponent {
 public:
  Exponent() : value_(0) {}
  Exponent(const Rational& q) : value_(q) { value_.canonicalize(); }  // NOLINT
  Exponent(long v) : value_(v) {}                                      // NOLINT

  static Exponent infinity() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Finite value; throws when infinite.
  const Rational& value() const;

  Exponent operator+(const Exponent& o) const;
  Exponent operator-() const;  // finite only
  Exponent operator-(const Exponent& o) const;  // o must be finite
  /// Integer multiple. k * inf is inf for k > 0 and 0 for k == 0.
  Exponent scaled(long k) const;

  bool operator==(const Exponent& o) const;
  std::strong_ordering operator<=>(const Exponent& o) const;

  /// "num/den" (den omitted when 1), or "inf".
  std::string str() const;

 private:
  Rational value_;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const Exponent& e);

const Exponent& min(const Exponent& a, const Exponent& b);
const Exponent& max(const Exponent& a, const Exponent& b);

/// p-adic valuation of a rational number; +infinity for 0.
Exponent valuation(const Rational& x, Prime p);

/// Valuation of a nonzero integer.
long valuation(const Integer& x, Prime p);

/// v_p(n!) by Legendre's formula.
long factorial_valuation(unsigned long n, Prime p);

/// Parse "num/den" or "num" (base 10, optional sign).  The result is
/// canonicalized; a zero denominator is rejected.
Rational parse_rational(std::string_view text);

/// Inverse of parse_rational.
std::string format_rational(const Rational& q);

/// Exact rational scalar tied to a prime.
class PAdicRational {
 public:
  PAdicRational(Rational value, Prime p);

  const Rational& value() const { return value_; }
  Prime prime() const { return prime_; }
  Exponent valuation() const { return nabla::valuation(value_, prime_); }
  bool is_zero() const { return value_ == 0; }

  PAdicRational operator+(const PAdicRational& o) const;
  PAdicRational operator-(const PAdicRational& o) const;
  PAdicRational operator*(const PAdicRational& o) const;
  PAdicRational operator/(const PAdicRational& o) const;

  bool operator==(const PAdicRational& o) const {
    return prime_ == o.prime_ && value_ == o.value_;
  }

 private:
  void check_prime(const PAdicRational& o) const;

  Rational value_;
  Prime prime_;
};

/// A norm p^{-exponent}; exponent +infinity encodes the zero norm.
class LogNorm {
 public:
  LogNorm() = default;
  explicit LogNorm(Exponent e) : exponent_(std::move(e)) {}

  static LogNorm zero() { return LogNorm(Exponent::infinity()); }
  static LogNorm one() { return LogNorm(Exponent(0)); }
  /// p^{-1/(p-1)}, the spectral norm of d/dt on the unit disc.
  static LogNorm dwork_constant(Prime p) {
    return LogNorm(Exponent(Rational(1, p.value() - 1)));
  }

  const Exponent& exponent() const { return exponent_; }
  bool is_zero() const { return exponent_.is_infinite(); }

  /// Product of norms.
  LogNorm operator*(const LogNorm& o) const { return LogNorm(exponent_ + o.exponent_); }

  /// Norm comparison: a < b means |a| < |b|, the reverse of the exponent order.
  std::strong_ordering operator<=>(const LogNorm& o) const {
    return o.exponent_ <=> exponent_;
  }
  bool operator==(const LogNorm& o) const = default;

 private:
  Exponent exponent_;
};

/// The larger of two norms, i.e. the smaller exponent.
LogNorm lognorm_max(const LogNorm& a, const LogNorm& b);

/// A radius p^{-r} with r >= 0 rational, or the disc centre (radius 0).
class LogRadius {
 public:
  /// Radius 1.
  LogRadius() = default;
  explicit LogRadius(const Rational& r);

  static LogRadius unit() { return LogRadius(); }
  static LogRadius disc_center() {
    LogRadius r;
    r.exponent_ = Exponent::infinity();
    return r;
  }

  bool is_disc_center() const { return exponent_.is_infinite(); }
  const Exponent& exponent() const { return exponent_; }

  bool operator==(const LogRadius& o) const = default;

 private:
  Exponent exponent_;
};

}  // namespace nabla
