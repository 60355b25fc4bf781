#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "nabla/padic.hpp"

namespace nabla {

/// Variable layout of a polyannulus A^n[lambda,1] x A^m[0,1] over Q_p.
/// Variables 0..n-1 are annulus coordinates (Laurent exponents allowed),
/// variables n..n+m-1 are disc coordinates (exponents >= 0).
struct Signature {
  std::size_t annulus_vars = 0;
  std::size_t disc_vars = 0;
  Prime prime{2};

  std::size_t nvars() const { return annulus_vars + disc_vars; }
  bool is_annulus(std::size_t var) const { return var < annulus_vars; }
  bool operator==(const Signature&) const = default;
};

using ExponentVector = std::vector<int>;

class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

/// Radii (rho_1..rho_{n+m}).  Annulus entries must be positive.
class RadiusVector {
 public:
  RadiusVector(const Signature& sig, std::vector<LogRadius> entries);

  static RadiusVector unit(const Signature& sig);

  std::size_t size() const { return entries_.size(); }
  const LogRadius& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<LogRadius>& entries() const { return entries_; }

  /// Copy with entry `var` replaced.
  RadiusVector with(std::size_t var, const LogRadius& r) const;

 private:
  Signature sig_;
  std::vector<LogRadius> entries_;
};

/// Finitely supported Laurent polynomial over Q with exact p-adic norms.
/// Terms are kept in lexicographic exponent order with no zero coefficients.
class LaurentPoly {
 public:
  using TermMap = std::map<ExponentVector, Rational>;

  explicit LaurentPoly(Signature sig) : sig_(std::move(sig)) {}

  static LaurentPoly constant(const Signature& sig, const Rational& c);
  static LaurentPoly monomial(const Signature& sig, ExponentVector exps, const Rational& c);
  /// The coordinate t_var.
  static LaurentPoly variable(const Signature& sig, std::size_t var);

  const Signature& signature() const { return sig_; }
  Prime prime() const { return sig_.prime; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of t^exps (zero when absent).
  Rational coefficient(const ExponentVector& exps) const;

  /// Adds c * t^exps, validating the exponent vector.
  void add_term(const ExponentVector& exps, const Rational& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  /// this += a * b without materializing the product.
  LaurentPoly& add_product(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const Rational& c) const;

  bool operator==(const LaurentPoly& o) const = default;

 private:
  void check_compatible(const LaurentPoly& o) const;

  Signature sig_;
  TermMap terms_;
};

LaurentPoly scalar_mul(const LaurentPoly& f, const PAdicRational& c);

/// d/dt_var, term by term.
LaurentPoly partial(const LaurentPoly& f, std::size_t var);

/// Exponent of the rho-Gauss norm: min over terms of v(a_J) + sum J_l r_l.
/// A disc radius of 0 kills every term with a positive exponent in that variable.
LogNorm gauss_lognorm(const LaurentPoly& f, const RadiusVector& rho);

/// Sup norm on {lambda <= |t_i| <= 1 (annulus), |t_j| <= 1 (disc)}: the
/// maximum of the Gauss norms over the 2^n vertex radii {lambda,1}^n x {1}^m.
LogNorm sup_lognorm_vertex(const LaurentPoly& f, const LogRadius& lambda);

/// Substitutes t_l := values[l] for every l != keep.  `values` has one entry
/// per variable other than `keep`, in variable order; each must be nonzero.
/// The result is a one-variable polynomial in t_keep, annulus-type when
/// `keep` is an annulus variable and disc-type otherwise.
LaurentPoly evaluate_except(const LaurentPoly& f, std::size_t keep, std::span<const Rational> values);

/// Signature of the one-variable ring obtained by keeping variable `keep`.
Signature one_variable_signature(const Signature& sig, std::size_t keep);

}  // namespace nabla
