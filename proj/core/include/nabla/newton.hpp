#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>

#include "nabla/laurent.hpp"

namespace nabla {

/// Closed interval of radii [alpha, beta] inside (0, 1), stored by exponents
/// alpha = p^{-r_alpha}, beta = p^{-r_beta}, so r_alpha >= r_beta > 0.
class AlignedInterval {
 public:
  AlignedInterval(Rational r_alpha, Rational r_beta);

  /// Exponent of the smaller radius alpha (the larger exponent).
  const Rational& alpha_exponent() const { return r_alpha_; }
  /// Exponent of the larger radius beta.
  const Rational& beta_exponent() const { return r_beta_; }
  LogRadius alpha() const { return LogRadius(r_alpha_); }
  LogRadius beta() const { return LogRadius(r_beta_); }

  bool has_positive_length() const { return r_alpha_ > r_beta_; }
  bool contains(const Rational& r) const { return r_beta_ <= r && r <= r_alpha_; }

  bool operator==(const AlignedInterval&) const = default;

 private:
  Rational r_alpha_;
  Rational r_beta_;
};

/// The Newton lines r -> v_n + n r of a one-variable Laurent series
/// sum a_n t^n, keyed by n.  |a_n| rho^n = p^{-(v_n + n r)} at rho = p^{-r}.
using LineFamily = std::map<int, Rational>;

/// Lines of a one-variable polynomial with scalar coefficients.
LineFamily lines_from_scalar(const LaurentPoly& a);

/// Lines of a polynomial in several variables viewed as a series in t_var
/// whose coefficients are functions of the others.  Each coefficient enters
/// through its Gauss norm at radius 1, i.e. on the locus where it is a unit
/// up to a scalar.
LineFamily lines_on_unit_locus(const LaurentPoly& a, std::size_t var);

/// Exponent of sup_{rho in I} |a|_rho: the n <= 0 lines at alpha and the
/// n >= 0 lines at beta.
LogNorm sup_norm_on_interval(const LineFamily& lines, const AlignedInterval& interval);
LogNorm sup_norm_on_interval(const LaurentPoly& a, const AlignedInterval& interval);

struct DominantTerm {
  std::set<int> a_set;  // n <= 0 attaining the sup norm at alpha
  std::set<int> b_set;  // n >= 0 attaining the sup norm at beta
  int n0 = 0;           // max of a_set, else min of b_set
};

DominantTerm dominant_term(const LineFamily& lines, const AlignedInterval& interval);
DominantTerm dominant_term(const LaurentPoly& a, const AlignedInterval& interval);

struct DominanceCertificate {
  int n0 = 0;
  AlignedInterval interval;  // I' inside I
  LogNorm sup_norm;          // |a| on the original interval
  Exponent margin;           // min gap between the n0 line and the others at the ends of I'
  bool from_a_set = false;
};

/// Finds a subinterval of positive length on which the n0 line lies strictly
/// below every other line.  Endpoints that already satisfy strict dominance
/// are kept; a violating endpoint moves to the midpoint of its feasible range
/// (both endpoints violating: the feasible range is trisected).
DominanceCertificate shrink_interval(const LineFamily& lines, const AlignedInterval& interval);
DominanceCertificate shrink_interval(const LaurentPoly& a, const AlignedInterval& interval);

struct CertificateCheck {
  bool ok = true;
  std::optional<Rational> counterexample;  // radius exponent where the check failed
};

/// Writes a = a_{n0} t^{n0} (1 + f) and verifies |f|_rho < 1 and
/// |a|_rho = |a_{n0}| rho^{n0} at `samples` equally spaced exponents of I'
/// (endpoints included).
CertificateCheck unit_certificate_check(const LaurentPoly& a, const DominanceCertificate& cert,
                                        std::size_t samples);

}  // namespace nabla
