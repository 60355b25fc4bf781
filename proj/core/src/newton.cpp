#include "nabla/newton.hpp"

namespace nabla {

namespace {

Rational line_at(const std::pair<const int, Rational>& line, const Rational& r) {
  return Rational(line.second + line.first * r);
}

void require_nonempty(const LineFamily& lines) {
  if (lines.empty()) throw Error("the zero series has no dominant term");
}

void require_positive_length(const AlignedInterval& interval) {
  if (!interval.has_positive_length()) throw Error("interval must have positive length");
}

void require_one_variable(const LaurentPoly& a) {
  if (a.signature().nvars() != 1) throw SignatureMismatch("expected a one-variable Laurent polynomial");
}

}  // namespace

AlignedInterval::AlignedInterval(Rational r_alpha, Rational r_beta)
    : r_alpha_(std::move(r_alpha)), r_beta_(std::move(r_beta)) {
  r_alpha_.canonicalize();
  r_beta_.canonicalize();
  if (r_beta_ <= 0) throw Error("interval must lie in (0, 1): beta exponent must be positive");
  if (r_alpha_ < r_beta_) throw Error("interval endpoints out of order: need alpha <= beta");
}

LineFamily lines_from_scalar(const LaurentPoly& a) {
  require_one_variable(a);
  LineFamily lines;
  for (const auto& [e, c] : a.terms()) lines.emplace(e[0], valuation(c, a.prime()).value());
  return lines;
}

LineFamily lines_on_unit_locus(const LaurentPoly& a, std::size_t var) {
  if (var >= a.signature().nvars()) throw Error("variable out of range");
  // The Gauss norm at radius 1 of a coefficient is its smallest term valuation.
  LineFamily lines;
  for (const auto& [e, c] : a.terms()) {
    Rational v = valuation(c, a.prime()).value();
    auto [it, inserted] = lines.emplace(e[var], v);
    if (!inserted && v < it->second) it->second = v;
  }
  return lines;
}

LogNorm sup_norm_on_interval(const LineFamily& lines, const AlignedInterval& interval) {
  require_nonempty(lines);
  Exponent best = Exponent::infinity();
  for (const auto& line : lines) {
    if (line.first <= 0) best = min(best, Exponent(line_at(line, interval.alpha_exponent())));
    if (line.first >= 0) best = min(best, Exponent(line_at(line, interval.beta_exponent())));
  }
  return LogNorm(best);
}

LogNorm sup_norm_on_interval(const LaurentPoly& a, const AlignedInterval& interval) {
  return sup_norm_on_interval(lines_from_scalar(a), interval);
}

DominantTerm dominant_term(const LineFamily& lines, const AlignedInterval& interval) {
  const Exponent sup = sup_norm_on_interval(lines, interval).exponent();
  DominantTerm d;
  for (const auto& line : lines) {
    if (line.first <= 0 && Exponent(line_at(line, interval.alpha_exponent())) == sup) d.a_set.insert(line.first);
    if (line.first >= 0 && Exponent(line_at(line, interval.beta_exponent())) == sup) d.b_set.insert(line.first);
  }
  if (!d.a_set.empty()) {
    d.n0 = *d.a_set.rbegin();
  } else if (!d.b_set.empty()) {
    d.n0 = *d.b_set.begin();
  } else {
    throw Error("internal: no line attains the sup norm");
  }
  return d;
}

DominantTerm dominant_term(const LaurentPoly& a, const AlignedInterval& interval) {
  return dominant_term(lines_from_scalar(a), interval);
}

DominanceCertificate shrink_interval(const LineFamily& lines, const AlignedInterval& interval) {
  require_positive_length(interval);
  const DominantTerm dom = dominant_term(lines, interval);
  const int n0 = dom.n0;
  const Rational& v0 = lines.at(n0);

  // The n0 line is strictly lowest on the open range (lower, upper).
  std::optional<Rational> lower, upper;
  for (const auto& [n, v] : lines) {
    if (n == n0) continue;
    Rational crossing = (v0 - v) / Rational(n - n0);
    if (n > n0) {
      if (!lower || crossing > *lower) lower = crossing;
    } else {
      if (!upper || crossing < *upper) upper = crossing;
    }
  }

  const Rational& lo = interval.beta_exponent();
  const Rational& hi = interval.alpha_exponent();
  const bool lo_ok = !lower || *lower < lo;
  const bool hi_ok = !upper || *upper > hi;
  Rational new_lo = lo;
  Rational new_hi = hi;
  if (!lo_ok && !hi_ok) {
    if (*lower >= *upper) throw Error("internal: empty strict-dominance range");
    Rational third = (*upper - *lower) / 3;
    new_lo = *lower + third;
    new_hi = *upper - third;
  } else if (!lo_ok) {
    if (*lower >= hi) throw Error("internal: empty strict-dominance range");
    new_lo = (*lower + hi) / 2;
  } else if (!hi_ok) {
    if (*upper <= lo) throw Error("internal: empty strict-dominance range");
    new_hi = (lo + *upper) / 2;
  }

  DominanceCertificate cert{n0, AlignedInterval(new_hi, new_lo), sup_norm_on_interval(lines, interval),
                            Exponent::infinity(), !dom.a_set.empty()};
  for (const auto& line : lines) {
    if (line.first == n0) continue;
    for (const Rational* r : {&new_lo, &new_hi}) {
      Exponent gap(Rational(line_at(line, *r) - (v0 + n0 * *r)));
      cert.margin = min(cert.margin, gap);
    }
  }
  return cert;
}

DominanceCertificate shrink_interval(const LaurentPoly& a, const AlignedInterval& interval) {
  return shrink_interval(lines_from_scalar(a), interval);
}

CertificateCheck unit_certificate_check(const LaurentPoly& a, const DominanceCertificate& cert,
                                        std::size_t samples) {
  require_one_variable(a);
  if (samples < 2) throw Error("unit_certificate_check needs at least 2 samples");
  const Rational lead = a.coefficient({cert.n0});
  if (lead == 0) throw Error("certificate exponent n0 is not a term of a");

  // f may carry negative powers even when a lives on a disc.
  const Signature annulus{1, 0, a.prime()};
  LaurentPoly f(annulus);
  LaurentPoly a_annulus(annulus);
  for (const auto& [e, c] : a.terms()) {
    a_annulus.add_term(e, c);
    if (e[0] != cert.n0) f.add_term({e[0] - cert.n0}, Rational(c / lead));
  }

  const Rational& lo = cert.interval.beta_exponent();
  const Rational& hi = cert.interval.alpha_exponent();
  const Exponent lead_val = valuation(lead, a.prime());
  for (std::size_t k = 0; k < samples; ++k) {
    Rational r = lo + (hi - lo) * Rational(static_cast<unsigned long>(k), static_cast<unsigned long>(samples - 1));
    RadiusVector rho(annulus, {LogRadius(r)});
    bool f_small = gauss_lognorm(f, rho).exponent() > Exponent(0);
    bool norm_identity = gauss_lognorm(a_annulus, rho).exponent() == lead_val + Exponent(Rational(cert.n0 * r));
    if (!f_small || !norm_identity) return {false, r};
  }
  return {};
}

}  // namespace nabla
