#include "nabla/laurent.hpp"

#include <cstdlib>
#include <map>
#include <string>

namespace nabla {

namespace {

Rational rational_pow(const Rational& base, int k) {
  Integer num, den;
  unsigned long e = static_cast<unsigned long>(std::abs(k));
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  if (k < 0) std::swap(num, den);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

void add_into(LaurentPoly::TermMap& terms, const ExponentVector& exps, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

}  // namespace

RadiusVector::RadiusVector(const Signature& sig, std::vector<LogRadius> entries)
    : sig_(sig), entries_(std::move(entries)) {
  if (entries_.size() != sig.nvars()) {
    throw SignatureMismatch("radius vector has " + std::to_string(entries_.size()) + " entries, expected " +
                            std::to_string(sig.nvars()));
  }
  for (std::size_t i = 0; i < sig.annulus_vars; ++i) {
    if (entries_[i].is_disc_center()) throw Error("annulus radius must be positive");
  }
}

RadiusVector RadiusVector::unit(const Signature& sig) {
  return RadiusVector(sig, std::vector<LogRadius>(sig.nvars(), LogRadius::unit()));
}

RadiusVector RadiusVector::with(std::size_t var, const LogRadius& r) const {
  auto e = entries_;
  e.at(var) = r;
  return RadiusVector(sig_, std::move(e));
}

LaurentPoly LaurentPoly::constant(const Signature& sig, const Rational& c) {
  LaurentPoly f(sig);
  f.add_term(ExponentVector(sig.nvars(), 0), c);
  return f;
}

LaurentPoly LaurentPoly::monomial(const Signature& sig, ExponentVector exps, const Rational& c) {
  LaurentPoly f(sig);
  f.add_term(exps, c);
  return f;
}

LaurentPoly LaurentPoly::variable(const Signature& sig, std::size_t var) {
  ExponentVector e(sig.nvars(), 0);
  e.at(var) = 1;
  return monomial(sig, std::move(e), Rational(1));
}

Rational LaurentPoly::coefficient(const ExponentVector& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const ExponentVector& exps, const Rational& c) {
  if (exps.size() != sig_.nvars()) {
    throw SignatureMismatch("exponent vector of length " + std::to_string(exps.size()) + ", expected " +
                            std::to_string(sig_.nvars()));
  }
  for (std::size_t l = sig_.annulus_vars; l < exps.size(); ++l) {
    if (exps[l] < 0) throw Error("negative exponent in disc variable t" + std::to_string(l + 1));
  }
  Rational q(c);
  q.canonicalize();
  add_into(terms_, exps, q);
}

void LaurentPoly::check_compatible(const LaurentPoly& o) const {
  if (!(sig_ == o.sig_)) throw SignatureMismatch("Laurent polynomials over different signatures");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_into(terms_, e, c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r(*this);
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r(sig_);
  r.add_product(*this, o);
  return r;
}

LaurentPoly& LaurentPoly::add_product(const LaurentPoly& a, const LaurentPoly& b) {
  check_compatible(a);
  check_compatible(b);
  ExponentVector e(sig_.nvars());
  Rational product;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t l = 0; l < e.size(); ++l) e[l] = ea[l] + eb[l];
      mpq_mul(product.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      add_into(terms_, e, product);
    }
  }
  return *this;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0) return LaurentPoly(sig_);
  LaurentPoly r(*this);
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

LaurentPoly scalar_mul(const LaurentPoly& f, const PAdicRational& c) {
  if (!(c.prime() == f.prime())) throw SignatureMismatch("scalar over a different prime");
  return f.scaled(c.value());
}

LaurentPoly partial(const LaurentPoly& f, std::size_t var) {
  if (var >= f.signature().nvars()) throw Error("partial: direction out of range");
  LaurentPoly r(f.signature());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    ExponentVector d = e;
    d[var] -= 1;
    r.add_term(d, Rational(c * e[var]));
  }
  return r;
}

LogNorm gauss_lognorm(const LaurentPoly& f, const RadiusVector& rho) {
  if (rho.size() != f.signature().nvars()) throw SignatureMismatch("radius vector length mismatch");
  Exponent best = Exponent::infinity();
  for (const auto& [e, c] : f.terms()) {
    Exponent term = valuation(c, f.prime());
    for (std::size_t l = 0; l < e.size() && term.is_finite(); ++l) {
      if (e[l] != 0) term = term + rho[l].exponent().scaled(e[l]);
    }
    best = min(best, term);
  }
  return LogNorm(best);
}

LogNorm sup_lognorm_vertex(const LaurentPoly& f, const LogRadius& lambda) {
  if (lambda.is_disc_center()) throw Error("sup_lognorm_vertex: lambda must be positive");
  const auto& sig = f.signature();
  if (sig.annulus_vars >= 8 * sizeof(unsigned long)) throw Error("too many annulus variables");
  LogNorm best = LogNorm::zero();
  const unsigned long vertices = 1UL << sig.annulus_vars;
  for (unsigned long mask = 0; mask < vertices; ++mask) {
    std::vector<LogRadius> radii(sig.nvars(), LogRadius::unit());
    for (std::size_t i = 0; i < sig.annulus_vars; ++i) {
      if (mask & (1UL << i)) radii[i] = lambda;
    }
    best = lognorm_max(best, gauss_lognorm(f, RadiusVector(sig, std::move(radii))));
  }
  return best;
}

Signature one_variable_signature(const Signature& sig, std::size_t keep) {
  Signature out;
  out.prime = sig.prime;
  out.annulus_vars = sig.is_annulus(keep) ? 1 : 0;
  out.disc_vars = sig.is_annulus(keep) ? 0 : 1;
  return out;
}

LaurentPoly evaluate_except(const LaurentPoly& f, std::size_t keep, std::span<const Rational> values) {
  const auto& sig = f.signature();
  if (keep >= sig.nvars()) throw Error("evaluate_except: variable out of range");
  if (values.size() + 1 != sig.nvars()) throw SignatureMismatch("evaluate_except: wrong number of values");
  for (const auto& v : values) {
    if (v == 0) throw Error("evaluate_except: substitution values must be nonzero");
  }
  std::vector<std::map<int, Rational>> powers(values.size());
  auto power = [&](std::size_t k, int n) -> const Rational& {
    auto it = powers[k].find(n);
    if (it == powers[k].end()) it = powers[k].emplace(n, rational_pow(values[k], n)).first;
    return it->second;
  };
  std::map<int, Rational> sums;
  for (const auto& [e, c] : f.terms()) {
    Rational coeff(c);
    for (std::size_t l = 0, k = 0; l < e.size(); ++l) {
      if (l == keep) continue;
      if (e[l] != 0) coeff *= power(k, e[l]);
      ++k;
    }
    sums[e[keep]] += coeff;
  }
  LaurentPoly r(one_variable_signature(sig, keep));
  for (const auto& [n, c] : sums) r.add_term({n}, c);
  return r;
}

}  // namespace nabla
