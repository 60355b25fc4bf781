#pragma once

// Generators and independent oracles shared by the test binaries.  Nothing
// here calls into the code paths it is used to check.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "nabla/connection.hpp"
#include "nabla/laurent.hpp"

namespace nabla::testing {

/// v_p by repeated exact division; +inf is represented by std::nullopt.
inline std::optional<long> oracle_valuation(const Rational& q, unsigned p) {
  if (q == 0) return std::nullopt;
  long v = 0;
  Integer num = abs(q.get_num()), den = q.get_den();
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

/// v_p(n!) by summing v_p(k) for k = 1..n.
inline long oracle_factorial_valuation(unsigned long n, unsigned p) {
  long v = 0;
  for (unsigned long k = 2; k <= n; ++k) v += *oracle_valuation(Rational(k), p);
  return v;
}

/// a (a-1) ... (a-s+1).
inline Rational falling_factorial(const Rational& a, unsigned s) {
  Rational r(1);
  for (unsigned k = 0; k < s; ++k) r *= a - k;
  return r;
}

inline Signature make_sig(unsigned p, std::size_t n, std::size_t m) {
  Signature s;
  s.prime = Prime(p);
  s.annulus_vars = n;
  s.disc_vars = m;
  return s;
}

/// Shortcut for one-variable polys: {exponent -> "num/den"}.
inline LaurentPoly poly1(const Signature& sig, std::initializer_list<std::pair<int, const char*>> terms) {
  LaurentPoly f(sig);
  for (const auto& [e, c] : terms) f.add_term({e}, parse_rational(c));
  return f;
}

inline ConnectionModule rank1(const Signature& sig, std::vector<LaurentPoly> entries) {
  std::vector<PolyMatrix> ms;
  for (auto& e : entries) {
    PolyMatrix m(sig, 1);
    m(0, 0) = std::move(e);
    ms.push_back(std::move(m));
  }
  return ConnectionModule(sig, 1, std::move(ms));
}

/// Line enumeration for a one-variable polynomial on an interval of radius
/// exponents [lo, hi]: valuations by repeated division and the sup norm as
/// the minimum over a dense grid that contains both endpoints.
struct LineOracle {
  std::map<int, long> lines;
  Rational lo, hi;
  static constexpr int kSteps = 96;

  LineOracle(const LaurentPoly& a, const Rational& beta_exp, const Rational& alpha_exp, unsigned p)
      : lo(beta_exp), hi(alpha_exp) {
    for (const auto& [e, c] : a.terms()) lines[e[0]] = *oracle_valuation(c, p);
  }

  Rational at(int n, const Rational& r) const { return Rational(lines.at(n) + n * r); }

  Rational grid(int k, const Rational& a, const Rational& b) const { return Rational(a + (b - a) * k / kSteps); }

  Rational sup_exponent() const {
    std::optional<Rational> best;
    for (int k = 0; k <= kSteps; ++k) {
      Rational r = grid(k, lo, hi);
      for (const auto& [n, v] : lines) {
        Rational y = at(n, r);
        if (!best || y < *best) best = y;
      }
    }
    return *best;
  }

  std::set<int> attaining_at(const Rational& r, bool nonpositive) const {
    const Rational sup = sup_exponent();
    std::set<int> out;
    for (const auto& [n, v] : lines) {
      if ((nonpositive ? n <= 0 : n >= 0) && at(n, r) == sup) out.insert(n);
    }
    return out;
  }

  /// Strict dominance of line n0 at every grid point of [lo', hi'].
  bool strictly_dominates(int n0, const Rational& lo2, const Rational& hi2) const {
    for (int k = 0; k <= kSteps; ++k) {
      Rational r = grid(k, lo2, hi2);
      for (const auto& [n, v] : lines) {
        if (n != n0 && !(at(n, r) > at(n0, r))) return false;
      }
    }
    return true;
  }
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  /// Nonzero rational +-(a/b) p^k with small a, b.
  Rational scalar(unsigned p, long max_shift = 3) {
    Rational q(uniform(1, 9) * (uniform(0, 1) ? 1 : -1), uniform(1, 9));
    long k = uniform(-max_shift, max_shift);
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? -k : k));
    if (k >= 0) {
      q *= pk;
    } else {
      q /= pk;
    }
    q.canonicalize();
    return q;
  }

  LaurentPoly poly(const Signature& sig, std::size_t max_terms, int lo = -3, int hi = 3) {
    LaurentPoly f(sig);
    std::size_t terms = static_cast<std::size_t>(uniform(1, static_cast<long>(max_terms)));
    for (std::size_t k = 0; k < terms; ++k) {
      ExponentVector e(sig.nvars());
      for (std::size_t l = 0; l < e.size(); ++l) {
        e[l] = static_cast<int>(uniform(sig.is_annulus(l) ? lo : 0, hi));
      }
      f.add_term(e, scalar(sig.prime.value()));
    }
    return f;
  }

  /// Exponent in {k/8 : 0 <= k <= 8 * max}.
  Rational exponent(long max_num = 16, long den = 8) { return Rational(uniform(0, max_num), den); }

  /// Rank 1 or 2 integrable module on two variables with off-variable
  /// dependence: exact forms dF (plus logarithmic terms a/t on annulus
  /// variables) on the diagonal, then a unipotent gauge change.
  ConnectionModule integrable_two_variable(const Signature& sig, std::size_t rank) {
    std::vector<LaurentPoly> potentials;
    for (std::size_t k = 0; k < rank; ++k) {
      LaurentPoly f = poly(sig, 2, -1, 2);
      ExponentVector mixed{static_cast<int>(uniform(1, 2)), static_cast<int>(uniform(1, 2))};
      f.add_term(mixed, scalar(sig.prime.value(), 1));
      potentials.push_back(std::move(f));
    }
    std::vector<PolyMatrix> diag;
    for (std::size_t i = 0; i < sig.nvars(); ++i) {
      PolyMatrix d(sig, rank);
      for (std::size_t k = 0; k < rank; ++k) {
        d(k, k) = partial(potentials[k], i);
        if (sig.is_annulus(i) && uniform(0, 1)) {
          ExponentVector e(sig.nvars(), 0);
          e[i] = -1;
          d(k, k).add_term(e, scalar(sig.prime.value(), 1));
        }
      }
      diag.push_back(std::move(d));
    }
    if (rank == 1) return ConnectionModule(sig, rank, std::move(diag));

    LaurentPoly h = poly(sig, 1, 0, 1);
    PolyMatrix u = PolyMatrix::identity(sig, 2);
    PolyMatrix u_inv = PolyMatrix::identity(sig, 2);
    u(0, 1) = h;
    u_inv(0, 1) = -h;
    std::vector<PolyMatrix> gauged;
    for (std::size_t i = 0; i < sig.nvars(); ++i) gauged.push_back(u_inv * (diag[i] * u + partial(u, i)));
    return ConnectionModule(sig, rank, std::move(gauged));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace nabla::testing
