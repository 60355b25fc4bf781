// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "nabla/curves.hpp"
#include "nabla/newton.hpp"
#include "nabla/radius.hpp"
#include "support.hpp"

namespace {

using namespace nabla;
using testing::make_sig;
using testing::rank1;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string q(const Rational& r) { return format_rational(r); }

ConnectionModule dwork(unsigned p) {
  const auto sig = make_sig(p, 0, 1);
  return rank1(sig, {LaurentPoly::constant(sig, 1)});
}

ConnectionModule kummer(unsigned p, const Rational& a) {
  const auto sig = make_sig(p, 1, 0);
  LaurentPoly f(sig);
  f.add_term({-1}, a);
  return rank1(sig, {f});
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome trivial_exactness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  int count = 0;
  for (std::size_t nvars = 1; nvars <= 3; ++nvars) {
    for (std::size_t n = 0; n <= nvars; ++n) {
      for (std::size_t rank = 1; rank <= 3; ++rank) {
        auto m = ConnectionModule::trivial(make_sig(3, n, nvars - n), rank);
        auto r = intrinsic_radius(m, RadiusVector::unit(m.signature()), 16);
        o.require(r.exact && r.ir.exponent() == Exponent(0), "trivial module not exact");
        ++count;
      }
    }
  }
  double dt = seconds_since(t0);
  o.require(dt < 1.0, "runtime over 1 s");
  if (o.pass) o.detail = std::to_string(count) + " modules exact, " + std::to_string(dt) + " s";
  return o;
}

Outcome dwork_oracle() {
  Outcome o;
  std::ostringstream d;
  for (unsigned p : {2u, 3u, 5u}) {
    const Prime prime(p);
    const Rational expected(1, p - 1);
    auto t0 = std::chrono::steady_clock::now();
    auto m = dwork(p);
    auto seq = iterated_matrices(m, 0, 200);
    for (std::size_t s = 1; s <= 200; ++s) {
      // G_s = [1] in closed form.
      o.require(seq.matrices[s](0, 0) == LaurentPoly::constant(m.signature(), 1), "G_s != 1");
      auto est = radius_from_norm(prime, LogRadius::unit(),
                                  matrix_gauss_lognorm(seq.matrices[s], RadiusVector::unit(m.signature())), s);
      o.require(est.exponent() == Exponent(expected), "estimate at s=" + std::to_string(s) + " for p=" +
                                                          std::to_string(p) + " is " + est.exponent().str());
    }
    auto report = intrinsic_radius(m, RadiusVector::unit(m.signature()), 200);
    o.require(report.ir.exponent() == Exponent(expected) && report.directions[0].stability == 0,
              "intrinsic_radius window mismatch");
    o.require(oc_ir_test(m, 200).kind == VerdictKind::kNotOverconvergentEvidence, "oc verdict not negative");
    auto fail = taylor_probe(m, LogRadius(Rational(1, 2 * (p - 1))), LogRadius::unit(), 64);
    auto pass = taylor_probe(m, LogRadius(Rational(2, p - 1)), LogRadius::unit(), 64);
    o.require(fail.outcome == ProbeOutcome::kFail, "taylor did not fail at eta exponent 1/(2(p-1))");
    o.require(pass.outcome == ProbeOutcome::kPass, "taylor did not pass at eta exponent 2/(p-1)");
    double dt = seconds_since(t0);
    o.require(dt < 5.0, "p=" + std::to_string(p) + " took over 5 s");
    d << "p=" << p << " " << dt << " s; ";
  }
  if (o.pass) o.detail = d.str() + "exponent 1/(p-1) for all s <= 200";
  return o;
}

Outcome kummer_oracle() {
  Outcome o;
  auto k3 = kummer(5, Rational(3));
  auto seq = iterated_matrices(k3, 0, 8);
  o.require(seq.matrices[4].is_zero(), "G_4 != 0 for a = 3");
  auto r3 = intrinsic_radius(k3, RadiusVector::unit(k3.signature()), 32);
  o.require(r3.exact && r3.ir.exponent() == Exponent(0), "a = 3 not exactly 1");

  auto kh = kummer(3, Rational(1, 2));
  Rational previous_max(1);
  std::ostringstream d;
  for (std::size_t depth : {25u, 50u, 100u, 150u, 200u}) {
    auto r = intrinsic_radius(kh, RadiusVector::unit(kh.signature()), depth);
    const auto& dir = r.directions[0];
    Rational worst(0);
    for (std::size_t k = 0; k < dir.window.size(); ++k) {
      const unsigned s = static_cast<unsigned>(dir.window_begin + k);
      long v = *testing::oracle_valuation(testing::falling_factorial(Rational(1, 2), s), 3);
      Rational x = Rational(1, 2) - Rational(v, s);
      if (x < 0) x = 0;
      o.require(dir.window[k].exponent() == Exponent(x), "window estimate differs from oracle at s=" +
                                                              std::to_string(s));
      if (x > worst) worst = x;
    }
    o.require(worst <= previous_max, "window maximum increased at depth " + std::to_string(depth));
    previous_max = worst;
    d << depth << ":" << std::setprecision(4) << worst.get_d() << " ";
  }
  o.require(previous_max < Rational(1, 50), "exponent at depth 200 not below 1/50");
  if (o.pass) o.detail = "a=3 exact; a=1/2 window max by depth " + d.str();
  return o;
}

Outcome gauss_norm_algebra() {
  Outcome o;
  testing::Generator gen(401);
  std::size_t pairs = 0;
  for (auto sig : {make_sig(2, 1, 0), make_sig(3, 2, 0), make_sig(5, 1, 1), make_sig(3, 0, 2), make_sig(7, 2, 1)}) {
    for (int k = 0; k < 1000;) {
      auto f = gen.poly(sig, 6), g = gen.poly(sig, 6);
      if (f.is_zero() || g.is_zero()) continue;
      ++k;
      std::vector<LogRadius> r;
      for (std::size_t l = 0; l < sig.nvars(); ++l) r.emplace_back(gen.exponent());
      RadiusVector rho(sig, r);
      LogNorm nf = gauss_lognorm(f, rho), ng = gauss_lognorm(g, rho);
      o.require(gauss_lognorm(f * g, rho) == nf * ng, "multiplicativity");
      LogNorm sum = gauss_lognorm(f + g, rho);
      o.require(!(lognorm_max(nf, ng) < sum), "ultrametric inequality");
      if (!(nf == ng)) o.require(sum == lognorm_max(nf, ng), "ultrametric equality when distinct");
      ++pairs;
    }
  }
  std::size_t inputs = 0;
  while (inputs < 500) {
    unsigned p = std::array<unsigned, 3>{2, 3, 5}[inputs % 3];
    const auto sig = make_sig(p, 1, 0);
    auto f = gen.poly(sig, 8, -5, 5);
    if (f.is_zero()) continue;
    Rational r1 = gen.exponent(16, 8);
    Rational r3 = r1 + Rational(gen.uniform(2, 24), 8);
    Rational r2 = r1 + (r3 - r1) * Rational(gen.uniform(1, 7), 8);
    auto e = [&](const Rational& r) { return gauss_lognorm(f, RadiusVector(sig, {LogRadius(r)})).exponent().value(); };
    Rational t = (r2 - r1) / (r3 - r1);
    o.require(e(r2) >= (1 - t) * e(r1) + t * e(r3), "concavity on a 3-point grid");
    ++inputs;
  }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs over 5 signatures, " + std::to_string(inputs) +
                         " concavity inputs";
  return o;
}

Outcome newton_certification() {
  Outcome o;
  testing::Generator gen(501);
  int inputs = 0;
  while (inputs < 500) {
    unsigned p = std::array<unsigned, 3>{2, 3, 5}[inputs % 3];
    const auto sig = inputs % 5 == 4 ? make_sig(p, 0, 1) : make_sig(p, 1, 0);
    auto a = gen.poly(sig, 12, -6, 6);
    if (a.is_zero()) continue;
    ++inputs;
    Rational beta(gen.uniform(1, 24), 8);
    AlignedInterval interval(beta + Rational(gen.uniform(1, 24), 8), beta);
    testing::LineOracle oracle(a, interval.beta_exponent(), interval.alpha_exponent(), p);

    auto d = dominant_term(a, interval);
    auto a_set = oracle.attaining_at(oracle.hi, true);
    auto b_set = oracle.attaining_at(oracle.lo, false);
    int n0 = a_set.empty() ? *b_set.begin() : *a_set.rbegin();
    o.require(d.a_set == a_set && d.b_set == b_set && d.n0 == n0, "dominant_term disagrees with the grid oracle");
    o.require(sup_norm_on_interval(a, interval).exponent() == Exponent(oracle.sup_exponent()), "sup norm");

    auto cert = shrink_interval(a, interval);
    o.require(cert.interval.has_positive_length() && interval.contains(cert.interval.alpha_exponent()) &&
                  interval.contains(cert.interval.beta_exponent()),
              "I' not a positive-length subinterval");
    o.require(oracle.strictly_dominates(cert.n0, cert.interval.beta_exponent(), cert.interval.alpha_exponent()),
              "n0 line not strictly dominant on I'");
    o.require(unit_certificate_check(a, cert, 20).ok, "unit certificate check failed");
  }
  if (o.pass) o.detail = std::to_string(inputs) + " inputs, 100% oracle agreement, 20 radii each";
  return o;
}

Outcome specialization_naturality() {
  Outcome o;
  testing::Generator gen(601);
  auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < 100; ++k) {
    unsigned p = std::array<unsigned, 3>{2, 3, 5}[k % 3];
    const auto sig = k % 2 ? make_sig(p, 2, 0) : make_sig(p, 1, 1);
    auto m = gen.integrable_two_variable(sig, 1 + k % 2);
    o.require(!integrability_check(m), "generated module not integrable");
    bool off_dependent = false;
    for (std::size_t i = 0; i < 2; ++i) {
      for (const auto& entry : m.matrix(i).entries()) {
        for (const auto& term : entry.terms()) off_dependent = off_dependent || term.first[1 - i] != 0;
      }
    }
    o.require(off_dependent, "generated module has no off-variable dependence");
    auto point = sample_unit_points(sig.prime, 1, 1, 1000 + k, 1000)[0];
    for (std::size_t i = 0; i < 2; ++i) {
      auto full = iterated_matrices(m, i, 50);
      auto curve = iterated_matrices(specialize(m, i, point), 0, 50);
      for (std::size_t s = 0; s <= 50; ++s) {
        o.require(curve.matrices[s] == evaluate_except(full.matrices[s], i, point.coordinates()),
                  "module " + std::to_string(k) + " direction " + std::to_string(i + 1) + " s=" + std::to_string(s));
      }
    }
  }
  if (o.pass) o.detail = "100 modules, both directions, s <= 50 (" + std::to_string(seconds_since(t0)) + " s)";
  return o;
}

Outcome curve_witness() {
  Outcome o;
  std::ostringstream d;
  for (unsigned p : {2u, 3u, 5u}) {
    const auto sig = make_sig(p, 2, 0);
    auto m = rank1(sig, {LaurentPoly::constant(sig, 1), LaurentPoly(sig)});
    const Exponent expected(Rational(1, p - 1));
    auto r = curve_witness_search(m, 50, 10, 700 + p);
    o.require(r.witness.has_value(), "no witness for p=" + std::to_string(p));
    if (!r.witness) continue;
    o.require(r.witness->curve.ir.exponent() == expected && r.witness->full.ir.exponent() == expected,
              "witness IR differs from 1/(p-1)");
    auto seq = iterated_matrices(m, 0, 50);
    int passed = 0;
    for (const auto& pt : sample_unit_points(Prime(p), 1, 10, 800 + p, 1000)) {
      if (generic_equality_check(seq, sig, pt, LogRadius::unit()).all_equal) ++passed;
    }
    o.require(passed >= 9, "generic check passed on only " + std::to_string(passed) + "/10 points");
    d << "p=" << p << " " << passed << "/10; ";
  }
  if (o.pass) o.detail = d.str() + "curve IR = full IR = p^{-1/(p-1)}";
  return o;
}

Outcome verdict_consistency() {
  Outcome o;
  std::vector<std::pair<std::string, ConnectionModule>> corpus;
  corpus.emplace_back("trivial", ConnectionModule::trivial(make_sig(3, 2, 1), 2));
  for (unsigned p : {2u, 3u, 5u}) corpus.emplace_back("dwork p=" + std::to_string(p), dwork(p));
  corpus.emplace_back("kummer 3", kummer(5, Rational(3)));
  corpus.emplace_back("kummer 1/2", kummer(3, Rational(1, 2)));
  {
    const auto sig = make_sig(3, 1, 1);
    corpus.emplace_back("dwork two-variable", rank1(sig, {LaurentPoly::constant(sig, 1), LaurentPoly(sig)}));
  }
  {
    const auto sig = make_sig(3, 2, 0);
    LaurentPoly n1(sig), n2(sig);
    n1.add_term({0, 1}, Rational(1));
    n1.add_term({0, 0}, Rational(-1));
    n2.add_term({1, 0}, Rational(1));
    corpus.emplace_back("exp(t1 t2 - t1)", rank1(sig, {n1, n2}));
  }

  // Compatible parameters: eta and lambda both close to 1, with lambda closer.
  const std::vector<std::pair<Rational, Rational>> params{{Rational(1, 8), Rational(1, 16)},
                                                          {Rational(1, 16), Rational(1, 32)}};
  int comparisons = 0, agreements = 0;
  for (const auto& [name, m] : corpus) {
    auto verdict = oc_ir_test(m, 200).kind;
    for (const auto& [eta, lambda] : params) {
      auto outcome = taylor_probe(m, LogRadius(eta), LogRadius(lambda), 64).outcome;
      bool disagree = (verdict == VerdictKind::kOverconvergentEvidence && outcome == ProbeOutcome::kFail) ||
                      (verdict == VerdictKind::kNotOverconvergentEvidence && outcome == ProbeOutcome::kPass);
      o.require(!disagree, name + ": oc " + to_string(verdict) + " vs taylor " + to_string(outcome) +
                               " at eta exponent " + q(eta));
      bool agree = (verdict == VerdictKind::kOverconvergentEvidence && outcome == ProbeOutcome::kPass) ||
                   (verdict == VerdictKind::kNotOverconvergentEvidence && outcome == ProbeOutcome::kFail);
      ++comparisons;
      if (agree) ++agreements;
    }
  }
  if (o.pass) {
    o.detail = std::to_string(corpus.size()) + " modules, " + std::to_string(comparisons) + " comparisons, " +
               std::to_string(agreements) + " decisive agreements, 0 disagreements";
  }
  return o;
}

Outcome continuity_grid() {
  Outcome o;
  int checks = 0;
  auto closed_form = [](unsigned p, const Rational& c, const Rational& r) {
    Rational x = Rational(1, p - 1) - r - *testing::oracle_valuation(c, p);
    return x < 0 ? Rational(0) : x;
  };
  const std::vector<Rational> constants{Rational(1), Rational(2, 3), Rational(1, 9), Rational(25), Rational(-4, 5)};
  for (unsigned p : {2u, 3u, 5u}) {
    for (std::size_t n : {0u, 1u}) {
      const auto sig = make_sig(p, n, 1 - n);
      for (const auto& c : constants) {
        auto m = rank1(sig, {LaurentPoly::constant(sig, c)});
        for (int k = 0; k <= 8; ++k) {
          const Rational r(k, 8);
          auto rep = intrinsic_radius(m, RadiusVector(sig, {LogRadius(r)}), 24);
          o.require(rep.ir.exponent() == Exponent(closed_form(p, c, r)),
                    "1D p=" + std::to_string(p) + " c=" + q(c) + " r=" + q(r));
          ++checks;
        }
      }
    }
    const auto sig2 = make_sig(p, 1, 1);
    for (std::size_t a = 0; a < constants.size(); ++a) {
      const Rational& c1 = constants[a];
      const Rational& c2 = constants[(a + 2) % constants.size()];
      auto m = rank1(sig2, {LaurentPoly::constant(sig2, c1), LaurentPoly::constant(sig2, c2)});
      for (int k1 = 0; k1 <= 8; ++k1) {
        for (int k2 = 0; k2 <= 8; ++k2) {
          const Rational r1(k1, 8), r2(k2, 8);
          auto rep = intrinsic_radius(m, RadiusVector(sig2, {LogRadius(r1), LogRadius(r2)}), 24);
          Rational expected = std::max(closed_form(p, c1, r1), closed_form(p, c2, r2));
          o.require(rep.ir.exponent() == Exponent(expected), "2D p=" + std::to_string(p) + " r=(" + q(r1) + "," +
                                                                 q(r2) + ")");
          ++checks;
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " grid points match the closed form";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"trivial-module exactness", trivial_exactness},
      {"Dwork oracle", dwork_oracle},
      {"Kummer oracle", kummer_oracle},
      {"Gauss-norm algebra", gauss_norm_algebra},
      {"dominant-term certification", newton_certification},
      {"specialization naturality", specialization_naturality},
      {"cut-by-curves witness", curve_witness},
      {"verdict consistency", verdict_consistency},
      {"rank-1 continuity grid", continuity_grid},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first << " -- "
              << o.detail << " [" << std::lround(seconds_since(t0) * 1000) << " ms]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
