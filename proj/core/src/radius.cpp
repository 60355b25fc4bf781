#include "nabla/radius.hpp"

#include <future>

namespace nabla {

namespace {

std::size_t window_start(std::size_t depth, const Rational& window) {
  if (window <= 0 || window > 1) throw Error("window fraction must lie in (0, 1]");
  Rational lo = (Rational(1) - window) * static_cast<unsigned long>(depth);
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  std::size_t start = c.get_ui();
  return start < 1 ? 1 : start;
}

}  // namespace

LogNorm radius_from_norm(Prime p, const LogRadius& rho_i, const LogNorm& g_norm, std::size_t s) {
  if (s == 0) throw Error("radius_from_norm: s must be positive");
  // rho_i = 0 makes rho_i^{-1} infinite; a zero G makes |G|^{-1/s} infinite.
  if (rho_i.is_disc_center() || g_norm.is_zero()) return LogNorm::one();
  Rational x = Rational(1, p.value() - 1) - rho_i.exponent().value() -
               g_norm.exponent().value() / Rational(static_cast<unsigned long>(s));
  return LogNorm(x < 0 ? Exponent(0) : Exponent(x));
}

DirectionEstimate estimate_direction(const DerivMatrixSequence& seq, Prime p, const RadiusVector& rho,
                                     const Rational& window) {
  const std::size_t depth = seq.depth();
  DirectionEstimate est;
  est.direction = seq.direction;
  est.window_begin = window_start(depth, window);
  if (est.window_begin > depth) throw Error("depth too small for the window");

  for (std::size_t s = 1; s <= depth; ++s) {
    if (seq.matrices[s].is_zero()) {
      est.vanishing_depth = s;
      break;
    }
  }
  if (est.vanishing_depth) {
    est.exact = true;
    est.window.assign(depth - est.window_begin + 1, LogNorm::one());
    est.point = LogNorm::one();
    return est;
  }

  const LogRadius& rho_i = rho[seq.direction];
  Exponent lo = Exponent::infinity();
  Exponent hi(0);
  for (std::size_t s = est.window_begin; s <= depth; ++s) {
    LogNorm ir = radius_from_norm(p, rho_i, matrix_gauss_lognorm(seq.matrices[s], rho), s);
    lo = min(lo, ir.exponent());
    hi = max(hi, ir.exponent());
    est.window.push_back(std::move(ir));
  }
  est.point = LogNorm(hi);
  est.stability = (hi - lo).value();
  return est;
}

RadiusReport intrinsic_radius(const ConnectionModule& module, const RadiusVector& rho, std::size_t depth,
                              const RadiusOptions& options) {
  if (depth < 8) throw Error("intrinsic_radius needs depth >= 8");
  if (rho.size() != module.nvars()) throw SignatureMismatch("radius vector length mismatch");
  require_integrable(module);

  std::vector<std::future<DirectionEstimate>> jobs;
  for (std::size_t i = 0; i < module.nvars(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      auto seq = iterated_matrices(module, i, depth, options.limits);
      return estimate_direction(seq, module.prime(), rho, options.window);
    }));
  }

  RadiusReport report{rho, depth, options.window, {}, LogNorm::one(), true};
  for (auto& job : jobs) {
    report.directions.push_back(job.get());
    const auto& d = report.directions.back();
    report.ir = LogNorm(max(report.ir.exponent(), d.point.exponent()));
    report.exact = report.exact && d.exact;
  }
  return report;
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kOverconvergentEvidence:
      return "OVERCONVERGENT_EVIDENCE";
    case VerdictKind::kNotOverconvergentEvidence:
      return "NOT_OVERCONVERGENT_EVIDENCE";
    case VerdictKind::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Verdict oc_ir_test(const ConnectionModule& module, std::size_t depth, const OcOptions& options) {
  if (options.tol <= 0) throw Error("tol must be positive");
  auto report = intrinsic_radius(module, RadiusVector::unit(module.signature()), depth, options.radius);

  std::optional<std::size_t> witness;
  bool all_positive = true;
  for (const auto& d : report.directions) {
    if (d.exact) continue;
    Exponent lo = Exponent::infinity();
    for (const auto& w : d.window) lo = min(lo, w.exponent());
    const Exponent& hi = d.point.exponent();
    if (hi > Exponent(options.tol)) all_positive = false;
    bool negative = lo > Exponent(options.tol) && d.stability <= options.tol;
    if (negative && (!witness || hi > report.directions[*witness].point.exponent())) witness = d.direction;
  }

  Verdict v{VerdictKind::kInconclusive, {}, witness, std::move(report)};
  if (witness) {
    v.kind = VerdictKind::kNotOverconvergentEvidence;
    v.rationale = "direction " + std::to_string(*witness + 1) + " has every window estimate of IR below 1 by more than tol";
  } else if (all_positive) {
    v.kind = VerdictKind::kOverconvergentEvidence;
    v.rationale = "every direction is exactly 1 or within tol of 1 over the whole window";
  } else {
    v.rationale = "some direction is neither stably below 1 nor within tol of 1";
  }
  return v;
}

const char* to_string(ProbeOutcome outcome) {
  switch (outcome) {
    case ProbeOutcome::kPass:
      return "pass";
    case ProbeOutcome::kFail:
      return "fail";
    case ProbeOutcome::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

TaylorReport taylor_probe(const ConnectionModule& module, const LogRadius& eta, const LogRadius& lambda,
                          std::size_t bound, const IterationLimits& limits) {
  if (bound < 8) throw Error("taylor_probe: bound must be >= 8");
  if (eta.is_disc_center() || eta.exponent() == Exponent(0)) throw Error("taylor_probe: eta must lie in (0, 1)");
  if (lambda.is_disc_center()) throw Error("taylor_probe: lambda must lie in (0, 1]");
  require_integrable(module);

  const Prime p = module.prime();
  const Rational& eta_exp = eta.exponent().value();
  const std::size_t early_begin = bound / 2 + 1;
  const std::size_t late_begin = (3 * bound) / 4 + 1;

  TaylorReport report;
  report.eta = eta;
  report.lambda = lambda;
  report.bound = bound;
  report.outcome = ProbeOutcome::kPass;

  for (std::size_t i = 0; i < module.nvars(); ++i) {
    auto seq = iterated_matrices(module, i, bound, limits);
    for (std::size_t alpha = 0; alpha < module.rank(); ++alpha) {
      TaylorSequence ts;
      ts.direction = i;
      ts.basis = alpha;
      ts.early_tail_min = Exponent::infinity();
      ts.late_tail_min = Exponent::infinity();
      std::size_t late_argmin = late_begin;
      for (std::size_t j = 0; j <= bound; ++j) {
        LogNorm column = LogNorm::zero();
        for (std::size_t row = 0; row < module.rank(); ++row) {
          column = lognorm_max(column, sup_lognorm_vertex(seq.matrices[j](row, alpha), lambda));
        }
        Exponent e = column.exponent() + Exponent(Rational(eta_exp * static_cast<unsigned long>(j) -
                                                           factorial_valuation(j, p)));
        if (j >= early_begin && j < late_begin) ts.early_tail_min = min(ts.early_tail_min, e);
        if (j >= late_begin && e < ts.late_tail_min) {
          ts.late_tail_min = e;
          late_argmin = j;
        }
        ts.exponents.push_back(std::move(e));
      }

      const Exponent zero(0);
      if (ts.late_tail_min.is_infinite() ||
          (ts.late_tail_min > ts.early_tail_min && ts.late_tail_min > zero)) {
        ts.outcome = ProbeOutcome::kPass;
      } else if (ts.late_tail_min < ts.early_tail_min && ts.late_tail_min < zero) {
        ts.outcome = ProbeOutcome::kFail;
      } else {
        ts.outcome = ProbeOutcome::kInconclusive;
      }

      if (ts.outcome == ProbeOutcome::kFail && report.outcome != ProbeOutcome::kFail) {
        report.outcome = ProbeOutcome::kFail;
        report.witness_direction = i;
        report.witness_basis = alpha;
        report.witness_index = late_argmin;
      } else if (ts.outcome == ProbeOutcome::kInconclusive && report.outcome == ProbeOutcome::kPass) {
        report.outcome = ProbeOutcome::kInconclusive;
      }
      report.sequences.push_back(std::move(ts));
    }
  }
  return report;
}

}  // namespace nabla
