#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nabla/connection.hpp"

namespace nabla {

/// Truncation parameters for the liminf in the spectral-norm formula.
struct RadiusOptions {
  /// Fraction of the depth range used as the diagnostic window: estimates
  /// are taken for s in [ceil((1 - window) * depth), depth].
  Rational window{1, 4};
  IterationLimits limits{};
};

/// IR_i estimates for one direction.  Radii are stored as LogNorm values,
/// so IR = p^{-exponent} and exponent 0 means IR = 1.
struct DirectionEstimate {
  std::size_t direction = 0;
  std::size_t window_begin = 0;        // first s in the window
  std::vector<LogNorm> window;         // IR_i^{(s)}, s = window_begin..depth
  LogNorm point;                       // smallest radius in the window
  Rational stability{0};               // max - min exponent over the window
  bool exact = false;                  // some G_{i,s} vanished: IR_i = 1 exactly
  std::optional<std::size_t> vanishing_depth;
};

struct RadiusReport {
  RadiusVector rho;
  std::size_t depth = 0;
  Rational window_fraction;
  std::vector<DirectionEstimate> directions;
  LogNorm ir;          // min over directions
  bool exact = false;  // every direction is exact, so ir is exactly 1
};

/// IR_i^{(s)} = min(1, p^{-1/(p-1)} rho_i^{-1} |G_{i,s}|_rho^{-1/s}) as an exponent.
LogNorm radius_from_norm(Prime p, const LogRadius& rho_i, const LogNorm& g_norm, std::size_t s);

/// Per-direction estimate from a precomputed sequence.
DirectionEstimate estimate_direction(const DerivMatrixSequence& seq, Prime p, const RadiusVector& rho,
                                     const Rational& window);

RadiusReport intrinsic_radius(const ConnectionModule& module, const RadiusVector& rho, std::size_t depth,
                              const RadiusOptions& options = {});

enum class VerdictKind { kOverconvergentEvidence, kNotOverconvergentEvidence, kInconclusive };

const char* to_string(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::kInconclusive;
  std::string rationale;
  std::optional<std::size_t> witness_direction;
  RadiusReport report;
};

struct OcOptions {
  RadiusOptions radius{};
  /// Exponent gap treated as "equal to 1".
  Rational tol{1, 20};
};

/// Overconvergence evidence from the radius at rho = (1,...,1).
/// Positive when every direction is exact or has all window exponents
/// <= tol; negative when some direction has all window exponents > tol with
/// spread <= tol.  The negative witness is the direction with the smallest
/// point estimate.
Verdict oc_ir_test(const ConnectionModule& module, std::size_t depth, const OcOptions& options = {});

enum class ProbeOutcome { kPass, kFail, kInconclusive };

const char* to_string(ProbeOutcome outcome);

/// Exponents E_j of |(1/j!) d_i^j e_alpha|_{U_lambda} eta^j for one (i, alpha).
struct TaylorSequence {
  std::size_t direction = 0;
  std::size_t basis = 0;
  std::vector<Exponent> exponents;  // j = 0..bound
  Exponent early_tail_min;          // min over j in (bound/2, 3 bound/4]
  Exponent late_tail_min;           // min over j in (3 bound/4, bound]
  ProbeOutcome outcome = ProbeOutcome::kInconclusive;
};

struct TaylorReport {
  ProbeOutcome outcome = ProbeOutcome::kInconclusive;
  LogRadius eta;
  LogRadius lambda;
  std::size_t bound = 0;
  std::vector<TaylorSequence> sequences;
  // witness for kFail
  std::optional<std::size_t> witness_direction;
  std::optional<std::size_t> witness_basis;
  std::optional<std::size_t> witness_index;
};

/// Direct test of Taylor-series decay over U_lambda, reduced to the
/// single-direction sequences d_i^j applied to the standard basis.  A
/// sequence passes when its late tail is zero, or is positive and strictly
/// above the early tail (a geometric envelope below 1); it fails when the
/// late tail is negative and strictly below the early tail.
TaylorReport taylor_probe(const ConnectionModule& module, const LogRadius& eta, const LogRadius& lambda,
                          std::size_t bound, const IterationLimits& limits = {});

}  // namespace nabla
