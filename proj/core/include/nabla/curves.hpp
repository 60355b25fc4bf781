#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nabla/radius.hpp"

namespace nabla {

class NonUnitError : public Error {
 public:
  using Error::Error;
};

/// Coordinates of a point on the unit polycircle, one per variable other
/// than the curve direction, in variable order.  Each has valuation 0.
class UnitPoint {
 public:
  UnitPoint(std::vector<Rational> coordinates, Prime p);

  const std::vector<Rational>& coordinates() const { return coordinates_; }
  std::size_t size() const { return coordinates_.size(); }

 private:
  std::vector<Rational> coordinates_;
};

/// Pull-back along the coordinate curve through `point` in direction
/// `direction`: the one-variable module d/dt + N_direction(point).
ConnectionModule specialize(const ConnectionModule& module, std::size_t direction, const UnitPoint& point);

struct GenericCheckResult {
  bool all_equal = true;
  std::optional<std::size_t> first_failure;
  // norms at the first failure (or at depth when all equal)
  LogNorm specialized;
  LogNorm generic;
};

/// Compares |G_{i,s}(point)|_rho with |G_{i,s}|_{(1,..,rho,..,1)} for s = 1..depth.
GenericCheckResult generic_equality_check(const ConnectionModule& module, std::size_t direction,
                                          const UnitPoint& point, std::size_t depth, const LogRadius& rho,
                                          const IterationLimits& limits = {});

/// Same comparison against a precomputed sequence for `direction`.
GenericCheckResult generic_equality_check(const DerivMatrixSequence& seq, const Signature& sig,
                                          const UnitPoint& point, const LogRadius& rho);

struct WitnessOptions {
  OcOptions oc{};
  /// Random unit points are num/den with |num| <= range, 1 <= den <= range.
  std::uint32_t range = 1000;
};

struct CurveWitness {
  std::size_t direction;
  UnitPoint point;
  std::size_t trial;  // index of the accepted trial
  RadiusReport full;
  RadiusReport curve;
};

struct WitnessSearchResult {
  Verdict full_verdict;
  std::optional<CurveWitness> witness;
  std::size_t trials_run = 0;
};

/// Deterministic sequence of random unit points for a given seed.
std::vector<UnitPoint> sample_unit_points(Prime p, std::size_t coordinates, std::size_t count, std::uint64_t seed,
                                          std::uint32_t range);

/// When the full module has negative overconvergence evidence in direction
/// i, looks for a coordinate curve through a random unit point on which the
/// generic norm equality holds to `depth`; the first such trial (by index)
/// wins.
WitnessSearchResult curve_witness_search(const ConnectionModule& module, std::size_t depth, std::size_t trials,
                                         std::uint64_t seed, const WitnessOptions& options = {});

}  // namespace nabla
