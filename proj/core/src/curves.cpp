#include "nabla/curves.hpp"

#include <random>

namespace nabla {

UnitPoint::UnitPoint(std::vector<Rational> coordinates, Prime p) : coordinates_(std::move(coordinates)) {
  for (auto& c : coordinates_) {
    c.canonicalize();
    if (valuation(c, p) != Exponent(0)) {
      throw NonUnitError("coordinate " + format_rational(c) + " is not a " + std::to_string(p.value()) + "-adic unit");
    }
  }
}

ConnectionModule specialize(const ConnectionModule& module, std::size_t direction, const UnitPoint& point) {
  if (direction >= module.nvars()) throw Error("direction out of range");
  if (point.size() + 1 != module.nvars()) throw SignatureMismatch("unit point has the wrong number of coordinates");
  require_integrable(module);
  std::vector<PolyMatrix> n;
  n.push_back(evaluate_except(module.matrix(direction), direction, point.coordinates()));
  return ConnectionModule(one_variable_signature(module.signature(), direction), module.rank(), std::move(n));
}

GenericCheckResult generic_equality_check(const DerivMatrixSequence& seq, const Signature& sig,
                                          const UnitPoint& point, const LogRadius& rho) {
  const std::size_t i = seq.direction;
  const RadiusVector full_rho = RadiusVector::unit(sig).with(i, rho);
  const Signature curve_sig = one_variable_signature(sig, i);
  const RadiusVector curve_rho(curve_sig, {rho});

  GenericCheckResult result;
  for (std::size_t s = 1; s <= seq.depth(); ++s) {
    const PolyMatrix& g = seq.matrices[s];
    result.generic = matrix_gauss_lognorm(g, full_rho);
    result.specialized = matrix_gauss_lognorm(evaluate_except(g, i, point.coordinates()), curve_rho);
    if (!(result.specialized == result.generic)) {
      result.all_equal = false;
      result.first_failure = s;
      break;
    }
  }
  return result;
}

GenericCheckResult generic_equality_check(const ConnectionModule& module, std::size_t direction,
                                          const UnitPoint& point, std::size_t depth, const LogRadius& rho,
                                          const IterationLimits& limits) {
  if (point.size() + 1 != module.nvars()) throw SignatureMismatch("unit point has the wrong number of coordinates");
  auto seq = iterated_matrices(module, direction, depth, limits);
  return generic_equality_check(seq, module.signature(), point, rho);
}

std::vector<UnitPoint> sample_unit_points(Prime p, std::size_t coordinates, std::size_t count, std::uint64_t seed,
                                          std::uint32_t range) {
  if (range < 1) throw Error("sampling range must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num_dist(-static_cast<long>(range), static_cast<long>(range));
  std::uniform_int_distribution<long> den_dist(1, static_cast<long>(range));
  std::vector<UnitPoint> points;
  points.reserve(count);
  while (points.size() < count) {
    std::vector<Rational> c;
    while (c.size() < coordinates) {
      Rational q(num_dist(rng), den_dist(rng));
      if (q == 0) continue;
      q.canonicalize();
      if (valuation(q, p) == Exponent(0)) c.push_back(q);
    }
    points.emplace_back(std::move(c), p);
  }
  return points;
}

WitnessSearchResult curve_witness_search(const ConnectionModule& module, std::size_t depth, std::size_t trials,
                                         std::uint64_t seed, const WitnessOptions& options) {
  WitnessSearchResult result{oc_ir_test(module, depth, options.oc), std::nullopt, 0};
  if (result.full_verdict.kind != VerdictKind::kNotOverconvergentEvidence) return result;

  const std::size_t i = *result.full_verdict.witness_direction;
  auto seq = iterated_matrices(module, i, depth, options.oc.radius.limits);
  auto points = sample_unit_points(module.prime(), module.nvars() - 1, trials, seed, options.range);
  for (std::size_t k = 0; k < points.size(); ++k) {
    ++result.trials_run;
    auto check = generic_equality_check(seq, module.signature(), points[k], LogRadius::unit());
    if (!check.all_equal) continue;
    auto curve = specialize(module, i, points[k]);
    auto curve_report = intrinsic_radius(curve, RadiusVector::unit(curve.signature()), depth, options.oc.radius);
    result.witness = CurveWitness{i, points[k], k, result.full_verdict.report, std::move(curve_report)};
    break;
  }
  return result;
}

}  // namespace nabla
