#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nabla/laurent.hpp"

namespace nabla {

/// Dense square matrix of Laurent polynomials, row-major.
class PolyMatrix {
 public:
  PolyMatrix(const Signature& sig, std::size_t rank);

  static PolyMatrix identity(const Signature& sig, std::size_t rank);

  std::size_t rank() const { return rank_; }
  const Signature& signature() const { return sig_; }

  LaurentPoly& operator()(std::size_t row, std::size_t col) { return entries_[row * rank_ + col]; }
  const LaurentPoly& operator()(std::size_t row, std::size_t col) const { return entries_[row * rank_ + col]; }
  const std::vector<LaurentPoly>& entries() const { return entries_; }

  bool is_zero() const;

  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix& operator+=(const PolyMatrix& o);
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix operator*(const PolyMatrix& o) const;

  bool operator==(const PolyMatrix& o) const = default;

 private:
  void check_compatible(const PolyMatrix& o) const;

  Signature sig_;
  std::size_t rank_;
  std::vector<LaurentPoly> entries_;
};

PolyMatrix scaled(const PolyMatrix& m, const Rational& c);
PolyMatrix partial(const PolyMatrix& m, std::size_t var);

/// Entrywise evaluation of every variable other than `keep`.
PolyMatrix evaluate_except(const PolyMatrix& m, std::size_t keep, std::span<const Rational> values);

/// Largest Gauss norm among the entries; the zero norm for the zero matrix.
LogNorm matrix_gauss_lognorm(const PolyMatrix& g, const RadiusVector& rho);

class NonIntegrableError : public Error {
 public:
  using Error::Error;
};

class DepthLimitError : public Error {
 public:
  using Error::Error;
};

/// A free module of rank mu on a polyannulus with connection
/// d/dt_i + N_i acting on coefficient columns.
class ConnectionModule {
 public:
  ConnectionModule(Signature sig, std::size_t rank, std::vector<PolyMatrix> matrices);

  /// All N_i = 0.
  static ConnectionModule trivial(const Signature& sig, std::size_t rank);

  const Signature& signature() const { return sig_; }
  Prime prime() const { return sig_.prime; }
  std::size_t rank() const { return rank_; }
  std::size_t nvars() const { return sig_.nvars(); }
  const PolyMatrix& matrix(std::size_t direction) const { return matrices_.at(direction); }
  const std::vector<PolyMatrix>& matrices() const { return matrices_; }

  bool operator==(const ConnectionModule&) const = default;

 private:
  Signature sig_;
  std::size_t rank_;
  std::vector<PolyMatrix> matrices_;
};

/// First pair (i < j) whose curvature d_i N_j - d_j N_i + [N_i, N_j] is nonzero.
struct CurvatureViolation {
  std::size_t i;
  std::size_t j;
  PolyMatrix curvature;
};

std::optional<CurvatureViolation> integrability_check(const ConnectionModule& module);

/// Throws NonIntegrableError naming the first violating pair.
void require_integrable(const ConnectionModule& module);

struct IterationLimits {
  std::size_t max_depth = 512;
};

/// Matrices of d_i^s in the standard basis: G_0 = 1, G_{s+1} = d_i G_s + N_i G_s.
struct DerivMatrixSequence {
  std::size_t direction;
  std::vector<PolyMatrix> matrices;  // G_0 .. G_depth

  std::size_t depth() const { return matrices.size() - 1; }
};

/// Computes G_{i,0..depth}.  Once some G_s vanishes, every later matrix is
/// zero and is filled in without further arithmetic.
DerivMatrixSequence iterated_matrices(const ConnectionModule& module, std::size_t direction, std::size_t depth,
                                      const IterationLimits& limits = {});

/// One step of the recursion, D_i(G) = d_i G + N_i G.  Also used to apply
/// the connection to a single column.
PolyMatrix apply_connection(const ConnectionModule& module, std::size_t direction, const PolyMatrix& g);

}  // namespace nabla
