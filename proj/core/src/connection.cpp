#include "nabla/connection.hpp"

#include <string>

namespace nabla {

PolyMatrix::PolyMatrix(const Signature& sig, std::size_t rank)
    : sig_(sig), rank_(rank), entries_(rank * rank, LaurentPoly(sig)) {
  if (rank == 0) throw Error("matrix rank must be >= 1");
}

PolyMatrix PolyMatrix::identity(const Signature& sig, std::size_t rank) {
  PolyMatrix m(sig, rank);
  for (std::size_t k = 0; k < rank; ++k) m(k, k) = LaurentPoly::constant(sig, Rational(1));
  return m;
}

bool PolyMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

void PolyMatrix::check_compatible(const PolyMatrix& o) const {
  if (!(sig_ == o.sig_) || rank_ != o.rank_) throw SignatureMismatch("incompatible matrices");
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  check_compatible(o);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  PolyMatrix r(*this);
  r += o;
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  check_compatible(o);
  PolyMatrix r(*this);
  for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] += -o.entries_[k];
  return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  check_compatible(o);
  PolyMatrix r(sig_, rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    for (std::size_t k = 0; k < rank_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rank_; ++j) {
        const auto& b = o(k, j);
        if (!b.is_zero()) r(i, j).add_product(a, b);
      }
    }
  }
  return r;
}

PolyMatrix scaled(const PolyMatrix& m, const Rational& c) {
  PolyMatrix r(m.signature(), m.rank());
  for (std::size_t i = 0; i < m.rank(); ++i) {
    for (std::size_t j = 0; j < m.rank(); ++j) r(i, j) = m(i, j).scaled(c);
  }
  return r;
}

PolyMatrix partial(const PolyMatrix& m, std::size_t var) {
  PolyMatrix r(m.signature(), m.rank());
  for (std::size_t i = 0; i < m.rank(); ++i) {
    for (std::size_t j = 0; j < m.rank(); ++j) r(i, j) = partial(m(i, j), var);
  }
  return r;
}

PolyMatrix evaluate_except(const PolyMatrix& m, std::size_t keep, std::span<const Rational> values) {
  PolyMatrix r(one_variable_signature(m.signature(), keep), m.rank());
  for (std::size_t i = 0; i < m.rank(); ++i) {
    for (std::size_t j = 0; j < m.rank(); ++j) r(i, j) = evaluate_except(m(i, j), keep, values);
  }
  return r;
}

LogNorm matrix_gauss_lognorm(const PolyMatrix& g, const RadiusVector& rho) {
  LogNorm best = LogNorm::zero();
  for (const auto& e : g.entries()) best = lognorm_max(best, gauss_lognorm(e, rho));
  return best;
}

ConnectionModule::ConnectionModule(Signature sig, std::size_t rank, std::vector<PolyMatrix> matrices)
    : sig_(std::move(sig)), rank_(rank), matrices_(std::move(matrices)) {
  if (rank_ == 0) throw Error("module rank must be >= 1");
  if (sig_.nvars() == 0) throw Error("module needs at least one variable");
  if (matrices_.size() != sig_.nvars()) {
    throw SignatureMismatch("expected " + std::to_string(sig_.nvars()) + " connection matrices, got " +
                            std::to_string(matrices_.size()));
  }
  for (const auto& m : matrices_) {
    if (m.rank() != rank_ || !(m.signature() == sig_)) {
      throw SignatureMismatch("connection matrix does not match module rank/signature");
    }
  }
}

ConnectionModule ConnectionModule::trivial(const Signature& sig, std::size_t rank) {
  return ConnectionModule(sig, rank, std::vector<PolyMatrix>(sig.nvars(), PolyMatrix(sig, rank)));
}

std::optional<CurvatureViolation> integrability_check(const ConnectionModule& module) {
  const auto& n = module.matrices();
  for (std::size_t i = 0; i < n.size(); ++i) {
    for (std::size_t j = i + 1; j < n.size(); ++j) {
      PolyMatrix curvature = partial(n[j], i) - partial(n[i], j) + (n[i] * n[j] - n[j] * n[i]);
      if (!curvature.is_zero()) return CurvatureViolation{i, j, std::move(curvature)};
    }
  }
  return std::nullopt;
}

void require_integrable(const ConnectionModule& module) {
  if (auto v = integrability_check(module)) {
    throw NonIntegrableError("connection is not integrable: curvature in directions (" + std::to_string(v->i + 1) +
                             ", " + std::to_string(v->j + 1) + ") is nonzero");
  }
}

PolyMatrix apply_connection(const ConnectionModule& module, std::size_t direction, const PolyMatrix& g) {
  return partial(g, direction) + module.matrix(direction) * g;
}

DerivMatrixSequence iterated_matrices(const ConnectionModule& module, std::size_t direction, std::size_t depth,
                                      const IterationLimits& limits) {
  if (direction >= module.nvars()) throw Error("direction out of range");
  if (depth > limits.max_depth) {
    throw DepthLimitError("depth " + std::to_string(depth) + " exceeds the cap " + std::to_string(limits.max_depth));
  }
  require_integrable(module);

  // Run the recursion on H_s = D^s G_s with D clearing the denominators of
  // N, so every coefficient stays an integer: H_{s+1} = D dH_s + (D N) H_s.
  const PolyMatrix& n = module.matrix(direction);
  Integer d(1);
  for (const auto& entry : n.entries()) {
    for (const auto& [e, c] : entry.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  }
  const Rational dq(d);
  const PolyMatrix dn = scaled(n, dq);

  DerivMatrixSequence seq{direction, {}};
  seq.matrices.reserve(depth + 1);
  seq.matrices.push_back(PolyMatrix::identity(module.signature(), module.rank()));
  PolyMatrix h = seq.matrices.back();
  Rational inv_power(1);
  bool vanished = false;
  for (std::size_t s = 0; s < depth; ++s) {
    if (vanished) {
      seq.matrices.emplace_back(module.signature(), module.rank());
      continue;
    }
    PolyMatrix next = dn * h;
    next += scaled(partial(h, direction), dq);
    h = std::move(next);
    inv_power /= dq;
    seq.matrices.push_back(scaled(h, inv_power));
    vanished = h.is_zero();
  }
  return seq;
}

}  // namespace nabla
