#include "stategeom/state_model.hpp"

#include <cmath>
#include <sstream>

namespace stategeom {

PositiveFunctional::PositiveFunctional(detail::Trusted, Operator m) : matrix_(std::move(m)) {}

Complex PositiveFunctional::evaluate(const Operator& b) const { return (matrix_ * b).trace(); }

Operator SpectralSplit::adapted_basis() const {
  Operator w(support_basis.rows(), support_basis.rows());
  w << support_basis, kernel_basis;
  return w;
}

Operator SpectralSplit::reassemble() const {
  return support_basis * eigenvalues.cast<Complex>().asDiagonal() * support_basis.adjoint();
}

std::string_view orbit_tag_name(OrbitTag tag) noexcept {
  switch (tag) {
    case OrbitTag::FiniteRank: return "FiniteRank";
    case OrbitTag::CofiniteKernel: return "CofiniteKernel";
    case OrbitTag::FullSupport: return "FullSupport";
    case OrbitTag::InfiniteBoth: return "InfiniteBoth";
  }
  return "Unknown";
}

std::string OrbitClass::label() const {
  std::ostringstream out;
  out << orbit_tag_name(tag) << '(' << rank << ')';
  if (declared_limit) out << "->" << orbit_tag_name(*declared_limit);
  return out.str();
}

PositiveFunctional validate_positive(const Operator& m, Tolerance tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::DomainError, "functional must be a nonempty square matrix");
  }
  const SpectralDecomposition eig = hermitian_eig(m, tol);
  const double floor = -tol(1e-10) * (1.0 + m.norm());
  const double lowest = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (lowest < floor) {
    std::ostringstream msg;
    msg << "minimum eigenvalue " << lowest << " is negative";
    throw Error(ErrorCode::NotPSD, msg.str());
  }
  if (eig.eigenvalues(0) <= default_rank_tol(m, tol)) {
    throw Error(ErrorCode::ZeroFunctional, "the zero functional is excluded");
  }
  return trusted_positive(m);
}

StateDensity validate_state(const Operator& m, Tolerance tol) {
  const PositiveFunctional positive = validate_positive(m, tol);
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > tol(1e-10)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "trace " << trace << " differs from 1";
    throw Error(ErrorCode::TraceError, msg.str());
  }
  return trusted_state(positive.matrix());
}

ProbabilityVector validate_probability(const RealVector& p, Tolerance tol) {
  if (p.size() == 0) throw Error(ErrorCode::DomainError, "empty probability vector");
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (!std::isfinite(p(j)) || p(j) < 0.0) {
      throw Error(ErrorCode::DomainError, "probability entries must be finite and non-negative");
    }
  }
  if (std::abs(p.sum() - 1.0) > tol(1e-12)) {
    throw Error(ErrorCode::TraceError, "probabilities do not sum to 1");
  }
  return ProbabilityVector(detail::Trusted{}, p);
}

double default_rank_tol(const Operator& m, Tolerance tol) { return tol(1e-12) * (1.0 + m.norm()); }

SpectralSplit spectral_split(const PositiveFunctional& rho, std::optional<double> rank_tol,
                             Tolerance tol) {
  const Operator& m = rho.matrix();
  const SpectralDecomposition eig = hermitian_eig(m, tol);
  const double threshold = rank_tol.value_or(default_rank_tol(m, tol));
  const Eigen::Index n = m.rows();
  Eigen::Index k = 0;
  while (k < n && eig.eigenvalues(k) > threshold) ++k;

  SpectralSplit split;
  split.support_dim = static_cast<std::size_t>(k);
  split.eigenvalues = eig.eigenvalues.head(k);
  split.support_basis = eig.eigenvectors.leftCols(k);
  split.kernel_basis = eig.eigenvectors.rightCols(n - k);
  split.rank_tol = threshold;
  return split;
}

OrbitClass classify_orbit(const PositiveFunctional& rho, std::optional<OrbitTag> declared_limit,
                          std::optional<double> rank_tol, Tolerance tol) {
  const SpectralSplit split = spectral_split(rho, rank_tol, tol);
  OrbitClass out;
  out.tag = OrbitTag::FiniteRank;
  out.rank = split.support_dim;
  out.corank = split.dim() - split.support_dim;
  out.declared_limit = declared_limit;
  return out;
}

StateDensity embed_classical(const ProbabilityVector& p) {
  return trusted_state(p.values().cast<Complex>().asDiagonal().toDenseMatrix());
}

StateDensity gibbs_family(std::size_t n, double ratio) {
  if (n == 0) throw Error(ErrorCode::DomainError, "gibbs_family: n must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::DomainError, "gibbs_family: ratio must lie in (0, 1)");
  }
  RealVector weights(static_cast<Eigen::Index>(n));
  double w = 1.0;
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    weights(j) = w;
    w *= ratio;
  }
  weights /= weights.sum();
  return trusted_state(weights.cast<Complex>().asDiagonal().toDenseMatrix());
}

StateDensity trusted_state(const Operator& m) {
  return StateDensity(detail::Trusted{}, 0.5 * (m + m.adjoint()));
}

PositiveFunctional trusted_positive(const Operator& m) {
  return PositiveFunctional(detail::Trusted{}, 0.5 * (m + m.adjoint()));
}

}  // namespace stategeom
