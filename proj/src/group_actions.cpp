#include "stategeom/group_actions.hpp"

#include <cmath>
#include <sstream>

namespace stategeom {

GroupElement GroupElement::certify(Operator g, Tolerance tol) {
  if (g.rows() == 0 || g.rows() != g.cols()) {
    throw Error(ErrorCode::DomainError, "group element must be a nonempty square matrix");
  }
  if (!is_finite(g)) throw Error(ErrorCode::DomainError, "group element has non-finite entries");
  const RealVector sigma = singular_values(g);
  const double largest = sigma(0);
  const double smallest = sigma(sigma.size() - 1);
  if (!(smallest > tol(1e-12) * (1.0 + largest))) {
    std::ostringstream msg;
    msg << "smallest singular value " << smallest << " does not certify invertibility";
    throw Error(ErrorCode::Singular, msg.str());
  }
  return GroupElement(std::move(g), smallest, largest);
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  return certify(g_ * other.g_);
}

namespace {

void require_same_dim(const GroupElement& g, const Operator& m) {
  if (static_cast<Eigen::Index>(g.dim()) != m.rows()) {
    throw Error(ErrorCode::DomainError, "group element and functional have different dimensions");
  }
}

}  // namespace

Operator alpha(const GroupElement& g, const Operator& xi, Tolerance tol) {
  require_hermitian(xi, tol);
  require_same_dim(g, xi);
  const Operator& m = g.matrix();
  const Operator out = m * xi * m.adjoint();
  return 0.5 * (out + out.adjoint());
}

PositiveFunctional alpha(const GroupElement& g, const PositiveFunctional& xi) {
  require_same_dim(g, xi.matrix());
  const Operator& m = g.matrix();
  return trusted_positive(m * xi.matrix() * m.adjoint());
}

double denominator(const GroupElement& g, const StateDensity& rho, Tolerance tol) {
  require_same_dim(g, rho.matrix());
  const Operator& m = g.matrix();
  const double value = (rho.matrix() * (m.adjoint() * m)).trace().real();
  if (!(value > tol(1e-14))) {
    std::ostringstream msg;
    msg << "rho(g^dagger g) = " << value << " is not strictly positive";
    throw Error(ErrorCode::NumericallySingular, msg.str());
  }
  return value;
}

StateDensity phi(const GroupElement& g, const StateDensity& rho, Tolerance tol) {
  const double norm = denominator(g, rho, tol);
  const Operator& m = g.matrix();
  // rho(g^dagger g) / rho(I): identical to the plain denominator for a
  // state, and exactly 1 for g = I, so the identity acts bit-exactly.
  const double scale = rho.matrix().trace().real() / norm;
  return trusted_state(m * rho.matrix() * m.adjoint() * scale);
}

StateDensity unitary_phi(const GroupElement& u, const StateDensity& rho, Tolerance tol) {
  const Operator& m = u.matrix();
  const double defect = (m.adjoint() * m - identity(u.dim())).norm();
  if (defect > tol(1e-10)) {
    std::ostringstream msg;
    msg << "||u^dagger u - I|| = " << defect;
    throw Error(ErrorCode::NotUnitary, msg.str());
  }
  require_same_dim(u, rho.matrix());
  return trusted_state(m * rho.matrix() * m.adjoint());
}

ProbabilityVector classical_phi(const ComplexVector& weights, const ProbabilityVector& p) {
  if (static_cast<std::size_t>(weights.size()) != p.size()) {
    throw Error(ErrorCode::DomainError, "weight and probability vectors differ in length");
  }
  RealVector q(weights.size());
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    const double mag = std::abs(weights(j));
    if (!(mag > 0.0) || !std::isfinite(mag)) {
      throw Error(ErrorCode::ZeroWeight, "classical weights must be finite and nonzero");
    }
    q(j) = mag * mag * p.values()(j);
  }
  const double total = q.sum();
  if (!(total > 0.0)) throw Error(ErrorCode::NumericallySingular, "classical normalization vanished");
  return ProbabilityVector(detail::Trusted{}, q / total);
}

double nonconvexity_witness(const GroupElement& g, const StateDensity& rho1,
                            const StateDensity& rho2, double lambda, Tolerance tol) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::DomainError, "mixing weight must lie in [0, 1]");
  }
  const StateDensity mixed =
      trusted_state(lambda * rho1.matrix() + (1.0 - lambda) * rho2.matrix());
  const Operator lhs = phi(g, mixed, tol).matrix();
  const Operator rhs =
      lambda * phi(g, rho1, tol).matrix() + (1.0 - lambda) * phi(g, rho2, tol).matrix();
  return (lhs - rhs).norm();
}

}  // namespace stategeom
