#pragma once

#include "stategeom/matrix_core.hpp"
#include "stategeom/state_model.hpp"

namespace stategeom {

/// Invertible element of B(C^n). Invertibility is certified once, at
/// construction, from the singular values.
class GroupElement {
 public:
  /// Throws Singular unless sigma_min(g) > 1e-12 (1 + ||g||).
  static GroupElement certify(Operator g, Tolerance tol = {});

  const Operator& matrix() const noexcept { return g_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(g_.rows()); }
  double sigma_min() const noexcept { return sigma_min_; }
  double norm() const noexcept { return sigma_max_; }
  /// ||g^-1|| = 1 / sigma_min.
  double inverse_norm() const noexcept { return 1.0 / sigma_min_; }

  GroupElement operator*(const GroupElement& other) const;

 private:
  GroupElement(Operator g, double sigma_min, double sigma_max)
      : g_(std::move(g)), sigma_min_(sigma_min), sigma_max_(sigma_max) {}

  Operator g_;
  double sigma_min_;
  double sigma_max_;
};

/// Linear action on self-adjoint functionals: xi -> g xi g^dagger.
Operator alpha(const GroupElement& g, const Operator& xi, Tolerance tol = {});
PositiveFunctional alpha(const GroupElement& g, const PositiveFunctional& xi);

/// rho(g^dagger g) = Tr(rho g^dagger g). Throws NumericallySingular when the
/// value is not above 1e-14.
double denominator(const GroupElement& g, const StateDensity& rho, Tolerance tol = {});

/// Normalized action g rho g^dagger / Tr(g rho g^dagger).
StateDensity phi(const GroupElement& g, const StateDensity& rho, Tolerance tol = {});

/// Restriction of phi to unitaries; throws NotUnitary unless
/// ||u^dagger u - I|| <= 1e-10.
StateDensity unitary_phi(const GroupElement& u, const StateDensity& rho, Tolerance tol = {});

/// Abelian action on a finite sample space: q_j = |w_j|^2 p_j / sum_k |w_k|^2 p_k.
ProbabilityVector classical_phi(const ComplexVector& weights, const ProbabilityVector& p);

/// ||phi(g, l r1 + (1-l) r2) - l phi(g, r1) - (1-l) phi(g, r2)||_F.
double nonconvexity_witness(const GroupElement& g, const StateDensity& rho1,
                            const StateDensity& rho2, double lambda, Tolerance tol = {});

}  // namespace stategeom
