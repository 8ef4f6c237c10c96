#pragma once

#include <cstddef>
#include <vector>

#include "stategeom/matrix_core.hpp"
#include "stategeom/state_model.hpp"

namespace stategeom {

enum class Action { Alpha, Phi };

/// Real-linearly independent elements spanning a subspace of the
/// realification of B(C^n).
struct RealBasis {
  std::vector<Operator> vectors;

  std::size_t dim_real() const noexcept { return vectors.size(); }
};

struct Membership {
  bool member = false;
  double residual = 0.0;
};

/// Gram matrix of the real inner product Re Tr(a^dagger b).
Eigen::MatrixXd real_gram(const std::vector<Operator>& vectors);

/// Numerical rank of real_gram, counting eigenvalues above rel_tol * max(1, largest).
std::size_t real_rank(const std::vector<Operator>& vectors, double rel_tol = 1e-10);

/// a is in the alpha-isotropy algebra of xi iff Tr(xi (a^dagger b + b a)) = 0
/// for all b. Evaluated over the canonical Hermitian basis; member iff the
/// largest violation is <= 1e-9 (1 + ||xi||_F)(1 + ||a||_F).
Membership isotropy_membership_alpha(const Operator& a, const PositiveFunctional& xi,
                                     Tolerance tol = {});

/// Phi-isotropy condition rho(a^dagger b + b a) - rho(b) rho(a^dagger + a) = 0.
Membership isotropy_membership_phi(const Operator& a, const StateDensity& rho,
                                   Tolerance tol = {});

/// Basis of the alpha-isotropy algebra from its block form in the adapted
/// basis {e_k, f_l}:
///   f-f and e-f blocks free, f-e block zero,
///   <e_k|a|e_l> = -(p_k / p_l) conj(<e_l|a|e_k>) on the support.
/// Block-then-index order; real dimension k^2 + 2(n-k)^2 + 2k(n-k).
RealBasis isotropy_basis_alpha(const SpectralSplit& split);

/// Complement: f-f and e-f blocks zero, f-e block free, e-e block Hermitian.
RealBasis complement_basis_alpha(const SpectralSplit& split);

/// Alpha-isotropy basis followed by the identity.
RealBasis isotropy_basis_phi(const SpectralSplit& split);

std::size_t isotropy_dimension(const SpectralSplit& split, Action action);

/// 2 n^2 - dim(isotropy).
std::size_t orbit_dimension(const SpectralSplit& split, Action action);

struct IsotropyReport {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::size_t dim_alpha = 0;
  std::size_t dim_phi = 0;
  std::size_t dim_complement = 0;
  std::size_t ambient_dim = 0;
  std::size_t orbit_dim_alpha = 0;
  std::size_t orbit_dim_phi = 0;
  /// Largest membership violation over the constructed alpha / phi bases.
  double residual_alpha = 0.0;
  double residual_phi = 0.0;
  /// Numerical rank of the joint Gram matrix of isotropy and complement bases.
  std::size_t direct_sum_rank = 0;
};

/// The phi columns refer to the normalized state xi / Tr(xi).
IsotropyReport isotropy_report(const PositiveFunctional& xi, Tolerance tol = {});

}  // namespace stategeom
