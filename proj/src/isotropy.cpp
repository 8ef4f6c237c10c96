#include "stategeom/isotropy.hpp"

#include <algorithm>
#include <cmath>

namespace stategeom {

namespace {

const Complex kI(0.0, 1.0);

// Column-outer product w_r w_c^dagger, i.e. |w_r><w_c| in the adapted basis.
Operator ket_bra(const Operator& w, Eigen::Index r, Eigen::Index c) {
  return w.col(r) * w.col(c).adjoint();
}

double scale_of(const Operator& xi, const Operator& a) {
  return (1.0 + xi.norm()) * (1.0 + a.norm());
}

}  // namespace

Eigen::MatrixXd real_gram(const std::vector<Operator>& vectors) {
  const auto m = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const double value =
          (vectors[static_cast<std::size_t>(i)].adjoint() * vectors[static_cast<std::size_t>(j)])
              .trace()
              .real();
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }
  return gram;
}

std::size_t real_rank(const std::vector<Operator>& vectors, double rel_tol) {
  if (vectors.empty()) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real_gram(vectors),
                                                        Eigen::EigenvaluesOnly);
  const RealVector& values = solver.eigenvalues();
  const double cutoff = rel_tol * std::max(1.0, values.maxCoeff());
  return static_cast<std::size_t>((values.array() > cutoff).count());
}

Membership isotropy_membership_alpha(const Operator& a, const PositiveFunctional& xi,
                                     Tolerance tol) {
  const Operator& m = xi.matrix();
  double worst = 0.0;
  for (const Operator& b : hermitian_basis(xi.dim())) {
    const Complex value = (m * (a.adjoint() * b + b * a)).trace();
    worst = std::max(worst, std::abs(value));
  }
  return {worst <= tol(1e-9) * scale_of(m, a), worst};
}

Membership isotropy_membership_phi(const Operator& a, const StateDensity& rho, Tolerance tol) {
  const Operator& m = rho.matrix();
  const Complex drift = (m * (a.adjoint() + a)).trace();
  double worst = 0.0;
  for (const Operator& b : hermitian_basis(rho.dim())) {
    const Complex value = (m * (a.adjoint() * b + b * a)).trace() - (m * b).trace() * drift;
    worst = std::max(worst, std::abs(value));
  }
  return {worst <= tol(1e-9) * scale_of(m, a), worst};
}

RealBasis isotropy_basis_alpha(const SpectralSplit& split) {
  const Operator w = split.adapted_basis();
  const auto n = static_cast<Eigen::Index>(split.dim());
  const auto k = static_cast<Eigen::Index>(split.support_dim);
  RealBasis basis;
  basis.vectors.reserve(static_cast<std::size_t>(k * k + 2 * (n - k) * n));

  // f-f block, free.
  for (Eigen::Index r = k; r < n; ++r) {
    for (Eigen::Index c = k; c < n; ++c) {
      const Operator unit = ket_bra(w, r, c);
      basis.vectors.push_back(unit);
      basis.vectors.push_back(kI * unit);
    }
  }
  // e-f block, free.
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = k; c < n; ++c) {
      const Operator unit = ket_bra(w, r, c);
      basis.vectors.push_back(unit);
      basis.vectors.push_back(kI * unit);
    }
  }
  // e-e block: diagonal entries purely imaginary; for r < c the entry
  // z = <e_c|a|e_r> is free and fixes <e_r|a|e_c> = -(p_r / p_c) conj(z).
  for (Eigen::Index r = 0; r < k; ++r) {
    basis.vectors.push_back(kI * ket_bra(w, r, r));
  }
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = r + 1; c < k; ++c) {
      const double pr = split.eigenvalues(r);
      const double pc = split.eigenvalues(c);
      const double ratio = std::abs(pr - pc) <= split.rank_tol ? 1.0 : pr / pc;
      const Operator lower = ket_bra(w, c, r);
      const Operator upper = ket_bra(w, r, c);
      basis.vectors.push_back(lower - ratio * upper);
      basis.vectors.push_back(kI * lower + kI * ratio * upper);
    }
  }
  return basis;
}

RealBasis complement_basis_alpha(const SpectralSplit& split) {
  const Operator w = split.adapted_basis();
  const auto n = static_cast<Eigen::Index>(split.dim());
  const auto k = static_cast<Eigen::Index>(split.support_dim);
  RealBasis basis;

  // f-e block, free.
  for (Eigen::Index r = k; r < n; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      const Operator unit = ket_bra(w, r, c);
      basis.vectors.push_back(unit);
      basis.vectors.push_back(kI * unit);
    }
  }
  // e-e block, Hermitian.
  for (Eigen::Index r = 0; r < k; ++r) basis.vectors.push_back(ket_bra(w, r, r));
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = r + 1; c < k; ++c) {
      const Operator upper = ket_bra(w, r, c);
      const Operator lower = ket_bra(w, c, r);
      basis.vectors.push_back(upper + lower);
      basis.vectors.push_back(kI * (upper - lower));
    }
  }
  return basis;
}

RealBasis isotropy_basis_phi(const SpectralSplit& split) {
  RealBasis basis = isotropy_basis_alpha(split);
  basis.vectors.push_back(identity(split.dim()));
  return basis;
}

std::size_t isotropy_dimension(const SpectralSplit& split, Action action) {
  const std::size_t n = split.dim();
  const std::size_t k = split.support_dim;
  const std::size_t alpha_dim = k * k + 2 * (n - k) * (n - k) + 2 * k * (n - k);
  return action == Action::Alpha ? alpha_dim : alpha_dim + 1;
}

std::size_t orbit_dimension(const SpectralSplit& split, Action action) {
  const std::size_t n = split.dim();
  return 2 * n * n - isotropy_dimension(split, action);
}

IsotropyReport isotropy_report(const PositiveFunctional& xi, Tolerance tol) {
  const SpectralSplit split = spectral_split(xi, {}, tol);
  const StateDensity state = trusted_state(xi.matrix() / xi.matrix().trace().real());

  const RealBasis g_alpha = isotropy_basis_alpha(split);
  const RealBasis g_phi = isotropy_basis_phi(split);
  const RealBasis k_alpha = complement_basis_alpha(split);

  IsotropyReport report;
  report.n = split.dim();
  report.rank = split.support_dim;
  report.dim_alpha = g_alpha.dim_real();
  report.dim_phi = g_phi.dim_real();
  report.dim_complement = k_alpha.dim_real();
  report.ambient_dim = 2 * report.n * report.n;
  report.orbit_dim_alpha = report.ambient_dim - report.dim_alpha;
  report.orbit_dim_phi = report.ambient_dim - report.dim_phi;
  for (const Operator& v : g_alpha.vectors) {
    report.residual_alpha =
        std::max(report.residual_alpha, isotropy_membership_alpha(v, xi, tol).residual);
  }
  for (const Operator& v : g_phi.vectors) {
    report.residual_phi =
        std::max(report.residual_phi, isotropy_membership_phi(v, state, tol).residual);
  }
  std::vector<Operator> joint = g_alpha.vectors;
  joint.insert(joint.end(), k_alpha.vectors.begin(), k_alpha.vectors.end());
  report.direct_sum_rank = real_rank(joint);
  return report;
}

}  // namespace stategeom
