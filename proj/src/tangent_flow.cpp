#include "stategeom/tangent_flow.hpp"

#include <algorithm>

#include "stategeom/group_actions.hpp"

namespace stategeom {

TangentVector tangent_alpha(const PositiveFunctional& rho, const Operator& a) {
  const Operator& m = rho.matrix();
  Operator value = a * m + m * a.adjoint();
  value = 0.5 * (value + value.adjoint());
  return {m, std::move(value), a};
}

TangentVector tangent_phi(const StateDensity& rho, const Operator& a) {
  const Operator& m = rho.matrix();
  Operator value = a * m + m * a.adjoint();
  value -= value.trace().real() * m;
  value = 0.5 * (value + value.adjoint());
  return {m, std::move(value), a};
}

double covariance(const StateDensity& rho, const Operator& a, const Operator& b, Tolerance tol) {
  require_hermitian(a, tol);
  require_hermitian(b, tol);
  const Operator& m = rho.matrix();
  const double sym = (m * (a * b + b * a)).trace().real();
  return sym - 2.0 * (m * a).trace().real() * (m * b).trace().real();
}

std::vector<StateDensity> flow(const StateDensity& rho0, const Operator& a,
                               const std::vector<double>& t_grid, Tolerance tol) {
  std::vector<StateDensity> out;
  out.reserve(t_grid.size());
  for (const double t : t_grid) {
    const GroupElement g = GroupElement::certify(matrix_exp(t * a), tol);
    out.push_back(phi(g, rho0, tol));
  }
  return out;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t steps) {
  if (steps == 0) return {t0};
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    grid[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(steps);
  }
  return grid;
}

double fd_tangent_check(const StateDensity& rho, const Operator& a, double h, Tolerance tol) {
  if (!(h > 0.0)) throw Error(ErrorCode::DomainError, "finite-difference step must be positive");
  const Operator forward =
      phi(GroupElement::certify(matrix_exp(h * a), tol), rho, tol).matrix();
  const Operator backward =
      phi(GroupElement::certify(matrix_exp(-h * a), tol), rho, tol).matrix();
  const Operator fd = (forward - backward) / (2.0 * h);
  const Operator exact = tangent_phi(rho, a).value;
  return (fd - exact).norm() / std::max(1.0, exact.norm());
}

std::size_t tangent_map_rank(const StateDensity& rho, Action action) {
  const auto n = static_cast<Eigen::Index>(rho.dim());
  Eigen::MatrixXd columns(2 * n * n, 2 * n * n);
  Eigen::Index col = 0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      for (const Complex unit : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        Operator a = Operator::Zero(n, n);
        a(r, c) = unit;
        const Operator value =
            action == Action::Alpha ? tangent_alpha(rho, a).value : tangent_phi(rho, a).value;
        columns.col(col++) = realify(value);
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns);
  const RealVector& sigma = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sigma(0));
  return static_cast<std::size_t>((sigma.array() > cutoff).count());
}

}  // namespace stategeom
