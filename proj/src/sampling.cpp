#include "stategeom/sampling.hpp"

#include <cmath>

namespace stategeom {

Operator random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Operator m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

Operator random_hermitian(std::size_t n, Rng& rng) {
  const Operator m = random_ginibre(n, n, rng);
  return 0.5 * (m + m.adjoint());
}

Operator random_unitary(std::size_t n, Rng& rng) {
  const Operator z = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<Operator> qr(z);
  Operator q = qr.householderQ() * Operator::Identity(z.rows(), z.cols());
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

Operator random_invertible(std::size_t n, Rng& rng, double max_norm) {
  std::uniform_real_distribution<double> log_scale(-std::log(max_norm), std::log(max_norm));
  RealVector s(static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < s.size(); ++j) s(j) = std::exp(log_scale(rng));
  const Operator u = random_unitary(n, rng);
  const Operator v = random_unitary(n, rng);
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

StateDensity random_state(std::size_t n, std::size_t rank, Rng& rng) {
  if (rank == 0 || rank > n) throw Error(ErrorCode::DomainError, "random_state: rank must lie in [1, n]");
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  RealVector p = RealVector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < rank; ++j) p(static_cast<Eigen::Index>(j)) = weight(rng);
  p /= p.sum();
  const Operator u = random_unitary(n, rng);
  return trusted_state(u * p.cast<Complex>().asDiagonal() * u.adjoint());
}

ProbabilityVector random_probability(std::size_t m, Rng& rng) {
  std::exponential_distribution<double> draw(1.0);
  RealVector p(static_cast<Eigen::Index>(m));
  for (Eigen::Index j = 0; j < p.size(); ++j) p(j) = draw(rng) + 1e-3;
  p /= p.sum();
  return ProbabilityVector(detail::Trusted{}, p);
}

}  // namespace stategeom
