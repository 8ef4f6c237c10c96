#include <doctest.h>

#include <cmath>

#include "stategeom/isotropy.hpp"
#include "stategeom/sampling.hpp"
#include "stategeom/tangent_flow.hpp"
#include "test_support.hpp"

using namespace stategeom;
using oracle::diag;

namespace {

const Complex kI(0.0, 1.0);

Operator pauli_z() { return diag({1.0, -1.0}); }

// Realified matrix of a -> d/dt phi(exp(ta), rho) assembled column by column
// from central differences of the exact action.
Eigen::MatrixXd fd_tangent_matrix(const Operator& rho, double h = 1e-6) {
  const auto n = static_cast<std::size_t>(rho.rows());
  const auto units = oracle::real_units(n);
  Eigen::MatrixXd m(2 * n * n, units.size());
  for (std::size_t j = 0; j < units.size(); ++j) {
    const Operator plus = oracle::normalized_congruence(oracle::series_exp(h * units[j]), rho);
    const Operator minus = oracle::normalized_congruence(oracle::series_exp(-h * units[j]), rho);
    m.col(static_cast<Eigen::Index>(j)) = oracle::realify((plus - minus) / (2 * h));
  }
  return m;
}

}  // namespace

TEST_CASE("tangent_alpha") {
  Rng rng(1);
  const auto rho = random_state(4, 3, rng);
  CHECK(tangent_alpha(rho, Operator::Zero(4, 4)).value.norm() == 0.0);

  const Operator y = random_hermitian(4, rng);
  const Operator v = tangent_alpha(rho, kI * y).value;
  const Operator expected = -kI * (rho.matrix() * y - y * rho.matrix());
  CHECK((v - expected).norm() < 1e-14);
  CHECK(std::abs(v.trace()) < 1e-14);

  for (int trial = 0; trial < 10; ++trial) {
    const Operator a = random_ginibre(4, 4, rng);
    const double h = 1e-5;
    const Operator fd = (oracle::series_exp(h * a) * rho.matrix() * oracle::series_exp(h * a).adjoint() -
                         oracle::series_exp(-h * a) * rho.matrix() * oracle::series_exp(-h * a).adjoint()) /
                        (2 * h);
    const Operator t = tangent_alpha(rho, a).value;
    CHECK((fd - t).norm() / std::max(1.0, t.norm()) <= 1e-6);
    CHECK(hermiticity_defect(t) <= 1e-10);
  }
}

TEST_CASE("tangent_phi") {
  Rng rng(2);
  const auto rho = random_state(3, 3, rng);
  CHECK(tangent_phi(rho, identity(3)).value.norm() < 1e-15);
  CHECK(tangent_phi(rho, Operator::Zero(3, 3)).value.norm() == 0.0);

  const Operator y = random_hermitian(3, rng);
  const Operator v = tangent_phi(rho, kI * y).value;
  CHECK((v + kI * (rho.matrix() * y - y * rho.matrix())).norm() < 1e-14);

  for (int trial = 0; trial < 20; ++trial) {
    const Operator a = random_ginibre(3, 3, rng);
    const Operator b = random_ginibre(3, 3, rng);
    const Operator ta = tangent_phi(rho, a).value;
    CHECK(std::abs(ta.trace()) <= 1e-10);
    CHECK(hermiticity_defect(ta) <= 1e-10);
    const Operator sum = tangent_phi(rho, a + 0.5 * b).value;
    CHECK((sum - ta - 0.5 * tangent_phi(rho, b).value).norm() <= 1e-12);
  }
}

TEST_CASE("covariance") {
  Rng rng(3);
  const auto rho = random_state(3, 2, rng);
  const Operator a = random_hermitian(3, rng);
  CHECK(std::abs(covariance(rho, a, identity(3))) < 1e-14);

  CHECK(covariance(validate_state(diag({1.0, 0.0})), pauli_z(), pauli_z()) == 0.0);
  CHECK(covariance(validate_state(identity(2) / 2.0), pauli_z(), pauli_z()) == doctest::Approx(2.0));

  for (int trial = 0; trial < 50; ++trial) {
    const Operator h = random_hermitian(4, rng);
    CHECK(covariance(random_state(4, 1 + trial % 4, rng), h, h) >= -1e-12);
  }
  CHECK(oracle::raised([&] { covariance(rho, random_ginibre(3, 3, rng), a); }) ==
        ErrorCode::NotHermitian);
}

TEST_CASE("flow") {
  const auto half = validate_state(identity(2) / 2.0);
  const auto grid = uniform_grid(-1.0, 1.0, 8);
  REQUIRE(grid.size() == 9);
  const auto traj = flow(half, diag({1.0, 0.0}), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = std::exp(2 * grid[i]);
    CHECK((traj[i].matrix() - diag({e / (e + 1), 1 / (e + 1)})).norm() <= 1e-14);
  }

  Rng rng(4);
  const auto rho = random_state(4, 2, rng);
  for (const auto& s : flow(rho, Operator::Zero(4, 4), grid)) CHECK(s.matrix() == rho.matrix());

  const Operator skew = kI * random_hermitian(4, rng);
  const RealVector spec = hermitian_eig(rho.matrix()).eigenvalues;
  for (const auto& s : flow(rho, skew, grid))
    CHECK((hermitian_eig(s.matrix()).eigenvalues - spec).norm() <= 1e-12);

  Operator a = random_ginibre(4, 4, rng);
  a *= 2.5 / operator_norm(a);  // ||a|| max|t| <= 5
  for (const auto& s : flow(rho, a, uniform_grid(-2.0, 2.0, 10))) {
    CHECK(std::abs(s.matrix().trace() - 1.0) <= 1e-12);
    CHECK(oracle::min_eigenvalue(s.matrix()) >= -1e-10);
  }
}

TEST_CASE("uniform_grid") {
  const auto g = uniform_grid(0.0, 1.0, 4);
  CHECK(g == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(uniform_grid(2.0, 3.0, 0) == std::vector<double>{2.0});
}

TEST_CASE("fd_tangent_check") {
  Rng rng(5);
  const auto rho = random_state(4, 4, rng);
  CHECK(fd_tangent_check(rho, Operator::Zero(4, 4)) == 0.0);
  for (const Operator& v : isotropy_basis_phi(spectral_split(rho)).vectors) {
    CHECK(tangent_phi(rho, v).value.norm() <= 1e-12);
    CHECK(fd_tangent_check(rho, v) <= 1e-6);
  }
  for (int trial = 0; trial < 20; ++trial) {
    Operator a = random_ginibre(4, 4, rng);
    a *= 2.0 / operator_norm(a);
    CHECK(fd_tangent_check(rho, a) <= 1e-6);
  }
  CHECK(oracle::raised([&] { fd_tangent_check(rho, identity(4), 0.0); }) == ErrorCode::DomainError);
}

TEST_CASE("tangent kernel is the phi-isotropy algebra") {
  Rng rng(6);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const auto rho = random_state(n, k, rng);
      const auto split = spectral_split(rho);
      const auto ns = oracle::null_space(fd_tangent_matrix(rho.matrix()), 1e-6);
      CHECK(ns.dim == isotropy_dimension(split, Action::Phi));
      CHECK(tangent_map_rank(rho, Action::Phi) == orbit_dimension(split, Action::Phi));
      CHECK(tangent_map_rank(rho, Action::Alpha) == orbit_dimension(split, Action::Alpha));
      for (const Operator& v : isotropy_basis_phi(split).vectors) {
        const double t = tangent_phi(rho, v).value.norm();
        const bool member = isotropy_membership_phi(v, rho).member;
        CHECK(t <= 1e-8);
        CHECK(member);
      }
    }
  }

  const auto faithful = random_state(5, 5, rng);
  CHECK(tangent_map_rank(faithful, Action::Phi) == 24);
  CHECK(tangent_map_rank(faithful, Action::Alpha) == 25);
  const Operator pure = diag({1.0, 0.0});
  CHECK(tangent_map_rank(validate_state(pure), Action::Phi) == 2);
}

TEST_CASE("tangent vanishes exactly on phi-isotropy members") {
  Rng rng(7);
  const auto rho = random_state(3, 2, rng);
  const auto split = spectral_split(rho);
  for (const Operator& v : complement_basis_alpha(split).vectors) {
    const bool member = isotropy_membership_phi(v, rho).member;
    const double t = tangent_phi(rho, v).value.norm();
    CHECK(member == (t <= 1e-8));
  }
}
