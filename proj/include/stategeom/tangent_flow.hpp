#pragma once

#include <cstddef>
#include <vector>

#include "stategeom/isotropy.hpp"
#include "stategeom/matrix_core.hpp"
#include "stategeom/state_model.hpp"

namespace stategeom {

struct TangentVector {
  Operator base;
  Operator value;  // Hermitian
  Operator generator;
};

/// d/dt exp(ta) rho exp(ta)^dagger at t = 0, i.e. a rho + rho a^dagger
/// = {rho, x} - i [rho, y] for a = x + i y.
TangentVector tangent_alpha(const PositiveFunctional& rho, const Operator& a);

/// d/dt phi(exp(ta), rho) at t = 0:
/// {rho, x} - i [rho, y] - Tr({rho, x}) rho. Traceless.
TangentVector tangent_phi(const StateDensity& rho, const Operator& a);

/// Tr(rho (ab + ba)) - 2 Tr(rho a) Tr(rho b) for Hermitian a, b.
double covariance(const StateDensity& rho, const Operator& a, const Operator& b,
                  Tolerance tol = {});

/// rho_t = phi(exp(t a), rho0) evaluated exactly at every grid point.
std::vector<StateDensity> flow(const StateDensity& rho0, const Operator& a,
                               const std::vector<double>& t_grid, Tolerance tol = {});

/// Uniform grid t0, ..., t1 with `steps` intervals.
std::vector<double> uniform_grid(double t0, double t1, std::size_t steps);

/// Central difference (phi(exp(ha), rho) - phi(exp(-ha), rho)) / 2h compared
/// with tangent_phi; returns ||fd - T||_F / max(1, ||T||_F).
double fd_tangent_check(const StateDensity& rho, const Operator& a, double h = 1e-5,
                        Tolerance tol = {});

/// Real rank of a -> tangent(rho, a) on the realification R^{2 n^2}.
std::size_t tangent_map_rank(const StateDensity& rho, Action action);

}  // namespace stategeom
