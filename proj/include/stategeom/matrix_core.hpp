#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "stategeom/error.hpp"

namespace stategeom {

using Complex = std::complex<double>;

/// Element of the full matrix algebra B(C^n).
using Operator = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Uniform multiplier applied to every base tolerance in the library. The
/// CLI's --tol flag and the C API context set it; the default is 1.
struct Tolerance {
  double scale = 1.0;

  constexpr double operator()(double base) const noexcept { return base * scale; }
};

struct SpectralDecomposition {
  RealVector eigenvalues;  // non-increasing
  Operator eigenvectors;   // columns match eigenvalues
};

struct PolarDecomposition {
  Operator unitary;
  Operator positive;
};

struct Inertia {
  int n_plus = 0;
  int n_zero = 0;
  int n_minus = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

double frobenius_norm(const Operator& a);

/// Largest singular value.
double operator_norm(const Operator& a);

double hermiticity_defect(const Operator& a);

bool is_finite(const Operator& a);

Operator identity(std::size_t n);

/// Throws NotHermitian unless ||h - h^dagger||_F <= 1e-10 (1 + ||h||_F).
void require_hermitian(const Operator& h, Tolerance tol = {});

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending (stable); every eigenvector column is rotated so that its
/// largest-magnitude component is real positive, the lowest index winning
/// ties.
SpectralDecomposition hermitian_eig(const Operator& h, Tolerance tol = {});

/// Hermitian PSD square root. Eigenvalues in [-1e-10 (1 + ||p||_F), 0) are
/// clamped to zero; anything lower raises NotPSD.
Operator matrix_sqrt_psd(const Operator& p, Tolerance tol = {});

Operator matrix_exp(const Operator& a);

/// g = U P with U unitary and P = sqrt(g^dagger g).
PolarDecomposition polar(const Operator& g, Tolerance tol = {});

Inertia inertia(const Operator& h, double zero_tol, Tolerance tol = {});

/// Singular values, descending.
RealVector singular_values(const Operator& a);

/// Canonical Hermitian basis of M_n: diagonal units, then for every k < l
/// the symmetric pair E_kl + E_lk and the antisymmetric pair i(E_kl - E_lk).
/// It spans M_n over C and the Hermitian matrices over R.
std::vector<Operator> hermitian_basis(std::size_t n);

/// Real coordinates (Re, Im of each entry, row-major) of a matrix viewed as
/// a vector of the realification R^{2 n^2}.
RealVector realify(const Operator& a);

}  // namespace stategeom
