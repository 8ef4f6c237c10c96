#include "stategeom/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace stategeom {

double frobenius_norm(const Operator& a) { return a.norm(); }

double operator_norm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double hermiticity_defect(const Operator& a) { return (a - a.adjoint()).norm(); }

bool is_finite(const Operator& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

Operator identity(std::size_t n) {
  return Operator::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

void require_hermitian(const Operator& h, Tolerance tol) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorCode::NotHermitian, "matrix is not square");
  }
  const double defect = hermiticity_defect(h);
  if (!is_finite(h) || defect > tol(1e-10) * (1.0 + h.norm())) {
    std::ostringstream msg;
    msg << "||h - h^dagger||_F = " << defect << " exceeds tolerance";
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
}

SpectralDecomposition hermitian_eig(const Operator& h, Tolerance tol) {
  require_hermitian(h, tol);
  const Operator sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(sym);

  const Eigen::Index n = h.rows();
  const RealVector& ascending = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  // Ties keep the solver's column order, so I maps to the standard basis.
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return ascending(a) > ascending(b);
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::Index src = order[static_cast<std::size_t>(c)];
    out.eigenvalues(c) = ascending(src);
    ComplexVector v = solver.eigenvectors().col(src);

    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mag = std::abs(v(i));
      if (mag > best * (1.0 + 1e-12)) {
        best = mag;
        pivot = i;
      }
    }
    if (best > 0.0) v *= std::conj(v(pivot)) / best;
    v(pivot) = Complex(v(pivot).real(), 0.0);
    out.eigenvectors.col(c) = v;
  }
  return out;
}

Operator matrix_sqrt_psd(const Operator& p, Tolerance tol) {
  const SpectralDecomposition eig = hermitian_eig(p, tol);
  const double clamp = tol(1e-10) * (1.0 + p.norm());
  RealVector roots(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda < -clamp) {
      std::ostringstream msg;
      msg << "eigenvalue " << lambda << " below PSD clamp threshold " << -clamp;
      throw Error(ErrorCode::NotPSD, msg.str());
    }
    roots(i) = std::sqrt(std::max(lambda, 0.0));
  }
  const Operator& v = eig.eigenvectors;
  Operator s = v * roots.cast<Complex>().asDiagonal() * v.adjoint();
  return 0.5 * (s + s.adjoint());
}

Operator matrix_exp(const Operator& a) { return a.exp(); }

RealVector singular_values(const Operator& a) {
  Eigen::JacobiSVD<Operator> svd(a);
  return svd.singularValues();
}

PolarDecomposition polar(const Operator& g, Tolerance tol) {
  if (g.rows() != g.cols()) throw Error(ErrorCode::DomainError, "polar: matrix is not square");
  Eigen::JacobiSVD<Operator> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const double norm = sigma.size() ? sigma(0) : 0.0;
  const double smallest = sigma.size() ? sigma(sigma.size() - 1) : 0.0;
  if (!(smallest > tol(1e-12) * (1.0 + norm))) {
    std::ostringstream msg;
    msg << "smallest singular value " << smallest << " too small for polar decomposition";
    throw Error(ErrorCode::Singular, msg.str());
  }
  const Operator& w = svd.matrixU();
  const Operator& v = svd.matrixV();
  PolarDecomposition out;
  out.unitary = w * v.adjoint();
  out.positive = v * sigma.cast<Complex>().asDiagonal() * v.adjoint();
  out.positive = 0.5 * (out.positive + out.positive.adjoint());
  return out;
}

Inertia inertia(const Operator& h, double zero_tol, Tolerance tol) {
  const SpectralDecomposition eig = hermitian_eig(h, tol);
  Inertia out;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda > zero_tol) {
      ++out.n_plus;
    } else if (lambda < -zero_tol) {
      ++out.n_minus;
    } else {
      ++out.n_zero;
    }
  }
  return out;
}

std::vector<Operator> hermitian_basis(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  std::vector<Operator> basis;
  basis.reserve(n * n);
  for (Eigen::Index k = 0; k < m; ++k) {
    Operator b = Operator::Zero(m, m);
    b(k, k) = 1.0;
    basis.push_back(std::move(b));
  }
  const Complex i(0.0, 1.0);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = k + 1; l < m; ++l) {
      Operator sym = Operator::Zero(m, m);
      sym(k, l) = 1.0;
      sym(l, k) = 1.0;
      basis.push_back(std::move(sym));
      Operator anti = Operator::Zero(m, m);
      anti(k, l) = i;
      anti(l, k) = -i;
      basis.push_back(std::move(anti));
    }
  }
  return basis;
}

RealVector realify(const Operator& a) {
  RealVector out(2 * a.size());
  Eigen::Index pos = 0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out(pos++) = a(r, c).real();
      out(pos++) = a(r, c).imag();
    }
  }
  return out;
}

}  // namespace stategeom
