#include "stategeom/gns.hpp"

#include <algorithm>
#include <cmath>

namespace stategeom {

namespace {

// rho(E_a^dagger x E_b) for E_a = |i><j|, E_b = |k><l| equals x_ik rho_lj.
GnsTriple build(const Operator& rho, std::vector<MatrixUnit> basis, Tolerance tol) {
  const auto count = static_cast<Eigen::Index>(basis.size());
  Operator gram(count, count);
  for (Eigen::Index a = 0; a < count; ++a) {
    const MatrixUnit ea = basis[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < count; ++b) {
      const MatrixUnit eb = basis[static_cast<std::size_t>(b)];
      gram(a, b) = ea.row == eb.row
                       ? rho(static_cast<Eigen::Index>(eb.col), static_cast<Eigen::Index>(ea.col))
                       : Complex(0.0, 0.0);
    }
  }

  Eigen::SelfAdjointEigenSolver<Operator> solver(0.5 * (gram + gram.adjoint()));
  const RealVector& values = solver.eigenvalues();
  const double threshold = tol(1e-12) * std::max(values.maxCoeff(), 0.0);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index m = values.size() - 1; m >= 0; --m) {
    if (values(m) > threshold) kept.push_back(m);
  }

  GnsTriple triple;
  triple.n = static_cast<std::size_t>(rho.rows());
  triple.dim = kept.size();
  const auto d = static_cast<Eigen::Index>(kept.size());
  triple.embed.resize(count, d);
  for (Eigen::Index m = 0; m < d; ++m) {
    const Eigen::Index src = kept[static_cast<std::size_t>(m)];
    triple.embed.col(m) = solver.eigenvectors().col(src) / std::sqrt(values(src));
  }

  // <v_m | [I]> = sum_a conj(C_am) rho(E_a^dagger) with rho(E_ji) = rho_ij.
  ComplexVector overlaps(count);
  for (Eigen::Index a = 0; a < count; ++a) {
    const MatrixUnit ea = basis[static_cast<std::size_t>(a)];
    overlaps(a) = rho(static_cast<Eigen::Index>(ea.row), static_cast<Eigen::Index>(ea.col));
  }
  triple.cyclic = triple.embed.adjoint() * overlaps;

  // pi(E_pq) on the classes: G_x[a, b] = delta_{i p} delta_{k q} rho_{l j}.
  triple.rep.reserve(basis.size());
  for (const MatrixUnit x : basis) {
    Operator gx = Operator::Zero(count, count);
    for (Eigen::Index a = 0; a < count; ++a) {
      const MatrixUnit ea = basis[static_cast<std::size_t>(a)];
      if (ea.row != x.row) continue;
      for (Eigen::Index b = 0; b < count; ++b) {
        const MatrixUnit eb = basis[static_cast<std::size_t>(b)];
        if (eb.row != x.col) continue;
        gx(a, b) = rho(static_cast<Eigen::Index>(eb.col), static_cast<Eigen::Index>(ea.col));
      }
    }
    triple.rep.push_back(triple.embed.adjoint() * gx * triple.embed);
  }
  triple.basis = std::move(basis);
  return triple;
}

}  // namespace

Operator GnsTriple::represent(const Operator& x) const {
  const auto d = static_cast<Eigen::Index>(dim);
  Operator out = Operator::Zero(d, d);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex coeff =
        x(static_cast<Eigen::Index>(basis[i].row), static_cast<Eigen::Index>(basis[i].col));
    if (coeff != Complex(0.0, 0.0)) out += coeff * rep[i];
  }
  return out;
}

Complex GnsTriple::expectation(const Operator& x) const {
  return cyclic.dot(represent(x) * cyclic);
}

GnsTriple gns_construct(const StateDensity& rho, Tolerance tol) {
  std::vector<MatrixUnit> basis;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) basis.push_back({i, j});
  }
  return build(rho.matrix(), std::move(basis), tol);
}

GnsTriple gns_construct_diagonal(const ProbabilityVector& p, Tolerance tol) {
  std::vector<MatrixUnit> basis;
  for (std::size_t i = 0; i < p.size(); ++i) basis.push_back({i, i});
  return build(embed_classical(p).matrix(), std::move(basis), tol);
}

GnsTriple gns_transform(const GnsTriple& triple, const GroupElement& g, const StateDensity& rho,
                        Tolerance tol) {
  if (g.dim() != triple.n || rho.dim() != triple.n) {
    throw Error(ErrorCode::DomainError, "GNS triple, group element and state differ in dimension");
  }
  const Operator& m = g.matrix();
  const double norm2 = triple.expectation(m.adjoint() * m).real();
  if (!(norm2 > tol(1e-14))) {
    throw Error(ErrorCode::NumericallySingular, "<psi|pi(g^dagger g)|psi> is not strictly positive");
  }
  GnsTriple out = triple;
  out.cyclic = triple.represent(m) * triple.cyclic / std::sqrt(norm2);
  return out;
}

std::size_t commutant_dimension(const GnsTriple& triple) {
  const auto n = static_cast<Eigen::Index>(triple.n);
  const auto d = static_cast<Eigen::Index>(triple.dim);
  if (d == 0) return 0;

  Operator diag = Operator::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) diag(i, i) = static_cast<double>(i + 1);
  const Operator h1 = triple.represent(diag);
  Eigen::SelfAdjointEigenSolver<Operator> solver(0.5 * (h1 + h1.adjoint()));
  const RealVector& values = solver.eigenvalues();
  const Operator& v = solver.eigenvectors();

  // Anything commuting with h1 is block diagonal on its eigenspaces.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;  // [start, size)
  const double gap = 1e-8 * (1.0 + static_cast<double>(n));
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= d; ++i) {
    if (i == d || values(i) - values(i - 1) > gap) {
      blocks.emplace_back(start, i - start);
      start = i;
    }
  }
  std::size_t unknowns = 0;
  for (const auto& [s, size] : blocks) unknowns += static_cast<std::size_t>(size * size);
  if (triple.abelian() || n == 1) return unknowns;

  Operator shift = Operator::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    shift(i, i + 1) = 1.0;
    shift(i + 1, i) = 1.0;
  }
  const Operator h2 = v.adjoint() * triple.represent(shift) * v;

  // Column u of the system is the commutator [h2, B_u] for the block-diagonal
  // basis matrix B_u = |r><c|.
  Operator system(d * d, static_cast<Eigen::Index>(unknowns));
  Eigen::Index u = 0;
  for (const auto& [s, size] : blocks) {
    for (Eigen::Index r = s; r < s + size; ++r) {
      for (Eigen::Index c = s; c < s + size; ++c) {
        Operator commutator = Operator::Zero(d, d);
        commutator.col(c) += h2.col(r);
        commutator.row(r) -= h2.row(c);
        system.col(u++) = Eigen::Map<const ComplexVector>(commutator.data(), d * d);
      }
    }
  }
  Eigen::JacobiSVD<Operator> svd(system);
  const RealVector& sigma = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sigma(0));
  const auto rank = static_cast<std::size_t>((sigma.array() > cutoff).count());
  return unknowns - rank;
}

GnsVerification verify_gns(const GnsTriple& triple, const Operator& rho, Rng& rng,
                           std::size_t samples) {
  const auto n = static_cast<Eigen::Index>(triple.n);
  const auto d = static_cast<Eigen::Index>(triple.dim);
  const auto draw = [&] {
    Operator x = random_ginibre(triple.n, triple.n, rng);
    if (triple.abelian()) x = Operator(x.diagonal().asDiagonal());
    return x;
  };

  GnsVerification out;
  for (std::size_t s = 0; s < samples; ++s) {
    const Operator a = draw();
    const Operator b = draw();
    out.homomorphism = std::max(
        out.homomorphism, (triple.represent(a * b) - triple.represent(a) * triple.represent(b)).norm());
    out.involution = std::max(
        out.involution, (triple.represent(a.adjoint()) - triple.represent(a).adjoint()).norm());
  }
  out.unit = (triple.represent(Operator::Identity(n, n)) - Operator::Identity(d, d)).norm();

  Operator orbit(d, static_cast<Eigen::Index>(triple.basis.size()));
  for (std::size_t i = 0; i < triple.basis.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(triple.basis[i].row);
    const auto c = static_cast<Eigen::Index>(triple.basis[i].col);
    const Complex expected = rho(c, r);  // Tr(rho |r><c|)
    const Complex got = triple.cyclic.dot(triple.rep[i] * triple.cyclic);
    out.reconstruction = std::max(out.reconstruction, std::abs(got - expected));
    orbit.col(static_cast<Eigen::Index>(i)) = triple.rep[i] * triple.cyclic;
  }
  out.cyclic_norm = std::abs(triple.cyclic.norm() - 1.0);
  if (d > 0) {
    Eigen::JacobiSVD<Operator> svd(orbit);
    const RealVector& sigma = svd.singularValues();
    const double cutoff = 1e-10 * std::max(1.0, sigma(0));
    out.cyclic_rank = static_cast<std::size_t>((sigma.array() > cutoff).count());
  }
  return out;
}

PurityReport purity_check(const StateDensity& rho, Tolerance tol) {
  PurityReport report;
  report.rank = spectral_split(rho, {}, tol).support_dim;
  const GnsTriple triple = gns_construct(rho, tol);
  report.gns_dim = triple.dim;
  report.commutant_dim = commutant_dimension(triple);
  report.pure = report.rank == 1;
  return report;
}

}  // namespace stategeom
