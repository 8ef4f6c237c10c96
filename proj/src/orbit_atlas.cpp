#include "stategeom/orbit_atlas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

namespace stategeom {

namespace {

std::vector<std::size_t> resolve_matching(const Matching& matching, std::size_t k) {
  std::vector<std::size_t> perm(k);
  for (std::size_t j = 0; j < k; ++j) perm[j] = j;
  if (!matching) return perm;
  if (matching->size() != k) {
    throw Error(ErrorCode::DomainError, "matching length differs from the common rank");
  }
  std::vector<bool> seen(k, false);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t target = (*matching)[j];
    if (target >= k || seen[target]) {
      throw Error(ErrorCode::DomainError, "matching is not a permutation of the support indices");
    }
    seen[target] = true;
  }
  return *matching;
}

void require_equal_rank(const SpectralSplit& s0, const SpectralSplit& s1) {
  if (s0.dim() != s1.dim()) {
    throw Error(ErrorCode::DomainError, "functionals act on spaces of different dimension");
  }
  if (s0.support_dim != s1.support_dim) {
    std::ostringstream msg;
    msg << "rank " << s0.support_dim << " vs rank " << s1.support_dim;
    throw Error(ErrorCode::RankMismatch, msg.str());
  }
}

struct Intertwiner {
  Operator g;
  double bound_constant;
};

Intertwiner build_intertwiner(const SpectralSplit& s0, const SpectralSplit& s1,
                              const Matching& matching) {
  require_equal_rank(s0, s1);
  const std::vector<std::size_t> perm = resolve_matching(matching, s0.support_dim);
  const Eigen::Index n = static_cast<Eigen::Index>(s0.dim());
  Operator g = Operator::Zero(n, n);
  double c = 0.0;
  for (std::size_t j = 0; j < s0.support_dim; ++j) {
    const auto src = static_cast<Eigen::Index>(j);
    const auto dst = static_cast<Eigen::Index>(perm[j]);
    const double ratio = s1.eigenvalues(dst) / s0.eigenvalues(src);
    c = std::max(c, ratio);
    g += std::sqrt(ratio) * s1.support_basis.col(dst) * s0.support_basis.col(src).adjoint();
  }
  g += s1.kernel_basis * s0.kernel_basis.adjoint();
  return {std::move(g), c};
}

ConnectCertificate certify_connection(Intertwiner&& w, Tolerance tol) {
  GroupElement g = GroupElement::certify(std::move(w.g), tol);
  const double bound = std::sqrt(w.bound_constant + 1.0);
  const double opnorm = g.norm();
  if (opnorm > bound * (1.0 + tol(1e-10))) {
    std::ostringstream msg;
    msg << "intertwiner norm " << opnorm << " exceeds sqrt(C + 1) = " << bound;
    throw Error(ErrorCode::NumericallySingular, msg.str());
  }
  return ConnectCertificate{std::move(g), w.bound_constant, bound, opnorm, 0.0};
}

}  // namespace

double bound_constant(const SpectralSplit& split0, const SpectralSplit& split1,
                      const Matching& matching) {
  require_equal_rank(split0, split1);
  const std::vector<std::size_t> perm = resolve_matching(matching, split0.support_dim);
  double c = 0.0;
  for (std::size_t j = 0; j < split0.support_dim; ++j) {
    c = std::max(c, split1.eigenvalues(static_cast<Eigen::Index>(perm[j])) /
                        split0.eigenvalues(static_cast<Eigen::Index>(j)));
  }
  return c;
}

ConnectCertificate connect_alpha(const PositiveFunctional& rho0, const PositiveFunctional& rho1,
                                 const ConnectOptions& options, Tolerance tol) {
  const SpectralSplit s0 = spectral_split(rho0, options.rank_tol, tol);
  const SpectralSplit s1 = spectral_split(rho1, options.rank_tol, tol);
  ConnectCertificate cert = certify_connection(build_intertwiner(s0, s1, options.matching), tol);
  const PositiveFunctional image = alpha(cert.g, rho0);
  cert.achieved_residual = (image.matrix() - rho1.matrix()).norm();
  return cert;
}

ConnectCertificate connect_phi(const StateDensity& rho0, const StateDensity& rho1,
                               const ConnectOptions& options, Tolerance tol) {
  const SpectralSplit s0 = spectral_split(rho0, options.rank_tol, tol);
  const SpectralSplit s1 = spectral_split(rho1, options.rank_tol, tol);
  ConnectCertificate cert = certify_connection(build_intertwiner(s0, s1, options.matching), tol);
  const StateDensity image = phi(cert.g, rho0, tol);
  cert.achieved_residual = (image.matrix() - rho1.matrix()).norm();
  return cert;
}

bool same_orbit_alpha(const Operator& xi0, const Operator& xi1, Tolerance tol) {
  require_hermitian(xi0, tol);
  require_hermitian(xi1, tol);
  if (xi0.rows() != xi1.rows()) return false;
  const double zero_tol = tol(1e-12) * (1.0 + std::max(xi0.norm(), xi1.norm()));
  return inertia(xi0, zero_tol, tol) == inertia(xi1, zero_tol, tol);
}

StateDensity tracial_orbit_point(const GroupElement& g) {
  const Operator ggd = g.matrix() * g.matrix().adjoint();
  return trusted_state(ggd / ggd.trace().real());
}

double tracial_defect(const Operator& tau) {
  // Tr(tau (E_ij E_kl - E_kl E_ij)) = delta_jk tau_li - delta_li tau_jk.
  const Eigen::Index n = tau.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
          Complex value(0.0, 0.0);
          if (j == k) value += tau(l, i);
          if (l == i) value -= tau(j, k);
          worst = std::max(worst, std::abs(value));
        }
      }
    }
  }
  return worst;
}

Recombination convex_recombine(const StateDensity& tau, const GroupElement& g1,
                               const GroupElement& g2, double lambda, Tolerance tol) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::DomainError, "mixing weight must lie in [0, 1]");
  }
  const double defect = tracial_defect(tau.matrix());
  if (defect > tol(1e-10)) {
    std::ostringstream msg;
    msg << "state is not tracial (defect " << defect << ")";
    throw Error(ErrorCode::NotTracial, msg.str());
  }
  const auto normalized_square = [&](const GroupElement& g) -> Operator {
    const Operator ggd = g.matrix() * g.matrix().adjoint();
    return ggd / tau.evaluate(ggd).real();
  };
  const Operator combined =
      lambda * normalized_square(g1) + (1.0 - lambda) * normalized_square(g2);
  GroupElement p = GroupElement::certify(matrix_sqrt_psd(combined, tol), tol);

  const Operator target =
      lambda * phi(g1, tau, tol).matrix() + (1.0 - lambda) * phi(g2, tau, tol).matrix();
  const double residual = (phi(p, tau, tol).matrix() - target).norm();
  return Recombination{std::move(p), residual};
}

ClassicalRecombination classical_recombine(const ProbabilityVector& p, const ComplexVector& w1,
                                           const ComplexVector& w2, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::DomainError, "mixing weight must lie in [0, 1]");
  }
  if (static_cast<std::size_t>(w1.size()) != p.size() ||
      static_cast<std::size_t>(w2.size()) != p.size()) {
    throw Error(ErrorCode::DomainError, "weight and probability vectors differ in length");
  }
  const RealVector sq1 = w1.cwiseAbs2();
  const RealVector sq2 = w2.cwiseAbs2();
  const RealVector combined =
      lambda * sq1 / sq1.dot(p.values()) + (1.0 - lambda) * sq2 / sq2.dot(p.values());
  ClassicalRecombination out;
  out.weights = combined.cwiseSqrt().cast<Complex>();

  const RealVector target = lambda * classical_phi(w1, p).values() +
                            (1.0 - lambda) * classical_phi(w2, p).values();
  out.residual = (classical_phi(out.weights, p).values() - target).cwiseAbs().maxCoeff();
  return out;
}

StateDensity SpectrumSpec::generate(std::size_t n) const {
  switch (kind) {
    case Kind::Gibbs:
      return gibbs_family(n, parameter);
    case Kind::Uniform:
      if (n == 0) throw Error(ErrorCode::DomainError, "dimension must be positive");
      return trusted_state(identity(n) / static_cast<double>(n));
    case Kind::Power: {
      if (n == 0) throw Error(ErrorCode::DomainError, "dimension must be positive");
      if (!(parameter > 0.0)) throw Error(ErrorCode::ConfigError, "power exponent must be positive");
      RealVector p(static_cast<Eigen::Index>(n));
      for (Eigen::Index j = 0; j < p.size(); ++j) {
        p(j) = std::pow(static_cast<double>(j + 1), -parameter);
      }
      p /= p.sum();
      return trusted_state(p.cast<Complex>().asDiagonal().toDenseMatrix());
    }
  }
  throw Error(ErrorCode::ConfigError, "unknown spectrum kind");
}

std::string SpectrumSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Gibbs: out << "gibbs(" << parameter << ')'; break;
    case Kind::Uniform: out << "uniform"; break;
    case Kind::Power: out << "power(" << parameter << ')'; break;
  }
  return out.str();
}

bool TruncationReport::any_divergence() const {
  return std::any_of(rows.begin(), rows.end(), [](const TruncationRow& r) { return r.diverged; });
}

std::optional<std::size_t> TruncationReport::first_divergence() const {
  std::optional<std::size_t> first;
  for (const TruncationRow& r : rows) {
    if (r.diverged && (!first || r.n < *first)) first = r.n;
  }
  return first;
}

TruncationReport truncation_sweep(const SpectrumSpec& spec0, const SpectrumSpec& spec1,
                                  const std::vector<std::size_t>& dims, double ceiling,
                                  Tolerance tol) {
  if (!(ceiling > 0.0)) throw Error(ErrorCode::ConfigError, "divergence ceiling must be positive");
  TruncationReport report;
  report.ceiling = ceiling;
  report.rows.resize(dims.size());
  std::vector<std::exception_ptr> failures(dims.size());

  // Generated spectra are strictly positive by construction, so the support
  // threshold is zero: tiny tail eigenvalues must stay in the support.
  const ConnectOptions options{std::nullopt, 0.0};
  const auto evaluate = [&](std::size_t index) {
    const std::size_t n = dims[index];
    const StateDensity rho0 = spec0.generate(n);
    const StateDensity rho1 = spec1.generate(n);
    TruncationRow& row = report.rows[index];
    row.n = n;
    row.bound_constant = bound_constant(spectral_split(rho0, 0.0, tol), spectral_split(rho1, 0.0, tol));
    row.diverged = row.bound_constant > ceiling;
    try {
      const ConnectCertificate cert = connect_phi(rho0, rho1, options, tol);
      row.opnorm = cert.opnorm;
      row.residual = cert.achieved_residual;
    } catch (const Error& e) {
      // Past the ceiling the intertwiner may be too ill-conditioned to
      // certify; the row still reports C.
      if (!row.diverged || !is_numerical(e.code())) throw;
      row.opnorm = std::numeric_limits<double>::quiet_NaN();
      row.residual = std::numeric_limits<double>::quiet_NaN();
    }
    row.orbit_class = classify_orbit(rho0, spec0.declared_limit(), 0.0, tol).label();
  };

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < dims.size(); i = next++) {
      try {
        evaluate(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(dims.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return report;
}

}  // namespace stategeom
