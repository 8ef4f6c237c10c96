#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stategeom/group_actions.hpp"
#include "stategeom/matrix_core.hpp"
#include "stategeom/state_model.hpp"

namespace stategeom {

/// Intertwiner g with g rho0 g^dagger = rho1 together with the constant C
/// bounding the eigenvalue ratios p1^j / p0^j and the implied operator-norm
/// bound sqrt(C + 1).
struct ConnectCertificate {
  GroupElement g;
  double bound_constant = 0.0;
  double norm_bound = 0.0;
  double opnorm = 0.0;
  double achieved_residual = 0.0;
};

/// Optional matching of support eigenvectors: support index j of the source
/// is sent to support index permutation[j] of the target. Identity when
/// absent (both spectra sorted descending).
using Matching = std::optional<std::vector<std::size_t>>;

struct ConnectOptions {
  Matching matching;
  /// Support threshold passed to spectral_split; its default when absent.
  std::optional<double> rank_tol;
};

/// max_j p1^j / p0^j over the matched positive spectra. RankMismatch if the
/// ranks differ.
double bound_constant(const SpectralSplit& split0, const SpectralSplit& split1,
                      const Matching& matching = {});

/// g = sum_j sqrt(p1^j / p0^j) |e1_j><e0_j| + sum_l |f1_l><f0_l|.
/// The certificate's norm bound is checked on every call; a violation
/// raises NumericallySingular.
ConnectCertificate connect_alpha(const PositiveFunctional& rho0, const PositiveFunctional& rho1,
                                 const ConnectOptions& options = {}, Tolerance tol = {});

/// Same intertwiner for states; the residual is measured through phi.
ConnectCertificate connect_phi(const StateDensity& rho0, const StateDensity& rho1,
                               const ConnectOptions& options = {}, Tolerance tol = {});

/// Finite-dimensional congruence-orbit test via Sylvester inertia, with zero
/// threshold 1e-12 (1 + max ||xi_i||_F).
bool same_orbit_alpha(const Operator& xi0, const Operator& xi1, Tolerance tol = {});

/// phi(g, I/n) = g g^dagger / Tr(g g^dagger).
StateDensity tracial_orbit_point(const GroupElement& g);

struct Recombination {
  GroupElement p;
  double residual = 0.0;
};

/// Element p with phi(p, tau) = lambda phi(g1, tau) + (1 - lambda) phi(g2, tau),
/// built as the square root of
///   lambda g1 g1^dagger / tau(g1 g1^dagger) + (1 - lambda) g2 g2^dagger / tau(g2 g2^dagger).
/// tau must be tracial: Tr(tau E_ij E_kl) = Tr(tau E_kl E_ij) over all matrix
/// units, within 1e-10; otherwise NotTracial.
Recombination convex_recombine(const StateDensity& tau, const GroupElement& g1,
                               const GroupElement& g2, double lambda, Tolerance tol = {});

struct ClassicalRecombination {
  ComplexVector weights;
  double residual = 0.0;
};

/// Abelian counterpart on the probability simplex, where every state is
/// tracial: weights sqrt(lambda |w1|^2 / <p, |w1|^2> + (1 - lambda) |w2|^2 / <p, |w2|^2>).
ClassicalRecombination classical_recombine(const ProbabilityVector& p, const ComplexVector& w1,
                                           const ComplexVector& w2, double lambda);

/// Largest |Tr(tau (ab - ba))| over matrix-unit pairs.
double tracial_defect(const Operator& tau);

/// Spectrum generator for truncation experiments.
struct SpectrumSpec {
  enum class Kind { Gibbs, Uniform, Power };
  Kind kind = Kind::Gibbs;
  /// Gibbs: ratio r in (0,1). Power: exponent s > 0, p_j ~ (j+1)^-s.
  double parameter = 0.5;

  StateDensity generate(std::size_t n) const;
  /// Infinite-dimensional class the truncations approximate.
  OrbitTag declared_limit() const noexcept { return OrbitTag::FullSupport; }
  std::string describe() const;
};

struct TruncationRow {
  std::size_t n = 0;
  double bound_constant = 0.0;
  double opnorm = 0.0;
  double residual = 0.0;
  bool diverged = false;
  std::string orbit_class;
};

struct TruncationReport {
  std::vector<TruncationRow> rows;
  double ceiling = 1e6;

  bool any_divergence() const;
  /// Smallest n flagged as divergent, if any.
  std::optional<std::size_t> first_divergence() const;
};

/// For every n, connects the truncated spectra spec0(n) -> spec1(n) and
/// records C, ||g||_op and the phi residual. Dimensions are evaluated on a
/// worker pool; rows keep the input order.
TruncationReport truncation_sweep(const SpectrumSpec& spec0, const SpectrumSpec& spec1,
                                  const std::vector<std::size_t>& dims, double ceiling = 1e6,
                                  Tolerance tol = {});

}  // namespace stategeom
