#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stategeom/matrix_core.hpp"

namespace stategeom {

namespace detail {
// Passkey for constructors that skip validation. Only library code that has
// produced a value by a positivity-preserving construction uses it.
struct Trusted {
  explicit Trusted() = default;
};
}  // namespace detail

/// Normal positive functional b -> Tr(m b), stored as its PSD density m.
class PositiveFunctional {
 public:
  PositiveFunctional(detail::Trusted, Operator m);

  const Operator& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  /// Tr(m b).
  Complex evaluate(const Operator& b) const;

 private:
  Operator matrix_;
};

/// Positive functional with unit trace.
class StateDensity : public PositiveFunctional {
 public:
  StateDensity(detail::Trusted key, Operator m) : PositiveFunctional(key, std::move(m)) {}
};

class ProbabilityVector {
 public:
  ProbabilityVector(detail::Trusted, RealVector p) : p_(std::move(p)) {}

  const RealVector& values() const noexcept { return p_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(p_.size()); }

 private:
  RealVector p_;
};

/// Eigen-data of a positive functional adapted to H = support + kernel.
struct SpectralSplit {
  std::size_t support_dim = 0;
  RealVector eigenvalues;  // descending, all > rank_tol
  Operator support_basis;  // n x k, columns |e_j>
  Operator kernel_basis;   // n x (n - k), columns |f_l>
  double rank_tol = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(support_basis.rows()); }

  /// Unitary [support_basis | kernel_basis].
  Operator adapted_basis() const;

  /// sum_j p^j |e_j><e_j|.
  Operator reassemble() const;
};

enum class OrbitTag { FiniteRank, CofiniteKernel, FullSupport, InfiniteBoth };

std::string_view orbit_tag_name(OrbitTag tag) noexcept;

/// Orbit class of a nonzero positive functional. At finite dimension the
/// realized class is always FiniteRank(rank); a truncation experiment may
/// additionally declare which infinite-dimensional class it approximates.
struct OrbitClass {
  OrbitTag tag = OrbitTag::FiniteRank;
  std::size_t rank = 0;
  std::size_t corank = 0;
  std::optional<OrbitTag> declared_limit;

  /// "FiniteRank(2)", or "FiniteRank(8)->FullSupport" when a limit is declared.
  std::string label() const;
};

PositiveFunctional validate_positive(const Operator& m, Tolerance tol = {});

StateDensity validate_state(const Operator& m, Tolerance tol = {});

ProbabilityVector validate_probability(const RealVector& p, Tolerance tol = {});

/// Default rank threshold 1e-12 (1 + ||rho||_F).
double default_rank_tol(const Operator& m, Tolerance tol = {});

SpectralSplit spectral_split(const PositiveFunctional& rho, std::optional<double> rank_tol = {},
                             Tolerance tol = {});

OrbitClass classify_orbit(const PositiveFunctional& rho,
                          std::optional<OrbitTag> declared_limit = {},
                          std::optional<double> rank_tol = {}, Tolerance tol = {});

StateDensity embed_classical(const ProbabilityVector& p);

/// diag(c, c r, ..., c r^{n-1}) with c fixing the trace to one.
StateDensity gibbs_family(std::size_t n, double ratio);

/// Projects a Hermitian result of a positivity-preserving map back onto
/// exact Hermitian symmetry and wraps it without re-validation.
StateDensity trusted_state(const Operator& m);
PositiveFunctional trusted_positive(const Operator& m);

}  // namespace stategeom
