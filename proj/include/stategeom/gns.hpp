#pragma once

#include <cstddef>
#include <vector>

#include "stategeom/group_actions.hpp"
#include "stategeom/matrix_core.hpp"
#include "stategeom/sampling.hpp"
#include "stategeom/state_model.hpp"

namespace stategeom {

/// Matrix unit E_{row,col} = |row><col|.
struct MatrixUnit {
  std::size_t row = 0;
  std::size_t col = 0;
};

/// Finite-dimensional GNS data (H, pi, psi) of a state on either the full
/// matrix algebra M_n or its diagonal (abelian) subalgebra.
struct GnsTriple {
  std::size_t n = 0;
  std::size_t dim = 0;
  /// Matrix units spanning the represented algebra; rep[i] = pi(basis[i]).
  std::vector<MatrixUnit> basis;
  std::vector<Operator> rep;
  ComplexVector cyclic;
  /// |basis| x dim; column m holds the coefficients of the m-th orthonormal
  /// GNS vector in terms of the classes [E_alpha].
  Operator embed;

  bool abelian() const noexcept { return basis.size() == n; }

  /// pi(x), extended linearly from the matrix units. Entries of x outside
  /// the represented algebra are ignored.
  Operator represent(const Operator& x) const;

  /// <psi | pi(x) | psi>.
  Complex expectation(const Operator& x) const;
};

/// Quotients the Gram matrix G_{ab} = rho(a^dagger b) over the n^2 matrix
/// units by its null space (threshold 1e-12 ||G||_2) and represents left
/// multiplication on the orthonormalized classes. dim = n rank(rho).
GnsTriple gns_construct(const StateDensity& rho, Tolerance tol = {});

/// Same construction restricted to the diagonal subalgebra, for a
/// classical probability vector.
GnsTriple gns_construct_diagonal(const ProbabilityVector& p, Tolerance tol = {});

/// Moves the cyclic vector to pi(g) psi / sqrt(<psi| pi(g^dagger g) |psi>),
/// the GNS vector of phi(g, rho) in the same space and representation.
GnsTriple gns_transform(const GnsTriple& triple, const GroupElement& g, const StateDensity& rho,
                        Tolerance tol = {});

/// Complex dimension of the commutant of pi(A) in M_dim. Solved on the
/// generating pair diag(1..n) and the Hermitian nearest-neighbour shift
/// (diag(1..n) alone for the abelian algebra).
std::size_t commutant_dimension(const GnsTriple& triple);

struct GnsVerification {
  double homomorphism = 0.0;   // max ||pi(ab) - pi(a) pi(b)|| over samples
  double involution = 0.0;     // max ||pi(a^dagger) - pi(a)^dagger||
  double unit = 0.0;           // ||pi(I) - I||
  double reconstruction = 0.0; // max |<psi|pi(E)|psi> - rho(E)| over matrix units
  double cyclic_norm = 0.0;    // | ||psi|| - 1 |
  std::size_t cyclic_rank = 0; // rank of {pi(E) psi}
};

/// Checks the triple against rho, sampling `samples` random pairs for the
/// product law.
GnsVerification verify_gns(const GnsTriple& triple, const Operator& rho, Rng& rng,
                           std::size_t samples = 200);

struct PurityReport {
  bool pure = false;
  std::size_t rank = 0;
  std::size_t gns_dim = 0;
  std::size_t commutant_dim = 0;
};

/// Pure iff rank(rho) = 1; the commutant dimension of the GNS
/// representation (1 exactly for irreducible representations) is reported
/// as an independent check.
PurityReport purity_check(const StateDensity& rho, Tolerance tol = {});

}  // namespace stategeom
