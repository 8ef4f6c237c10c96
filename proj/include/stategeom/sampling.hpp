#pragma once

#include <cstddef>
#include <random>

#include "stategeom/matrix_core.hpp"
#include "stategeom/state_model.hpp"

namespace stategeom {

/// Seeded generators for experiments and property tests. All draws go
/// through the caller's engine, so a fixed seed gives a fixed stream.
using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
Operator random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);

Operator random_hermitian(std::size_t n, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Operator random_unitary(std::size_t n, Rng& rng);

/// Invertible g = U diag(s) V^dagger with singular values drawn
/// log-uniformly from [1 / max_norm, max_norm], so ||g|| and ||g^-1|| are
/// both bounded by max_norm.
Operator random_invertible(std::size_t n, Rng& rng, double max_norm = 10.0);

/// Random rank-k density matrix with eigenvalues drawn uniformly from
/// (0.05, 1) before normalization, in a Haar-random eigenbasis.
StateDensity random_state(std::size_t n, std::size_t rank, Rng& rng);

/// Point of the probability simplex with every entry strictly positive.
ProbabilityVector random_probability(std::size_t m, Rng& rng);

}  // namespace stategeom
