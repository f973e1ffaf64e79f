#pragma once

#include <random>
#include <vector>

#include "qpol/degrees.hpp"
#include "qpol/fock.hpp"
#include "qpol/unpolarized.hpp"

namespace qpol::random {

using Engine = std::mt19937_64;

/// Complex Ginibre matrix with standard normal real and imaginary parts.
CMatrix ginibre(int rows, int cols, Engine& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
CMatrix haar_unitary(int n, Engine& rng);

/// Independent Haar unitary on every manifold, assembled block-diagonally.
CMatrix block_unitary(int cutoff, Engine& rng);

PureState pure_state(int cutoff, Engine& rng);

/// Random pure state confined to manifold N.
PureState manifold_state(int N, int cutoff, Engine& rng);

/// G G† / Tr with G of shape D×rank; rank <= 0 means full rank.
DensityMatrix density(int cutoff, Engine& rng, int rank = 0);

UnpolarizedSpectrum spectrum(int cutoff, Engine& rng);

/// Random diagonal-state weights, sorted descending within each manifold.
DiagonalProbs diagonal_probs(int cutoff, Engine& rng);

}  // namespace qpol::random
