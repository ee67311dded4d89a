// Hermitian eigen-solvers that split a matrix into its exactly decoupled
// blocks before diagonalising.
//
// The state families in this library are extremely sparse in the computational
// basis (permutation-like shields, block-diagonal key sectors), so the
// connected components of the nonzero pattern are usually tiny compared with
// the full dimension. Entries that are exactly zero are the only ones treated
// as absent, so the result is identical to a full diagonalisation.

#pragma once

#include "keyrep/opcore.hpp"

#include <vector>

namespace keyrep {

struct HermitianSpectrum {
  RealVector values;  // ascending
  Matrix vectors;     // columns match `values`
};

/// Index sets of the connected components of the nonzero pattern of `m`.
std::vector<std::vector<Index>> decoupled_blocks(const Matrix& m);

RealVector hermitian_eigenvalues(const Matrix& m);
HermitianSpectrum hermitian_eigensystem(const Matrix& m);
RealVector singular_values(const Matrix& m);

}  // namespace keyrep
