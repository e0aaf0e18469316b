// entanglement.hpp - reduced single-mode states, von Neumann entropy, purity.

#pragma once

#include "nhmodes/state.hpp"

namespace nhmodes {

struct ReducedState {
    Matrix matrix;  // side = dimension of the kept mode
    Mode kept = Mode::A;
};

// Contracts the other mode under the joint ordering index = n_A * dim_b + n_B.
ReducedState partial_trace(const QuantumState& state, Mode keep);

// Eigenvalues in [-clamp_tol, 0) are treated as zero; anything more negative
// throws ReducedStateError.
inline constexpr double kEigenvalueClampTol = 1e-8;

// S = -sum lambda log2 lambda (bits), with 0 log 0 = 0.
double von_neumann_entropy(const ReducedState& rho);

// Tr(rho^2) of the normalized state (1 for a pure vector by construction of
// rho = |psi><psi|, but computed, not assumed).
double purity(const QuantumState& state);
double purity(const ReducedState& rho);

}  // namespace nhmodes
