// spectral.hpp - single-excitation blocks of the linear model and PT-phase
// classification.
//
// Local block, basis (|0_A 1_B>, |1_A 0_B>):    [[w0, g_ab], [g_ba, w0]]
// Nonlocal block, basis (c'|0>, d'|0>) with c = (a + ib)/sqrt2, d = (a - ib)/sqrt2:
//     [[w0 + i Gamma, i G], [-i G, w0 - i Gamma]]
//     Gamma = (g_ab - g_ba)/2,  G = (g_ab + g_ba)/2
// Both blocks share the eigenvalues w0 +- sqrt(g_ab g_ba) = w0 +- sqrt(G^2 - Gamma^2).

#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <utility>

#include "nhmodes/model.hpp"

namespace nhmodes {

using Block2 = Eigen::Matrix2cd;

struct BlockPair {
    Block2 h_local;
    Block2 h_nonlocal;
    double gamma_rate = 0.0;  // Gamma
    double g_eff = 0.0;       // G
};

// Requires a linear model (u = 0, identity deformation); throws ModelError otherwise.
BlockPair single_excitation_blocks(const ModelSpec& spec);

// Closed-form roots of the characteristic polynomial, sorted by real then
// imaginary part.
std::pair<Complex, Complex> block_eigenvalues(const Block2& block);

// ((m00 - m11)/2)^2 + m01 m10; equals g_ab g_ba = G^2 - Gamma^2 for both blocks.
Complex block_discriminant(const Block2& block);

enum class PtPhase { Unbroken, Broken, Exceptional };

std::string_view to_string(PtPhase p);

inline constexpr double kPtPhaseTol = 1e-10;

// Exceptional when |discriminant| < tol; otherwise Unbroken when both
// eigenvalues are real within tol, Broken when they are not.
PtPhase classify_pt_phase(const Block2& block, double tol = kPtPhaseTol);

// Basis change U'MU from (|0_A 1_B>, |1_A 0_B>) to the nonlocal modes (c, d).
Block2 to_nonlocal_basis(const Block2& local);

}  // namespace nhmodes
