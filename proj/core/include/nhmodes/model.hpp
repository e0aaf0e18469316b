// model.hpp - two-mode Hamiltonians with non-reciprocal coupling.
//
//   H = w0 (a'a + b'b) + u a'a'aa + g_ab a b' + g_ba f(a'a) a' b
//
// (' denotes the adjoint). f is either the identity or sqrt(a'a); the
// deformed term is applied in the written order f(a'a) * a' * b.

#pragma once

#include <string_view>

#include "nhmodes/fock.hpp"

namespace nhmodes {

enum class Deformation { Identity, SqrtN };

std::string_view to_string(Deformation d);

struct ModelSpec {
    double omega0 = 1.0;
    double u = 0.0;
    double g_ab = 0.1;
    double g_ba = 0.1;
    Deformation deformation = Deformation::Identity;

    // Caption parameterization: g_ab = g * r, g_ba = g.
    static ModelSpec from_asymmetry(double omega0, double g, double r, double u, Deformation f);

    bool is_linear() const noexcept { return u == 0.0 && deformation == Deformation::Identity; }

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Throws ModelError when omega0 <= 0 or a parameter is not finite.
void validate(const ModelSpec& spec);

// Gain/loss rate gamma, tunneling v, interaction c of the non-Hermitian
// Bose-Hubbard dimer  H = -2i gamma Lz + 2 v Lx + 2 c Lz^2.
struct BecModelSpec {
    double gamma = 0.0;
    double v = 0.0;
    double c_int = 0.0;
};

struct HamiltonianParts {
    Operator h;
    Operator h_plus;   // (H + H')/2, Hermitian
    Operator h_minus;  // (H - H')/2, anti-Hermitian
};

Operator build_hamiltonian(const ModelSpec& spec, ModeDims dims);

HamiltonianParts decompose(const Operator& h);

struct SpinOperators {
    Operator lx, ly, lz, n;
};

// Schwinger-boson representation: L+ = a'b, L- = L+', Lz = (a'a - b'b)/2.
SpinOperators spin_operators(ModeDims dims);

// w0 N + g_x Lx - i g_y Ly with g_x = g_ab + g_ba, g_y = g_ab - g_ba.
// Only defined for linear models (u = 0, identity deformation).
Operator build_spin_form(const ModelSpec& spec, ModeDims dims);

Operator build_bec_hamiltonian(const BecModelSpec& spec, ModeDims dims);

}  // namespace nhmodes
