#include "nhmodes/model.hpp"

#include <cmath>
#include <string>

namespace nhmodes {

using namespace std::complex_literals;

std::string_view to_string(Deformation d) {
    switch (d) {
        case Deformation::Identity: return "identity";
        case Deformation::SqrtN: return "sqrtn";
    }
    return "?";
}

ModelSpec ModelSpec::from_asymmetry(double omega0, double g, double r, double u, Deformation f) {
    ModelSpec s;
    s.omega0 = omega0;
    s.u = u;
    s.g_ab = g * r;
    s.g_ba = g;
    s.deformation = f;
    return s;
}

void validate(const ModelSpec& spec) {
    if (!(spec.omega0 > 0.0) || !std::isfinite(spec.omega0)) {
        throw ModelError("omega0 must be positive and finite");
    }
    if (!std::isfinite(spec.u) || !std::isfinite(spec.g_ab) || !std::isfinite(spec.g_ba)) {
        throw ModelError("model parameters must be finite");
    }
}

namespace {

// Diagonal f(a'a) embedded on mode A: all ones or sqrt(n_A), sqrt(0) = 0.
Operator deformation_op(Deformation d, ModeDims dims) {
    if (d == Deformation::Identity) return Operator::identity(dims);
    Matrix m = Matrix::Zero(dims.dim_a(), dims.dim_a());
    for (int n = 0; n < dims.dim_a(); ++n) m(n, n) = std::sqrt(static_cast<double>(n));
    return embed(ModeOperator(std::move(m)), Mode::A, dims);
}

}  // namespace

Operator build_hamiltonian(const ModelSpec& spec, ModeDims dims) {
    validate(spec);
    const ModeOperators ops(dims);
    const Operator f = deformation_op(spec.deformation, dims);

    Operator h = spec.omega0 * ops.total;
    if (spec.u != 0.0) h = h + spec.u * (ops.a_dag * ops.a_dag * ops.a * ops.a);
    h = h + spec.g_ab * (ops.a * ops.b_dag);
    h = h + spec.g_ba * (f * ops.a_dag * ops.b);
    return h;
}

HamiltonianParts decompose(const Operator& h) {
    const Operator hd = h.dagger();
    return HamiltonianParts{h, 0.5 * (h + hd), 0.5 * (h - hd)};
}

SpinOperators spin_operators(ModeDims dims) {
    const ModeOperators ops(dims);
    const Operator l_plus = ops.a_dag * ops.b;
    const Operator l_minus = l_plus.dagger();
    return SpinOperators{
        0.5 * (l_plus + l_minus),
        (1.0 / 2.0i) * (l_plus - l_minus),
        0.5 * (ops.n_a - ops.n_b),
        ops.total,
    };
}

Operator build_spin_form(const ModelSpec& spec, ModeDims dims) {
    validate(spec);
    if (!spec.is_linear()) {
        throw ModelError("spin form requires u = 0 and identity deformation");
    }
    const SpinOperators s = spin_operators(dims);
    const double g_x = spec.g_ab + spec.g_ba;
    const double g_y = spec.g_ab - spec.g_ba;
    return spec.omega0 * s.n + g_x * s.lx - (1.0i * g_y) * s.ly;
}

Operator build_bec_hamiltonian(const BecModelSpec& spec, ModeDims dims) {
    if (!std::isfinite(spec.gamma) || !std::isfinite(spec.v) || !std::isfinite(spec.c_int)) {
        throw ModelError("BEC dimer parameters must be finite");
    }
    const SpinOperators s = spin_operators(dims);
    return (-2.0i * spec.gamma) * s.lz + (2.0 * spec.v) * s.lx + (2.0 * spec.c_int) * (s.lz * s.lz);
}

}  // namespace nhmodes
