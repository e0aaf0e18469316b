#include "nhmodes/spectral.hpp"

#include <cmath>

namespace nhmodes {

using namespace std::complex_literals;

BlockPair single_excitation_blocks(const ModelSpec& spec) {
    validate(spec);
    if (!spec.is_linear()) throw ModelError("single-excitation blocks need u = 0 and identity deformation");
    const double w0 = spec.omega0;
    BlockPair p;
    p.gamma_rate = 0.5 * (spec.g_ab - spec.g_ba);
    p.g_eff = 0.5 * (spec.g_ab + spec.g_ba);
    p.h_local << w0, spec.g_ab, spec.g_ba, w0;
    p.h_nonlocal << w0 + 1.0i * p.gamma_rate, 1.0i * p.g_eff, -1.0i * p.g_eff, w0 - 1.0i * p.gamma_rate;
    return p;
}

Complex block_discriminant(const Block2& m) {
    const Complex half_diff = 0.5 * (m(0, 0) - m(1, 1));
    return half_diff * half_diff + m(0, 1) * m(1, 0);
}

std::pair<Complex, Complex> block_eigenvalues(const Block2& m) {
    const Complex mean = 0.5 * (m(0, 0) + m(1, 1));
    const Complex root = std::sqrt(block_discriminant(m));
    Complex x = mean - root;
    Complex y = mean + root;
    auto less = [](Complex p, Complex q) {
        return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag());
    };
    if (less(y, x)) std::swap(x, y);
    return {x, y};
}

std::string_view to_string(PtPhase p) {
    switch (p) {
        case PtPhase::Unbroken: return "unbroken";
        case PtPhase::Broken: return "broken";
        case PtPhase::Exceptional: return "exceptional";
    }
    return "?";
}

PtPhase classify_pt_phase(const Block2& m, double tol) {
    if (std::abs(block_discriminant(m)) < tol) return PtPhase::Exceptional;
    const auto [x, y] = block_eigenvalues(m);
    if (std::abs(x.imag()) <= tol && std::abs(y.imag()) <= tol) return PtPhase::Unbroken;
    return PtPhase::Broken;
}

Block2 to_nonlocal_basis(const Block2& local) {
    // Columns: coordinates of c'|0> = (|1,0> - i|0,1>)/sqrt2 and
    // d'|0> = (|1,0> + i|0,1>)/sqrt2 in the (|0,1>, |1,0>) basis.
    const double s = 1.0 / std::sqrt(2.0);
    Block2 u;
    u << -1.0i * s, 1.0i * s, s, s;
    return u.adjoint() * local * u;
}

}  // namespace nhmodes
