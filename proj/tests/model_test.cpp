#include <doctest.h>

#include <cmath>

#include "nhmodes/model.hpp"

using namespace nhmodes;
using namespace std::complex_literals;

namespace {

const ModeDims kDims(6, 6);

// a'a'aa, a b', f a' b assembled from the ladder operators directly.
Operator reference_hamiltonian(const ModelSpec& s, ModeDims d) {
    const ModeOperators o(d);
    Operator f = o.id;
    if (s.deformation == Deformation::SqrtN) {
        Matrix sq = Matrix::Zero(d.joint(), d.joint());
        for (int i = 0; i < d.joint(); ++i) sq(i, i) = std::sqrt(static_cast<double>(d.occupation_a(i)));
        f = Operator(sq, d);
    }
    return s.omega0 * o.total + s.u * (o.a_dag * o.a_dag * o.a * o.a) + s.g_ab * (o.a * o.b_dag) +
           s.g_ba * (f * o.a_dag * o.b);
}

}  // namespace

TEST_CASE("caption parameterization") {
    const ModelSpec s = ModelSpec::from_asymmetry(1.0, 0.1, 2.0, -0.01, Deformation::SqrtN);
    CHECK(s.g_ab == doctest::Approx(0.2));
    CHECK(s.g_ba == doctest::Approx(0.1));
    CHECK(s.u == -0.01);
    CHECK_FALSE(s.is_linear());
    CHECK(ModelSpec::from_asymmetry(1.0, 0.1, 1.0, 0.0, Deformation::Identity).is_linear());
}

TEST_CASE("model validation") {
    ModelSpec s;
    CHECK_NOTHROW(validate(s));
    s.omega0 = 0.0;
    CHECK_THROWS_AS(validate(s), ModelError);
    s.omega0 = 1.0;
    s.g_ab = std::nan("");
    CHECK_THROWS_AS(validate(s), ModelError);
    s.g_ab = -0.1;  // negative couplings are allowed
    CHECK_NOTHROW(validate(s));
}

TEST_CASE("hamiltonian matches an independent ladder-operator construction") {
    for (Deformation f : {Deformation::Identity, Deformation::SqrtN}) {
        for (double r : {0.5, 1.0, 2.0}) {
            const ModelSpec s = ModelSpec::from_asymmetry(1.0, 0.1, r, -0.01, f);
            CHECK(build_hamiltonian(s, kDims).max_abs_diff(reference_hamiltonian(s, kDims)) < 1e-13);
        }
    }
}

TEST_CASE("reciprocal linear model is Hermitian") {
    const Operator h = build_hamiltonian(ModelSpec::from_asymmetry(1.0, 0.1, 1.0, 0.0, Deformation::Identity), kDims);
    CHECK(h.is_hermitian(1e-15));
    CHECK(decompose(h).h_minus.matrix().cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("anti-Hermitian part of the linear model") {
    const ModeOperators o(kDims);
    for (double r : {0.5, 2.0, 3.0}) {
        const ModelSpec s = ModelSpec::from_asymmetry(1.0, 0.1, r, 0.0, Deformation::Identity);
        const HamiltonianParts p = decompose(build_hamiltonian(s, kDims));
        const Operator expected = (0.5 * (s.g_ab - s.g_ba)) * (o.a * o.b_dag - o.a_dag * o.b);
        CHECK(p.h_minus.max_abs_diff(expected) < 1e-15);
        CHECK(p.h_plus.is_hermitian(1e-15));
        CHECK(p.h_minus.is_anti_hermitian(1e-15));
        CHECK((p.h_plus + p.h_minus).max_abs_diff(p.h) < 1e-15);
    }
}

TEST_CASE("sqrt deformation is non-Hermitian even with equal couplings") {
    const Operator h = build_hamiltonian(ModelSpec::from_asymmetry(1.0, 0.1, 1.0, 0.0, Deformation::SqrtN), kDims);
    CHECK_FALSE(h.is_hermitian(1e-6));
    CHECK(decompose(h).h_minus.matrix().cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("decompose of Hermitian and anti-Hermitian inputs") {
    const ModeOperators o(kDims);
    const Operator herm = o.total + 0.3 * (o.a_dag * o.b + o.b_dag * o.a);
    const HamiltonianParts ph = decompose(herm);
    CHECK(ph.h_minus.matrix().cwiseAbs().maxCoeff() == 0.0);
    CHECK(ph.h_plus.max_abs_diff(herm) == 0.0);

    const Operator anti = 1.0i * herm;
    const HamiltonianParts pa = decompose(anti);
    CHECK(pa.h_plus.matrix().cwiseAbs().maxCoeff() == 0.0);
    CHECK(pa.h_minus.max_abs_diff(anti) == 0.0);
}

TEST_CASE("spin operators") {
    const SpinOperators l = spin_operators(kDims);
    const ModeOperators o(kDims);
    CHECK(commutator(o.total, l.lz).matrix().cwiseAbs().maxCoeff() == 0.0);
    CHECK(l.n.max_abs_diff(o.total) == 0.0);

    const StateVector one_zero = tensor_state(fock_state(1, 6), fock_state(0, 6));
    const StateVector lz_psi = l.lz * one_zero;
    CHECK((lz_psi.amplitudes() - 0.5 * one_zero.amplitudes()).norm() < 1e-15);

    // [Lx, Ly] = i Lz on fixed-N sectors that stay below the truncation edge
    const Matrix c = commutator(l.lx, l.ly).matrix();
    const Matrix target = (1.0i * l.lz).matrix();
    const int max_n = kDims.dim_a() - 2;  // L+- keep N, so sectors N < dim - 1 are untouched
    for (int i = 0; i < kDims.joint(); ++i) {
        for (int j = 0; j < kDims.joint(); ++j) {
            const int ni = kDims.occupation_a(i) + kDims.occupation_b(i);
            const int nj = kDims.occupation_a(j) + kDims.occupation_b(j);
            if (ni > max_n || nj > max_n) continue;
            CHECK(std::abs(c(i, j) - target(i, j)) < 1e-13);
        }
    }
}

TEST_CASE("spin form reproduces the linear hamiltonian") {
    for (double r : {0.5, 1.0, 2.0}) {
        const ModelSpec s = ModelSpec::from_asymmetry(1.0, 0.1, r, 0.0, Deformation::Identity);
        const Operator spin = build_spin_form(s, kDims);
        CHECK(spin.max_abs_diff(build_hamiltonian(s, kDims)) < 1e-12);
        if (r == 1.0) CHECK(spin.is_hermitian(1e-15));
    }
    CHECK_THROWS_AS(build_spin_form(ModelSpec::from_asymmetry(1.0, 0.1, 1.0, -0.01, Deformation::Identity), kDims),
                    ModelError);
}

TEST_CASE("zero coupling leaves w0 N") {
    const ModelSpec s = ModelSpec::from_asymmetry(1.3, 0.0, 2.0, 0.0, Deformation::Identity);
    CHECK(build_hamiltonian(s, kDims).max_abs_diff(1.3 * ModeOperators(kDims).total) == 0.0);
}

TEST_CASE("dimer model") {
    const SpinOperators l = spin_operators(kDims);

    const Operator pure_interaction = build_bec_hamiltonian({0.0, 0.0, 0.7}, kDims);
    CHECK(pure_interaction.max_abs_diff(1.4 * (l.lz * l.lz)) < 1e-15);
    const Matrix& m = pure_interaction.matrix();
    CHECK((m - Matrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

    CHECK(build_bec_hamiltonian({0.0, 0.4, 0.0}, kDims).is_hermitian(1e-15));

    const double gamma = 0.05;
    const HamiltonianParts p = decompose(build_bec_hamiltonian({gamma, 0.4, 0.2}, kDims));
    CHECK(p.h_minus.max_abs_diff((-2.0i * gamma) * l.lz) < 1e-15);
}
