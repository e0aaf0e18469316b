#include "nhmodes/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace nhmodes {

ReducedState partial_trace(const QuantumState& state, Mode keep) {
    const ModeDims& d = state.dims();
    const int da = d.dim_a();
    const int db = d.dim_b();
    Matrix out;

    if (state.is_pure_vector()) {
        // Psi(n_a, n_b) = amplitude(n_a * db + n_b); rho_A = Psi Psi', rho_B = Psi^T conj(Psi).
        const Vector& v = state.vector();
        Matrix psi(da, db);
        for (int i = 0; i < da; ++i) psi.row(i) = v.segment(i * db, db).transpose();
        out = keep == Mode::A ? Matrix(psi * psi.adjoint()) : Matrix(psi.transpose() * psi.conjugate());
    } else {
        const Matrix& rho = state.density();
        if (keep == Mode::A) {
            out = Matrix::Zero(da, da);
            for (int n = 0; n < da; ++n)
                for (int m = 0; m < da; ++m) out(n, m) = rho.block(n * db, m * db, db, db).trace();
        } else {
            out = Matrix::Zero(db, db);
            for (int n = 0; n < da; ++n) out += rho.block(n * db, n * db, db, db);
        }
    }
    const double tr = out.trace().real();
    if (!(tr > 0.0)) throw ReducedStateError("reduced state has non-positive trace");
    out /= tr;
    return ReducedState{std::move(out), keep};
}

double von_neumann_entropy(const ReducedState& rho) {
    const Matrix herm = 0.5 * (rho.matrix + rho.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ReducedStateError("eigendecomposition failed");
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double lambda = es.eigenvalues()(i);
        if (lambda < -kEigenvalueClampTol) {
            throw ReducedStateError("reduced state eigenvalue " + std::to_string(lambda) +
                                    " below -1e-8");
        }
        lambda = std::clamp(lambda, 0.0, 1.0);
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

double purity(const QuantumState& state) {
    if (state.is_pure_vector()) {
        const double n2 = state.vector().squaredNorm();
        return n2 * n2;
    }
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return state.density().cwiseAbs2().sum();
}

double purity(const ReducedState& rho) { return rho.matrix.cwiseAbs2().sum(); }

}  // namespace nhmodes
