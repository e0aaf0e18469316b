#include "nhmodes/state.hpp"

#include <cmath>
#include <string>

namespace nhmodes {

QuantumState QuantumState::pure(const StateVector& psi, double log_trace) {
    return pure(psi.amplitudes(), psi.dims(), log_trace);
}

QuantumState QuantumState::pure(Vector amplitudes, ModeDims dims, double log_trace) {
    if (amplitudes.size() != dims.joint()) {
        throw DimensionError("state of length " + std::to_string(amplitudes.size()) +
                             " does not match joint dimension " + std::to_string(dims.joint()));
    }
    const double n2 = amplitudes.squaredNorm();
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw DimensionError("state vector norm must be finite and positive");
    }
    amplitudes /= std::sqrt(n2);
    return QuantumState(std::move(amplitudes), dims, log_trace + std::log(n2));
}

QuantumState QuantumState::density(Matrix rho, ModeDims dims, double log_trace) {
    if (rho.rows() != dims.joint() || rho.cols() != dims.joint()) {
        throw DimensionError("density matrix of size " + std::to_string(rho.rows()) +
                             " does not match joint dimension " + std::to_string(dims.joint()));
    }
    const double tr = rho.trace().real();
    if (!(tr > 0.0) || !std::isfinite(tr)) {
        throw DimensionError("density matrix trace must be finite and positive");
    }
    rho /= tr;
    return QuantumState(Matrix(0.5 * (rho + rho.adjoint())), dims, log_trace + std::log(tr));
}

QuantumState QuantumState::density_of(const StateVector& psi) {
    return pure(psi).as_density();
}

const Vector& QuantumState::vector() const {
    if (const auto* v = std::get_if<Vector>(&data_)) return *v;
    throw DimensionError("state holds a density matrix, not a vector");
}

const Matrix& QuantumState::density() const {
    if (const auto* m = std::get_if<Matrix>(&data_)) return *m;
    throw DimensionError("state holds a vector, not a density matrix");
}

Matrix QuantumState::density_matrix() const {
    if (const auto* v = std::get_if<Vector>(&data_)) return (*v) * v->adjoint();
    return std::get<Matrix>(data_);
}

QuantumState QuantumState::as_density() const {
    if (kind() == StateKind::DensityMatrix) return *this;
    return QuantumState(density_matrix(), dims_, log_trace_);
}

}  // namespace nhmodes
