// state.hpp - pure or density-matrix state with an overflow-safe trace record.
//
// The stored data is always normalized (unit norm / unit trace). The discarded
// normalization is kept as log_trace = ln Tr(rho) (= ln <psi|psi>), so the
// unnormalized trace of a non-unitary evolution is exp(log_trace).

#pragma once

#include <variant>

#include "nhmodes/fock.hpp"

namespace nhmodes {

enum class StateKind { PureVector, DensityMatrix };

class QuantumState {
public:
    // Normalizes the amplitudes and folds ln(norm^2) into log_trace.
    static QuantumState pure(const StateVector& psi, double log_trace = 0.0);
    static QuantumState pure(Vector amplitudes, ModeDims dims, double log_trace = 0.0);

    // Trace-normalizes rho and folds ln Tr(rho) into log_trace. rho must be
    // Hermitian with a positive trace.
    static QuantumState density(Matrix rho, ModeDims dims, double log_trace = 0.0);
    static QuantumState density_of(const StateVector& psi);

    StateKind kind() const noexcept {
        return std::holds_alternative<Vector>(data_) ? StateKind::PureVector : StateKind::DensityMatrix;
    }
    bool is_pure_vector() const noexcept { return kind() == StateKind::PureVector; }
    const ModeDims& dims() const noexcept { return dims_; }
    double log_trace() const noexcept { return log_trace_; }

    // Throw DimensionError when the kind does not match.
    const Vector& vector() const;
    const Matrix& density() const;

    // rho for either kind; the outer product for a pure vector.
    Matrix density_matrix() const;

    // Same state with a density-matrix representation.
    QuantumState as_density() const;

private:
    QuantumState(std::variant<Vector, Matrix> data, ModeDims dims, double log_trace)
        : data_(std::move(data)), dims_(dims), log_trace_(log_trace) {}

    std::variant<Vector, Matrix> data_;
    ModeDims dims_;
    double log_trace_;
};

}  // namespace nhmodes
