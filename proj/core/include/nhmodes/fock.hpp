// fock.hpp - truncated Fock spaces for one and two bosonic modes.
//
// Joint basis ordering is |n_A> (x) |n_B> with mode A as the slow index:
//     index(n_A, n_B) = n_A * dim_b + n_B
// Every routine that builds or contracts joint objects (embed, tensor_state,
// partial_trace) uses this ordering.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

#include "nhmodes/error.hpp"

namespace nhmodes {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Mode { A, B };

class ModeDims {
public:
    ModeDims(int dim_a, int dim_b);

    int dim_a() const noexcept { return dim_a_; }
    int dim_b() const noexcept { return dim_b_; }
    int dim(Mode m) const noexcept { return m == Mode::A ? dim_a_ : dim_b_; }
    int joint() const noexcept { return dim_a_ * dim_b_; }

    int index(int n_a, int n_b) const;
    int occupation_a(int index) const noexcept { return index / dim_b_; }
    int occupation_b(int index) const noexcept { return index % dim_b_; }

    friend bool operator==(const ModeDims&, const ModeDims&) = default;

private:
    int dim_a_;
    int dim_b_;
};

// Operator on a single truncated mode (levels 0..dim-1).
class ModeOperator {
public:
    explicit ModeOperator(Matrix m);

    const Matrix& matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }

    ModeOperator dagger() const { return ModeOperator(m_.adjoint()); }

    friend ModeOperator operator*(const ModeOperator& x, const ModeOperator& y);
    friend ModeOperator operator+(const ModeOperator& x, const ModeOperator& y);
    friend ModeOperator operator-(const ModeOperator& x, const ModeOperator& y);
    friend ModeOperator operator*(Complex s, const ModeOperator& x);

private:
    Matrix m_;
};

// Operator on the joint two-mode space.
class Operator {
public:
    Operator(Matrix m, ModeDims dims);

    static Operator identity(ModeDims dims);
    static Operator zero(ModeDims dims);

    const Matrix& matrix() const noexcept { return m_; }
    const ModeDims& dims() const noexcept { return dims_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

    Operator dagger() const { return Operator(m_.adjoint(), dims_); }

    // Largest elementwise |X - Y|.
    double max_abs_diff(const Operator& other) const;
    bool is_hermitian(double tol) const;
    bool is_anti_hermitian(double tol) const;

    friend Operator operator*(const Operator& x, const Operator& y);
    friend Operator operator+(const Operator& x, const Operator& y);
    friend Operator operator-(const Operator& x, const Operator& y);
    friend Operator operator-(const Operator& x);
    friend Operator operator*(Complex s, const Operator& x);
    friend Operator operator*(const Operator& x, Complex s) { return s * x; }

private:
    Matrix m_;
    ModeDims dims_;
};

Operator commutator(const Operator& x, const Operator& y);
Operator anticommutator(const Operator& x, const Operator& y);

// Single-mode amplitudes. tail_weight is the probability mass a state
// definition placed above the truncation before renormalization.
struct ModeState {
    Vector amplitudes;
    double tail_weight = 0.0;

    int dim() const noexcept { return static_cast<int>(amplitudes.size()); }
};

class StateVector {
public:
    StateVector(Vector amplitudes, ModeDims dims);

    const Vector& amplitudes() const noexcept { return amp_; }
    const ModeDims& dims() const noexcept { return dims_; }
    Complex amplitude(int n_a, int n_b) const { return amp_(dims_.index(n_a, n_b)); }
    double norm() const { return amp_.norm(); }

    friend StateVector operator*(const Operator& op, const StateVector& psi);

private:
    Vector amp_;
    ModeDims dims_;
};

// a with <n-1|a|n> = sqrt(n).
ModeOperator lowering_op(int dim);
ModeOperator raising_op(int dim);
ModeOperator number_op(int dim);
ModeOperator mode_identity(int dim);

// op (x) I for mode A, I (x) op for mode B.
Operator embed(const ModeOperator& op, Mode mode, ModeDims dims);

// Truncated coherent state c_n = alpha^n / sqrt(n!), renormalized to unit norm.
// tail_weight = 1 - exp(-|alpha|^2) * sum_{n<dim} |c_n|^2.
ModeState coherent_state(Complex alpha, int dim);
ModeState fock_state(int n, int dim);

StateVector tensor_state(const ModeState& psi_a, const ModeState& psi_b);

// Ladder and number operators of both modes embedded in one joint space.
struct ModeOperators {
    explicit ModeOperators(ModeDims dims);

    ModeDims dims;
    Operator a, a_dag, b, b_dag;
    Operator n_a, n_b, total;
    Operator id;
};

}  // namespace nhmodes
