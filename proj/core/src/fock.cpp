#include "nhmodes/fock.hpp"

#include <cmath>
#include <string>

namespace nhmodes {

namespace {

void require_dim(int dim, const char* what) {
    if (dim < 2) {
        throw DimensionError(std::string(what) + " must be >= 2, got " + std::to_string(dim));
    }
}

void require_same(const ModeDims& x, const ModeDims& y) {
    if (!(x == y)) {
        throw DimensionError("joint dimensions differ: (" + std::to_string(x.dim_a()) + "," +
                             std::to_string(x.dim_b()) + ") vs (" + std::to_string(y.dim_a()) +
                             "," + std::to_string(y.dim_b()) + ")");
    }
}

void require_same(const ModeOperator& x, const ModeOperator& y) {
    if (x.dim() != y.dim()) {
        throw DimensionError("single-mode dimensions differ: " + std::to_string(x.dim()) + " vs " +
                             std::to_string(y.dim()));
    }
}

Matrix kron(const Matrix& x, const Matrix& y) {
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return out;
}

}  // namespace

ModeDims::ModeDims(int dim_a, int dim_b) : dim_a_(dim_a), dim_b_(dim_b) {
    require_dim(dim_a, "dim_a");
    require_dim(dim_b, "dim_b");
}

int ModeDims::index(int n_a, int n_b) const {
    if (n_a < 0 || n_a >= dim_a_ || n_b < 0 || n_b >= dim_b_) {
        throw DimensionError("occupation (" + std::to_string(n_a) + "," + std::to_string(n_b) +
                             ") outside truncation");
    }
    return n_a * dim_b_ + n_b;
}

// ---------------------------------------------------------------------------

ModeOperator::ModeOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionError("mode operator must be square");
    require_dim(static_cast<int>(m_.rows()), "mode dimension");
}

ModeOperator operator*(const ModeOperator& x, const ModeOperator& y) {
    require_same(x, y);
    return ModeOperator(x.m_ * y.m_);
}

ModeOperator operator+(const ModeOperator& x, const ModeOperator& y) {
    require_same(x, y);
    return ModeOperator(x.m_ + y.m_);
}

ModeOperator operator-(const ModeOperator& x, const ModeOperator& y) {
    require_same(x, y);
    return ModeOperator(x.m_ - y.m_);
}

ModeOperator operator*(Complex s, const ModeOperator& x) { return ModeOperator(s * x.m_); }

// ---------------------------------------------------------------------------

Operator::Operator(Matrix m, ModeDims dims) : m_(std::move(m)), dims_(dims) {
    if (m_.rows() != dims_.joint() || m_.cols() != dims_.joint()) {
        throw DimensionError("operator of size " + std::to_string(m_.rows()) + "x" +
                             std::to_string(m_.cols()) + " does not match joint dimension " +
                             std::to_string(dims_.joint()));
    }
}

Operator Operator::identity(ModeDims dims) {
    return Operator(Matrix::Identity(dims.joint(), dims.joint()), dims);
}

Operator Operator::zero(ModeDims dims) {
    return Operator(Matrix::Zero(dims.joint(), dims.joint()), dims);
}

double Operator::max_abs_diff(const Operator& other) const {
    require_same(dims_, other.dims_);
    return (m_ - other.m_).cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_anti_hermitian(double tol) const {
    return (m_ + m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator operator*(const Operator& x, const Operator& y) {
    require_same(x.dims_, y.dims_);
    return Operator(x.m_ * y.m_, x.dims_);
}

Operator operator+(const Operator& x, const Operator& y) {
    require_same(x.dims_, y.dims_);
    return Operator(x.m_ + y.m_, x.dims_);
}

Operator operator-(const Operator& x, const Operator& y) {
    require_same(x.dims_, y.dims_);
    return Operator(x.m_ - y.m_, x.dims_);
}

Operator operator-(const Operator& x) { return Operator(-x.m_, x.dims_); }

Operator operator*(Complex s, const Operator& x) { return Operator(s * x.m_, x.dims_); }

Operator commutator(const Operator& x, const Operator& y) { return x * y - y * x; }

Operator anticommutator(const Operator& x, const Operator& y) { return x * y + y * x; }

// ---------------------------------------------------------------------------

StateVector::StateVector(Vector amplitudes, ModeDims dims) : amp_(std::move(amplitudes)), dims_(dims) {
    if (amp_.size() != dims_.joint()) {
        throw DimensionError("state of length " + std::to_string(amp_.size()) +
                             " does not match joint dimension " + std::to_string(dims_.joint()));
    }
}

StateVector operator*(const Operator& op, const StateVector& psi) {
    require_same(op.dims(), psi.dims_);
    return StateVector(op.matrix() * psi.amp_, psi.dims_);
}

// ---------------------------------------------------------------------------

ModeOperator lowering_op(int dim) {
    require_dim(dim, "mode dimension");
    Matrix m = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
    return ModeOperator(std::move(m));
}

ModeOperator raising_op(int dim) { return lowering_op(dim).dagger(); }

ModeOperator number_op(int dim) {
    require_dim(dim, "mode dimension");
    Matrix m = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
    return ModeOperator(std::move(m));
}

ModeOperator mode_identity(int dim) {
    require_dim(dim, "mode dimension");
    return ModeOperator(Matrix::Identity(dim, dim));
}

Operator embed(const ModeOperator& op, Mode mode, ModeDims dims) {
    const int expected = dims.dim(mode);
    if (op.dim() != expected) {
        throw DimensionError("cannot embed a " + std::to_string(op.dim()) + "-level operator into mode " +
                             (mode == Mode::A ? "A" : "B") + " of dimension " +
                             std::to_string(expected));
    }
    if (mode == Mode::A) {
        return Operator(kron(op.matrix(), Matrix::Identity(dims.dim_b(), dims.dim_b())), dims);
    }
    return Operator(kron(Matrix::Identity(dims.dim_a(), dims.dim_a()), op.matrix()), dims);
}

ModeState coherent_state(Complex alpha, int dim) {
    require_dim(dim, "mode dimension");
    ModeState s;
    s.amplitudes = Vector::Zero(dim);
    // c_n = alpha^n / sqrt(n!) built recursively to avoid factorial overflow.
    Complex c = 1.0;
    s.amplitudes(0) = c;
    for (int n = 1; n < dim; ++n) {
        c *= alpha / std::sqrt(static_cast<double>(n));
        s.amplitudes(n) = c;
    }
    // Poisson tail summed directly; 1 - kept would lose it to cancellation.
    const double mean = std::norm(alpha);
    double term = std::exp(-mean);
    for (int n = 1; n < dim; ++n) term *= mean / n;
    double tail = 0.0;
    for (int n = dim; term > 0.0; ++n) {
        term *= mean / n;
        tail += term;
        if (term < 1e-18 * tail && n > mean) break;
    }
    s.tail_weight = tail;
    s.amplitudes /= s.amplitudes.norm();
    return s;
}

ModeState fock_state(int n, int dim) {
    require_dim(dim, "mode dimension");
    if (n < 0 || n >= dim) {
        throw DimensionError("Fock level " + std::to_string(n) + " outside truncation " +
                             std::to_string(dim));
    }
    ModeState s;
    s.amplitudes = Vector::Zero(dim);
    s.amplitudes(n) = 1.0;
    return s;
}

StateVector tensor_state(const ModeState& psi_a, const ModeState& psi_b) {
    const ModeDims dims(psi_a.dim(), psi_b.dim());
    Vector amp(dims.joint());
    for (int i = 0; i < dims.dim_a(); ++i) {
        amp.segment(i * dims.dim_b(), dims.dim_b()) = psi_a.amplitudes(i) * psi_b.amplitudes;
    }
    return StateVector(std::move(amp), dims);
}

ModeOperators::ModeOperators(ModeDims d)
    : dims(d),
      a(embed(lowering_op(d.dim_a()), Mode::A, d)),
      a_dag(a.dagger()),
      b(embed(lowering_op(d.dim_b()), Mode::B, d)),
      b_dag(b.dagger()),
      n_a(embed(number_op(d.dim_a()), Mode::A, d)),
      n_b(embed(number_op(d.dim_b()), Mode::B, d)),
      total(n_a + n_b),
      id(Operator::identity(d)) {}

}  // namespace nhmodes
