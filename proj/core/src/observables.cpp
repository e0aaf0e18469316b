#include "nhmodes/observables.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace nhmodes {

using namespace std::complex_literals;

namespace {

void require_dims(const ModeDims& op, const ModeDims& state) {
    if (!(op == state)) throw DimensionError("observable and state live on different joint spaces");
}

}  // namespace

Complex expectation(const Operator& op, const QuantumState& state) {
    require_dims(op.dims(), state.dims());
    if (state.is_pure_vector()) {
        const Vector& v = state.vector();
        return v.dot(op.matrix() * v) / v.squaredNorm();
    }
    const Matrix& rho = state.density();
    // Tr(A rho) = sum_ij A_ij rho_ji
    const Complex num = op.matrix().cwiseProduct(rho.transpose()).sum();
    return num / rho.trace();
}

double checked_real(Complex z, std::string_view what, double tol) {
    if (!(std::abs(z.imag()) <= tol)) {
        throw NumericalError(std::string(what) + " has imaginary residue " +
                             std::to_string(z.imag()));
    }
    return z.real();
}

double real_expectation(const Operator& op, const QuantumState& state) {
    return checked_real(expectation(op, state), "expectation");
}

ExpectationRecord record(std::string name, double time, const Operator& op, const QuantumState& state) {
    const Complex v = expectation(op, state);
    return ExpectationRecord{std::move(name), time, v, std::abs(v.imag())};
}

Complex heisenberg_rhs(const Operator& op, const QuantumState& state, const HamiltonianParts& parts) {
    return HeisenbergRate(op, parts)(state);
}

double number_rate_rhs(const QuantumState& state, double g_ab, double g_ba) {
    return NumberRate(state.dims(), g_ab, g_ba)(state);
}

// ---------------------------------------------------------------------------

SparseObservable::SparseObservable(const Operator& op) : dims_(op.dims()) {
    const Matrix& d = op.matrix();
    std::vector<Eigen::Triplet<Complex>> entries;
    for (Eigen::Index j = 0; j < d.cols(); ++j)
        for (Eigen::Index i = 0; i < d.rows(); ++i)
            if (d(i, j) != Complex(0.0)) entries.emplace_back(i, j, d(i, j));
    m_.resize(d.rows(), d.cols());
    m_.setFromTriplets(entries.begin(), entries.end());
}

Complex SparseObservable::expectation(const QuantumState& state) const {
    require_dims(dims_, state.dims());
    if (state.is_pure_vector()) {
        const Vector& v = state.vector();
        const Vector av = m_ * v;
        return v.dot(av) / v.squaredNorm();
    }
    const Matrix& rho = state.density();
    Complex num = 0.0;
    for (Eigen::Index i = 0; i < m_.outerSize(); ++i)
        for (decltype(m_)::InnerIterator it(m_, i); it; ++it) num += it.value() * rho(it.col(), i);
    return num / rho.trace();
}

HeisenbergRate::HeisenbergRate(const Operator& op, const HamiltonianParts& parts)
    : a_(op),
      comm_plus_(commutator(op, parts.h_plus)),
      anti_minus_(anticommutator(op, parts.h_minus)),
      h_minus_(parts.h_minus) {}

Complex HeisenbergRate::operator()(const QuantumState& state) const {
    return -1.0i * comm_plus_.expectation(state) - 1.0i * anti_minus_.expectation(state) +
           2.0i * a_.expectation(state) * h_minus_.expectation(state);
}

namespace {

Operator pow2(const Operator& x) { return x * x; }

}  // namespace

NumberRate::NumberRate(ModeDims dims, double g_ab, double g_ba)
    : NumberRate(ModeOperators(dims), g_ab, g_ba) {}

NumberRate::NumberRate(const ModeOperators& o, double g_ab, double g_ba)
    : prefactor_(g_ab - g_ba),
      bracket1_(pow2(o.a_dag) * o.a * o.b - o.a_dag * pow2(o.a) * o.b_dag),
      bracket2_(o.a_dag * o.b - o.a * o.b_dag),
      bracket3_(o.b_dag * pow2(o.b) * o.a_dag - pow2(o.b_dag) * o.b * o.a),
      total_(o.total),
      exchange_(o.a * o.b_dag - o.a_dag * o.b) {}

double NumberRate::operator()(const QuantumState& state) const {
    if (prefactor_ == 0.0) return 0.0;
    const Complex sum = bracket1_.expectation(state) + bracket2_.expectation(state) +
                        bracket3_.expectation(state) +
                        total_.expectation(state) * exchange_.expectation(state);
    return checked_real(1.0i * prefactor_ * sum, "total-number rate");
}

}  // namespace nhmodes
