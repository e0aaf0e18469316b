// observables.hpp - normalized averages and the two number-rate diagnostics.
//
//   <A>_t = Tr(A rho) / Tr(rho)
//
//   d<A>/dt = -i<[A,H+]> - i<{A,H-}> + 2i <A><H->             (generalized Heisenberg)
//
//   d<N>/dt = i(g_ab - g_ba) [ <a'a'ab - a'aab'> + <a'b - ab'>
//                             + <b'bba' - b'b'ba> + <N><ab' - a'b> ]   (total number, linear coupling)

#pragma once

#include <Eigen/SparseCore>

#include <string>

#include "nhmodes/model.hpp"
#include "nhmodes/state.hpp"

namespace nhmodes {

inline constexpr double kImagResidueTol = 1e-9;

struct ExpectationRecord {
    std::string name;
    double time = 0.0;
    Complex value;
    double imag_residue = 0.0;
};

Complex expectation(const Operator& op, const QuantumState& state);

// Expectation of a Hermitian observable; throws NumericalError if the
// imaginary part exceeds kImagResidueTol.
double real_expectation(const Operator& op, const QuantumState& state);

ExpectationRecord record(std::string name, double time, const Operator& op, const QuantumState& state);

// Returns the real part of z, throwing NumericalError when |Im z| > tol.
double checked_real(Complex z, std::string_view what, double tol = kImagResidueTol);

Complex heisenberg_rhs(const Operator& op, const QuantumState& state, const HamiltonianParts& parts);

double number_rate_rhs(const QuantumState& state, double g_ab, double g_ba);

// Sparse copy of an operator for repeated averages inside time loops.
class SparseObservable {
public:
    explicit SparseObservable(const Operator& op);

    Complex expectation(const QuantumState& state) const;
    const ModeDims& dims() const noexcept { return dims_; }

private:
    Eigen::SparseMatrix<Complex, Eigen::RowMajor> m_;
    ModeDims dims_;
};

// Heisenberg right-hand side with the commutator/anticommutator precomputed.
class HeisenbergRate {
public:
    HeisenbergRate(const Operator& op, const HamiltonianParts& parts);
    Complex operator()(const QuantumState& state) const;

private:
    SparseObservable a_, comm_plus_, anti_minus_, h_minus_;
};

// Total-number rate with each bracket assembled once, in the printed order.
class NumberRate {
public:
    NumberRate(ModeDims dims, double g_ab, double g_ba);
    double operator()(const QuantumState& state) const;

private:
    NumberRate(const ModeOperators& ops, double g_ab, double g_ba);

    double prefactor_;
    SparseObservable bracket1_, bracket2_, bracket3_, total_, exchange_;
};

}  // namespace nhmodes
