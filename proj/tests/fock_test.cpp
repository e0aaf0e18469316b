#include <doctest.h>

#include <cmath>

#include "nhmodes/fock.hpp"

using namespace nhmodes;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("lowering operator matrix entries") {
    const ModeOperator a2 = lowering_op(2);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 1) = 1.0;
    CHECK(max_abs(a2.matrix() - expected) == 0.0);

    const ModeOperator a3 = lowering_op(3);
    CHECK(a3.matrix()(0, 1) == Complex(1.0));
    CHECK(a3.matrix()(1, 2) == Complex(std::sqrt(2.0)));
    CHECK((a3.matrix().array() != Complex(0.0)).count() == 2);
}

TEST_CASE("raising is the adjoint of lowering and n = a'a") {
    for (int dim : {2, 5, 10}) {
        const ModeOperator a = lowering_op(dim);
        CHECK(max_abs(raising_op(dim).matrix() - a.matrix().adjoint()) == 0.0);
        CHECK(max_abs(number_op(dim).matrix() - (a.dagger() * a).matrix()) < 1e-14);
    }
}

TEST_CASE("truncated commutator [a, a'] is identity except at the top level") {
    const int dim = 7;
    const ModeOperator a = lowering_op(dim);
    const Matrix c = (a * a.dagger() - a.dagger() * a).matrix();
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            Complex expected = 0.0;
            if (i == j) expected = i < dim - 1 ? 1.0 : -(dim - 1.0);
            CHECK(std::abs(c(i, j) - expected) < 1e-13);
        }
    }
}

TEST_CASE("mode dims validation and indexing") {
    CHECK_THROWS_AS(ModeDims(1, 4), DimensionError);
    CHECK_THROWS_AS(ModeDims(4, 0), DimensionError);
    const ModeDims d(3, 4);
    CHECK(d.joint() == 12);
    CHECK(d.index(2, 1) == 9);
    CHECK(d.occupation_a(9) == 2);
    CHECK(d.occupation_b(9) == 1);
    CHECK_THROWS_AS(d.index(3, 0), DimensionError);
    CHECK_THROWS_AS(d.index(0, -1), DimensionError);
}

TEST_CASE("embedded lowering operator maps |1,0> to |0,0>") {
    const ModeDims d(2, 2);
    const Operator a = embed(lowering_op(2), Mode::A, d);
    const StateVector out = a * tensor_state(fock_state(1, 2), fock_state(0, 2));
    Vector expected = Vector::Zero(4);
    expected(d.index(0, 0)) = 1.0;
    CHECK((out.amplitudes() - expected).norm() < 1e-15);
}

TEST_CASE("operators on different modes commute") {
    const ModeDims d(4, 5);
    const ModeOperators ops(d);
    CHECK(max_abs(commutator(ops.a, ops.b).matrix()) == 0.0);
    CHECK(max_abs(commutator(ops.a, ops.b_dag).matrix()) == 0.0);
    CHECK(max_abs(commutator(ops.n_a, ops.n_b).matrix()) == 0.0);
}

TEST_CASE("embedded number operator reads the occupation") {
    const ModeDims d(4, 4);
    const ModeOperators ops(d);
    const StateVector psi = tensor_state(fock_state(2, 4), fock_state(3, 4));
    const StateVector na_psi = ops.n_a * psi;
    const StateVector nb_psi = ops.n_b * psi;
    CHECK((na_psi.amplitudes() - 2.0 * psi.amplitudes()).norm() < 1e-14);
    CHECK((nb_psi.amplitudes() - 3.0 * psi.amplitudes()).norm() < 1e-14);
}

TEST_CASE("joint ordering puts mode A on the slow index") {
    const ModeDims d(3, 4);
    const StateVector psi = tensor_state(fock_state(1, 3), fock_state(2, 4));
    CHECK(psi.amplitudes()(1 * 4 + 2) == Complex(1.0));
    CHECK(psi.amplitude(1, 2) == Complex(1.0));
}

TEST_CASE("coherent state of zero amplitude is the vacuum") {
    const ModeState s = coherent_state(0.0, 6);
    CHECK(s.amplitudes(0) == Complex(1.0));
    CHECK(s.amplitudes.tail(5).norm() == 0.0);
    CHECK(s.tail_weight == 0.0);
}

TEST_CASE("coherent state tail weight and mean occupation") {
    const ModeState s = coherent_state(1.0, 10);
    // independent tail sum: e^-1 sum_{n>=10} 1/n!
    double tail = 0.0;
    double term = 1.0;
    for (int n = 1; n < 40; ++n) {
        term /= n;
        if (n >= 10) tail += term;
    }
    tail *= std::exp(-1.0);
    CHECK(tail == doctest::Approx(1.1143e-7).epsilon(1e-4));
    CHECK(s.tail_weight == doctest::Approx(tail).epsilon(1e-10));
    CHECK(s.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-15));

    // renormalized mean: sum n/n! / sum 1/n! over n < 10
    double num = 0.0, den = 0.0;
    term = 1.0;
    for (int k = 0; k < 10; ++k) {
        if (k > 0) term /= k;
        num += k * term;
        den += term;
    }
    const Matrix n = number_op(10).matrix();
    const double mean = (s.amplitudes.adjoint() * n * s.amplitudes)(0, 0).real();
    CHECK(std::abs(mean - num / den) < 1e-14);
    CHECK(std::abs(mean - 1.0) < 1.1e-6);
}

TEST_CASE("coherent state phases follow alpha^n") {
    const Complex alpha(0.3, 0.4);
    const ModeState s = coherent_state(alpha, 8);
    for (int n = 1; n < 8; ++n) {
        const Complex ratio = s.amplitudes(n) / s.amplitudes(n - 1);
        CHECK(std::abs(ratio - alpha / std::sqrt(static_cast<double>(n))) < 1e-14);
    }
}

TEST_CASE("vacuum product state") {
    const StateVector v = tensor_state(fock_state(0, 3), fock_state(0, 3));
    CHECK(v.norm() == doctest::Approx(1.0));
    CHECK(v.amplitude(0, 0) == Complex(1.0));
    CHECK_THROWS_AS(fock_state(3, 3), DimensionError);
}

TEST_CASE("anticommutator of identities") {
    const ModeDims d(3, 3);
    const Operator id = Operator::identity(d);
    CHECK(anticommutator(id, id).max_abs_diff(2.0 * id) == 0.0);
}

TEST_CASE("operator arithmetic checks dimensions") {
    const Operator x = Operator::identity(ModeDims(2, 3));
    const Operator y = Operator::identity(ModeDims(3, 2));
    CHECK_THROWS_AS(x + y, DimensionError);
    CHECK_THROWS_AS(x * y, DimensionError);
    CHECK_THROWS_AS(Operator(Matrix::Zero(5, 5), ModeDims(2, 2)), DimensionError);
}
