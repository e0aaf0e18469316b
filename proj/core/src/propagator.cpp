#include "nhmodes/propagator.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <type_traits>

#include "nhmodes/entanglement.hpp"
#include "nhmodes/observables.hpp"

namespace nhmodes {

using namespace std::complex_literals;

std::string_view to_string(PathKind p) {
    switch (p) {
        case PathKind::Density: return "density";
        case PathKind::Vector: return "vector";
        case PathKind::Both: return "both";
    }
    return "?";
}

namespace {

using SparseRow = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

SparseRow to_sparse(const Matrix& d) {
    std::vector<Eigen::Triplet<Complex>> entries;
    for (Eigen::Index j = 0; j < d.cols(); ++j)
        for (Eigen::Index i = 0; i < d.rows(); ++i)
            if (d(i, j) != Complex(0.0)) entries.emplace_back(i, j, d(i, j));
    SparseRow s(d.rows(), d.cols());
    s.setFromTriplets(entries.begin(), entries.end());
    return s;
}

[[noreturn]] void blow_up(long step, double dt) {
    std::ostringstream msg;
    msg << "integration blew up";
    if (step >= 0) msg << " at step " << step << " (t = " << step * dt << ")";
    msg << "; retry with a smaller dt than " << dt;
    throw IntegrationError(msg.str(), step);
}

// y = H x for x stored column-major. Most Hamiltonians here are real, for which
// the product runs on the interleaved real/imaginary parts directly.
class SparseHamiltonian {
public:
    explicit SparseHamiltonian(const Matrix& h) : n_(h.rows()), real_((h.imag().array() == 0.0).all()) {
        if (real_) {
            Eigen::MatrixXd re = h.real();
            hr_ = re.sparseView();
            hr_.makeCompressed();
        } else {
            hc_ = to_sparse(h);
        }
    }

    template <typename Lhs, typename Rhs>
    void apply(const Rhs& x, Lhs& y) const {
        if (!real_) {
            y.noalias() = hc_ * x;
            return;
        }
        const int* outer = hr_.outerIndexPtr();
        const int* inner = hr_.innerIndexPtr();
        const double* v = hr_.valuePtr();
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const double* xc = reinterpret_cast<const double*>(x.data() + j * n_);
            double* yc = reinterpret_cast<double*>(y.data() + j * n_);
            for (Eigen::Index i = 0; i < n_; ++i) {
                double re = 0.0;
                double im = 0.0;
                for (int p = outer[i]; p < outer[i + 1]; ++p) {
                    const int k = inner[p];
                    re += v[p] * xc[2 * k];
                    im += v[p] * xc[2 * k + 1];
                }
                yc[2 * i] = re;
                yc[2 * i + 1] = im;
            }
        }
    }

    Eigen::Index size() const noexcept { return n_; }

private:
    Eigen::Index n_;
    bool real_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> hr_;
    SparseRow hc_;
};

// Connected components of the coupling graph of h (sorted index lists). The
// dynamics never mixes components, so rho splits into independent blocks.
std::vector<std::vector<int>> coupled_components(const Matrix& h) {
    const int n = static_cast<int>(h.rows());
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (i != j && h(i, j) != Complex(0.0)) parent[find(i)] = find(j);
    std::vector<std::vector<int>> groups;
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[slot[root]].push_back(i);
    }
    return groups;
}

// RK4 on d rho/dt = -i(H rho - rho H'), applied per block row. Basis states
// are grouped by component; for components P >= Q the block rho_PQ obeys
// -i(H_P rho_PQ - rho_PQ H_Q'). Row P stores [rho_P0 ... rho_PP] contiguously
// (row-major); blocks above the diagonal follow from Hermiticity.
template <typename V>
class BlockDensityRk4 {
public:
    explicit BlockDensityRk4(const Matrix& h) : n_(h.rows()) {
        for (auto& index : coupled_components(h)) {
            Row r;
            r.offset = static_cast<Eigen::Index>(order_.size());
            r.size = static_cast<Eigen::Index>(index.size());
            order_.insert(order_.end(), index.begin(), index.end());
            rows_.push_back(std::move(r));
        }
        const auto n = static_cast<Eigen::Index>(order_.size());
        diag_.resize(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) diag_[i] = value(h(order_[i], order_[i]));
        for (Row& r : rows_) {
            for (Eigen::Index i = 0; i < r.size; ++i) {
                for (Eigen::Index j = 0; j < r.size; ++j) {
                    const Complex z = h(order_[r.offset + i], order_[r.offset + j]);
                    if (i == j || z == Complex(0.0)) continue;
                    r.local.push_back({static_cast<int>(i), static_cast<int>(j), value(z)});
                    // column form of rho H' in row-block coordinates
                    adjoint_.push_back({static_cast<int>(r.offset + i), static_cast<int>(r.offset + j), conj_value(value(z))});
                }
            }
            r.x = RowMatrix::Zero(r.size, r.offset + r.size);
            r.adjoint_end = adjoint_.size();
        }
    }

    void load(const Matrix& rho) {
        for (Row& r : rows_) {
            for (Eigen::Index i = 0; i < r.x.rows(); ++i)
                for (Eigen::Index c = 0; c < r.x.cols(); ++c) r.x(i, c) = rho(order_[r.offset + i], order_[c]);
            r.active = !(r.x.array() == Complex(0.0)).all();  // the flow keeps a zero row at zero
        }
    }

    void store(Matrix& rho) const {
        rho.setZero(n_, n_);
        for (const Row& r : rows_) {
            for (Eigen::Index i = 0; i < r.x.rows(); ++i) {
                const int gi = order_[r.offset + i];
                for (Eigen::Index c = 0; c < r.x.cols(); ++c) {
                    rho(gi, order_[c]) = r.x(i, c);
                    rho(order_[c], gi) = std::conj(r.x(i, c));
                }
            }
        }
    }

    // Tr(diag(w) rho) for a real weight per basis state.
    double weighted_trace(const Eigen::VectorXd& w) const {
        double out = 0.0;
        for (const Row& r : rows_)
            for (Eigen::Index i = 0; i < r.size; ++i) out += w(order_[r.offset + i]) * r.x(i, r.offset + i).real();
        return out;
    }

    double step(double dt, long step_index) {
        double tr = 0.0;
        double sum = 0.0;
        for (Row& r : rows_) {
            if (!r.active) continue;
            advance(r, dt);
            sum += r.x.squaredNorm();
            tr += r.x.block(0, r.offset, r.size, r.size).trace().real();
        }
        if (!std::isfinite(tr) || !(tr > 0.0) || !std::isfinite(sum)) blow_up(step_index, dt);
        for (Row& r : rows_)
            if (r.active) r.x /= tr;
        return std::log(tr);
    }

private:
    using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    struct Entry {
        int row;
        int col;
        V value;
    };
    struct Row {
        Eigen::Index offset = 0;  // first basis position of component P
        Eigen::Index size = 0;
        std::vector<Entry> local;     // off-diagonal entries of H_P
        std::size_t adjoint_end = 0;  // entries of adjoint_ with columns in [0, offset + size)
        RowMatrix x;
        bool active = false;
    };

    static V value(Complex z) {
        if constexpr (std::is_same_v<V, double>) {
            return z.real();
        } else {
            return z;
        }
    }
    static V conj_value(V v) {
        if constexpr (std::is_same_v<V, double>) {
            return v;
        } else {
            return std::conj(v);
        }
    }

    void advance(Row& r, double dt) {
        const Eigen::Index p = r.x.rows();
        const Eigen::Index w = r.x.cols();
        y_.resize(p, w);
        k_.resize(p, w);
        acc_.resize(p, w);

        rhs(r, r.x, k_);
        acc_ = r.x + (dt / 6.0) * k_;
        y_ = r.x + (0.5 * dt) * k_;
        rhs(r, y_, k_);
        acc_ += (dt / 3.0) * k_;
        y_ = r.x + (0.5 * dt) * k_;
        rhs(r, y_, k_);
        acc_ += (dt / 3.0) * k_;
        y_ = r.x + dt * k_;
        rhs(r, y_, k_);
        r.x = acc_ + (dt / 6.0) * k_;

        auto d = r.x.block(0, r.offset, p, p);
        const Matrix sym = 0.5 * (d + d.adjoint());
        d = sym;
    }

    // k = -i(H_P x - x H')
    void rhs(const Row& r, const RowMatrix& x, RowMatrix& k) const {
        const Eigen::Index p = x.rows();
        const Eigen::Index w = x.cols();
        for (Eigen::Index i = 0; i < p; ++i) {
            const V dp = diag_[r.offset + i];
            const Complex* xi = x.row(i).data();
            Complex* ki = k.row(i).data();
            for (Eigen::Index c = 0; c < w; ++c) ki[c] = (dp - conj_value(diag_[c])) * xi[c];
            for (std::size_t e = 0; e < r.adjoint_end; ++e) {
                const Entry& a = adjoint_[e];
                ki[a.row] -= a.value * xi[a.col];
            }
        }
        for (const Entry& e : r.local) k.row(e.row) += e.value * x.row(e.col);
        k *= Complex(0.0, -1.0);
    }

    Eigen::Index n_;
    std::vector<int> order_;  // basis index of each block-ordered position
    std::vector<V> diag_;
    std::vector<Entry> adjoint_;
    std::vector<Row> rows_;
    RowMatrix y_, k_, acc_;
};

class DensityRk4 {
public:
    explicit DensityRk4(const Matrix& h) : impl_(make(h)) {}

    void load(const Matrix& rho) {
        std::visit([&](auto& rk) { rk.load(rho); }, impl_);
    }
    Matrix density() const {
        Matrix rho;
        std::visit([&](const auto& rk) { rk.store(rho); }, impl_);
        return rho;
    }
    double weighted_trace(const Eigen::VectorXd& w) const {
        return std::visit([&](const auto& rk) { return rk.weighted_trace(w); }, impl_);
    }

    // Advances the unit-trace Hermitian state; returns ln of the trace
    // before renormalization.
    double step(double dt, long step_index) {
        return std::visit([&](auto& rk) { return rk.step(dt, step_index); }, impl_);
    }

private:
    using Impl = std::variant<BlockDensityRk4<double>, BlockDensityRk4<Complex>>;

    static Impl make(const Matrix& h) {
        if ((h.imag().array() == 0.0).all()) return BlockDensityRk4<double>(h);
        return BlockDensityRk4<Complex>(h);
    }

    Impl impl_;
};

class VectorRk4 {
public:
    explicit VectorRk4(const Matrix& h) : h_(h) {
        for (Vector* v : {&k1_, &k2_, &k3_, &k4_, &y_}) v->resize(h.rows());
    }

    // Advances a unit-norm psi in place; returns ln of the squared norm
    // before renormalization.
    double step(Vector& psi, double dt, long step_index) {
        stage(psi, k1_);
        y_ = psi + (0.5 * dt) * k1_;
        stage(y_, k2_);
        y_ = psi + (0.5 * dt) * k2_;
        stage(y_, k3_);
        y_ = psi + dt * k3_;
        stage(y_, k4_);
        psi += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);

        const double n2 = psi.squaredNorm();
        if (!std::isfinite(n2) || !(n2 > 0.0)) blow_up(step_index, dt);
        psi /= std::sqrt(n2);
        return std::log(n2);
    }

private:
    void stage(const Vector& x, Vector& out) {
        h_.apply(x, out);
        out *= -1.0i;
    }

    SparseHamiltonian h_;
    Vector k1_, k2_, k3_, k4_, y_;
};

void require_dt(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt", "must be positive and finite");
}

Matrix restrict(const Matrix& m, const std::vector<int>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    Matrix out(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) out(i, j) = m(idx[i], idx[j]);
    return out;
}

Vector restrict(const Vector& v, const std::vector<int>& idx) {
    Vector out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(idx[i]);
    return out;
}

Matrix expand(const Matrix& m, const std::vector<int>& idx, int joint) {
    Matrix out = Matrix::Zero(joint, joint);
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < idx.size(); ++i)
            out(idx[i], idx[j]) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

Vector expand(const Vector& v, const std::vector<int>& idx, int joint) {
    Vector out = Vector::Zero(joint);
    for (std::size_t i = 0; i < idx.size(); ++i) out(idx[i]) = v(static_cast<Eigen::Index>(i));
    return out;
}

// Per-sample observables shared by both paths.
struct Sample {
    SampleRow row;
    double top_a = 0.0;  // population of the highest kept Fock level
    double top_b = 0.0;
};

struct Sampler {
    Sampler(const HamiltonianParts& parts, const ModelSpec& model, ModeDims dims)
        : n_a(embed(number_op(dims.dim_a()), Mode::A, dims)),
          n_b(embed(number_op(dims.dim_b()), Mode::B, dims)),
          heisenberg(ModeOperators(dims).total, parts),
          number_rate(dims, model.g_ab, model.g_ba) {}

    Sample sample(const QuantumState& s, double t) const {
        Sample out;
        SampleRow& row = out.row;
        row.t = t;
        row.n_a = checked_real(n_a.expectation(s), "<a'a>");
        row.n_b = checked_real(n_b.expectation(s), "<b'b>");
        row.n_total = row.n_a + row.n_b;
        row.purity = purity(s);
        const ReducedState ra = partial_trace(s, Mode::A);
        const ReducedState rb = partial_trace(s, Mode::B);
        row.entropy_a = von_neumann_entropy(ra);
        row.entropy_b = von_neumann_entropy(rb);
        row.log_trace = s.log_trace();
        const int top_a = s.dims().dim_a() - 1;
        const int top_b = s.dims().dim_b() - 1;
        out.top_a = ra.matrix(top_a, top_a).real();
        out.top_b = rb.matrix(top_b, top_b).real();
        row.trunc_tail = std::max(out.top_a, out.top_b);
        row.rate_heisenberg = checked_real(heisenberg(s), "Heisenberg rate");
        row.rate_number = number_rate(s);
        return out;
    }

    SparseObservable n_a, n_b;
    HeisenbergRate heisenberg;
    NumberRate number_rate;
};

double row_discrepancy(const SampleRow& x, const SampleRow& y) {
    return std::max({std::abs(x.n_a - y.n_a), std::abs(x.n_b - y.n_b), std::abs(x.n_total - y.n_total),
                     std::abs(x.purity - y.purity), std::abs(x.entropy_a - y.entropy_a),
                     std::abs(x.entropy_b - y.entropy_b)});
}

// Second-order differences with stencil dt: centered inside, one-sided at the ends.
double number_derivative(const std::vector<double>& n, std::size_t k, double dt) {
    const std::size_t last = n.size() - 1;
    if (n.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    if (k == 0) return (-3.0 * n[0] + 4.0 * n[1] - n[2]) / (2.0 * dt);
    if (k == last) return (3.0 * n[last] - 4.0 * n[last - 1] + n[last - 2]) / (2.0 * dt);
    return (n[k + 1] - n[k - 1]) / (2.0 * dt);
}

}  // namespace

// ---------------------------------------------------------------------------

PreparedState prepare_initial(const InitialStateSpec& spec, ModeDims dims) {
    struct Visitor {
        ModeDims dims;
        PreparedState operator()(const InitialStateSpec::CoherentVacuum& c) const {
            const ModeState a = coherent_state(c.alpha, dims.dim_a());
            return {tensor_state(a, fock_state(0, dims.dim_b())), a.tail_weight};
        }
        PreparedState operator()(const InitialStateSpec::Fock& f) const {
            if (f.n_a < 0 || f.n_a >= dims.dim_a()) throw ValidationError("initial.n_a", "outside truncation");
            if (f.n_b < 0 || f.n_b >= dims.dim_b()) throw ValidationError("initial.n_b", "outside truncation");
            return {tensor_state(fock_state(f.n_a, dims.dim_a()), fock_state(f.n_b, dims.dim_b())), 0.0};
        }
        PreparedState operator()(const InitialStateSpec::Explicit& e) const {
            if (e.amplitudes.size() != dims.joint()) {
                throw ValidationError("initial.amplitudes", "length does not match joint dimension");
            }
            const double n = e.amplitudes.norm();
            if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("initial.amplitudes", "zero or non-finite norm");
            return {StateVector(e.amplitudes / n, dims), 0.0};
        }
    };
    return std::visit(Visitor{dims}, spec.value);
}

void validate(const SimulationConfig& c) {
    try {
        validate(c.model);
    } catch (const ModelError& e) {
        throw ValidationError("model", e.what());
    }
    require_dt(c.dt);
    if (!(c.t_max > 0.0) || !std::isfinite(c.t_max)) throw ValidationError("t_max", "must be positive and finite");
    if (c.sample_every < 1) throw ValidationError("sample_every", "must be >= 1");
    if (const auto* co = std::get_if<InitialStateSpec::CoherentVacuum>(&c.initial.value)) {
        if (!std::isfinite(co->alpha.real()) || !std::isfinite(co->alpha.imag())) {
            throw ValidationError("initial.alpha", "must be finite");
        }
    }
    (void)prepare_initial(c.initial, c.dims);
}

QuantumState step_density(const QuantumState& state, const HamiltonianParts& parts, double dt) {
    require_dt(dt);
    if (state.kind() != StateKind::DensityMatrix) throw DimensionError("step_density needs a density matrix");
    if (!(state.dims() == parts.h.dims())) throw DimensionError("state and Hamiltonian dimensions differ");
    DensityRk4 rk(parts.h_plus.matrix() + parts.h_minus.matrix());
    rk.load(state.density());
    const double lt = rk.step(dt, -1);
    return QuantumState::density(rk.density(), state.dims(), state.log_trace() + lt);
}

QuantumState step_vector(const QuantumState& state, const Operator& h, double dt) {
    require_dt(dt);
    if (state.kind() != StateKind::PureVector) throw DimensionError("step_vector needs a state vector");
    if (!(state.dims() == h.dims())) throw DimensionError("state and Hamiltonian dimensions differ");
    VectorRk4 rk(h.matrix());
    Vector psi = state.vector();
    const double lt = rk.step(psi, dt, -1);
    return QuantumState::pure(std::move(psi), state.dims(), state.log_trace() + lt);
}

std::vector<int> reachable_subspace(const Operator& h, const std::vector<int>& seed) {
    const int n = h.dims().joint();
    const Matrix& m = h.matrix();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<int> todo;
    for (int s : seed) {
        if (s < 0 || s >= n) throw DimensionError("seed index outside joint space");
        if (!seen[s]) {
            seen[s] = 1;
            todo.push(s);
        }
    }
    while (!todo.empty()) {
        const int j = todo.front();
        todo.pop();
        for (int i = 0; i < n; ++i) {
            if (!seen[i] && m(i, j) != Complex(0.0)) {
                seen[i] = 1;
                todo.push(i);
            }
        }
    }
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

TimeSeries evolve(const SimulationConfig& config) {
    validate(config);
    const ModeDims dims = config.dims;
    const int joint = dims.joint();
    const Operator h = build_hamiltonian(config.model, dims);
    const HamiltonianParts parts = decompose(h);
    const PreparedState init = prepare_initial(config.initial, dims);

    std::vector<int> basis;
    if (config.restrict_to_reachable) {
        std::vector<int> seed;
        for (int i = 0; i < joint; ++i)
            if (init.psi.amplitudes()(i) != Complex(0.0)) seed.push_back(i);
        basis = reachable_subspace(h, seed);
    } else {
        basis.resize(static_cast<std::size_t>(joint));
        for (int i = 0; i < joint; ++i) basis[static_cast<std::size_t>(i)] = i;
    }
    const auto n_sub = static_cast<Eigen::Index>(basis.size());
    Matrix h_sub = restrict(h.matrix(), basis);
    Eigen::VectorXd occupation(n_sub);
    for (Eigen::Index i = 0; i < n_sub; ++i) {
        occupation(i) = dims.occupation_a(basis[i]) + dims.occupation_b(basis[i]);
    }

    // When H conserves N, exp(-iHt) = exp(-i omega0 N t) exp(-i(H - omega0 N)t)
    // exactly; only the second factor is integrated.
    bool conserves_number = true;
    for (Eigen::Index j = 0; j < n_sub && conserves_number; ++j)
        for (Eigen::Index i = 0; i < n_sub; ++i)
            if (h_sub(i, j) != Complex(0.0) && occupation(i) != occupation(j)) {
                conserves_number = false;
                break;
            }
    const double frame = config.rotating_frame && conserves_number ? config.model.omega0 : 0.0;
    h_sub.diagonal() -= (frame * occupation).cast<Complex>();
    auto to_lab = [&](double t) -> Vector { return (-1.0i * frame * t * occupation).array().exp().matrix().cast<Complex>(); };

    const bool use_density = config.path != PathKind::Vector;
    const bool use_vector = config.path != PathKind::Density;

    const Vector psi0 = restrict(init.psi.amplitudes(), basis);
    Vector psi = psi0;
    double log_trace_rho = 0.0;
    double log_trace_psi = 0.0;
    DensityRk4 density_rk(use_density ? h_sub : Matrix(0, 0));
    if (use_density) density_rk.load(psi0 * psi0.adjoint());
    VectorRk4 vector_rk(use_vector ? h_sub : Matrix(0, 0));

    auto lab_vector = [&](double t) {
        return QuantumState::pure(expand(Vector(to_lab(t).cwiseProduct(psi)), basis, joint), dims, log_trace_psi);
    };
    auto lab_density = [&](double t) {
        const Vector u = to_lab(t);
        const Matrix rho = u.asDiagonal() * density_rk.density() * u.adjoint().asDiagonal();
        return QuantumState::density(expand(rho, basis, joint), dims, log_trace_rho);
    };

    const Sampler sampler(parts, config.model, dims);
    const long n_steps = static_cast<long>(std::floor(config.t_max / config.dt + 1e-9));

    TimeSeries out;
    out.initial_tail_weight = init.tail_weight;
    out.integrated_dim = static_cast<int>(basis.size());
    std::vector<double> number_trace;
    number_trace.reserve(static_cast<std::size_t>(n_steps) + 1);
    std::vector<std::size_t> sample_steps;
    bool warned_a = false;
    bool warned_b = false;

    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * config.dt;
        number_trace.push_back(use_density ? density_rk.weighted_trace(occupation)
                                           : occupation.dot(psi.cwiseAbs2()));

        if (k % config.sample_every == 0) {
            std::optional<Sample> vs;
            if (use_vector) {
                vs = sampler.sample(lab_vector(t), t);
            }
            Sample smp;
            if (use_density) {
                smp = sampler.sample(lab_density(t), t);
                if (vs) {
                    smp.row.path_discrepancy = row_discrepancy(smp.row, vs->row);
                    out.max_path_discrepancy = std::max(out.max_path_discrepancy, smp.row.path_discrepancy);
                }
            } else {
                smp = *vs;
            }
            auto guard = [&](bool& warned, const char* mode, double p) {
                if (warned || !(p > kTruncationGuard)) return;
                std::ostringstream msg;
                msg << "truncation guard: mode " << mode << " top Fock level population " << p
                    << " exceeds " << kTruncationGuard << " at t = " << t;
                out.warnings.push_back(msg.str());
                warned = true;
            };
            guard(warned_a, "A", smp.top_a);
            guard(warned_b, "B", smp.top_b);
            const SampleRow& row = smp.row;
            out.rows.push_back(row);
            sample_steps.push_back(static_cast<std::size_t>(k));
        }

        if (k >= n_steps) break;
        if (use_density) log_trace_rho += density_rk.step(config.dt, k);
        if (use_vector) log_trace_psi += vector_rk.step(psi, config.dt, k);
    }

    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        out.rows[i].rate_fd = number_derivative(number_trace, sample_steps[i], config.dt);
    }
    const double t_end = static_cast<double>(n_steps) * config.dt;
    if (use_density) out.final_density = lab_density(t_end);
    if (use_vector) out.final_vector = lab_vector(t_end);
    return out;
}

}  // namespace nhmodes
