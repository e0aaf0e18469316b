// propagator.hpp - fixed-step RK4 integration of non-Hermitian dynamics.
//
// Two independent paths:
//   density:  d rho/dt = -i[H+, rho] - i{H-, rho}   (= -i(H rho - rho H'))
//   vector:   d psi/dt = -i H psi
// Both renormalize after every step and accumulate the discarded log-trace.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nhmodes/model.hpp"
#include "nhmodes/state.hpp"

namespace nhmodes {

enum class PathKind { Density, Vector, Both };

std::string_view to_string(PathKind p);

struct InitialStateSpec {
    struct CoherentVacuum {
        Complex alpha{1.0, 0.0};
        friend bool operator==(const CoherentVacuum&, const CoherentVacuum&) = default;
    };
    struct Fock {
        int n_a = 0;
        int n_b = 0;
        friend bool operator==(const Fock&, const Fock&) = default;
    };
    struct Explicit {
        Vector amplitudes;
        friend bool operator==(const Explicit& x, const Explicit& y) {
            return x.amplitudes.size() == y.amplitudes.size() && x.amplitudes == y.amplitudes;
        }
    };

    std::variant<CoherentVacuum, Fock, Explicit> value = CoherentVacuum{};

    static InitialStateSpec coherent(Complex alpha) { return {CoherentVacuum{alpha}}; }
    static InitialStateSpec fock(int n_a, int n_b) { return {Fock{n_a, n_b}}; }
    static InitialStateSpec explicit_vector(Vector amplitudes) { return {Explicit{std::move(amplitudes)}}; }

    friend bool operator==(const InitialStateSpec&, const InitialStateSpec&) = default;
};

struct PreparedState {
    StateVector psi;
    double tail_weight = 0.0;  // truncated coherent-state mass, 0 for Fock/explicit
};

PreparedState prepare_initial(const InitialStateSpec& spec, ModeDims dims);

inline constexpr double kTruncationGuard = 1e-4;

struct SimulationConfig {
    ModelSpec model;
    InitialStateSpec initial;
    ModeDims dims{10, 10};
    double dt = 1e-3;
    double t_max = 100.0;
    int sample_every = 50;
    PathKind path = PathKind::Both;
    // Integrate only on the basis states reachable from the initial support
    // under H. Exact: the reachable span is invariant under H.
    bool restrict_to_reachable = true;
    // Integrate in the frame rotating with omega0 N when H conserves N; the
    // rotation is applied exactly when states are sampled.
    bool rotating_frame = true;

    friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

// Throws ValidationError naming the offending field.
void validate(const SimulationConfig& config);

struct SampleRow {
    double t = 0.0;
    double n_a = 0.0;
    double n_b = 0.0;
    double n_total = 0.0;
    double purity = 1.0;
    double entropy_a = 0.0;
    double entropy_b = 0.0;
    double log_trace = 0.0;
    double trunc_tail = 0.0;        // max top-level population over both modes
    double path_discrepancy = 0.0;  // density vs vector, 0 unless path == Both
    double rate_fd = 0.0;           // centered difference of <N>, stencil dt
    double rate_heisenberg = 0.0;   // generalized Heisenberg RHS for A = N
    double rate_number = 0.0;       // total-number rate formula
};

struct TimeSeries {
    std::vector<SampleRow> rows;
    std::vector<std::string> warnings;
    double initial_tail_weight = 0.0;
    double max_path_discrepancy = 0.0;
    int integrated_dim = 0;  // size of the integrated (possibly reduced) basis
    std::optional<QuantumState> final_density;
    std::optional<QuantumState> final_vector;
};

QuantumState step_density(const QuantumState& state, const HamiltonianParts& parts, double dt);
QuantumState step_vector(const QuantumState& state, const Operator& h, double dt);

TimeSeries evolve(const SimulationConfig& config);

// Basis indices reachable from `seed` by repeated application of h (sorted).
std::vector<int> reachable_subspace(const Operator& h, const std::vector<int>& seed);

}  // namespace nhmodes
