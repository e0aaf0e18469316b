// scenario.hpp - scenario files, figure presets, CSV output and run orchestration.
//
// Scenario grammar (one setting per line, UTF-8, LF or CRLF):
//
//     # comment
//     name = fig1c
//     [model]              # following keys are read as model.<key>
//     r = 2
//     numerics.dt = 5e-4   # dotted keys are also accepted at top level
//
// Keys:
//   name
//   model.omega0 model.g model.r model.u model.deformation (identity|sqrtn)
//   initial.kind (coherent|fock|vacuum) initial.alpha initial.alpha_imag
//   initial.n_a initial.n_b
//   numerics.dim_a numerics.dim_b numerics.dims numerics.dt numerics.t_max
//   numerics.sample_every numerics.path (density|vector|both)
//   outputs.columns (comma list) outputs.path
//
// Unknown or repeated keys are rejected. The coupling is given as g and the
// asymmetry r, mapped to g_ab = g r and g_ba = g.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nhmodes/propagator.hpp"

namespace nhmodes {

enum class InitialKind { Coherent, Fock, Vacuum };

std::string_view to_string(InitialKind k);

// Columns of the standard CSV, in order.
const std::vector<std::string>& standard_columns();
// Standard columns plus the diagnostics that may be requested via outputs.columns.
const std::vector<std::string>& available_columns();

struct ScenarioFile {
    std::string name = "scenario";

    double omega0 = 1.0;
    double g = 0.1;
    double r = 1.0;
    double u = 0.0;
    Deformation deformation = Deformation::Identity;

    InitialKind initial = InitialKind::Coherent;
    double alpha = 1.0;
    double alpha_imag = 0.0;
    int n_a = 0;
    int n_b = 0;

    int dim_a = 10;
    int dim_b = 10;
    double dt = 1e-3;
    double t_max = 100.0;
    int sample_every = 50;
    PathKind path = PathKind::Both;

    std::vector<std::string> columns = standard_columns();
    std::string output;  // empty: <name>.csv in the output directory

    // Throws ValidationError for invalid values.
    SimulationConfig to_config() const;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

// Applies one `key = value` setting; shared by the parser and --set overrides.
void apply_setting(ScenarioFile& scenario, std::string_view key, std::string_view value);

ScenarioFile parse_scenario_file(std::string_view text);
SimulationConfig parse_scenario(std::string_view text);
std::string serialize(const ScenarioFile& scenario);

// Full validation: config constraints plus output columns.
void validate(const ScenarioFile& scenario);

const std::vector<std::string>& preset_ids();
ScenarioFile preset(std::string_view id);

// Shortest round-trip decimal representation.
std::string format_double(double x);

std::string to_csv(const TimeSeries& series, const std::vector<std::string>& columns);
std::string summary_line(const std::string& name, const TimeSeries& series);

struct RunResult {
    ScenarioFile scenario;
    TimeSeries series;
    std::filesystem::path csv_path;
    std::string summary;
};

// Evolves the scenario and writes its CSV under out_dir.
RunResult run_scenario(const ScenarioFile& scenario, const std::filesystem::path& out_dir);

struct SweepPoint {
    std::string value;
    std::filesystem::path csv_path;
    bool ok = false;
    std::string message;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::filesystem::path index_path;

    bool all_ok() const;
};

// One independent run per grid value (executed concurrently, at most `jobs`
// at a time). Failures are recorded per point; the index file lists
// value -> output path for every point.
SweepResult sweep(const ScenarioFile& base, std::string_view key, const std::vector<std::string>& grid,
                  const std::filesystem::path& out_dir, unsigned jobs = 0);

}  // namespace nhmodes
