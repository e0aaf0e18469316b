// nhmodes - run, sweep and validate two-mode non-Hermitian scenarios.
//
//   nhmodes presets
//   nhmodes validate --preset fig2c | --config file.ini
//   nhmodes run --preset fig1c [--set model.r=3 ...] [--out dir] [--path both]
//   nhmodes sweep --preset fig1a --param model.r --grid 0.5,1,2 [--out dir]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nhmodes/scenario.hpp"

namespace {

struct Source {
    std::string preset;
    std::string config;
    std::vector<std::string> sets;
    std::string path;
};

void add_source_options(CLI::App* cmd, Source& src, bool with_overrides) {
    auto* p = cmd->add_option("--preset", src.preset, "Preset id (see `presets`)");
    auto* c = cmd->add_option("--config", src.config, "Scenario file")->check(CLI::ExistingFile);
    p->excludes(c);
    if (with_overrides) {
        cmd->add_option("--set", src.sets, "Override a setting, key=value (repeatable)");
        cmd->add_option("--path", src.path, "Integration path")
            ->check(CLI::IsMember({"density", "vector", "both"}));
    }
}

nhmodes::ScenarioFile load(const Source& src) {
    nhmodes::ScenarioFile s;
    if (!src.preset.empty()) {
        s = nhmodes::preset(src.preset);
    } else if (!src.config.empty()) {
        std::ifstream f(src.config, std::ios::binary);
        std::ostringstream text;
        text << f.rdbuf();
        s = nhmodes::parse_scenario_file(text.str());
    } else {
        throw CLI::ValidationError("one of --preset or --config is required");
    }
    for (const std::string& kv : src.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw nhmodes::ValidationError(kv, "override must be key=value");
        nhmodes::apply_setting(s, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!src.path.empty()) nhmodes::apply_setting(s, "numerics.path", src.path);
    nhmodes::validate(s);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode non-Hermitian coupled-boson dynamics"};
    app.require_subcommand(1);

    app.add_subcommand("presets", "List built-in presets");

    Source validate_src;
    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a scenario without running it");
    add_source_options(validate_cmd, validate_src, true);

    Source run_src;
    std::string run_out = ".";
    auto* run_cmd = app.add_subcommand("run", "Evolve a scenario and write its CSV");
    add_source_options(run_cmd, run_src, true);
    run_cmd->add_option("--out", run_out, "Output directory");

    Source sweep_src;
    std::string sweep_out = ".";
    std::string sweep_param;
    std::vector<std::string> sweep_grid;
    unsigned sweep_jobs = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run one scenario per grid value");
    add_source_options(sweep_cmd, sweep_src, true);
    sweep_cmd->add_option("--out", sweep_out, "Output directory");
    sweep_cmd->add_option("--param", sweep_param, "Numeric key to vary, e.g. model.r")->required();
    sweep_cmd->add_option("--grid", sweep_grid, "Comma-separated values")->delimiter(',');
    sweep_cmd->add_option("--jobs", sweep_jobs, "Concurrent runs (0: hardware threads)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("presets")) {
            for (const auto& id : nhmodes::preset_ids()) {
                const nhmodes::ScenarioFile s = nhmodes::preset(id);
                std::cout << id << "  r=" << nhmodes::format_double(s.r) << " u=" << nhmodes::format_double(s.u)
                          << " f=" << nhmodes::to_string(s.deformation) << " initial=" << nhmodes::to_string(s.initial)
                          << " dims=" << s.dim_a << "x" << s.dim_b << " t_max=" << nhmodes::format_double(s.t_max)
                          << "\n";
            }
            return 0;
        }
        if (validate_cmd->parsed()) {
            const nhmodes::ScenarioFile s = load(validate_src);
            std::cout << "ok: " << s.name << "\n";
            return 0;
        }
        if (run_cmd->parsed()) {
            const nhmodes::RunResult r = nhmodes::run_scenario(load(run_src), run_out);
            for (const auto& w : r.series.warnings) std::cerr << "warning: " << w << "\n";
            std::cout << r.summary << " -> " << r.csv_path.string() << "\n";
            return 0;
        }
        if (sweep_cmd->parsed()) {
            const nhmodes::SweepResult r =
                nhmodes::sweep(load(sweep_src), sweep_param, sweep_grid, sweep_out, sweep_jobs);
            for (const auto& p : r.points) {
                std::cout << (p.ok ? "ok     " : "FAILED ") << sweep_param << "=" << p.value << "  " << p.message
                          << "\n";
            }
            std::cout << "index -> " << r.index_path.string() << "\n";
            return r.all_ok() ? 0 : 1;
        }
    } catch (const nhmodes::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
