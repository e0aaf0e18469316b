#include "nhmodes/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>

namespace nhmodes {

std::string_view to_string(InitialKind k) {
    switch (k) {
        case InitialKind::Coherent: return "coherent";
        case InitialKind::Fock: return "fock";
        case InitialKind::Vacuum: return "vacuum";
    }
    return "?";
}

const std::vector<std::string>& standard_columns() {
    static const std::vector<std::string> cols{"t",         "n_a",       "n_b",        "n_total",
                                               "purity",    "entropy_a", "log_trace",  "trunc_tail",
                                               "path_discrepancy"};
    return cols;
}

const std::vector<std::string>& available_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c = standard_columns();
        c.insert(c.end(), {"entropy_b", "rate_fd", "rate_heisenberg", "rate_number"});
        return c;
    }();
    return cols;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view v) {
    double x = 0.0;
    const char* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end || !std::isfinite(x)) {
        throw ValidationError(std::string(key), "expected a finite number, got '" + std::string(v) + "'");
    }
    return x;
}

int parse_int(std::string_view key, std::string_view v) {
    int x = 0;
    const char* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end) {
        throw ValidationError(std::string(key), "expected an integer, got '" + std::string(v) + "'");
    }
    return x;
}

std::vector<std::string> split_list(std::string_view v) {
    std::vector<std::string> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const std::string_view item = trim(v.substr(0, comma));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

const std::set<std::string, std::less<>>& numeric_keys() {
    static const std::set<std::string, std::less<>> keys{
        "model.omega0",   "model.g",       "model.r",       "model.u",        "initial.alpha",
        "initial.alpha_imag", "initial.n_a", "initial.n_b", "numerics.dim_a", "numerics.dim_b",
        "numerics.dims",  "numerics.dt",   "numerics.t_max", "numerics.sample_every"};
    return keys;
}

}  // namespace

void apply_setting(ScenarioFile& s, std::string_view key, std::string_view raw) {
    const std::string_view v = trim(raw);
    const std::string k(key);
    if (key == "name") {
        if (v.empty()) throw ValidationError(k, "must not be empty");
        s.name = std::string(v);
    } else if (key == "model.omega0") {
        s.omega0 = parse_double(key, v);
    } else if (key == "model.g") {
        s.g = parse_double(key, v);
    } else if (key == "model.r") {
        s.r = parse_double(key, v);
    } else if (key == "model.u") {
        s.u = parse_double(key, v);
    } else if (key == "model.deformation") {
        if (v == "identity") s.deformation = Deformation::Identity;
        else if (v == "sqrtn") s.deformation = Deformation::SqrtN;
        else throw ValidationError(k, "expected identity or sqrtn");
    } else if (key == "initial.kind") {
        if (v == "coherent") s.initial = InitialKind::Coherent;
        else if (v == "fock") s.initial = InitialKind::Fock;
        else if (v == "vacuum") s.initial = InitialKind::Vacuum;
        else throw ValidationError(k, "expected coherent, fock or vacuum");
    } else if (key == "initial.alpha") {
        s.alpha = parse_double(key, v);
    } else if (key == "initial.alpha_imag") {
        s.alpha_imag = parse_double(key, v);
    } else if (key == "initial.n_a") {
        s.n_a = parse_int(key, v);
    } else if (key == "initial.n_b") {
        s.n_b = parse_int(key, v);
    } else if (key == "numerics.dim_a") {
        s.dim_a = parse_int(key, v);
    } else if (key == "numerics.dim_b") {
        s.dim_b = parse_int(key, v);
    } else if (key == "numerics.dims") {
        s.dim_a = s.dim_b = parse_int(key, v);
    } else if (key == "numerics.dt") {
        s.dt = parse_double(key, v);
    } else if (key == "numerics.t_max") {
        s.t_max = parse_double(key, v);
    } else if (key == "numerics.sample_every") {
        s.sample_every = parse_int(key, v);
    } else if (key == "numerics.path") {
        if (v == "density") s.path = PathKind::Density;
        else if (v == "vector") s.path = PathKind::Vector;
        else if (v == "both") s.path = PathKind::Both;
        else throw ValidationError(k, "expected density, vector or both");
    } else if (key == "outputs.columns") {
        s.columns = split_list(v);
    } else if (key == "outputs.path") {
        s.output = std::string(v);
    } else {
        throw ValidationError(k, "unknown key");
    }
}

ScenarioFile parse_scenario_file(std::string_view text) {
    ScenarioFile s;
    std::set<std::string, std::less<>> seen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        ++line_no;
        const auto nl = text.find('\n', pos);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) throw ParseError("malformed section header", line_no);
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty() || section.find_first_of(" \t.=") != std::string::npos) {
                throw ParseError("malformed section name '" + section + "'", line_no);
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
        const std::string_view key_part = trim(line.substr(0, eq));
        if (key_part.empty()) throw ParseError("missing key before '='", line_no);
        const std::string key = section.empty() ? std::string(key_part) : section + "." + std::string(key_part);
        if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line_no);
        try {
            apply_setting(s, key, line.substr(eq + 1));
        } catch (const ValidationError& e) {
            throw ValidationError(e.field(), std::string(e.what()).substr(e.field().size() + 2) +
                                                 " (line " + std::to_string(line_no) + ")");
        }
    }
    validate(s);
    return s;
}

SimulationConfig parse_scenario(std::string_view text) { return parse_scenario_file(text).to_config(); }

SimulationConfig ScenarioFile::to_config() const {
    if (dim_a < 2) throw ValidationError("numerics.dim_a", "must be >= 2");
    if (dim_b < 2) throw ValidationError("numerics.dim_b", "must be >= 2");
    SimulationConfig c{
        .model = ModelSpec::from_asymmetry(omega0, g, r, u, deformation),
        .initial = {},
        .dims = ModeDims(dim_a, dim_b),
        .dt = dt,
        .t_max = t_max,
        .sample_every = sample_every,
        .path = path,
    };
    switch (initial) {
        case InitialKind::Coherent: c.initial = InitialStateSpec::coherent({alpha, alpha_imag}); break;
        case InitialKind::Fock: c.initial = InitialStateSpec::fock(n_a, n_b); break;
        case InitialKind::Vacuum: c.initial = InitialStateSpec::fock(0, 0); break;
    }
    try {
        validate(c);
    } catch (const ValidationError& e) {
        const std::string& f = e.field();
        const std::string mapped = (f == "dt" || f == "t_max" || f == "sample_every") ? "numerics." + f : f;
        throw ValidationError(mapped, std::string(e.what()).substr(f.size() + 2));
    }
    return c;
}

void validate(const ScenarioFile& s) {
    (void)s.to_config();
    if (s.columns.empty()) throw ValidationError("outputs.columns", "must list at least one column");
    const auto& avail = available_columns();
    for (const auto& c : s.columns) {
        if (std::find(avail.begin(), avail.end(), c) == avail.end()) {
            throw ValidationError("outputs.columns", "unknown column '" + c + "'");
        }
    }
}

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ec == std::errc() ? p : buf);
}

std::string serialize(const ScenarioFile& s) {
    std::ostringstream o;
    o << "name = " << s.name << "\n\n"
      << "[model]\n"
      << "omega0 = " << format_double(s.omega0) << "\n"
      << "g = " << format_double(s.g) << "\n"
      << "r = " << format_double(s.r) << "\n"
      << "u = " << format_double(s.u) << "\n"
      << "deformation = " << to_string(s.deformation) << "\n\n"
      << "[initial]\n"
      << "kind = " << to_string(s.initial) << "\n"
      << "alpha = " << format_double(s.alpha) << "\n"
      << "alpha_imag = " << format_double(s.alpha_imag) << "\n"
      << "n_a = " << s.n_a << "\n"
      << "n_b = " << s.n_b << "\n\n"
      << "[numerics]\n"
      << "dim_a = " << s.dim_a << "\n"
      << "dim_b = " << s.dim_b << "\n"
      << "dt = " << format_double(s.dt) << "\n"
      << "t_max = " << format_double(s.t_max) << "\n"
      << "sample_every = " << s.sample_every << "\n"
      << "path = " << to_string(s.path) << "\n\n"
      << "[outputs]\n"
      << "columns = ";
    for (std::size_t i = 0; i < s.columns.size(); ++i) o << (i ? "," : "") << s.columns[i];
    o << "\n";
    if (!s.output.empty()) o << "path = " << s.output << "\n";
    return o.str();
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& preset_ids() {
    static const std::vector<std::string> ids{"fig1a", "fig1b", "fig1c", "fig2a",
                                              "fig2b", "fig2c", "fig3",  "fock-control"};
    return ids;
}

ScenarioFile preset(std::string_view id) {
    ScenarioFile s;
    s.name = std::string(id);
    s.omega0 = 1.0;
    s.g = 0.1;
    s.alpha = 1.0;
    auto chiral_mirror = [&](double r) {
        s.r = r;
        s.u = 0.0;
        s.deformation = Deformation::Identity;
        // 20 levels: at 10 the truncated coherent tail alone entangles the
        // beam-splitter output at the 1e-4 bit level for r = 2.
        s.dim_a = s.dim_b = 20;
        s.t_max = 100.0;
    };
    auto soliton_plasmon = [&](double r) {
        s.r = r;
        s.u = -0.01;
        s.deformation = Deformation::SqrtN;
        s.dim_a = s.dim_b = 10;
        s.t_max = 200.0;
    };
    if (id == "fig1a") chiral_mirror(1.0);
    else if (id == "fig1b") chiral_mirror(0.5);
    else if (id == "fig1c") chiral_mirror(2.0);
    else if (id == "fig2a") soliton_plasmon(1.0);
    else if (id == "fig2b") soliton_plasmon(0.5);
    else if (id == "fig2c") soliton_plasmon(2.0);
    else if (id == "fig3") {
        soliton_plasmon(1.0);
        s.columns = {"t", "n_a", "n_b", "n_total", "purity", "entropy_a", "entropy_b", "log_trace",
                     "trunc_tail", "path_discrepancy"};
    } else if (id == "fock-control") {
        chiral_mirror(2.0);
        s.dim_a = s.dim_b = 10;
        s.initial = InitialKind::Fock;
        s.n_a = 1;
        s.n_b = 0;
    } else {
        throw ValidationError("preset", "unknown preset '" + std::string(id) + "'");
    }
    return s;
}

// ---------------------------------------------------------------------------

namespace {

double column_value(const SampleRow& r, const std::string& c) {
    if (c == "t") return r.t;
    if (c == "n_a") return r.n_a;
    if (c == "n_b") return r.n_b;
    if (c == "n_total") return r.n_total;
    if (c == "purity") return r.purity;
    if (c == "entropy_a") return r.entropy_a;
    if (c == "entropy_b") return r.entropy_b;
    if (c == "log_trace") return r.log_trace;
    if (c == "trunc_tail") return r.trunc_tail;
    if (c == "path_discrepancy") return r.path_discrepancy;
    if (c == "rate_fd") return r.rate_fd;
    if (c == "rate_heisenberg") return r.rate_heisenberg;
    if (c == "rate_number") return r.rate_number;
    throw ValidationError("outputs.columns", "unknown column '" + c + "'");
}

}  // namespace

std::string to_csv(const TimeSeries& series, const std::vector<std::string>& columns) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const SampleRow& r : series.rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += format_double(column_value(r, columns[i]));
        }
        out += '\n';
    }
    return out;
}

std::string summary_line(const std::string& name, const TimeSeries& series) {
    double n_min = 0.0, n_max = 0.0, s_max = 0.0;
    if (!series.rows.empty()) {
        n_min = n_max = series.rows.front().n_total;
        for (const SampleRow& r : series.rows) {
            n_min = std::min(n_min, r.n_total);
            n_max = std::max(n_max, r.n_total);
            s_max = std::max(s_max, r.entropy_a);
        }
    }
    std::ostringstream o;
    o << name << ": rows=" << series.rows.size() << " n_total_min=" << format_double(n_min)
      << " n_total_max=" << format_double(n_max) << " entropy_max=" << format_double(s_max);
    if (!series.warnings.empty()) o << " warnings=" << series.warnings.size();
    return o.str();
}

RunResult run_scenario(const ScenarioFile& scenario, const std::filesystem::path& out_dir) {
    validate(scenario);
    RunResult res;
    res.scenario = scenario;
    res.series = evolve(scenario.to_config());
    const std::filesystem::path file = scenario.output.empty() ? std::filesystem::path(scenario.name + ".csv")
                                                               : std::filesystem::path(scenario.output);
    res.csv_path = file.is_absolute() ? file : out_dir / file;
    if (res.csv_path.has_parent_path()) std::filesystem::create_directories(res.csv_path.parent_path());
    std::ofstream f(res.csv_path, std::ios::binary);
    if (!f) throw Error("cannot open " + res.csv_path.string() + " for writing");
    f << to_csv(res.series, scenario.columns);
    if (!f) throw Error("failed writing " + res.csv_path.string());
    res.summary = summary_line(scenario.name, res.series);
    return res;
}

bool SweepResult::all_ok() const {
    return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok; });
}

SweepResult sweep(const ScenarioFile& base, std::string_view key, const std::vector<std::string>& grid,
                  const std::filesystem::path& out_dir, unsigned jobs) {
    if (!numeric_keys().count(key)) {
        throw ValidationError(std::string(key), "sweep parameter must be a numeric scenario field");
    }
    std::string tag(key);
    std::replace(tag.begin(), tag.end(), '.', '-');

    auto run_point = [&](const std::string& value) {
        SweepPoint p;
        p.value = value;
        try {
            ScenarioFile s = base;
            apply_setting(s, key, value);
            s.name = base.name + "__" + tag + "_" + value;
            s.output.clear();
            const RunResult r = run_scenario(s, out_dir);
            p.csv_path = r.csv_path;
            p.ok = true;
            p.message = r.summary;
        } catch (const std::exception& e) {
            p.ok = false;
            p.message = e.what();
        }
        return p;
    };

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    SweepResult res;
    res.points.reserve(grid.size());
    for (std::size_t start = 0; start < grid.size(); start += jobs) {
        std::vector<std::future<SweepPoint>> batch;
        for (std::size_t i = start; i < std::min(grid.size(), start + jobs); ++i) {
            batch.push_back(std::async(std::launch::async, run_point, grid[i]));
        }
        for (auto& f : batch) res.points.push_back(f.get());
    }

    std::filesystem::create_directories(out_dir);
    res.index_path = out_dir / (base.name + "__sweep.csv");
    std::ofstream idx(res.index_path, std::ios::binary);
    if (!idx) throw Error("cannot open " + res.index_path.string() + " for writing");
    idx << "value,status,path,message\n";
    for (const SweepPoint& p : res.points) {
        std::string msg = p.message;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        idx << p.value << ',' << (p.ok ? "ok" : "failed") << ',' << p.csv_path.string() << ',' << msg << '\n';
    }
    return res;
}

}  // namespace nhmodes
