// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nhmodes/entanglement.hpp"
#include "nhmodes/model.hpp"
#include "nhmodes/scenario.hpp"
#include "nhmodes/spectral.hpp"

using namespace nhmodes;

namespace {

// A scalar a criterion is decided on, with the tolerance it is judged against.
struct Quantity {
    std::string name;
    double value;
    double tol;
};

struct Outcome {
    bool pass = true;
    std::vector<Quantity> quantities;
    std::string detail;
};

// Evolutions keyed by their config, so identical physics runs once.
class RunCache {
public:
    const TimeSeries& get(const ScenarioFile& s) {
        const SimulationConfig c = s.to_config();
        for (const auto& [config, series] : runs_) {
            if (config == c) return series;
        }
        const auto t0 = std::chrono::steady_clock::now();
        runs_.emplace_back(c, evolve(c));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::fprintf(stderr, "  evolved %s (dt=%g) in %.1f s\n", s.name.c_str(), s.dt, secs);
        return runs_.back().second;
    }

private:
    std::vector<std::pair<SimulationConfig, TimeSeries>> runs_;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double max_of(const TimeSeries& ts, const std::function<double(const SampleRow&)>& f) {
    double m = -std::numeric_limits<double>::infinity();
    for (const SampleRow& r : ts.rows) {
        const double v = f(r);
        m = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::max(m, v);
    }
    return m;
}

double min_of(const TimeSeries& ts, const std::function<double(const SampleRow&)>& f) {
    return -max_of(ts, [&](const SampleRow& r) { return -f(r); });
}

// Trapezoidal time average over the sampled rows.
double time_average(const TimeSeries& ts, double SampleRow::*field) {
    const auto& rows = ts.rows;
    if (rows.size() < 2) return rows.empty() ? 0.0 : rows.front().*field;
    double acc = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        acc += 0.5 * (rows[i].*field + rows[i - 1].*field) * (rows[i].t - rows[i - 1].t);
    }
    return acc / (rows.back().t - rows.front().t);
}

class Acceptance {
public:
    // shrink = 2 evaluates everything at dt/2 with the same sample times.
    Acceptance(RunCache& cache, int shrink) : cache_(cache), shrink_(shrink) {}

    const TimeSeries& run(const std::string& id, double r_override = 0.0) {
        ScenarioFile s = preset(id);
        if (r_override != 0.0) s.r = r_override;
        s.dt /= shrink_;
        s.sample_every *= shrink_;
        return cache_.get(s);
    }

    Outcome criterion(int k) {
        switch (k) {
            case 1: return hermitian_conservation();
            case 2: return fock_control();
            case 3: return loss_regime();
            case 4: return amplification();
            case 5: return linear_entanglement();
            case 6: return nonlinear_entanglement();
            case 7: return plasmon_excess();
            case 8: return rate_triangle();
            case 9: return purity_and_paths();
            default: return {};
        }
    }

private:
    static void add(Outcome& o, std::string name, double value, double tol) {
        o.detail += (o.detail.empty() ? "" : " ") + name + "=" + fmt(value);
        o.quantities.push_back({std::move(name), value, tol});
    }

    Outcome hermitian_conservation() {
        const TimeSeries& ts = run("fig1a");
        const double g = preset("fig1a").g;
        Outcome o;
        const double dn = max_of(ts, [](const SampleRow& r) { return std::abs(r.n_total - 1.0); });
        const double da = max_of(ts, [g](const SampleRow& r) {
            const double c = std::cos(g * r.t);
            return std::abs(r.n_a - c * c);
        });
        add(o, "max|N-1|", dn, 1e-6);
        add(o, "max|n_a-cos^2(gt)|", da, 1e-4);
        o.pass = dn < 1e-6 && da < 1e-4;
        return o;
    }

    Outcome fock_control() {
        const TimeSeries& ts = run("fock-control");
        Outcome o;
        const double dn = max_of(ts, [](const SampleRow& r) { return std::abs(r.n_total - 1.0); });
        add(o, "max|N-1|", dn, 1e-6);
        o.pass = dn < 1e-6;
        return o;
    }

    Outcome loss_regime() {
        const TimeSeries& ts = run("fig1b");
        Outcome o;
        const double hi = max_of(ts, [](const SampleRow& r) { return r.n_total; });
        const double lo = min_of(ts, [](const SampleRow& r) { return r.n_total; });
        add(o, "max N", hi, 1e-6);
        add(o, "min N", lo, 1e-6);
        o.pass = hi <= 1.0 + 1e-6 && lo < 0.9;
        return o;
    }

    Outcome amplification() {
        const TimeSeries& ts = run("fig1c");
        Outcome o;
        const double hi = max_of(ts, [](const SampleRow& r) { return r.n_total; });
        add(o, "max N", hi, 1e-6);
        o.pass = hi > 1.05;
        return o;
    }

    Outcome linear_entanglement() {
        Outcome o;
        for (const char* id : {"fig1b", "fig1a", "fig1c"}) {
            const TimeSeries& ts = run(id);
            const double s = max_of(ts, [](const SampleRow& r) { return r.entropy_a; });
            add(o, std::string("max S(") + id + ")", s, 1e-9);
            o.pass = o.pass && s < 1e-9;
        }
        return o;
    }

    Outcome nonlinear_entanglement() {
        Outcome o;
        const double ceiling = std::log2(10.0) - 0.1;
        double max_low = 0.0, max_high = 0.0;
        for (double r : {0.5, 1.0, 2.0}) {
            const TimeSeries& ts = run("fig3", r);
            const double s = max_of(ts, [](const SampleRow& row) { return row.entropy_a; });
            // smallest entropy after the first sample at or above 1e-2
            double after = -1.0;
            auto it = std::find_if(ts.rows.begin(), ts.rows.end(), [](const SampleRow& row) { return row.entropy_a >= 1e-2; });
            if (it != ts.rows.end()) {
                after = it->entropy_a;
                for (; it != ts.rows.end(); ++it) after = std::min(after, it->entropy_a);
            }
            const std::string tag = "(r=" + fmt(r) + ")";
            add(o, "max S" + tag, s, 1e-3);
            add(o, "min S after crossing" + tag, after, 1e-3);
            o.pass = o.pass && s > 0.1 && s < ceiling && after > 1e-3;
            if (r == 0.5) max_low = s;
            if (r == 2.0) max_high = s;
        }
        o.pass = o.pass && max_high > max_low;
        return o;
    }

    Outcome plasmon_excess() {
        const TimeSeries& ts = run("fig2c");
        Outcome o;
        const double nb = time_average(ts, &SampleRow::n_b);
        const double na = time_average(ts, &SampleRow::n_a);
        add(o, "avg n_b", nb, 1e-6);
        add(o, "avg n_a", na, 1e-6);
        o.pass = nb > na;
        return o;
    }

    Outcome rate_triangle() {
        Outcome o;
        for (const std::string& id : preset_ids()) {
            const TimeSeries& ts = run(id);
            const double d = max_of(ts, [](const SampleRow& r) {
                return std::max({std::abs(r.rate_fd - r.rate_heisenberg), std::abs(r.rate_fd - r.rate_number),
                                 std::abs(r.rate_heisenberg - r.rate_number)});
            });
            add(o, "max rate gap(" + id + ")", d, 1e-6);
            o.pass = o.pass && d < 1e-6;
        }
        return o;
    }

    Outcome purity_and_paths() {
        Outcome o;
        double worst_purity = 0.0, worst_path = 0.0;
        for (const std::string& id : preset_ids()) {
            const TimeSeries& ts = run(id);
            worst_purity = std::max(worst_purity, max_of(ts, [](const SampleRow& r) { return std::abs(r.purity - 1.0); }));
            worst_path = std::max(worst_path, ts.max_path_discrepancy);
        }
        add(o, "max|purity-1|", worst_purity, 1e-8);
        add(o, "max path discrepancy", worst_path, 1e-8);
        o.pass = worst_purity < 1e-8 && worst_path < 1e-8;
        return o;
    }

    RunCache& cache_;
    int shrink_;
};

Outcome spectral_identities() {
    Outcome o;
    double iso = 0.0;
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            ModelSpec m;
            m.g_ab = -0.2 + 0.02 * i;
            m.g_ba = -0.2 + 0.02 * j;
            const BlockPair p = single_excitation_blocks(m);
            const auto [l0, l1] = block_eigenvalues(p.h_local);
            const auto [n0, n1] = block_eigenvalues(p.h_nonlocal);
            iso = std::max(iso, std::min(std::max(std::abs(l0 - n0), std::abs(l1 - n1)),
                                         std::max(std::abs(l0 - n1), std::abs(l1 - n0))));
        }
    }
    double spin = 0.0;
    const ModeDims dims(10, 10);
    for (double r : {0.5, 1.0, 2.0}) {
        const ModelSpec m = ModelSpec::from_asymmetry(1.0, 0.1, r, 0.0, Deformation::Identity);
        spin = std::max(spin, build_spin_form(m, dims).max_abs_diff(build_hamiltonian(m, dims)));
    }
    o.detail = "max eigenvalue gap=" + fmt(iso) + " max|H_spin-H|=" + fmt(spin);
    o.pass = iso < 1e-12 && spin < 1e-12;
    return o;
}

const char* title(int k) {
    static const char* const names[] = {"",
                                        "Hermitian conservation (fig1a)",
                                        "Fock control",
                                        "loss regime (fig1b)",
                                        "amplification regime (fig1c)",
                                        "zero entanglement in the linear model",
                                        "nonlinear entanglement (fig3)",
                                        "plasmon over-excitation (fig2c)",
                                        "rate consistency triangle",
                                        "purity and path equivalence",
                                        "spectral identities",
                                        "step-halving convergence"};
    return names[k];
}

void report(int k, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << title(k) << " [" << o.detail << "]"
              << std::endl;
}

}  // namespace

int main() {
    try {
        RunCache cache;
        Acceptance base(cache, 1);
        Acceptance half(cache, 2);
        bool all = true;
        std::vector<Outcome> outcomes;
        for (int k = 1; k <= 9; ++k) {
            outcomes.push_back(base.criterion(k));
            report(k, outcomes.back());
            all = all && outcomes.back().pass;
        }
        const Outcome spectral = spectral_identities();
        report(10, spectral);
        all = all && spectral.pass;

        Outcome conv;
        double worst_ratio = 0.0;
        std::string worst;
        for (int k = 1; k <= 9; ++k) {
            const Outcome h = half.criterion(k);
            const auto& q = outcomes[k - 1].quantities;
            for (std::size_t i = 0; i < q.size(); ++i) {
                const double ratio = std::abs(q[i].value - h.quantities[i].value) / (q[i].tol / 10.0);
                if (!(ratio < 1.0)) conv.pass = false;
                if (!(ratio <= worst_ratio)) {
                    worst_ratio = ratio;
                    worst = std::to_string(k) + ":" + q[i].name;
                }
            }
        }
        conv.detail = "worst |change|/(tol/10)=" + fmt(worst_ratio) + " at " + worst;
        report(11, conv);
        all = all && conv.pass;
        return all ? 0 : 1;
    } catch (const std::exception& e) {
        std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
        return 2;
    }
}
