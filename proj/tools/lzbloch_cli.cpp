// lzbloch_cli.cpp — command line front end: scenario runs, figure presets,
// crossing S-matrix tables, eigenvalue scans, complete-positivity checks,
// trajectory spectra and parameter sweeps.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lzbloch/analysis.hpp"
#include "lzbloch/config.hpp"
#include "lzbloch/csv.hpp"
#include "lzbloch/dynamics.hpp"
#include "lzbloch/lz.hpp"
#include "lzbloch/model.hpp"
#include "lzbloch/presets.hpp"
#include "lzbloch/scenario.hpp"
#include "lzbloch/spectral.hpp"

namespace {

using namespace lzbloch;

struct Range {
    double lo{0.0}, hi{0.0};
    long long n{0};
};

Range parse_range(const std::string& text) {
    Range r;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    if (!(ss >> r.lo >> c1 >> r.hi >> c2 >> r.n) || c1 != ':' || c2 != ':' || !ss.eof() ||
        r.n < 1)
        throw std::invalid_argument("expected a range lo:hi:n, got: " + text);
    return r;
}

std::vector<double> range_values(const Range& r, bool log_spaced) {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(r.n));
    if (r.n == 1) {
        out.push_back(r.lo);
        return out;
    }
    if (log_spaced) {
        if (r.lo <= 0.0 || r.hi <= 0.0)
            throw std::invalid_argument("log-spaced range needs positive bounds");
        const double f = std::log(r.hi / r.lo) / static_cast<double>(r.n - 1);
        for (long long i = 0; i < r.n; ++i)
            out.push_back(r.lo * std::exp(f * static_cast<double>(i)));
    } else {
        const double step = (r.hi - r.lo) / static_cast<double>(r.n - 1);
        for (long long i = 0; i < r.n; ++i)
            out.push_back(r.lo + step * static_cast<double>(i));
    }
    return out;
}

io::PlotKind parse_plot_kind(const std::string& s) {
    if (s == "z_of_t") return io::PlotKind::z_of_t;
    if (s == "xyz_of_t") return io::PlotKind::xyz_of_t;
    if (s == "z_of_b") return io::PlotKind::z_of_b;
    throw std::invalid_argument("unknown plot kind: " + s);
}

unsigned sweep_threads(size_t n_points) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LZ_BLOCH_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::min<size_t>(n, n_points));
}

// Re-parse the scenario with one dotted key overridden, e.g. system.delta or
// drive.slope; bare keys (t_end, z0, ...) address the top level.
io::Scenario scenario_with_override(io::ConfigTables tables, const std::string& key,
                                    double value) {
    std::string table, name = key;
    const size_t dot = key.find('.');
    if (dot != std::string::npos) {
        table = key.substr(0, dot);
        name = key.substr(dot + 1);
    }
    auto& entries = tables[table];
    const std::string text = io::fmt(value);
    bool replaced = false;
    for (auto& [k, v] : entries) {
        if (k == name) {
            v = text;
            replaced = true;
        }
    }
    if (!replaced) entries.emplace_back(name, text);
    return io::scenario_from_tables(tables);
}

int cmd_simulate(const std::string& path, const std::string& plot) {
    const auto sc = io::load_scenario(path);
    io::run_scenario(sc, parse_plot_kind(plot));
    return 0;
}

int cmd_figure(const std::string& id, const std::string& outdir) {
    const auto& fp = presets::figure_preset(id);
    io::run_scenario(presets::with_outputs(fp, outdir), fp.plot);
    return 0;
}

int cmd_smatrix(const std::string& nu_list, const std::string& scan, bool log_spaced,
                const std::string& out) {
    std::vector<double> nus;
    if (!nu_list.empty()) {
        std::istringstream ss(nu_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) nus.push_back(std::stod(tok));
    }
    if (!scan.empty())
        for (double v : range_values(parse_range(scan), log_spaced)) nus.push_back(v);
    if (nus.empty()) throw std::invalid_argument("smatrix: pass --nu or --scan");
    if (out.empty()) {
        io::write_smatrix_csv(std::cout, nus);
    } else {
        auto f = io::open_out(out);
        io::write_smatrix_csv(f, nus);
    }
    return 0;
}

int cmd_eigen(const std::string& scan, double delta, double gamma_r, double gamma,
              double slope, bool asymptotic, const std::string& out) {
    model::SystemParams p;
    p.hamiltonian.delta = delta;
    p.dissipator.gamma1 = p.dissipator.gamma2 = gamma_r;
    p.dissipator.gamma3 = gamma;
    p.relaxation_mode = model::RelaxationMode::homogeneous;
    const auto times = range_values(parse_range(scan), false);
    std::vector<lz::EigenTriple> eigs;
    eigs.reserve(times.size());
    for (double t : times)
        eigs.push_back(asymptotic ? lz::eigenvalues_asymptotic(t, p, slope)
                                  : lz::eigenvalues_exact(t, p, slope));
    if (out.empty()) {
        io::write_eigen_csv(std::cout, times, eigs);
    } else {
        auto f = io::open_out(out);
        io::write_eigen_csv(f, times, eigs);
    }
    return 0;
}

int cmd_cp_check(const std::string& path, const std::string& thermal) {
    model::DissipatorParams d;
    if (!thermal.empty()) {
        double g = 0.0, n_bar = 0.0;
        char c = 0;
        std::istringstream ss(thermal);
        if (!(ss >> g >> c >> n_bar) || c != ',')
            throw std::invalid_argument("expected --thermal g,n_bar");
        d = model::thermal_bath(g, n_bar);
    } else if (!path.empty()) {
        d = io::load_system_params(path).dissipator;
    } else {
        throw std::invalid_argument("cp-check: pass a parameter file or --thermal g,n_bar");
    }
    const auto report = model::cp_audit(d);
    std::cout << io::cp_report_table(report);
    return report.pass ? 0 : 1;
}

int cmd_spectrum(const std::string& path, const std::string& component,
                 const std::string& window, const std::string& out,
                 const std::string& overlay_out, double delta, double slope,
                 double branch_phase) {
    const auto traj = io::read_trajectory_csv(path);
    spectral::Component comp;
    if (component == "x") comp = spectral::Component::X;
    else if (component == "y") comp = spectral::Component::Y;
    else if (component == "z") comp = spectral::Component::Z;
    else throw std::invalid_argument("unknown component: " + component);
    spectral::Window win;
    if (window == "hann") win = spectral::Window::hann;
    else if (window == "none") win = spectral::Window::none;
    else throw std::invalid_argument("unknown window: " + window);
    const auto spec = spectral::spectrum_of_trajectory(traj, comp, win);
    io::write_spectrum_csv(out, spec);

    if (!overlay_out.empty()) {
        if (delta == 0.0 || slope <= 0.0)
            throw std::invalid_argument("--overlay-out needs --delta and a positive --slope");
        std::vector<double> omega, measured, model;
        for (const auto& s : spec) {
            if (s.omega <= 0.0) continue;
            omega.push_back(s.omega);
            measured.push_back(std::abs(s.value));
            const auto m = comp == spectral::Component::X
                               ? spectral::x_tilde_asymptotic(s.omega, delta, slope, branch_phase)
                               : spectral::z_tilde_asymptotic(s.omega, delta, slope, branch_phase);
            model.push_back(std::abs(m));
        }
        io::write_overlay_csv(overlay_out, omega, measured, model);
    }
    return 0;
}

int cmd_sweep(const std::string& path, const std::string& vary, const std::string& out) {
    const size_t eq = vary.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("expected --vary key=lo:hi:n");
    const std::string key = vary.substr(0, eq);
    const auto values = range_values(parse_range(vary.substr(eq + 1)), false);

    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    const auto tables = io::parse_config_text(ss.str());
    {
        // validate once up front so a bad key fails before any work
        auto probe = scenario_with_override(tables, key, values.front());
        (void)probe;
    }

    struct Row {
        double value;
        io::RunSummary summary;
    };
    std::vector<Row> rows(values.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    bool validation_failure = false;
    std::string error_text;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= values.size() || failed.load()) break;
            try {
                auto sc = scenario_with_override(tables, key, values[i]);
                sc.outputs = {};  // sweep points produce summaries, not files
                const auto traj = dynamics::integrate(sc.system, sc.drive, sc.initial,
                                                      sc.t_span, sc.integrator);
                rows[i] = {values[i], io::summarize(traj)};
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                validation_failure = dynamic_cast<const std::invalid_argument*>(&e) != nullptr;
                error_text = e.what();
            }
        }
    };
    const unsigned n_threads = sweep_threads(values.size());
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) {
        if (validation_failure)
            throw std::invalid_argument("sweep point failed: " + error_text);
        throw std::runtime_error("sweep point failed: " + error_text);
    }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file = io::open_out(out);
        os = &file;
    }
    *os << "index," << key << ",x_final,y_final,z_final,z_mean,n_kinks,area_last\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& s = rows[i].summary;
        *os << i << ',' << io::fmt(rows[i].value) << ',' << io::fmt(s.final_state.x) << ','
            << io::fmt(s.final_state.y) << ',' << io::fmt(s.final_state.z) << ','
            << io::fmt(s.z_mean) << ',' << s.n_kinks << ',' << io::fmt(s.area_last) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"driven dissipative two-level system: Bloch dynamics, crossing "
                 "analytics and hysteresis tools"};
    app.require_subcommand(1);

    std::string scenario_path, plot_kind = "z_of_t";
    auto* simulate = app.add_subcommand("simulate", "run a scenario file");
    simulate->add_option("scenario", scenario_path, "scenario file")->required();
    simulate->add_option("--plot-kind", plot_kind, "z_of_t | xyz_of_t | z_of_b");

    std::string figure_id, outdir;
    auto* figure = app.add_subcommand("figure", "run a built-in preset (fig1..fig12)");
    figure->add_option("id", figure_id, "preset id")->required();
    figure->add_option("--outdir", outdir, "output directory (default: current)");

    std::string nu_list, nu_scan, table_out;
    bool log_spaced = false;
    auto* smatrix = app.add_subcommand("smatrix", "crossing S-matrix table nu,theta,phi,T");
    smatrix->add_option("--nu", nu_list, "comma-separated nu values");
    smatrix->add_option("--scan", nu_scan, "range lo:hi:n");
    smatrix->add_flag("--log", log_spaced, "log-space the scan");
    smatrix->add_option("--out", table_out, "output CSV (default: stdout)");

    std::string eigen_scan, eigen_out;
    double eigen_delta = 0.0, eigen_gamma_r = 0.0, eigen_gamma = 0.0, eigen_slope = 0.0;
    bool eigen_asym = false;
    auto* eigen = app.add_subcommand("eigen", "generator eigenvalue scan over time");
    eigen->add_option("--scan", eigen_scan, "time range lo:hi:n")->required();
    eigen->add_option("--delta", eigen_delta, "interlevel coupling")->required();
    eigen->add_option("--gamma-r", eigen_gamma_r, "transverse rate");
    eigen->add_option("--gamma", eigen_gamma, "longitudinal rate");
    eigen->add_option("--slope", eigen_slope, "sweep rate Omega")->required();
    eigen->add_flag("--asymptotic", eigen_asym, "large-time expansion instead of exact roots");
    eigen->add_option("--out", eigen_out, "output CSV (default: stdout)");

    std::string cp_path, cp_thermal;
    auto* cp = app.add_subcommand("cp-check", "complete-positivity audit of a dissipator");
    cp->add_option("params", cp_path, "parameter file with a [system] table");
    cp->add_option("--thermal", cp_thermal, "thermal bath g,n_bar instead of a file");

    std::string spec_path, spec_component = "z", spec_window = "hann",
                spec_out = "spectrum.csv", spec_overlay;
    double spec_delta = 0.0, spec_slope = 0.0, spec_phase = 0.0;
    auto* spectrum = app.add_subcommand("spectrum", "windowed DFT of a trajectory CSV");
    spectrum->add_option("trajectory", spec_path, "trajectory CSV")->required();
    spectrum->add_option("--component", spec_component, "x | y | z (default z)");
    spectrum->add_option("--window", spec_window, "hann | none (default hann)");
    spectrum->add_option("--out", spec_out, "output CSV (default spectrum.csv)");
    spectrum->add_option("--overlay-out", spec_overlay,
                         "also write measured vs asymptotic-model magnitudes");
    spectrum->add_option("--delta", spec_delta, "interlevel coupling for the overlay");
    spectrum->add_option("--slope", spec_slope, "sweep rate Omega for the overlay");
    spectrum->add_option("--branch-phase", spec_phase,
                         "phase of the undetermined branch constant (default 0)");

    std::string sweep_path, sweep_vary, sweep_out;
    auto* sweep = app.add_subcommand("sweep", "run a scenario across a parameter range");
    sweep->add_option("scenario", sweep_path, "scenario file")->required();
    sweep->add_option("--vary", sweep_vary, "key=lo:hi:n, e.g. system.delta=0.05:0.3:6")
        ->required();
    sweep->add_option("--out", sweep_out, "output CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(scenario_path, plot_kind);
        if (figure->parsed()) return cmd_figure(figure_id, outdir);
        if (smatrix->parsed()) return cmd_smatrix(nu_list, nu_scan, log_spaced, table_out);
        if (eigen->parsed())
            return cmd_eigen(eigen_scan, eigen_delta, eigen_gamma_r, eigen_gamma, eigen_slope,
                             eigen_asym, eigen_out);
        if (cp->parsed()) return cmd_cp_check(cp_path, cp_thermal);
        if (spectrum->parsed())
            return cmd_spectrum(spec_path, spec_component, spec_window, spec_out, spec_overlay,
                                spec_delta, spec_slope, spec_phase);
        if (sweep->parsed()) return cmd_sweep(sweep_path, sweep_vary, sweep_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
