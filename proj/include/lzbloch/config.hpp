// config.hpp — Scenario files: UTF-8 key = value text with [system], [drive],
// [integrator] and [outputs] tables. Unknown keys and tables are errors.

#pragma once

#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lzbloch/dynamics.hpp"
#include "lzbloch/model.hpp"

namespace lzbloch::io {

struct OutputSpec {
    std::string trajectory_csv;
    std::string events_csv;
    std::string loop_csv;
    std::string stats_csv;
    std::string spectrum_csv;
    std::string svg_plot;
};

struct Scenario {
    std::string name;
    model::SystemParams system;
    dynamics::DriveSpec drive;
    model::BlochState initial{0.0, 0.0, -1.0};
    std::array<double, 2> t_span{0.0, 0.0};
    dynamics::IntegratorConfig integrator;
    OutputSpec outputs;

    void validate() const {
        system.validate();
        drive.validate();
        integrator.validate();
        if (!(t_span[1] > t_span[0]))
            throw std::invalid_argument("scenario: t_end must exceed t_start");
        std::set<std::string> paths;
        for (const std::string* p : {&outputs.trajectory_csv, &outputs.events_csv,
                                     &outputs.loop_csv, &outputs.stats_csv,
                                     &outputs.spectrum_csv, &outputs.svg_plot}) {
            if (p->empty()) continue;
            if (!paths.insert(*p).second)
                throw std::invalid_argument("scenario: duplicate output path " + *p);
        }
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_number(const std::string& v, const std::string& key) {
    size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for '" + key + "': " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("bad numeric value for '" + key + "': " + v);
    return out;
}

inline std::string unquote(const std::string& v) {
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                          (v.front() == '\'' && v.back() == '\'')))
        return v.substr(1, v.size() - 2);
    return v;
}

}  // namespace detail

// key/value pairs grouped by table; "" is the top level
using ConfigTables = std::map<std::string, std::vector<std::pair<std::string, std::string>>>;

inline ConfigTables parse_config_text(const std::string& text) {
    ConfigTables tables;
    std::istringstream in(text);
    std::string line, table;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": malformed table header");
            table = detail::trim(line.substr(1, line.size() - 2));
            tables[table];
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        tables[table].emplace_back(key, value);
    }
    return tables;
}

inline model::RelaxationMode parse_relaxation_mode(const std::string& v) {
    const std::string s = detail::unquote(v);
    if (s == "none") return model::RelaxationMode::none;
    if (s == "homogeneous") return model::RelaxationMode::homogeneous;
    if (s == "sign_following") return model::RelaxationMode::sign_following;
    throw std::invalid_argument("unknown relaxation_mode: " + s);
}

// [system] table per the parameter-file interface; used by scenarios and by
// `cp-check` parameter files.
inline void apply_system_key(model::SystemParams& p, const std::string& key,
                             const std::string& value) {
    auto& h = p.hamiltonian;
    auto& d = p.dissipator;
    if (key == "delta") h.delta = detail::parse_number(value, key);
    else if (key == "delta_prime") h.delta_prime = detail::parse_number(value, key);
    else if (key == "b0") h.b0 = detail::parse_number(value, key);
    else if (key == "omega0") h.omega0_freq = detail::parse_number(value, key);
    else if (key == "gamma1") d.gamma1 = detail::parse_number(value, key);
    else if (key == "gamma2") d.gamma2 = detail::parse_number(value, key);
    else if (key == "gamma3") d.gamma3 = detail::parse_number(value, key);
    else if (key == "alpha") d.alpha = detail::parse_number(value, key);
    else if (key == "beta") d.beta = detail::parse_number(value, key);
    else if (key == "gamma_sym") d.gamma_sym = detail::parse_number(value, key);
    else if (key == "c1") d.c1 = detail::parse_number(value, key);
    else if (key == "c2") d.c2 = detail::parse_number(value, key);
    else if (key == "c3") d.c3 = detail::parse_number(value, key);
    else if (key == "relaxation_mode") p.relaxation_mode = parse_relaxation_mode(value);
    else throw std::invalid_argument("unknown key in [system]: " + key);
}

inline Scenario scenario_from_tables(const ConfigTables& tables) {
    Scenario sc;
    bool drive_kind_linear = false;
    double drive_slope = 0.0;
    bool have_t_start = false, have_t_end = false;

    for (const auto& [table, entries] : tables) {
        if (table.empty()) {
            for (const auto& [key, value] : entries) {
                if (key == "name") sc.name = detail::unquote(value);
                else if (key == "t_start") { sc.t_span[0] = detail::parse_number(value, key); have_t_start = true; }
                else if (key == "t_end") { sc.t_span[1] = detail::parse_number(value, key); have_t_end = true; }
                else if (key == "x0") sc.initial.x = detail::parse_number(value, key);
                else if (key == "y0") sc.initial.y = detail::parse_number(value, key);
                else if (key == "z0") sc.initial.z = detail::parse_number(value, key);
                else throw std::invalid_argument("unknown top-level key: " + key);
            }
        } else if (table == "system") {
            for (const auto& [key, value] : entries) apply_system_key(sc.system, key, value);
        } else if (table == "drive") {
            for (const auto& [key, value] : entries) {
                if (key == "kind") {
                    const std::string v = detail::unquote(value);
                    if (v == "cosine") drive_kind_linear = false;
                    else if (v == "linear_sweep") drive_kind_linear = true;
                    else throw std::invalid_argument("unknown drive kind: " + v);
                } else if (key == "slope") {
                    drive_slope = detail::parse_number(value, key);
                } else {
                    throw std::invalid_argument("unknown key in [drive]: " + key);
                }
            }
        } else if (table == "integrator") {
            for (const auto& [key, value] : entries) {
                if (key == "rtol") sc.integrator.rtol = detail::parse_number(value, key);
                else if (key == "atol") sc.integrator.atol = detail::parse_number(value, key);
                else if (key == "dt_max") sc.integrator.dt_max = detail::parse_number(value, key);
                else if (key == "dt_init") sc.integrator.dt_init = detail::parse_number(value, key);
                else if (key == "sample_dt") sc.integrator.sample_dt = detail::parse_number(value, key);
                else throw std::invalid_argument("unknown key in [integrator]: " + key);
            }
        } else if (table == "outputs") {
            for (const auto& [key, value] : entries) {
                const std::string v = detail::unquote(value);
                if (key == "trajectory_csv") sc.outputs.trajectory_csv = v;
                else if (key == "events_csv") sc.outputs.events_csv = v;
                else if (key == "loop_csv") sc.outputs.loop_csv = v;
                else if (key == "stats_csv") sc.outputs.stats_csv = v;
                else if (key == "spectrum_csv") sc.outputs.spectrum_csv = v;
                else if (key == "svg_plot") sc.outputs.svg_plot = v;
                else throw std::invalid_argument("unknown key in [outputs]: " + key);
            }
        } else {
            throw std::invalid_argument("unknown table: [" + table + "]");
        }
    }

    if (!have_t_start || !have_t_end)
        throw std::invalid_argument("scenario requires t_start and t_end");

    if (drive_kind_linear) {
        sc.drive = dynamics::DriveSpec::linear_sweep(drive_slope);
    } else {
        sc.drive = dynamics::DriveSpec::cosine(sc.system.hamiltonian.b0,
                                               sc.system.hamiltonian.omega0_freq);
    }
    sc.validate();
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return scenario_from_tables(parse_config_text(ss.str()));
}

// Parameter file for cp-check: a [system] table (bare keys are also accepted
// as system keys for convenience).
inline model::SystemParams load_system_params(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open parameter file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    const auto tables = parse_config_text(ss.str());
    model::SystemParams p;
    for (const auto& [table, entries] : tables) {
        if (!table.empty() && table != "system")
            throw std::invalid_argument("unknown table in parameter file: [" + table + "]");
        for (const auto& [key, value] : entries) apply_system_key(p, key, value);
    }
    return p;
}

}  // namespace lzbloch::io
