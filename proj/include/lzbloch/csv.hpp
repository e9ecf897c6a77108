// csv.hpp — CSV writers and readers for trajectories, loops, statistics and
// spectra. Doubles are written with 17 significant digits so values survive
// a write/read round trip bit-exactly.

#pragma once

#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lzbloch/analysis.hpp"
#include "lzbloch/dynamics.hpp"
#include "lzbloch/lz.hpp"
#include "lzbloch/model.hpp"
#include "lzbloch/spectral.hpp"

namespace lzbloch::io {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // '\n' line endings everywhere
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    return f;
}

inline void write_trajectory_csv(const std::string& path, const dynamics::Trajectory& traj) {
    auto f = open_out(path);
    f << "t,x,y,z,omega0\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const auto& s = traj.states[i];
        f << fmt(traj.times[i]) << ',' << fmt(s.x) << ',' << fmt(s.y) << ',' << fmt(s.z)
          << ',' << fmt(dynamics::drive_value(traj.times[i], traj.drive_snapshot)) << '\n';
    }
}

inline void write_events_csv(const std::string& path, const dynamics::Trajectory& traj) {
    auto f = open_out(path);
    f << "t_zero\n";
    for (double e : traj.events) f << fmt(e) << '\n';
}

inline void write_loops_csv(const std::string& path,
                            const std::vector<analysis::HysteresisLoop>& loops) {
    auto f = open_out(path);
    f << "cycle,b,z\n";
    for (const auto& loop : loops)
        for (const auto& [b, z] : loop.points)
            f << loop.cycle_index << ',' << fmt(b) << ',' << fmt(z) << '\n';
}

inline void write_stats_csv(const std::string& path,
                            const std::vector<analysis::CycleStats>& stats,
                            const std::vector<analysis::HysteresisLoop>& loops,
                            const std::vector<double>& asymmetry) {
    auto f = open_out(path);
    f << "cycle,z_mean,z_min,z_max,n_kinks,area,asymmetry\n";
    for (size_t i = 0; i < stats.size(); ++i) {
        const auto& s = stats[i];
        f << s.cycle_index << ',' << fmt(s.z_mean) << ',' << fmt(s.z_min) << ','
          << fmt(s.z_max) << ',' << s.kink_times.size() << ','
          << fmt(i < loops.size() ? loops[i].area : 0.0) << ','
          << fmt(i < asymmetry.size() ? asymmetry[i] : 0.0) << '\n';
    }
}

inline void write_spectrum_csv(const std::string& path,
                               const std::vector<spectral::SpectralSample>& spec) {
    auto f = open_out(path);
    f << "omega,re,im,abs\n";
    for (const auto& s : spec)
        f << fmt(s.omega) << ',' << fmt(s.value.real()) << ',' << fmt(s.value.imag()) << ','
          << fmt(std::abs(s.value)) << '\n';
}

inline void write_overlay_csv(const std::string& path, const std::vector<double>& omega,
                              const std::vector<double>& measured,
                              const std::vector<double>& model) {
    auto f = open_out(path);
    f << "omega,measured_abs,model_abs\n";
    for (size_t i = 0; i < omega.size(); ++i)
        f << fmt(omega[i]) << ',' << fmt(measured[i]) << ',' << fmt(model[i]) << '\n';
}

inline void write_smatrix_csv(std::ostream& f, const std::vector<double>& nus) {
    f << "nu,theta,phi,T\n";
    for (double nu : nus) {
        const auto sd = lz::s_matrix(nu);
        f << fmt(nu) << ',' << fmt(sd.theta) << ',' << fmt(sd.phi) << ','
          << fmt(lz::transfer_ratio(nu)) << '\n';
    }
}

inline void write_eigen_csv(std::ostream& f, const std::vector<double>& times,
                            const std::vector<lz::EigenTriple>& eigs) {
    f << "t,re_p1,im_p1,re_p2,im_p2,re_p3,im_p3\n";
    for (size_t i = 0; i < times.size(); ++i) {
        f << fmt(times[i]);
        for (const auto& p : eigs[i].p) f << ',' << fmt(p.real()) << ',' << fmt(p.imag());
        f << '\n';
    }
}

inline std::string cp_report_table(const model::CpReport& r) {
    std::ostringstream os;
    os << "inequality,residual,pass\n";
    for (const auto& q : r.inequalities)
        os << q.id << ',' << fmt(q.residual) << ',' << (q.pass ? "true" : "false") << '\n';
    os << "overall,," << (r.pass ? "true" : "false") << '\n';
    return os.str();
}

// Reads a trajectory CSV written by write_trajectory_csv (the omega0 column
// is optional and ignored).
inline dynamics::Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open trajectory file: " + path);
    dynamics::Trajectory traj;
    std::string line;
    if (!std::getline(f, line)) throw std::invalid_argument("empty trajectory file: " + path);
    size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        double vals[4];
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(ss, field, ','))
                throw std::invalid_argument(path + ": malformed row at line " +
                                            std::to_string(lineno));
            try {
                vals[i] = std::stod(field);
            } catch (const std::exception&) {
                throw std::invalid_argument(path + ": bad number at line " +
                                            std::to_string(lineno));
            }
        }
        traj.times.push_back(vals[0]);
        traj.states.push_back({vals[1], vals[2], vals[3]});
    }
    if (traj.times.size() >= 2) traj.sample_dt = traj.times[1] - traj.times[0];
    return traj;
}

}  // namespace lzbloch::io
