// scenario.hpp — Runs a Scenario end to end: integration, post-processing,
// and the requested CSV/SVG outputs.

#pragma once

#include <string>
#include <vector>

#include "lzbloch/analysis.hpp"
#include "lzbloch/config.hpp"
#include "lzbloch/csv.hpp"
#include "lzbloch/dynamics.hpp"
#include "lzbloch/spectral.hpp"
#include "lzbloch/svg.hpp"

namespace lzbloch::io {

enum class PlotKind { z_of_t, xyz_of_t, z_of_b };

struct RunSummary {
    model::BlochState final_state;
    double z_mean{0.0};       // trapezoidal mean of Z over the whole span
    size_t n_kinks{0};
    double area_last{0.0};    // signed loop area of the last full cycle, 0 if none
};

inline RunSummary summarize(const dynamics::Trajectory& traj) {
    RunSummary s;
    s.final_state = traj.states.back();
    double acc = 0.0;
    for (size_t i = 0; i + 1 < traj.times.size(); ++i)
        acc += 0.5 * (traj.states[i].z + traj.states[i + 1].z) *
               (traj.times[i + 1] - traj.times[i]);
    s.z_mean = acc / (traj.times.back() - traj.times.front());
    s.n_kinks = analysis::kinks(traj).size();
    if (traj.drive_snapshot.periodic() &&
        traj.times.back() - traj.times.front() >= traj.drive_snapshot.period()) {
        const auto loops = analysis::hysteresis(traj, traj.drive_snapshot);
        if (!loops.empty()) s.area_last = loops.back().area;
    }
    return s;
}

inline void write_svg_plot(const std::string& path, const dynamics::Trajectory& traj,
                           PlotKind kind, const std::string& title) {
    std::vector<svg::Series> series;
    auto collect = [&](auto f, const std::string& name) {
        svg::Series s;
        s.name = name;
        s.points.reserve(traj.times.size());
        for (size_t i = 0; i < traj.times.size(); ++i)
            s.points.emplace_back(traj.times[i], f(traj.states[i]));
        series.push_back(std::move(s));
    };
    switch (kind) {
        case PlotKind::z_of_t:
            collect([](const model::BlochState& s) { return s.z; }, "Z");
            svg::write_line_chart(path, title, "t", "Z", series);
            break;
        case PlotKind::xyz_of_t:
            collect([](const model::BlochState& s) { return s.x; }, "X");
            collect([](const model::BlochState& s) { return s.y; }, "Y");
            collect([](const model::BlochState& s) { return s.z; }, "Z");
            svg::write_line_chart(path, title, "t", "X, Y, Z", series);
            break;
        case PlotKind::z_of_b: {
            svg::Series s;
            s.name = "Z";
            s.points.reserve(traj.times.size());
            for (size_t i = 0; i < traj.times.size(); ++i)
                s.points.emplace_back(
                    dynamics::drive_value(traj.times[i], traj.drive_snapshot),
                    traj.states[i].z);
            series.push_back(std::move(s));
            svg::write_line_chart(path, title, "B", "Z", series);
            break;
        }
    }
}

// Integrate and write every requested output. Returns the trajectory.
inline dynamics::Trajectory run_scenario(const Scenario& sc, PlotKind plot = PlotKind::z_of_t) {
    sc.validate();
    const auto traj =
        dynamics::integrate(sc.system, sc.drive, sc.initial, sc.t_span, sc.integrator);

    if (!sc.outputs.trajectory_csv.empty()) write_trajectory_csv(sc.outputs.trajectory_csv, traj);
    if (!sc.outputs.events_csv.empty()) write_events_csv(sc.outputs.events_csv, traj);

    const bool cycles_available = sc.drive.periodic() &&
                                  sc.t_span[1] - sc.t_span[0] >= sc.drive.period();
    if (!sc.outputs.loop_csv.empty()) {
        if (!cycles_available)
            throw std::invalid_argument("loop_csv requires at least one full drive period");
        write_loops_csv(sc.outputs.loop_csv, analysis::hysteresis(traj, sc.drive));
    }
    if (!sc.outputs.stats_csv.empty()) {
        if (!cycles_available)
            throw std::invalid_argument("stats_csv requires at least one full drive period");
        write_stats_csv(sc.outputs.stats_csv, analysis::cycle_stats(traj, sc.drive),
                        analysis::hysteresis(traj, sc.drive),
                        analysis::pulse_asymmetry(traj, sc.drive));
    }
    if (!sc.outputs.spectrum_csv.empty())
        write_spectrum_csv(sc.outputs.spectrum_csv,
                           spectral::spectrum_of_trajectory(traj, spectral::Component::Z));
    if (!sc.outputs.svg_plot.empty())
        write_svg_plot(sc.outputs.svg_plot, traj, plot, sc.name.empty() ? "trajectory" : sc.name);
    return traj;
}

}  // namespace lzbloch::io
