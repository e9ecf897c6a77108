// presets.hpp — Figure presets: the canonical parameter sets of the driven
// two-level system, keyed fig1..fig12. All use B0 = 1; spans are 10 drive
// periods except fig1 (2 periods, four crossings).

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lzbloch/config.hpp"
#include "lzbloch/scenario.hpp"

namespace lzbloch::presets {

struct FigurePreset {
    std::string id;
    io::Scenario scenario;
    io::PlotKind plot{io::PlotKind::z_of_t};
};

namespace detail {

inline FigurePreset make(const std::string& id, double delta, double omega0, double gamma_r,
                         double gamma, model::RelaxationMode mode, double z0, double periods,
                         io::PlotKind plot) {
    FigurePreset fp;
    fp.id = id;
    fp.plot = plot;
    auto& sc = fp.scenario;
    sc.name = id;
    sc.system.hamiltonian.delta = delta;
    sc.system.hamiltonian.b0 = 1.0;
    sc.system.hamiltonian.omega0_freq = omega0;
    sc.system.dissipator.gamma1 = gamma_r;
    sc.system.dissipator.gamma2 = gamma_r;
    sc.system.dissipator.gamma3 = gamma;
    sc.system.relaxation_mode = mode;
    sc.initial = {0.0, 0.0, z0};
    sc.drive = dynamics::DriveSpec::cosine(1.0, omega0);
    sc.t_span = {0.0, periods * sc.drive.period()};
    return fp;
}

}  // namespace detail

inline const std::vector<FigurePreset>& figure_presets() {
    using model::RelaxationMode;
    using io::PlotKind;
    static const std::vector<FigurePreset> presets = {
        detail::make("fig1", 0.01, 0.02, 0.0, 0.0, RelaxationMode::none, 1.0, 2.0,
                     PlotKind::xyz_of_t),
        detail::make("fig2", 0.12, 0.063, 0.0, 0.0, RelaxationMode::none, -1.0, 10.0,
                     PlotKind::z_of_t),
        detail::make("fig3", 0.12, 0.0682, 0.0, 0.0, RelaxationMode::none, -1.0, 10.0,
                     PlotKind::z_of_t),
        detail::make("fig4", 0.12, 0.0682, 0.0, 0.0, RelaxationMode::none, -1.0, 10.0,
                     PlotKind::xyz_of_t),
        detail::make("fig5", 0.12, 0.0682, 0.0, 0.0, RelaxationMode::none, -1.0, 10.0,
                     PlotKind::z_of_b),
        detail::make("fig6", 0.3, 0.033, 0.01, 0.0, RelaxationMode::homogeneous, 1.0, 10.0,
                     PlotKind::z_of_b),
        detail::make("fig7", 0.12, 0.0682, 0.01, 0.0, RelaxationMode::homogeneous, -1.0, 10.0,
                     PlotKind::z_of_t),
        detail::make("fig8", 0.05, 0.02, 0.035, 0.07, RelaxationMode::sign_following, -1.0,
                     10.0, PlotKind::z_of_b),
        detail::make("fig9", 0.05, 0.02, 0.035, 0.07, RelaxationMode::sign_following, -1.0,
                     10.0, PlotKind::z_of_t),
        detail::make("fig10", 0.05, 0.02, 0.01, 0.02, RelaxationMode::sign_following, -1.0,
                     10.0, PlotKind::z_of_b),
        detail::make("fig11", 0.12, 0.0682, 0.01, 0.02, RelaxationMode::sign_following, -1.0,
                     10.0, PlotKind::z_of_t),
        detail::make("fig12", 0.12, 0.0682, 0.01, 0.02, RelaxationMode::sign_following, -1.0,
                     10.0, PlotKind::z_of_b),
    };
    return presets;
}

inline const FigurePreset& figure_preset(const std::string& id) {
    for (const auto& fp : figure_presets())
        if (fp.id == id) return fp;
    throw std::invalid_argument("unknown figure preset: " + id);
}

// Attach the standard output file names under a directory.
inline io::Scenario with_outputs(const FigurePreset& fp, const std::string& outdir) {
    io::Scenario sc = fp.scenario;
    const std::string base = outdir.empty() ? fp.id : outdir + "/" + fp.id;
    sc.outputs.trajectory_csv = base + "_trajectory.csv";
    sc.outputs.events_csv = base + "_events.csv";
    sc.outputs.stats_csv = base + "_stats.csv";
    if (fp.plot == io::PlotKind::z_of_b) sc.outputs.loop_csv = base + "_loops.csv";
    sc.outputs.svg_plot = base + ".svg";
    return sc;
}

}  // namespace lzbloch::presets
