// analysis.hpp — Trajectory post-processing: kink detection at drive zeros,
// per-cycle statistics, hysteresis loops in the (B, Z) plane, and pulse
// mirror-asymmetry.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lzbloch/dynamics.hpp"
#include "lzbloch/model.hpp"

namespace lzbloch::analysis {

using dynamics::DriveSpec;
using dynamics::Trajectory;

namespace detail {

inline double window_scale(const Trajectory& traj) {
    const auto& d = traj.drive_snapshot;
    if (d.periodic()) return d.period();
    return traj.times.back() - traj.times.front();
}

// boxcar smoothing, width in samples
inline std::vector<double> smooth(const std::vector<double>& z, size_t w) {
    if (w <= 1) return z;
    std::vector<double> out(z.size());
    double acc = 0.0;
    size_t lo = 0, hi = 0;  // [lo, hi) window around i
    for (size_t i = 0; i < z.size(); ++i) {
        const size_t want_lo = i > w / 2 ? i - w / 2 : 0;
        const size_t want_hi = std::min(z.size(), i + w - w / 2);
        while (hi < want_hi) acc += z[hi++];
        while (lo < want_lo) acc -= z[lo++];
        out[i] = acc / static_cast<double>(hi - lo);
    }
    return out;
}

inline double mean_between(const std::vector<double>& t, const std::vector<double>& z,
                           double a, double b) {
    const auto lo = std::lower_bound(t.begin(), t.end(), a) - t.begin();
    const auto hi = std::upper_bound(t.begin(), t.end(), b) - t.begin();
    if (hi <= lo) return std::numeric_limits<double>::quiet_NaN();
    double acc = 0.0;
    for (auto i = lo; i < hi; ++i) acc += z[i];
    return acc / static_cast<double>(hi - lo);
}

}  // namespace detail

struct KinkOptions {
    double rel_threshold{0.02};  // plateau-level jump, relative to the z range
    double abs_threshold{1e-9};
    double exclusion_frac{1.0 / 25.0};  // half-width of the crossing zone, in periods
    double extent_frac{1.0 / 5.0};      // reach of the one-sided plateau means
    double smooth_frac{1.0 / 50.0};     // boxcar width, in periods
};

// Drive-zero events where the low-pass-filtered Z jumps between the adjacent
// plateau levels: the one-sided means over [t_z +- (excl .. extent)] differ by
// more than the threshold.
inline std::vector<double> kinks(const Trajectory& traj, const KinkOptions& opt = {}) {
    std::vector<double> out;
    if (traj.events.empty() || traj.times.size() < 8) return out;
    const double P = detail::window_scale(traj);
    const double dt = traj.sample_dt > 0.0 ? traj.sample_dt : traj.times[1] - traj.times[0];

    std::vector<double> z(traj.states.size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = traj.states[i].z;
    const size_t wsm = std::max<size_t>(1, static_cast<size_t>(std::lround(P * opt.smooth_frac / dt)));
    const std::vector<double> zs = detail::smooth(z, wsm);

    const auto [zmin_it, zmax_it] = std::minmax_element(z.begin(), z.end());
    const double zrange = *zmax_it - *zmin_it;
    const double thresh = std::max(opt.rel_threshold * zrange, opt.abs_threshold);

    const double b = P * opt.exclusion_frac;
    const double a = P * opt.extent_frac;
    for (double tz : traj.events) {
        const double before = detail::mean_between(traj.times, zs, tz - a, tz - b);
        const double after = detail::mean_between(traj.times, zs, tz + b, tz + a);
        if (std::isnan(before) || std::isnan(after)) continue;
        if (std::abs(after - before) > thresh) out.push_back(tz);
    }
    return out;
}

struct CycleStats {
    int cycle_index{0};
    double z_mean{0.0}, z_min{0.0}, z_max{0.0};
    std::vector<double> kink_times;
};

namespace detail {

struct CycleWindow {
    int index;
    size_t lo, hi;  // sample range [lo, hi], inclusive endpoints
};

inline std::vector<CycleWindow> full_cycles(const Trajectory& traj, const DriveSpec& d) {
    if (!d.periodic())
        throw std::invalid_argument("cycle analysis requires a periodic (cosine) drive");
    const double P = d.period();
    const double t0 = traj.times.front();
    const double t1 = traj.times.back();
    if (t1 - t0 < P * (1.0 - 1e-9))
        throw std::invalid_argument("trajectory shorter than one drive period");
    std::vector<CycleWindow> out;
    int k = 0;
    while (t0 + (k + 1) * P <= t1 + 1e-9 * P) {
        const double a = t0 + k * P;
        const double bb = t0 + (k + 1) * P;
        const size_t lo = std::lower_bound(traj.times.begin(), traj.times.end(), a - 1e-9 * P) -
                          traj.times.begin();
        size_t hi = std::upper_bound(traj.times.begin(), traj.times.end(), bb + 1e-9 * P) -
                    traj.times.begin();
        if (hi > 0) --hi;
        if (hi <= lo) break;
        out.push_back({k, lo, hi});
        ++k;
    }
    return out;
}

}  // namespace detail

// Per-period extrema, trapezoidal mean, and the kinks inside each period.
inline std::vector<CycleStats> cycle_stats(const Trajectory& traj, const DriveSpec& d) {
    const auto windows = detail::full_cycles(traj, d);
    const auto kk = kinks(traj);
    std::vector<CycleStats> out;
    out.reserve(windows.size());
    for (const auto& w : windows) {
        CycleStats cs;
        cs.cycle_index = w.index;
        cs.z_min = cs.z_max = traj.states[w.lo].z;
        double acc = 0.0;
        for (size_t i = w.lo; i < w.hi; ++i) {
            const double za = traj.states[i].z, zb = traj.states[i + 1].z;
            acc += 0.5 * (za + zb) * (traj.times[i + 1] - traj.times[i]);
            cs.z_min = std::min({cs.z_min, zb});
            cs.z_max = std::max({cs.z_max, zb});
        }
        cs.z_mean = acc / (traj.times[w.hi] - traj.times[w.lo]);
        for (double tk : kk)
            if (tk >= traj.times[w.lo] && tk < traj.times[w.hi]) cs.kink_times.push_back(tk);
        out.push_back(std::move(cs));
    }
    return out;
}

struct HysteresisLoop {
    std::vector<std::pair<double, double>> points;  // (b, z) over one period
    double area{0.0};                               // signed shoelace area
    int cycle_index{0};

    // relative to the full Bloch-ball box 2 B0 x [-1, 1]
    double normalized_area(double b0) const { return std::abs(area) / (4.0 * b0); }

    bool closed(double z_tol = 0.05) const {
        return !points.empty() &&
               std::abs(points.front().second - points.back().second) < z_tol;
    }
};

// One (B, Z) loop per full drive period; signed area by the shoelace rule.
inline std::vector<HysteresisLoop> hysteresis(const Trajectory& traj, const DriveSpec& d) {
    const auto windows = detail::full_cycles(traj, d);
    std::vector<HysteresisLoop> out;
    out.reserve(windows.size());
    for (const auto& w : windows) {
        HysteresisLoop loop;
        loop.cycle_index = w.index;
        loop.points.reserve(w.hi - w.lo + 1);
        for (size_t i = w.lo; i <= w.hi; ++i)
            loop.points.emplace_back(dynamics::drive_value(traj.times[i], d),
                                     traj.states[i].z);
        double area = 0.0;
        const size_t n = loop.points.size();
        for (size_t i = 0; i < n; ++i) {
            const auto& [b1, z1] = loop.points[i];
            const auto& [b2, z2] = loop.points[(i + 1) % n];
            area += b1 * z2 - b2 * z1;
        }
        loop.area = 0.5 * area;
        out.push_back(std::move(loop));
    }
    return out;
}

// Per period: L2 mismatch between Z(t) and its mirror about the period
// midpoint, normalized by the signal norm. Zero for specular-symmetric pulses.
inline std::vector<double> pulse_asymmetry(const Trajectory& traj, const DriveSpec& d) {
    const auto windows = detail::full_cycles(traj, d);
    std::vector<double> out;
    out.reserve(windows.size());
    for (const auto& w : windows) {
        const double tm = 0.5 * (traj.times[w.lo] + traj.times[w.hi]);
        double num = 0.0, den = 0.0;
        for (size_t i = w.lo; i <= w.hi; ++i) {
            const double t_m = 2.0 * tm - traj.times[i];
            // linear interpolation of z at the mirrored time
            const auto it = std::lower_bound(traj.times.begin() + w.lo,
                                             traj.times.begin() + w.hi + 1, t_m);
            size_t j = static_cast<size_t>(it - traj.times.begin());
            if (j <= w.lo) j = w.lo + 1;
            if (j > w.hi) j = w.hi;
            const double ta = traj.times[j - 1], tb = traj.times[j];
            const double s = tb > ta ? (t_m - ta) / (tb - ta) : 0.0;
            const double zm =
                (1.0 - s) * traj.states[j - 1].z + s * traj.states[j].z;
            const double z = traj.states[i].z;
            num += (z - zm) * (z - zm);
            den += z * z;
        }
        out.push_back(den > 1e-300 ? std::sqrt(num / den) : 0.0);
    }
    return out;
}

}  // namespace lzbloch::analysis
