// dynamics.hpp — Time-dependent Bloch generator M(t), C and the adaptive
// embedded RK5(4) integrator with drive zero-crossing events.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lzbloch/model.hpp"

namespace lzbloch::dynamics {

using model::BlochState;
using model::RelaxationMode;
using model::SystemParams;

struct DriveSpec {
    enum class Kind { cosine, linear_sweep };

    Kind kind{Kind::cosine};
    double b0{1.0};           // cosine amplitude
    double omega0_freq{0.0};  // cosine angular frequency; 0 = static bias
    double slope{0.0};        // linear sweep rate Omega
    // validity window of the linearized sweep; infinite = unconstrained
    double window_start{-std::numeric_limits<double>::infinity()};
    double window_end{std::numeric_limits<double>::infinity()};

    static DriveSpec cosine(double b0, double omega0_freq) {
        DriveSpec d;
        d.kind = Kind::cosine;
        d.b0 = b0;
        d.omega0_freq = omega0_freq;
        d.validate();
        return d;
    }

    static DriveSpec linear_sweep(double slope) {
        DriveSpec d;
        d.kind = Kind::linear_sweep;
        d.slope = slope;
        d.validate();
        return d;
    }

    static DriveSpec linear_sweep(double slope, double window_start, double window_end) {
        DriveSpec d;
        d.kind = Kind::linear_sweep;
        d.slope = slope;
        d.window_start = window_start;
        d.window_end = window_end;
        d.validate();
        return d;
    }

    bool periodic() const { return kind == Kind::cosine && omega0_freq > 0.0; }

    double period() const {
        if (!periodic())
            throw std::invalid_argument("drive has no period");
        return 2.0 * std::numbers::pi / omega0_freq;
    }

    void validate() const {
        if (kind == Kind::cosine) {
            if (b0 < 0.0) throw std::invalid_argument("cosine drive: b0 must be >= 0");
            if (omega0_freq < 0.0)
                throw std::invalid_argument("cosine drive: omega0 must be >= 0");
        } else {
            if (slope == 0.0)
                throw std::invalid_argument("linear_sweep drive: slope must be nonzero");
            if (!(window_start < window_end))
                throw std::invalid_argument("linear_sweep drive: empty window");
        }
    }
};

inline double drive_value(double t, const DriveSpec& d) {
    if (d.kind == DriveSpec::Kind::cosine) return d.b0 * std::cos(d.omega0_freq * t);
    return d.slope * t;
}

// Drive zeros within [t_begin, t_end]. For the cosine drive these are the
// closed-form times (2k+1) * pi / (2 omega0), exact to machine precision.
inline std::vector<double> find_drive_zeros(const DriveSpec& d, double t_begin, double t_end) {
    std::vector<double> zeros;
    if (t_end < t_begin) return zeros;
    if (d.kind == DriveSpec::Kind::cosine) {
        if (d.omega0_freq <= 0.0 || d.b0 == 0.0) return zeros;  // static bias: no sign change
        const double half_pi = std::numbers::pi / 2.0;
        auto zero_at = [&](long long k) {
            return static_cast<double>(2 * k + 1) * half_pi / d.omega0_freq;
        };
        long long k =
            static_cast<long long>(std::floor(t_begin * d.omega0_freq / std::numbers::pi)) - 1;
        while (zero_at(k) < t_begin) ++k;
        for (; zero_at(k) <= t_end; ++k) zeros.push_back(zero_at(k));
    } else {
        if (t_begin <= 0.0 && 0.0 <= t_end) zeros.push_back(0.0);
    }
    return zeros;
}

struct Generator {
    Eigen::Matrix3d m;
    Eigen::Vector3d c;
};

// Instantaneous generator of v' = M v + C. For sign_following relaxation the
// z drift is -gamma3 * s(t) with s(t) the sign of the drive, held constant
// between zero crossings (zero exactly at a crossing).
inline Generator generator_at(double t, const SystemParams& p, const DriveSpec& d) {
    const double w = drive_value(t, d);
    const auto& h = p.hamiltonian;
    const auto& q = p.dissipator;
    Generator g;
    g.m << -q.gamma1, q.alpha - w, q.beta + h.delta_prime,
           q.alpha + w, -q.gamma2, q.gamma_sym - h.delta,
           q.beta - h.delta_prime, q.gamma_sym + h.delta, -q.gamma3;
    if (p.relaxation_mode == RelaxationMode::sign_following) {
        const double s = static_cast<double>((w > 0.0) - (w < 0.0));
        g.c = {q.c1, q.c2, -q.gamma3 * s};
    } else {
        g.c = {q.c1, q.c2, q.c3};
    }
    return g;
}

struct IntegratorConfig {
    double rtol{1e-11};
    double atol{1e-13};
    double dt_max{0.0};     // 0 = auto: drive period / 200 (or span / 200)
    double dt_init{0.0};    // 0 = auto: dt_max / 50
    double sample_dt{0.0};  // 0 = auto: dt_max / 10

    void validate() const {
        if (rtol <= 0.0) throw std::invalid_argument("rtol must be positive");
        if (atol <= 0.0) throw std::invalid_argument("atol must be positive");
        if (dt_max < 0.0 || dt_init < 0.0 || sample_dt < 0.0)
            throw std::invalid_argument("time steps must be non-negative");
        if (dt_max > 0.0 && dt_init > dt_max)
            throw std::invalid_argument("dt_init must not exceed dt_max");
    }

    // Fill in the zero (auto) fields for a concrete drive and span.
    IntegratorConfig resolved(const DriveSpec& d, double span) const {
        IntegratorConfig c = *this;
        if (c.dt_max == 0.0) c.dt_max = d.periodic() ? d.period() / 200.0 : span / 200.0;
        if (c.dt_init == 0.0) c.dt_init = c.dt_max / 50.0;
        c.dt_init = std::min(c.dt_init, c.dt_max);
        if (c.sample_dt == 0.0) c.sample_dt = c.dt_max / 10.0;
        return c;
    }
};

struct Trajectory {
    std::vector<double> times;       // strictly increasing, uniform grid
    std::vector<BlochState> states;  // same length as times
    std::vector<double> events;      // drive zero crossings within the span
    SystemParams params_snapshot;
    DriveSpec drive_snapshot;
    double sample_dt{0.0};
};

struct IntegrationError : std::runtime_error {
    double last_time;
    IntegrationError(const std::string& what, double t)
        : std::runtime_error(what + " (last good time " + std::to_string(t) + ")"),
          last_time(t) {}
};

namespace detail {

// Dormand-Prince 5(4) tableau; row 7 is the 5th-order solution, kE the
// difference against the embedded 4th-order weights.
inline constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
inline constexpr double kE[7] = {35.0 / 384 - 5179.0 / 57600,
                                 0.0,
                                 500.0 / 1113 - 7571.0 / 16695,
                                 125.0 / 192 - 393.0 / 640,
                                 -2187.0 / 6784 + 92097.0 / 339200,
                                 11.0 / 84 - 187.0 / 2100,
                                 -1.0 / 40};
// dense-output weights of the matched continuous extension
inline constexpr double kD[7] = {-12715105075.0 / 11282082432.0,
                                 0.0,
                                 87487479700.0 / 32700410799.0,
                                 -10690763975.0 / 1880347072.0,
                                 701980252875.0 / 199316789632.0,
                                 -1453857185.0 / 822651844.0,
                                 69997945.0 / 29380423.0};

}  // namespace detail

// Integrate v' = M(t) v + C over t_span. Steps land exactly on every drive
// zero (the sign of the inhomogeneous term in sign_following mode is fixed
// per segment), output is sampled uniformly through the stepper's dense
// output, and every sampled state is checked against the physicality bound.
// The requested sample_dt is rounded so the grid hits both span endpoints.
inline Trajectory integrate(const SystemParams& p, const DriveSpec& d, const BlochState& v0,
                            std::array<double, 2> t_span, const IntegratorConfig& cfg = {}) {
    p.validate();
    d.validate();
    cfg.validate();
    const double t0 = t_span[0], t1 = t_span[1];
    if (!(t1 > t0)) throw std::invalid_argument("t_span must be a nonempty interval");
    if (!v0.physical())
        throw std::invalid_argument("initial state is outside the Bloch ball");
    if (p.relaxation_mode == RelaxationMode::sign_following &&
        d.kind == DriveSpec::Kind::cosine && d.b0 == 0.0)
        throw std::invalid_argument("sign_following relaxation needs a drive with definite sign");
    if (d.kind == DriveSpec::Kind::linear_sweep &&
        (t0 < d.window_start || t1 > d.window_end))
        throw std::invalid_argument("t_span outside the linear sweep window");

    const IntegratorConfig rc = cfg.resolved(d, t1 - t0);
    const std::vector<double> zeros = find_drive_zeros(d, t0, t1);

    // stop points: interior drive zeros, then the end of the span; zeros within
    // rounding distance of the ends would leave unsteppable slivers
    std::vector<double> stops;
    const double eps_span = 1e-12 * (t1 - t0);
    for (double z : zeros)
        if (z > t0 + eps_span && z < t1 - eps_span) stops.push_back(z);
    stops.push_back(t1);

    // uniform output grid covering both endpoints exactly
    const long long n_int =
        std::max<long long>(1, std::llround((t1 - t0) / rc.sample_dt));
    const double dt_s = (t1 - t0) / static_cast<double>(n_int);

    Trajectory traj;
    traj.events = zeros;
    traj.params_snapshot = p;
    traj.drive_snapshot = d;
    traj.sample_dt = dt_s;
    traj.times.reserve(static_cast<size_t>(n_int) + 1);
    traj.states.reserve(static_cast<size_t>(n_int) + 1);

    double seg_sign = 0.0;
    auto rhs = [&](double t, const Eigen::Vector3d& v) -> Eigen::Vector3d {
        const double w = drive_value(t, d);
        const auto& h = p.hamiltonian;
        const auto& q = p.dissipator;
        double cz = q.c3;
        if (p.relaxation_mode == RelaxationMode::sign_following) cz = -q.gamma3 * seg_sign;
        return {-q.gamma1 * v[0] + (q.alpha - w) * v[1] + (q.beta + h.delta_prime) * v[2] + q.c1,
                (q.alpha + w) * v[0] - q.gamma2 * v[1] + (q.gamma_sym - h.delta) * v[2] + q.c2,
                (q.beta - h.delta_prime) * v[0] + (q.gamma_sym + h.delta) * v[1] -
                    q.gamma3 * v[2] + cz};
    };

    auto sign_at_mid = [&](double a, double b) {
        const double w = drive_value(0.5 * (a + b), d);
        return static_cast<double>((w > 0.0) - (w < 0.0));
    };

    // the bound tracks the requested accuracy so loose-tolerance runs are not
    // rejected for their own discretization error
    const double phys_tol =
        std::min(0.5, std::max(BlochState::physical_tol, 1e4 * rc.rtol));
    auto check_physical = [phys_tol](const Eigen::Vector3d& v, double t) {
        if (v.squaredNorm() > 1.0 + phys_tol)
            throw IntegrationError("state left the Bloch ball beyond tolerance", t);
    };

    Eigen::Vector3d y = v0.vec();
    double t = t0;
    traj.times.push_back(t);
    traj.states.push_back(BlochState::from(y));
    long long next_sample = 1;

    size_t stop_idx = 0;
    seg_sign = sign_at_mid(t0, stops[0]);
    double h = std::min(rc.dt_init, stops[0] - t0);
    Eigen::Vector3d k[7];
    k[0] = rhs(t, y);
    double err_old = 1e-4;
    const double tiny = 100.0 * std::numeric_limits<double>::epsilon();

    while (t < t1) {
        const double t_stop = stops[stop_idx];
        h = std::min(h, rc.dt_max);
        bool hit_stop = false;
        if (t + h >= t_stop - tiny * std::max(1.0, std::abs(t_stop))) {
            h = t_stop - t;
            hit_stop = true;
        }
        if (h <= tiny * std::max(1.0, std::abs(t)))
            throw IntegrationError("step size underflow", t);

        for (int i = 1; i < 6; ++i) {
            Eigen::Vector3d yi = y;
            for (int j = 0; j < i; ++j) yi += (h * detail::kA[i][j]) * k[j];
            k[i] = rhs(t + detail::kC[i] * h, yi);
        }
        const Eigen::Vector3d y_new =
            y + h * (detail::kA[6][0] * k[0] + detail::kA[6][2] * k[2] +
                     detail::kA[6][3] * k[3] + detail::kA[6][4] * k[4] +
                     detail::kA[6][5] * k[5]);
        k[6] = rhs(t + h, y_new);  // FSAL stage
        const Eigen::Vector3d err_v =
            h * (detail::kE[0] * k[0] + detail::kE[2] * k[2] + detail::kE[3] * k[3] +
                 detail::kE[4] * k[4] + detail::kE[5] * k[5] + detail::kE[6] * k[6]);

        // error scaled against the vector norm: the Bloch vector is one
        // physical quantity, and this keeps pure-relative control usable
        const double scale =
            rc.atol + rc.rtol * std::max(y.cwiseAbs().maxCoeff(), y_new.cwiseAbs().maxCoeff());
        double err = 0.0;
        if (scale > 0.0) err = std::sqrt(err_v.squaredNorm() / 3.0) / scale;

        if (err <= 1.0) {
            const double t_new = hit_stop ? t_stop : t + h;

            // uniform samples inside (t, t_new] via the dense output
            if (next_sample < n_int &&
                t0 + static_cast<double>(next_sample) * dt_s <=
                    t_new + tiny * std::max(1.0, std::abs(t_new))) {
                const Eigen::Vector3d r1 = y;
                const Eigen::Vector3d r2 = y_new - y;
                const Eigen::Vector3d r3 = h * k[0] - r2;
                const Eigen::Vector3d r4 = r2 - h * k[6] - r3;
                const Eigen::Vector3d r5 =
                    h * (detail::kD[0] * k[0] + detail::kD[2] * k[2] + detail::kD[3] * k[3] +
                         detail::kD[4] * k[4] + detail::kD[5] * k[5] + detail::kD[6] * k[6]);
                while (next_sample < n_int) {
                    const double ts = t0 + static_cast<double>(next_sample) * dt_s;
                    if (ts > t_new + tiny * std::max(1.0, std::abs(t_new))) break;
                    const double s = std::clamp((ts - t) / h, 0.0, 1.0);
                    const Eigen::Vector3d yi =
                        r1 + s * (r2 + (1.0 - s) * (r3 + s * (r4 + (1.0 - s) * r5)));
                    check_physical(yi, ts);
                    traj.times.push_back(ts);
                    traj.states.push_back(BlochState::from(yi));
                    ++next_sample;
                }
            }

            check_physical(y_new, t_new);
            t = t_new;
            y = y_new;
            k[0] = k[6];
            const double fac =
                0.9 * std::pow(err > 0.0 ? err : 1e-10, -0.17) * std::pow(err_old, 0.04);
            err_old = std::max(err, 1e-10);
            h *= std::clamp(fac, 0.2, 5.0);

            if (hit_stop) {
                ++stop_idx;
                if (stop_idx < stops.size()) {
                    seg_sign = sign_at_mid(t, stops[stop_idx]);
                    k[0] = rhs(t, y);  // drift may be discontinuous across the zero
                }
            }
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }

    // the last grid point is the span end itself
    traj.times.push_back(t1);
    traj.states.push_back(BlochState::from(y));
    return traj;
}

}  // namespace lzbloch::dynamics
