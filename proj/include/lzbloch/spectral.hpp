// spectral.hpp — Fourier-side quantities of the linear-sweep crossing: the
// auxiliary variable phi(t), the large-frequency asymptotics of Z~ and X~,
// and a windowed DFT of integrated trajectories.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lzbloch/dynamics.hpp"
#include "lzbloch/fft.hpp"
#include "lzbloch/lz.hpp"
#include "lzbloch/model.hpp"

namespace lzbloch::spectral {

using dynamics::Trajectory;
using model::BlochState;

// phi(t) = X + (Omega/Delta) t Z; its time derivative recovers Z exactly:
// Z = (Delta/Omega) dphi/dt.
inline double phi_from_state(double t, const BlochState& v, double delta, double slope) {
    if (delta == 0.0) throw std::invalid_argument("phi_from_state: delta must be nonzero");
    return v.x + (slope / delta) * t * v.z;
}

namespace detail {

// the two chirp branches e^{+-i(omega^2/(2 Omega) + phase)} (omega/sqrt(Omega))^{-+2i nu}
inline std::complex<double> branch(double omega, double slope, double nu, int sign,
                                   double phase) {
    const double chirp = omega * omega / (2.0 * slope) + phase;
    const double lg = std::log(omega / std::sqrt(slope));
    return std::exp(std::complex<double>(0.0, sign * (chirp - 2.0 * nu * lg)));
}

}  // namespace detail

// Z~(omega) ~ i (Delta/(Omega omega)) e^{-pi nu/2} [b+ + b-], valid for
// |omega| >> Delta; negative omega by conjugate symmetry. branch_phase is the
// phase of the undetermined complex constant carried by the two branches.
inline std::complex<double> z_tilde_asymptotic(double omega, double delta, double slope,
                                               double branch_phase = 0.0) {
    if (omega == 0.0) throw std::invalid_argument("z_tilde_asymptotic: omega must be nonzero");
    if (omega < 0.0) return std::conj(z_tilde_asymptotic(-omega, delta, slope, branch_phase));
    const double nu = lz::lz_nu(delta, slope);
    const std::complex<double> bracket = detail::branch(omega, slope, nu, +1, branch_phase) +
                                         detail::branch(omega, slope, nu, -1, branch_phase);
    return std::complex<double>(0.0, delta / (slope * omega)) *
           std::exp(-0.5 * std::numbers::pi * nu) * bracket;
}

// X~(omega) ~ (1/Omega) (1 - 2 (Delta/omega)^2) e^{-pi nu/2} [b+ - b-]
inline std::complex<double> x_tilde_asymptotic(double omega, double delta, double slope,
                                               double branch_phase = 0.0) {
    if (omega == 0.0) throw std::invalid_argument("x_tilde_asymptotic: omega must be nonzero");
    if (omega < 0.0) return std::conj(x_tilde_asymptotic(-omega, delta, slope, branch_phase));
    const double nu = lz::lz_nu(delta, slope);
    const std::complex<double> bracket = detail::branch(omega, slope, nu, +1, branch_phase) -
                                         detail::branch(omega, slope, nu, -1, branch_phase);
    const double r = delta / omega;
    return (1.0 / slope) * (1.0 - 2.0 * r * r) * std::exp(-0.5 * std::numbers::pi * nu) *
           bracket;
}

enum class Component { X, Y, Z };
enum class Window { none, hann };

struct SpectralSample {
    double omega{0.0};
    std::complex<double> value;  // transform of the selected component
};

// Discrete transform of one trajectory component with the e^{-i omega t}
// continuum convention: values are dt * sum w_n f_n e^{-i omega t_n}, with
// frequencies in ascending (negative to positive) order. The input must be
// uniformly sampled; the signal is zero-padded to a power of two.
inline std::vector<SpectralSample> spectrum_of_trajectory(const Trajectory& traj,
                                                          Component component,
                                                          Window window = Window::hann) {
    const size_t n = traj.times.size();
    if (n < 4) throw std::invalid_argument("spectrum_of_trajectory: trajectory too short");
    const double dt = traj.times[1] - traj.times[0];
    for (size_t i = 1; i < n; ++i) {
        if (std::abs((traj.times[i] - traj.times[i - 1]) - dt) > 1e-9 * dt)
            throw std::invalid_argument("spectrum_of_trajectory: non-uniform sampling");
    }

    auto pick = [&](const BlochState& s) {
        switch (component) {
            case Component::X: return s.x;
            case Component::Y: return s.y;
            default: return s.z;
        }
    };

    const size_t np = math::next_pow2(n);
    std::vector<std::complex<double>> buf(np, {0.0, 0.0});
    for (size_t i = 0; i < n; ++i) {
        double w = 1.0;
        if (window == Window::hann)
            w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(n - 1)));
        buf[i] = w * pick(traj.states[i]);
    }
    math::fft_pow2(buf);

    const double t0 = traj.times[0];
    const double dom = 2.0 * std::numbers::pi / (static_cast<double>(np) * dt);
    std::vector<SpectralSample> out(np);
    for (size_t k = 0; k < np; ++k) {
        const long long kk = static_cast<long long>(k) -
                             (k >= np / 2 ? static_cast<long long>(np) : 0);
        const double omega = dom * static_cast<double>(kk);
        const size_t pos = k + np / 2 - (k >= np / 2 ? np : 0);  // ascending order
        out[pos].omega = omega;
        out[pos].value = dt * buf[k] * std::exp(std::complex<double>(0.0, -omega * t0));
    }
    return out;
}

}  // namespace lzbloch::spectral
