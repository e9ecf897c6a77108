// lz.hpp — Landau-Zener crossing analytics: adiabaticity parameter, crossing
// S-matrix via the complex Gamma function, transfer ratio, and exact vs
// asymptotic eigenvalues of the dissipative generator under a linear sweep.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "lzbloch/cubic.hpp"
#include "lzbloch/dynamics.hpp"
#include "lzbloch/model.hpp"

namespace lzbloch::lz {

using model::SystemParams;

// nu = Delta^2 / (4 Omega)
inline double lz_nu(double delta, double slope) {
    if (slope <= 0.0) throw std::invalid_argument("lz_nu: slope must be positive");
    return delta * delta / (4.0 * slope);
}

// p(t) = Omega t / 2 + nu / t
inline double semiclassical_momentum(double t, double delta, double slope) {
    if (t == 0.0) throw std::invalid_argument("semiclassical_momentum: t must be nonzero");
    return 0.5 * slope * t + lz_nu(delta, slope) / t;
}

// Principal-branch log Gamma, Lanczos approximation (g = 7, 9 coefficients);
// arguments left of Re z = 1.5 are shifted up by the recurrence. Accuracy is
// ~1e-13 relative on the strip |Im z| <= 10.
inline std::complex<double> complex_log_gamma(std::complex<double> z) {
    static constexpr double kLanczos[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw std::invalid_argument("complex_log_gamma: pole at non-positive integer");

    std::complex<double> shift(0.0, 0.0);
    while (z.real() < 1.5) {
        shift += std::log(z);
        z += 1.0;
    }
    z -= 1.0;
    std::complex<double> x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(x) - shift;
}

// 2x2 unitary rotation of a single crossing, labelled by theta and phi:
//   S11 = S22 = cos(theta) = exp(-pi nu)
//   S12 = i sin(theta) e^{i phi} = sqrt(2 pi / nu) e^{-pi nu / 2 - i pi / 4} / Gamma(i nu)
struct ScatteringData {
    double nu{0.0};
    double theta{0.0};
    double phi{0.0};
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Identity();
};

inline ScatteringData s_matrix(double nu) {
    if (nu < 0.0) throw std::invalid_argument("s_matrix: nu must be non-negative");
    ScatteringData sd;
    sd.nu = nu;
    if (nu == 0.0) return sd;  // exact identity rotation, no singular prefactor

    const double pi = std::numbers::pi;
    const double c = std::exp(-pi * nu);
    sd.theta = std::acos(c);
    const std::complex<double> log_s12 =
        0.5 * std::log(2.0 * pi / nu) - 0.5 * pi * nu -
        std::complex<double>(0.0, pi / 4.0) - complex_log_gamma({0.0, nu});
    const std::complex<double> s12 = std::exp(log_s12);
    // phi in (-pi, pi], read off the phase of S12 relative to i sin(theta)
    double phi = std::arg(s12) - pi / 2.0;
    if (phi <= -pi) phi += 2.0 * pi;
    if (phi > pi) phi -= 2.0 * pi;
    sd.phi = phi;
    sd.s(0, 0) = sd.s(1, 1) = c;
    sd.s(0, 1) = s12;
    sd.s(1, 0) = std::complex<double>(0.0, std::sin(sd.theta)) * std::exp(std::complex<double>(0.0, -phi));
    return sd;
}

// T(nu) = Z(+inf)/Z(-inf) = 2 exp(-2 pi nu) - 1
inline double transfer_ratio(double nu) {
    if (nu < 0.0) throw std::invalid_argument("transfer_ratio: nu must be non-negative");
    return 2.0 * std::exp(-2.0 * std::numbers::pi * nu) - 1.0;
}

struct EigenTriple {
    // p[0]: the predominantly real branch (near -gamma at large |Omega t|);
    // p[1], p[2]: the rotating pair, positive imaginary part first.
    std::array<std::complex<double>, 3> p;
};

namespace detail {

inline void require_uniaxial(const SystemParams& p) {
    const auto& q = p.dissipator;
    const double tol = 1e-12;
    if (std::abs(q.gamma1 - q.gamma2) > tol || std::abs(q.alpha) > tol ||
        std::abs(q.beta) > tol || std::abs(q.gamma_sym) > tol ||
        std::abs(p.hamiltonian.delta_prime) > tol)
        throw std::invalid_argument(
            "eigenvalue analysis requires uniaxial dissipation (gamma1 = gamma2, "
            "off-diagonal rates and delta_prime zero)");
}

inline EigenTriple order_triple(const lzbloch::math::CubicRoots& roots, double gamma) {
    // real branch: smallest |Im|, ties broken by closeness to -gamma
    int i_real = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        const double score =
            std::abs(roots.r[i].imag()) * 1e6 + std::abs(roots.r[i].real() + gamma);
        if (score < best) {
            best = score;
            i_real = i;
        }
    }
    EigenTriple e;
    e.p[0] = roots.r[i_real];
    std::array<std::complex<double>, 2> rest;
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != i_real) rest[k++] = roots.r[i];
    if (rest[0].imag() < rest[1].imag()) std::swap(rest[0], rest[1]);
    e.p[1] = rest[0];
    e.p[2] = rest[1];
    return e;
}

}  // namespace detail

// Roots of det(B(t) - p I) = 0 where B(t) is the generator with the drive
// linearized as omega0 = slope * t.
inline EigenTriple eigenvalues_exact(double t, const SystemParams& p, double slope) {
    detail::require_uniaxial(p);
    SystemParams ph = p;
    ph.relaxation_mode = model::RelaxationMode::homogeneous;  // C irrelevant here
    const Eigen::Matrix3d m =
        dynamics::generator_at(t, ph, dynamics::DriveSpec::linear_sweep(slope)).m;

    const double a2 = -m.trace();
    const double a1 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                      m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const double a0 = -m.determinant();
    return detail::order_triple(math::solve_cubic(a2, a1, a0), p.dissipator.gamma3);
}

struct DampingCorrection {
    double delta{0.0};    // (gamma - gamma_r) / 3
    double gamma_c{0.0};  // coefficient of the opposite-signed 1/t^2 corrections
};

// gamma_c = -(3/2) delta Delta^2: expanding the resolvent cubic of the
// uniaxial generator to O(1/t^2) gives Re p1 = -gamma - 2 gamma_c / (Omega t)^2
// and Re p2,3 = -gamma_r + gamma_c / (Omega t)^2; the delta^3 contributions
// cancel exactly at this order.
inline DampingCorrection gamma_c(const SystemParams& p) {
    detail::require_uniaxial(p);
    DampingCorrection dc;
    dc.delta = (p.dissipator.gamma3 - p.dissipator.gamma1) / 3.0;
    const double D = p.hamiltonian.delta;
    dc.gamma_c = -1.5 * dc.delta * D * D;
    return dc;
}

// O(1/t^2) eigenvalue expansion at large |Omega t|:
//   p1    = -gamma   - 2 gamma_c / (Omega t)^2
//   p2,3  = -gamma_r +   gamma_c / (Omega t)^2 +- i (Omega t + 2 nu / t)
inline EigenTriple eigenvalues_asymptotic(double t, const SystemParams& p, double slope) {
    detail::require_uniaxial(p);
    if (t == 0.0) throw std::invalid_argument("eigenvalues_asymptotic: t must be nonzero");
    const double gamma_r = p.dissipator.gamma1;
    const double gamma = p.dissipator.gamma3;
    const double w = slope * t;
    const double gc = gamma_c(p).gamma_c;
    const double nu = lz_nu(p.hamiltonian.delta, slope);
    const double im = std::abs(w + 2.0 * nu / t);
    EigenTriple e;
    e.p[0] = {-gamma - 2.0 * gc / (w * w), 0.0};
    e.p[1] = {-gamma_r + gc / (w * w), im};
    e.p[2] = {-gamma_r + gc / (w * w), -im};
    return e;
}

}  // namespace lzbloch::lz
