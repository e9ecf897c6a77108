// cubic.hpp — Closed-form roots of a real-coefficient cubic, trigonometric
// (Viete) branch for three real roots and Cardano otherwise, with a Newton
// polish on each root.

#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace lzbloch::math {

struct CubicRoots {
    std::array<std::complex<double>, 3> r;
    int n_real{0};
};

// Roots of x^3 + a x^2 + b x + c = 0.
inline CubicRoots solve_cubic(double a, double b, double c) {
    const double q = (a * a - 3.0 * b) / 9.0;
    const double r = (a * (2.0 * a * a - 9.0 * b) + 27.0 * c) / 54.0;
    const double q3 = q * q * q;
    const double r2 = r * r;

    CubicRoots out;
    if (r2 < q3) {
        // three real roots
        double tcs = r / std::sqrt(q3);
        tcs = std::clamp(tcs, -1.0, 1.0);
        const double th = std::acos(tcs);
        const double m = -2.0 * std::sqrt(q);
        out.r[0] = m * std::cos(th / 3.0) - a / 3.0;
        out.r[1] = m * std::cos((th + 2.0 * std::numbers::pi) / 3.0) - a / 3.0;
        out.r[2] = m * std::cos((th - 2.0 * std::numbers::pi) / 3.0) - a / 3.0;
        out.n_real = 3;
    } else {
        const double u = std::cbrt(-r - std::copysign(std::sqrt(r2 - q3), r));
        const double v = (u == 0.0) ? 0.0 : q / u;
        out.r[0] = (u + v) - a / 3.0;
        const double re = -0.5 * (u + v) - a / 3.0;
        const double im = std::abs(0.5 * std::sqrt(3.0) * (u - v));
        out.r[1] = {re, im};  // positive imaginary part first
        out.r[2] = {re, -im};
        out.n_real = (im == 0.0) ? 3 : 1;
    }

    // one Newton step per root on the characteristic polynomial
    for (auto& z : out.r) {
        const std::complex<double> p = ((z + a) * z + b) * z + c;
        const std::complex<double> dp = (3.0 * z + 2.0 * a) * z + b;
        if (std::abs(dp) > 0.0) z -= p / dp;
    }
    return out;
}

}  // namespace lzbloch::math
