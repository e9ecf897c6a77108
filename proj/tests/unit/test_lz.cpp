#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "lzbloch/cubic.hpp"
#include "lzbloch/lz.hpp"

using namespace lzbloch;
using namespace lzbloch::lz;
using Catch::Approx;
using cd = std::complex<double>;

namespace {

model::SystemParams uniaxial(double delta, double gamma_r, double gamma) {
    model::SystemParams p;
    p.hamiltonian.delta = delta;
    p.dissipator.gamma1 = gamma_r;
    p.dissipator.gamma2 = gamma_r;
    p.dissipator.gamma3 = gamma;
    p.relaxation_mode = model::RelaxationMode::homogeneous;
    return p;
}

double char_poly_residual(const Eigen::Matrix3d& m, cd p) {
    Eigen::Matrix3cd a = m.cast<cd>();
    a -= p * Eigen::Matrix3cd::Identity();
    return std::abs(a.determinant());
}

}  // namespace

TEST_CASE("lz_nu", "[lz]") {
    CHECK(lz_nu(0.0, 1.0) == 0.0);
    CHECK(lz_nu(2.0, 1.0) == Approx(1.0));
    CHECK(lz_nu(0.12, 0.063) == Approx(0.05714285714285714).epsilon(1e-14));
    CHECK_THROWS_AS(lz_nu(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lz_nu(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("semiclassical momentum", "[lz]") {
    CHECK(semiclassical_momentum(3.0, 0.0, 1.0) == Approx(1.5));
    CHECK(semiclassical_momentum(2.0, 2.0, 1.0) == Approx(1.5));
    // the correction decays as nu / t
    const double nu = lz_nu(0.4, 0.5);
    for (double t : {10.0, 40.0, 160.0})
        CHECK(semiclassical_momentum(t, 0.4, 0.5) - 0.25 * t == Approx(nu / t).epsilon(1e-9));
    CHECK_THROWS_AS(semiclassical_momentum(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("complex_log_gamma known values", "[lz]") {
    CHECK(std::abs(complex_log_gamma({1.0, 0.0})) < 1e-13);
    CHECK(std::abs(complex_log_gamma({2.0, 0.0})) < 1e-13);
    CHECK(complex_log_gamma({0.5, 0.0}).real() == Approx(0.5723649429247001).epsilon(1e-13));
    const cd v = complex_log_gamma({0.0, 0.5});
    CHECK(v.real() == Approx(0.5022016813731659).epsilon(1e-12));
    CHECK(v.imag() == Approx(-1.8148546257003244).epsilon(1e-12));
    CHECK_THROWS_AS(complex_log_gamma({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(complex_log_gamma({-3.0, 0.0}), std::invalid_argument);
}

TEST_CASE("complex_log_gamma reflection identity oracle", "[lz]") {
    // |Gamma(i nu)|^2 = pi / (nu sinh(pi nu)), independent of the Lanczos path
    for (double nu : {0.1, 0.5, 2.0}) {
        const double mod2 = std::exp(2.0 * complex_log_gamma({0.0, nu}).real());
        const double expected = std::numbers::pi / (nu * std::sinh(std::numbers::pi * nu));
        CHECK(mod2 == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("s_matrix structure", "[lz]") {
    SECTION("nu = 0 is the exact identity rotation") {
        const auto sd = s_matrix(0.0);
        CHECK(sd.theta == 0.0);
        CHECK(sd.phi == 0.0);
        CHECK(sd.s(0, 0) == cd(1.0, 0.0));
        CHECK(sd.s(0, 1) == cd(0.0, 0.0));
    }
    SECTION("small nu: theta -> 0 and |S12|^2 -> 1 - e^{-2 pi nu}") {
        const double nu = 1e-4;
        const auto sd = s_matrix(nu);
        CHECK(sd.theta < 0.03);
        const double expect = 1.0 - std::exp(-2.0 * std::numbers::pi * nu);
        CHECK(std::norm(sd.s(0, 1)) == Approx(expect).epsilon(1e-10));
    }
    SECTION("theta = pi/3 exactly when e^{-pi nu} = 1/2") {
        const double nu = 0.2206356001526516;  // ln 2 / pi
        const auto sd = s_matrix(nu);
        CHECK(sd.theta == Approx(std::numbers::pi / 3.0).epsilon(1e-13));
    }
    SECTION("unitarity through the Gamma route") {
        const auto sd = s_matrix(0.5);
        CHECK(std::norm(sd.s(0, 0)) + std::norm(sd.s(0, 1)) == Approx(1.0).epsilon(1e-12));
    }
    SECTION("entries follow the theta, phi parameterization") {
        for (double nu : {0.05, 0.3, 1.0, 3.0}) {
            const auto sd = s_matrix(nu);
            const cd expected01 =
                cd(0.0, std::sin(sd.theta)) * std::exp(cd(0.0, sd.phi));
            const cd expected10 =
                cd(0.0, std::sin(sd.theta)) * std::exp(cd(0.0, -sd.phi));
            CHECK(std::abs(sd.s(0, 1) - expected01) < 1e-12);
            CHECK(std::abs(sd.s(1, 0) - expected10) < 1e-12);
            CHECK(sd.s(1, 1) == sd.s(0, 0));
            CHECK(sd.phi > -std::numbers::pi);
            CHECK(sd.phi <= std::numbers::pi);
        }
    }
    SECTION("negative nu rejected") { CHECK_THROWS_AS(s_matrix(-0.1), std::invalid_argument); }
}

TEST_CASE("transfer ratio", "[lz]") {
    CHECK(transfer_ratio(0.0) == Approx(1.0));
    CHECK(transfer_ratio(0.1103178000763258) == Approx(0.0).margin(1e-12));  // ln2/(2 pi)
    CHECK(transfer_ratio(2.0) == Approx(-0.9999930253152876).epsilon(1e-14));
    CHECK_THROWS_AS(transfer_ratio(-1e-9), std::invalid_argument);
    // T(nu) = cos(2 theta)
    for (double nu : {0.02, 0.1, 0.5, 1.5}) {
        const auto sd = s_matrix(nu);
        CHECK(transfer_ratio(nu) == Approx(std::cos(2.0 * sd.theta)).epsilon(1e-12));
    }
}

TEST_CASE("cubic solver", "[lz]") {
    SECTION("three distinct real roots") {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        const auto r = math::solve_cubic(-6.0, 11.0, -6.0);
        CHECK(r.n_real == 3);
        double roots[3] = {r.r[0].real(), r.r[1].real(), r.r[2].real()};
        std::sort(roots, roots + 3);
        CHECK(roots[0] == Approx(1.0).epsilon(1e-12));
        CHECK(roots[1] == Approx(2.0).epsilon(1e-12));
        CHECK(roots[2] == Approx(3.0).epsilon(1e-12));
    }
    SECTION("complex pair") {
        // (x+2)(x^2+1) = x^3 + 2x^2 + x + 2
        const auto r = math::solve_cubic(2.0, 1.0, 2.0);
        CHECK(r.n_real == 1);
        CHECK(r.r[0].real() == Approx(-2.0).epsilon(1e-12));
        CHECK(std::abs(r.r[1] - cd(0.0, 1.0)) < 1e-12);
        CHECK(std::abs(r.r[2] - cd(0.0, -1.0)) < 1e-12);
    }
    SECTION("triple root") {
        // (x-1)^3 = x^3 - 3x^2 + 3x - 1
        const auto r = math::solve_cubic(-3.0, 3.0, -1.0);
        for (const auto& z : r.r) CHECK(std::abs(z - cd(1.0, 0.0)) < 1e-5);
    }
    SECTION("random coefficients: roots satisfy the polynomial") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double a = u(rng), b = u(rng), c = u(rng);
            const auto r = math::solve_cubic(a, b, c);
            for (const auto& z : r.r) {
                const cd p = ((z + a) * z + b) * z + c;
                CHECK(std::abs(p) < 1e-9);
            }
        }
    }
}

TEST_CASE("eigenvalues_exact limits", "[lz]") {
    SECTION("no damping at the crossing: {0, +-i Delta}") {
        const auto p = uniaxial(0.25, 0.0, 0.0);
        const auto e = eigenvalues_exact(0.0, p, 0.05);
        CHECK(std::abs(e.p[0]) < 1e-13);
        CHECK(std::abs(e.p[1] - cd(0.0, 0.25)) < 1e-12);
        CHECK(std::abs(e.p[2] - cd(0.0, -0.25)) < 1e-12);
    }
    SECTION("isotropic damping shifts the unitary eigenvalues by -g") {
        const double g = 0.03, delta = 0.2, slope = 0.05, t = 12.0;
        const auto p = uniaxial(delta, g, g);
        const auto e = eigenvalues_exact(t, p, slope);
        const double w = slope * t;
        const double om = std::sqrt(w * w + delta * delta);
        CHECK(std::abs(e.p[0] - cd(-g, 0.0)) < 1e-12);
        CHECK(std::abs(e.p[1] - cd(-g, om)) < 1e-12);
        CHECK(std::abs(e.p[2] - cd(-g, -om)) < 1e-12);
    }
    SECTION("characteristic-polynomial residual stays small") {
        const auto p = uniaxial(0.3, 0.01, 0.0);
        const double slope = 0.033;
        for (double wt : {0.5, 2.0, 5.0, 40.0}) {
            const double t = wt / slope;
            const auto e = eigenvalues_exact(t, p, slope);
            SystemParams ph = p;
            const auto m =
                dynamics::generator_at(t, ph, dynamics::DriveSpec::linear_sweep(slope)).m;
            const double norm3 = std::pow(m.norm(), 3.0);
            for (const auto& root : e.p)
                CHECK(char_poly_residual(m, root) < 1e-10 * norm3);
        }
    }
    SECTION("trace identity and conjugate pairing for random uniaxial params") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(0.0, 0.5);
        for (int trial = 0; trial < 30; ++trial) {
            const auto p = uniaxial(u(rng), u(rng), u(rng));
            const double slope = 0.01 + u(rng);
            const double t = -20.0 + 80.0 * u(rng);
            const auto e = eigenvalues_exact(t, p, slope);
            const cd sum = e.p[0] + e.p[1] + e.p[2];
            const double tr = -(2.0 * p.dissipator.gamma1 + p.dissipator.gamma3);
            CHECK(std::abs(sum - cd(tr, 0.0)) < 1e-10);
            CHECK(std::abs(e.p[1].imag() + e.p[2].imag()) < 1e-10);
        }
    }
    SECTION("non-uniaxial dissipation rejected") {
        auto p = uniaxial(0.3, 0.01, 0.0);
        p.dissipator.gamma2 = 0.02;
        CHECK_THROWS_AS(eigenvalues_exact(1.0, p, 0.033), std::invalid_argument);
    }
}

TEST_CASE("gamma_c", "[lz]") {
    SECTION("vanishes for isotropic damping") {
        const auto dc = gamma_c(uniaxial(0.3, 0.01, 0.01));
        CHECK(dc.delta == 0.0);
        CHECK(dc.gamma_c == 0.0);
    }
    SECTION("pure decoherence is positive (damped Z)") {
        const auto dc = gamma_c(uniaxial(0.3, 0.01, 0.0));
        CHECK(dc.delta == Approx(-1.0 / 300.0).epsilon(1e-14));
        CHECK(dc.gamma_c == Approx(4.5e-4).epsilon(1e-12));
        CHECK(dc.gamma_c > 0.0);
    }
    SECTION("dominant relaxation flips the sign") {
        const auto dc = gamma_c(uniaxial(0.05, 0.01, 0.02));
        CHECK(dc.delta == Approx(1.0 / 300.0).epsilon(1e-14));
        CHECK(dc.gamma_c < 0.0);
    }
}

TEST_CASE("eigenvalues_asymptotic", "[lz]") {
    SECTION("no damping: pure rotation at twice the spinor momentum") {
        const double slope = 0.063, delta = 0.12;
        const auto p = uniaxial(delta, 0.0, 0.0);
        for (double t : {50.0, 200.0}) {
            const auto e = eigenvalues_asymptotic(t, p, slope);
            CHECK(e.p[0] == cd(0.0, 0.0));
            const double expect = slope * t + 2.0 * lz_nu(delta, slope) / t;
            CHECK(e.p[1].imag() == Approx(expect).epsilon(1e-14));
            // the vector-level frequency is twice p(t)
            CHECK(e.p[1].imag() ==
                  Approx(2.0 * semiclassical_momentum(t, delta, slope)).epsilon(1e-14));
        }
    }
    SECTION("isotropic damping: corrections vanish at this order") {
        const auto p = uniaxial(0.3, 0.02, 0.02);
        const auto e = eigenvalues_asymptotic(100.0, p, 0.05);
        CHECK(e.p[0].real() == Approx(-0.02).epsilon(1e-14));
        CHECK(e.p[1].real() == Approx(-0.02).epsilon(1e-14));
    }
    SECTION("imaginary parts carry no damping dependence") {
        const double t = 300.0, slope = 0.033;
        const auto e1 = eigenvalues_asymptotic(t, uniaxial(0.3, 0.0, 0.0), slope);
        const auto e2 = eigenvalues_asymptotic(t, uniaxial(0.3, 0.04, 0.09), slope);
        CHECK(e1.p[1].imag() == e2.p[1].imag());
        CHECK(e1.p[2].imag() == e2.p[2].imag());
    }
    SECTION("t = 0 rejected") {
        CHECK_THROWS_AS(eigenvalues_asymptotic(0.0, uniaxial(0.3, 0.01, 0.0), 0.033),
                        std::invalid_argument);
    }
}

TEST_CASE("exact vs asymptotic eigenvalues converge fast", "[lz]") {
    // pure-decoherence parameters, slope = B0 * Omega0
    const auto p = uniaxial(0.3, 0.01, 0.0);
    const double slope = 0.033;
    const double gc = gamma_c(p).gamma_c;

    SECTION("residual of the real parts decays faster than 1/t^2") {
        std::vector<double> lw, lr1, lr2;
        for (double wt = 10.0; wt <= 100.0; wt *= 1.3) {
            const double t = wt / slope;
            const auto ex = eigenvalues_exact(t, p, slope);
            const auto as = eigenvalues_asymptotic(t, p, slope);
            lw.push_back(std::log(wt));
            lr1.push_back(std::log(std::abs(ex.p[0].real() - as.p[0].real())));
            lr2.push_back(std::log(std::abs(ex.p[1].real() - as.p[1].real())));
        }
        auto slope_fit = [](const std::vector<double>& x, const std::vector<double>& y) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double n = static_cast<double>(x.size());
            for (size_t i = 0; i < x.size(); ++i) {
                sx += x[i];
                sy += y[i];
                sxx += x[i] * x[i];
                sxy += x[i] * y[i];
            }
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        };
        CHECK(slope_fit(lw, lr1) <= -3.0);
        CHECK(slope_fit(lw, lr2) <= -3.0);
    }

    SECTION("measured 1/t^2 corrections: opposite signs, ratio -2") {
        const double wt = 50.0;
        const double t = wt / slope;
        const auto ex = eigenvalues_exact(t, p, slope);
        const double m1 = ex.p[0].real() + p.dissipator.gamma3;
        const double m2 = ex.p[1].real() + p.dissipator.gamma1;
        CHECK(m1 / m2 == Approx(-2.0).epsilon(0.01));
        CHECK(m1 == Approx(-2.0 * gc / (wt * wt)).epsilon(0.01));
    }
}
