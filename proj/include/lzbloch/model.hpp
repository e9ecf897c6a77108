// model.hpp — Parameter types of the driven dissipative two-level system and
// the complete-positivity audit of its dissipator.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lzbloch::model {

// 3x3 Hermitian environment-coupling matrix; entries are rates (hbar = 1).
struct CouplingMatrix {
    Eigen::Matrix3cd a = Eigen::Matrix3cd::Zero();

    static constexpr double hermiticity_tol = 1e-12;

    void validate() const {
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                if (std::abs(a(i, j) - std::conj(a(j, i))) > hermiticity_tol) {
                    throw std::invalid_argument(
                        "coupling matrix is not Hermitian: entries (" + std::to_string(i + 1) +
                        "," + std::to_string(j + 1) + ") and (" + std::to_string(j + 1) + "," +
                        std::to_string(i + 1) + ") are not conjugate");
                }
            }
        }
    }
};

// Bloch-equation damping rates, symmetric off-diagonal rates and drift terms.
// All gammas are stored as non-negative damping coefficients (they appear with
// a minus sign on the generator diagonal).
struct DissipatorParams {
    double gamma1{0.0}, gamma2{0.0}, gamma3{0.0};
    double alpha{0.0}, beta{0.0}, gamma_sym{0.0};
    double c1{0.0}, c2{0.0}, c3{0.0};
};

enum class RelaxationMode { none, homogeneous, sign_following };

inline const char* to_string(RelaxationMode m) {
    switch (m) {
        case RelaxationMode::none: return "none";
        case RelaxationMode::homogeneous: return "homogeneous";
        case RelaxationMode::sign_following: return "sign_following";
    }
    return "?";
}

struct HamiltonianParams {
    double delta{0.0};        // interlevel coupling
    double delta_prime{0.0};
    double b0{1.0};           // bias amplitude
    double omega0_freq{0.0};  // bias angular frequency
};

struct SystemParams {
    HamiltonianParams hamiltonian;
    DissipatorParams dissipator;
    RelaxationMode relaxation_mode{RelaxationMode::none};

    void validate() const {
        if (hamiltonian.b0 < 0.0)
            throw std::invalid_argument("b0 must be non-negative");
        if (hamiltonian.omega0_freq < 0.0)
            throw std::invalid_argument("omega0 must be non-negative");
        if (relaxation_mode == RelaxationMode::sign_following && dissipator.gamma3 < 0.0)
            throw std::invalid_argument("sign_following relaxation requires gamma3 >= 0");
    }
};

// Real 3-vector (X, Y, Z) representing the density matrix.
struct BlochState {
    double x{0.0}, y{0.0}, z{0.0};

    static constexpr double physical_tol = 1e-6;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Eigen::Vector3d vec() const { return {x, y, z}; }
    static BlochState from(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

    bool physical(double tol = physical_tol) const {
        return x * x + y * y + z * z <= 1.0 + tol;
    }
};

// Rates and drifts from the Hermitian coupling matrix:
//   gamma1 = 2(a22+a33)   gamma2 = 2(a33+a11)   gamma3 = 2(a11+a22)
//   alpha  = a12+a21      beta   = a13+a31      gamma_sym = a23+a32
//   c1 = 2i(a23-a32)      c2 = 2i(a31-a13)      c3 = 2i(a12-a21)
inline DissipatorParams rates_from_coupling(const CouplingMatrix& cm) {
    cm.validate();
    const auto& a = cm.a;
    const std::complex<double> I(0.0, 1.0);
    auto real_of = [](std::complex<double> v, const char* what) {
        if (std::abs(v.imag()) > 1e-12)
            throw std::invalid_argument(std::string("non-real ") + what +
                                        " from coupling matrix");
        return v.real();
    };
    DissipatorParams d;
    d.gamma1 = real_of(2.0 * (a(1, 1) + a(2, 2)), "gamma1");
    d.gamma2 = real_of(2.0 * (a(2, 2) + a(0, 0)), "gamma2");
    d.gamma3 = real_of(2.0 * (a(0, 0) + a(1, 1)), "gamma3");
    d.alpha = real_of(a(0, 1) + a(1, 0), "alpha");
    d.beta = real_of(a(0, 2) + a(2, 0), "beta");
    d.gamma_sym = real_of(a(1, 2) + a(2, 1), "gamma_sym");
    d.c1 = real_of(2.0 * I * (a(1, 2) - a(2, 1)), "c1");
    d.c2 = real_of(2.0 * I * (a(2, 0) - a(0, 2)), "c2");
    d.c3 = real_of(2.0 * I * (a(0, 1) - a(1, 0)), "c3");
    return d;
}

// Isotropic thermal bath with mean phonon number n_bar:
//   gamma1 = gamma2 = g(n_bar + 1/2),  gamma3 = g(2 n_bar + 1),  c3 = -g.
inline DissipatorParams thermal_bath(double g, double n_bar) {
    if (g < 0.0) throw std::invalid_argument("thermal_bath: g must be >= 0");
    if (n_bar < 0.0) throw std::invalid_argument("thermal_bath: n_bar must be >= 0");
    DissipatorParams d;
    d.gamma1 = d.gamma2 = g * (n_bar + 0.5);
    d.gamma3 = g * (2.0 * n_bar + 1.0);
    d.c3 = -g;
    return d;
}

struct CpInequality {
    std::string id;
    double residual{0.0};  // satisfied margin; negative = violated
    bool pass{false};
};

struct CpReport {
    std::array<CpInequality, 7> inequalities;
    bool pass{false};

    static constexpr double tol = 1e-10;  // boundary cases sit exactly on equality
};

// Complete-positivity audit: three triangle bounds 0 <= g_i <= g_j + g_k,
// three quadratic bounds, and the mixed cubic inequality.
inline CpReport cp_audit(const DissipatorParams& d) {
    const double g1 = d.gamma1, g2 = d.gamma2, g3 = d.gamma3;
    const double al = d.alpha, be = d.beta, gs = d.gamma_sym;
    const double c1 = d.c1, c2 = d.c2, c3 = d.c3;

    CpReport r;
    auto set = [&](int k, const char* id, double residual) {
        r.inequalities[k] = {id, residual, residual >= -CpReport::tol};
    };
    set(0, "tri1", std::min(g1, g2 + g3 - g1));
    set(1, "tri2", std::min(g2, g3 + g1 - g2));
    set(2, "tri3", std::min(g3, g1 + g2 - g3));
    set(3, "quad1", g1 * g1 - (g2 - g3) * (g2 - g3) - 4.0 * gs * gs - c1 * c1);
    set(4, "quad2", g2 * g2 - (g3 - g1) * (g3 - g1) - 4.0 * be * be - c2 * c2);
    set(5, "quad3", g3 * g3 - (g1 - g2) * (g1 - g2) - 4.0 * al * al - c3 * c3);

    const double lhs = 4.0 * be * (al * gs - 0.25 * c3 * c1) -
                       2.0 * c2 * (0.5 * al * c1 + 0.5 * gs * c3);
    const double rhs =
        (g1 + g3 - g2) * (be * be + 0.25 * c2 * c2) +
        (g2 + g1 - g3) *
            (al * al + 0.25 * c3 * c3 - 0.25 * g3 * g3 - 0.25 * (g2 - g1) * (g2 - g1)) +
        (g3 + g2 - g1) * (gs * gs + 0.25 * c1 * c1);
    set(6, "cubic", lhs - rhs);

    r.pass = true;
    for (const auto& q : r.inequalities) r.pass = r.pass && q.pass;
    return r;
}

}  // namespace lzbloch::model
