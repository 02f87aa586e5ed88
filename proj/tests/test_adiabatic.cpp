#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "stirap/adiabatic.hpp"
#include "stirap/lindblad.hpp"
#include "stirap/run.hpp"

using namespace stirap;

namespace {

constexpr double kRoot2Half = std::numbers::sqrt2 / 2.0;

ComplexMatrix3 random_density_m(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix3 b;
    for (auto& z : b.e) z = Complex(u(rng), u(rng));
    ComplexMatrix3 m = adjoint(b) * b;
    m *= Complex(1.0 / m.trace().real());
    return symmetrize(m);
}

// the six dressed-frame component equations, written out independently of the
// matrix-valued implementation
ComplexMatrix3 rhs_components(const ComplexMatrix3& r, double omega, double theta_dot,
                              double gamma) {
    const Complex i_omega(0.0, omega);
    const double c = kRoot2Half * theta_dot;
    const Complex rpp = r(0, 0), rdd = r(1, 1), rmm = r(2, 2);
    const Complex rpd = r(0, 1), rdp = r(1, 0);
    const Complex rdm = r(1, 2), rmd = r(2, 1);
    const Complex rpm = r(0, 2), rmp = r(2, 0);

    ComplexMatrix3 out;
    out(0, 0) = c * (rdp + rpd) + gamma * (rmm - rpp);
    out(2, 2) = c * (rdm + rmd) + gamma * (rpp - rmm);
    out(1, 1) = -c * (rpd + rdp + rdm + rmd);
    out(0, 1) = -i_omega * rpd - c * (-rdd + rpp + rpm) + gamma * (rmd - rpd);
    out(1, 2) = -i_omega * rdm - c * (-rdd + rpm + rmm) + gamma * (rdp - rdm);
    out(0, 2) = -2.0 * i_omega * rpm + c * (rdm + rpd) + gamma * (rmp - rpm);
    out(1, 0) = std::conj(out(0, 1));
    out(2, 1) = std::conj(out(1, 2));
    out(2, 0) = std::conj(out(0, 2));
    return out;
}

} // namespace

TEST_CASE("mixing matrix at theta = 0") {
    const ComplexMatrix3 w = mixing_matrix(0.0);
    // columns are |+>, |d>, |-> in the bare basis
    CHECK(w(0, 0) == Complex(0.0));
    CHECK(w(1, 0) == Complex(kRoot2Half));
    CHECK(w(2, 0) == Complex(kRoot2Half));
    CHECK(w(0, 1) == Complex(1.0));
    CHECK(w(1, 1) == Complex(0.0));
    CHECK(w(2, 1) == Complex(0.0));
    CHECK(w(0, 2) == Complex(0.0));
    CHECK(w(1, 2) == Complex(-kRoot2Half));
    CHECK(w(2, 2) == Complex(kRoot2Half));
}

TEST_CASE("mixing matrix is unitary and diagonalizes the Hamiltonian") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> utheta(0.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> uomega(0.5, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double theta = utheta(rng);
        const double omega = uomega(rng);
        const ComplexMatrix3 w = mixing_matrix(theta);
        CHECK(max_abs_diff(adjoint(w) * w, ComplexMatrix3::identity()) <= 1e-14);

        DriveSample s;
        s.omega_p = omega * std::sin(theta);
        s.omega_s = omega * std::cos(theta);
        const ComplexMatrix3 ha = adjoint(w) * hamiltonian3(s) * w;
        CHECK(max_abs_diff(ha, ComplexMatrix3::diag(omega, 0.0, -omega)) <= 1e-12);
    }
}

TEST_CASE("gauge matrix") {
    CHECK(max_abs_diff(gauge_matrix(0.0), ComplexMatrix3::zero()) == 0.0);

    const ComplexMatrix3 m = gauge_matrix(std::numbers::pi / 80.0);
    CHECK(m(1, 0).real() == doctest::Approx(0.02776801836348979).epsilon(1e-14));
    CHECK(m(0, 1).real() == doctest::Approx(-0.02776801836348979).epsilon(1e-14));

    // real antisymmetric; -[M, rho] preserves trace and Hermiticity
    std::mt19937_64 rng(43);
    const ComplexMatrix3 g = gauge_matrix(0.37);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(g(i, j).imag() == 0.0);
            CHECK(g(i, j) == -g(j, i));
        }
    for (int i = 0; i < 20; ++i) {
        const ComplexMatrix3 term = Complex(-1.0) * commutator(g, random_density_m(rng));
        CHECK(std::abs(term.trace()) <= 1e-14);
        CHECK(hermiticity_defect(term) <= 1e-14);
    }
}

TEST_CASE("gauge matrix equals the frame derivative") {
    // independent oracle: W^dagger dW/dt by central differences
    for (const Protocol& p :
         {Protocol::linear_sine(2.0, 40.0), Protocol::gaussian(2.0, 2.0, 1.0)}) {
        std::mt19937_64 rng(47);
        std::uniform_real_distribution<double> u(0.02 * p.t0, 0.98 * p.t0);
        for (int i = 0; i < 25; ++i) {
            const double t = u(rng);
            const double h = 1e-6;
            const ComplexMatrix3 wp = mixing_matrix(sample(p, t + h).theta);
            const ComplexMatrix3 wm = mixing_matrix(sample(p, t - h).theta);
            const ComplexMatrix3 wdot = (1.0 / (2.0 * h)) * (wp - wm);
            const ComplexMatrix3 m_fd = adjoint(mixing_matrix(sample(p, t).theta)) * wdot;
            CHECK(max_abs_diff(m_fd, gauge_matrix(sample(p, t).theta_dot)) <= 1e-6);
        }
    }
}

TEST_CASE("dressed dephasing generator") {
    const ComplexMatrix3 f_a = dressed_dephasing_generator();

    // theta-independent image of F = diag(-1, 1, -1)
    const ComplexMatrix3 f = ComplexMatrix3::diag(-1.0, 1.0, -1.0);
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> utheta(0.0, std::numbers::pi / 2.0);
    for (int i = 0; i < 50; ++i) {
        const ComplexMatrix3 w = mixing_matrix(utheta(rng));
        CHECK(max_abs_diff(adjoint(w) * f * w, f_a) <= 1e-12);
    }

    // involution
    CHECK(max_abs_diff(f_a * f_a, ComplexMatrix3::identity()) == 0.0);

    // the dark level is untouched by dressed dephasing
    const ComplexMatrix3 dark = DensityMatrix3::pure(1).m;
    const ComplexMatrix3 diss = 2.0 * (f_a * dark * adjoint(f_a) - dark);
    CHECK(max_abs_diff(diss, ComplexMatrix3::zero()) == 0.0);
}

TEST_CASE("a resting dark state is stationary") {
    // with theta_dot = 0 the full dressed generator vanishes on |d><d|
    const ComplexMatrix3 dark = DensityMatrix3::pure(1).m;
    const ComplexMatrix3 f_a = dressed_dephasing_generator();
    const ComplexMatrix3 h_a = ComplexMatrix3::diag(2.0, 0.0, -2.0);
    ComplexMatrix3 out = Complex(0.0, -1.0) * commutator(h_a, dark);
    out -= commutator(gauge_matrix(0.0), dark);
    out += 1.5 * (f_a * dark * adjoint(f_a) - dark);
    CHECK(max_abs_diff(out, ComplexMatrix3::zero()) == 0.0);
}

TEST_CASE("rhs_adiabatic agrees with the component equations") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> uomega(0.5, 4.0);
    std::uniform_real_distribution<double> ut0(10.0, 60.0);
    std::uniform_real_distribution<double> ugamma(0.0, 4.0);
    for (int i = 0; i < 50; ++i) {
        SimConfig cfg;
        cfg.protocol = Protocol::linear_sine(uomega(rng), ut0(rng));
        cfg.gamma = ugamma(rng);
        const double t = 0.5 * cfg.protocol.t0;
        const DriveSample s = sample(cfg.protocol, t);
        const ComplexMatrix3 rho = random_density_m(rng);
        const ComplexMatrix3 via_matrices = rhs_adiabatic(t, rho, cfg);
        const ComplexMatrix3 via_components = rhs_components(rho, s.omega, s.theta_dot, cfg.gamma);
        CHECK(max_abs_diff(via_matrices, via_components) <= 1e-12);
        CHECK(std::abs(via_matrices.trace()) <= 1e-12);
    }
}

TEST_CASE("adiabatic run starts in the dark state for the sine protocol") {
    SimConfig cfg;
    cfg.protocol = Protocol::linear_sine(2.0, 40.0);
    cfg.gamma = 2.0;
    const Trajectory traj = evolve_adiabatic(cfg);
    CHECK(traj.frame == Frame::Adiabatic);
    CHECK(traj.states.front().m(1, 1).real() == 1.0);
}

TEST_CASE("frame equivalence of the two exact integrations") {
    SimConfig cfg;
    cfg.protocol = Protocol::linear_sine(2.0, 40.0);
    cfg.gamma = 2.0;
    CHECK(trajectory_distance(evolve_bare(cfg), evolve_adiabatic(cfg), cfg.protocol) <= 1e-6);

    SimConfig gauss;
    gauss.protocol = Protocol::gaussian(2.0, 2.0, 1.0);
    gauss.gamma = 2.0;
    CHECK(trajectory_distance(evolve_bare(gauss), evolve_adiabatic(gauss), gauss.protocol) <= 1e-6);
}

TEST_CASE("dark state is followed closely without dephasing") {
    SimConfig cfg;
    cfg.protocol = Protocol::linear_sine(2.0, 40.0);
    cfg.gamma = 0.0;
    const Trajectory traj = evolve_adiabatic(cfg);
    for (const DensityMatrix3& s : traj.states) CHECK(s.m(1, 1).real() >= 0.995);
}

TEST_CASE("final dark population decays with the dephasing strength") {
    double finals[3];
    int i = 0;
    for (double gamma : {0.0, 2.0, 4.0}) {
        SimConfig cfg;
        cfg.protocol = Protocol::linear_sine(2.0, 40.0);
        cfg.gamma = gamma;
        finals[i++] = evolve_adiabatic(cfg).final_state().m(1, 1).real();
    }
    CHECK(finals[0] > finals[1]);
    CHECK(finals[1] > finals[2]);
}

TEST_CASE("dressed-frame symmetries emerge dynamically") {
    SimConfig cfg;
    cfg.protocol = Protocol::linear_sine(2.0, 40.0);
    cfg.gamma = 2.0;
    const Trajectory traj = evolve_adiabatic(cfg);
    double d_pop = 0.0, d_coh = 0.0, d_pm = 0.0;
    for (const DensityMatrix3& s : traj.states) {
        d_pop = std::max(d_pop, std::abs(s.m(0, 0).real() - s.m(2, 2).real()));
        d_coh = std::max(d_coh, std::abs(s.m(0, 1) - s.m(1, 2)));
        d_pm = std::max(d_pm, std::abs(s.m(0, 2)));
    }
    CHECK(d_pop <= 0.05);
    CHECK(d_coh <= 0.05);
    CHECK(d_pm <= 0.05);
}

TEST_CASE("frame equivalence across a small parameter grid") {
    for (double gamma : {0.0, 2.0})
        for (double omega0 : {2.0, 6.0})
            for (double t0 : {20.0, 40.0}) {
                SimConfig cfg;
                cfg.protocol = Protocol::linear_sine(omega0, t0);
                cfg.gamma = gamma;
                CHECK(trajectory_distance(evolve_bare(cfg), evolve_adiabatic(cfg), cfg.protocol) <=
                      1e-6);
            }
}
