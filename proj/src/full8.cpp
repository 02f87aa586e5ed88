#include "stirap/full8.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "stirap/errors.hpp"
#include "stirap/rk4.hpp"

namespace stirap {
namespace {

constexpr int N = 8;

struct Matrix8 {
    std::array<Complex, N * N> e{};

    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(N * r + c)]; }
    const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(N * r + c)]; }

    Matrix8& operator+=(const Matrix8& o) {
        for (int i = 0; i < N * N; ++i) e[static_cast<std::size_t>(i)] += o.e[static_cast<std::size_t>(i)];
        return *this;
    }
    friend Matrix8 operator+(Matrix8 a, const Matrix8& b) { return a += b; }
    friend Matrix8 operator-(const Matrix8& a, const Matrix8& b) {
        Matrix8 c;
        for (int i = 0; i < N * N; ++i)
            c.e[static_cast<std::size_t>(i)] =
                a.e[static_cast<std::size_t>(i)] - b.e[static_cast<std::size_t>(i)];
        return c;
    }
    friend Matrix8 operator*(Complex s, Matrix8 a) {
        for (Complex& z : a.e) z *= s;
        return a;
    }
    friend Matrix8 operator*(double s, Matrix8 a) { return Complex(s) * a; }

    friend Matrix8 operator*(const Matrix8& a, const Matrix8& b) {
        Matrix8 c;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex(0.0)) continue;
                for (int j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }
};

using Mat2 = std::array<Complex, 4>;

// Single-spin operators in the basis {|0>, |1>} (bit value = index).
constexpr Mat2 kId2{1.0, 0.0, 0.0, 1.0};
constexpr Mat2 kSigmaZ{-1.0, 0.0, 0.0, 1.0};  // |1> is the excited state
constexpr Mat2 kSigmaPlus{0.0, 0.0, 1.0, 0.0}; // |1><0|
constexpr Mat2 kSigmaMinus{0.0, 1.0, 0.0, 0.0};

// a acts on q1 (most significant bit), c on q3.
Matrix8 kron3(const Mat2& a, const Mat2& b, const Mat2& c) {
    Matrix8 m;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < 2; ++i2)
                for (int j2 = 0; j2 < 2; ++j2)
                    for (int i3 = 0; i3 < 2; ++i3)
                        for (int j3 = 0; j3 < 2; ++j3)
                            m(4 * i1 + 2 * i2 + i3, 4 * j1 + 2 * j2 + j3) =
                                a[static_cast<std::size_t>(2 * i1 + j1)] *
                                b[static_cast<std::size_t>(2 * i2 + j2)] *
                                c[static_cast<std::size_t>(2 * i3 + j3)];
    return m;
}

struct SpinOperators {
    Matrix8 z_total;  // sigma^z_1 + sigma^z_2 + sigma^z_3
    Matrix8 z2;       // sigma^z_2
    Matrix8 pump;     // sigma^+_1 sigma^-_2 + sigma^-_1 sigma^+_2
    Matrix8 stokes;   // sigma^+_2 sigma^-_3 + sigma^-_2 sigma^+_3
};

SpinOperators make_operators() {
    SpinOperators ops;
    ops.z_total = kron3(kSigmaZ, kId2, kId2) + kron3(kId2, kSigmaZ, kId2) + kron3(kId2, kId2, kSigmaZ);
    ops.z2 = kron3(kId2, kSigmaZ, kId2);
    ops.pump = kron3(kSigmaPlus, kSigmaMinus, kId2) + kron3(kSigmaMinus, kSigmaPlus, kId2);
    ops.stokes = kron3(kId2, kSigmaPlus, kSigmaMinus) + kron3(kId2, kSigmaMinus, kSigmaPlus);
    return ops;
}

double hermiticity_defect8(const Matrix8& a) {
    double d = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

Matrix8 symmetrize8(const Matrix8& a) {
    Matrix8 out;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return out;
}

// Basis indices of |100>, |010>, |001>.
constexpr std::array<int, 3> kSectorIndex{4, 2, 1};

double leakage(const Matrix8& rho) {
    double out = 0.0;
    for (int i = 0; i < N; ++i) {
        if (i == 4 || i == 2 || i == 1) continue;
        out += rho(i, i).real();
    }
    return std::abs(out);
}

// Cyclic Jacobi diagonalization, smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue8(Matrix8 a) {
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < 1e-14) break;
        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const Complex g = a(p, q);
                const double ag = std::abs(g);
                if (ag < 1e-300) continue;
                const Complex phase = g / ag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * ag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns: col_p <- c col_p - s conj(phase) col_q, col_q <- s phase col_p + c col_q
                for (int k = 0; k < N; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * phase * akp + c * akq;
                }
                // Rows: row_p <- c row_p - s phase row_q, row_q <- s conj(phase) row_p + c row_q
                for (int k = 0; k < N; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
            }
        }
    }
    double emin = a(0, 0).real();
    for (int i = 1; i < N; ++i) emin = std::min(emin, a(i, i).real());
    return emin;
}

DensityMatrix3 project_to_three_level(const Matrix8& rho) {
    DensityMatrix3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.m(i, j) = rho(kSectorIndex[static_cast<std::size_t>(i)],
                                                      kSectorIndex[static_cast<std::size_t>(j)]);
    return out;
}

double purity8(const Matrix8& rho) {
    double s = 0.0;
    for (const Complex& z : rho.e) s += std::norm(z);
    return s;
}

} // namespace

Trajectory evolve_full8(const SimConfig& cfg) {
    cfg.validate();
    const SpinOperators ops = make_operators();
    const double t0 = cfg.protocol.t0;

    const auto rhs = [&](double t, const Matrix8& rho) {
        const DriveSample s = sample(cfg.protocol, std::clamp(t, 0.0, t0));
        Matrix8 h = cfg.delta * ops.z_total;
        h += s.omega_p * ops.pump;
        h += s.omega_s * ops.stokes;
        Matrix8 out = Complex(0.0, -1.0) * (h * rho - rho * h);
        out += cfg.gamma * (ops.z2 * rho * ops.z2 - rho);
        return out;
    };

    Matrix8 rho;
    rho(4, 4) = 1.0; // |100><100|

    const long n = cfg.steps();
    const double h = cfg.dt_effective();
    const long stride = cfg.stride_effective();

    Trajectory traj;
    traj.frame = Frame::Bare;
    traj.cert.dt_used = h;
    traj.cert.steps = n;
    traj.cert.min_eigenvalue = 0.0; // exact for the pure initial state

    const auto record = [&](double t, const Matrix8& m) {
        traj.times.push_back(t);
        traj.states.push_back(project_to_three_level(m));
        traj.trace_err.push_back(std::abs(m.trace() - Complex(1.0)));
        traj.purity.push_back(purity8(m));
        const double emin = min_eigenvalue8(m);
        traj.cert.min_eigenvalue = std::min(traj.cert.min_eigenvalue, emin);
        if (emin < -kPositivityTol)
            throw NumericFailure("full8: negative eigenvalue beyond 1e-9", t);
    };

    record(0.0, rho);

    for (long k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * h;
        rho = rk4_step(rhs, t, h, rho);
        const double t_next = std::clamp(static_cast<double>(k + 1) * h, 0.0, t0);

        const double defect = hermiticity_defect8(rho);
        traj.cert.max_herm_defect = std::max(traj.cert.max_herm_defect, defect);
        if (defect > 1e-10) throw NumericFailure("full8: Hermiticity defect exceeded 1e-10", t_next);
        rho = symmetrize8(rho);

        const double terr = std::abs(rho.trace().real() - 1.0);
        traj.cert.max_trace_err = std::max(traj.cert.max_trace_err, terr);
        if (terr > kTraceTol) throw NumericFailure("full8: trace drift exceeded 1e-9", t_next);

        const double leak = leakage(rho);
        traj.cert.max_leakage = std::max(traj.cert.max_leakage, leak);
        if (leak > 1e-9) throw NumericFailure("full8: excitation leaked out of the sector", t_next);

        if ((k + 1) % stride == 0 || k + 1 == n) record(t_next, rho);
    }
    return traj;
}

} // namespace stirap
