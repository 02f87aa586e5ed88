#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "stirap/errors.hpp"

namespace stirap {

using Complex = std::complex<double>;

// Shared numerical tolerances. kPositivityTol absorbs RK4 truncation noise in
// the smallest eigenvalue of evolved density matrices.
inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPositivityTol = 1e-9;

/// Dense 3x3 complex matrix with value semantics. Row-major storage.
struct ComplexMatrix3 {
    std::array<Complex, 9> e{};

    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(3 * r + c)]; }
    const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(3 * r + c)]; }

    static ComplexMatrix3 zero() { return {}; }

    static ComplexMatrix3 identity() {
        ComplexMatrix3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }

    static ComplexMatrix3 diag(Complex d0, Complex d1, Complex d2) {
        ComplexMatrix3 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        return m;
    }

    Complex trace() const { return e[0] + e[4] + e[8]; }

    bool all_finite() const {
        for (const Complex& z : e) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }

    ComplexMatrix3& operator+=(const ComplexMatrix3& o) {
        for (int i = 0; i < 9; ++i) e[static_cast<std::size_t>(i)] += o.e[static_cast<std::size_t>(i)];
        return *this;
    }
    ComplexMatrix3& operator-=(const ComplexMatrix3& o) {
        for (int i = 0; i < 9; ++i) e[static_cast<std::size_t>(i)] -= o.e[static_cast<std::size_t>(i)];
        return *this;
    }
    ComplexMatrix3& operator*=(Complex s) {
        for (Complex& z : e) z *= s;
        return *this;
    }

    friend ComplexMatrix3 operator+(ComplexMatrix3 a, const ComplexMatrix3& b) { return a += b; }
    friend ComplexMatrix3 operator-(ComplexMatrix3 a, const ComplexMatrix3& b) { return a -= b; }
    friend ComplexMatrix3 operator*(Complex s, ComplexMatrix3 a) { return a *= s; }
    friend ComplexMatrix3 operator*(double s, ComplexMatrix3 a) { return a *= Complex(s); }

    friend ComplexMatrix3 operator*(const ComplexMatrix3& a, const ComplexMatrix3& b) {
        ComplexMatrix3 c;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                const Complex aik = a(i, k);
                for (int j = 0; j < 3; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
};

/// Conjugate transpose.
ComplexMatrix3 adjoint(const ComplexMatrix3& a);

/// ab - ba.
ComplexMatrix3 commutator(const ComplexMatrix3& a, const ComplexMatrix3& b);

/// max_{ij} |a_ij - conj(a_ji)|.
double hermiticity_defect(const ComplexMatrix3& a);

/// (a + a^dagger)/2. Diagonal entries come out exactly real.
ComplexMatrix3 symmetrize(const ComplexMatrix3& a);

/// max_{ij} |a_ij - b_ij|, the entrywise sup distance used by equivalence checks.
double max_abs_diff(const ComplexMatrix3& a, const ComplexMatrix3& b);

Complex determinant(const ComplexMatrix3& a);

/// Eigenvalues of a Hermitian 3x3 matrix, ascending, via the closed-form
/// trigonometric solution of the characteristic cubic. Throws
/// ContractViolation when the Hermiticity defect exceeds 1e-10.
std::array<double, 3> eig_hermitian3(const ComplexMatrix3& a);

/// Unit-trace Hermitian positive-semidefinite 3x3 state.
struct DensityMatrix3 {
    ComplexMatrix3 m;

    /// |level><level| for level in {0, 1, 2}.
    static DensityMatrix3 pure(int level);

    double trace_error() const { return std::abs(m.trace() - Complex(1.0)); }
    double min_eigenvalue() const { return eig_hermitian3(m)[0]; }

    /// Throws ContractViolation unless finite, Hermitian within herm_tol,
    /// unit-trace within trace_tol and PSD within pos_tol.
    void validate(double herm_tol = kHermiticityTol, double trace_tol = kTraceTol,
                  double pos_tol = kPositivityTol) const;
};

/// trace(rho^2); 1 for pure states, 1/3 for the maximally mixed state.
double purity(const DensityMatrix3& rho);

} // namespace stirap
