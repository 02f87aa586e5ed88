#include "stirap/matrix3.hpp"

#include <algorithm>
#include <cfloat>
#include <numbers>

namespace stirap {

ComplexMatrix3 adjoint(const ComplexMatrix3& a) {
    ComplexMatrix3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = std::conj(a(j, i));
    return out;
}

ComplexMatrix3 commutator(const ComplexMatrix3& a, const ComplexMatrix3& b) {
    return a * b - b * a;
}

double hermiticity_defect(const ComplexMatrix3& a) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

ComplexMatrix3 symmetrize(const ComplexMatrix3& a) {
    ComplexMatrix3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return out;
}

double max_abs_diff(const ComplexMatrix3& a, const ComplexMatrix3& b) {
    double d = 0.0;
    for (int i = 0; i < 9; ++i)
        d = std::max(d, std::abs(a.e[static_cast<std::size_t>(i)] - b.e[static_cast<std::size_t>(i)]));
    return d;
}

Complex determinant(const ComplexMatrix3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

std::array<double, 3> eig_hermitian3(const ComplexMatrix3& a) {
    if (!a.all_finite()) throw ContractViolation("eig_hermitian3: non-finite entries");
    if (hermiticity_defect(a) > 1e-10)
        throw ContractViolation("eig_hermitian3: input is not Hermitian within 1e-10");

    const double tr = a(0, 0).real() + a(1, 1).real() + a(2, 2).real();
    const double q = tr / 3.0;
    const double d0 = a(0, 0).real() - q;
    const double d1 = a(1, 1).real() - q;
    const double d2 = a(2, 2).real() - q;
    const double p1 = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
    const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
    if (p2 < DBL_MIN) return {q, q, q}; // scalar matrix

    const double p = std::sqrt(p2 / 6.0);
    // det((a - q I)/p) is real for Hermitian input.
    const Complex b01 = a(0, 1) / p, b02 = a(0, 2) / p, b12 = a(1, 2) / p;
    const double b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
    const double detb = b00 * b11 * b22 - b00 * std::norm(b12) - b22 * std::norm(b01) -
                        b11 * std::norm(b02) + 2.0 * std::real(b01 * b12 * std::conj(b02));
    const double r = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;

    // acos is ill-conditioned at r = +-1, exactly where two eigenvalues
    // coalesce; there the plain trig formula splits the close pair by
    // ~sqrt(eps)*p. The isolated root sits where cos is flat and stays
    // accurate, so keep it (its sign picks the separated branch), then deflate
    // and diagonalize the remaining 2x2 block in its orthogonal complement.
    const double e_hi = q + 2.0 * p * std::cos(phi);
    const double e_lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double e_mid = 3.0 * q - e_hi - e_lo;

    double scale = 0.0;
    for (const Complex& z : a.e) scale = std::max(scale, std::abs(z));
    // all three roots within ~2p of q: the trig error p*sqrt(eps) is already
    // far below certification tolerances
    if (p <= 1e-4 * scale) return {e_lo, e_mid, e_hi};

    const double isolated = r >= 0.0 ? e_hi : e_lo;

    using Vec3 = std::array<Complex, 3>;
    const auto cross = [](const Vec3& u, const Vec3& w) -> Vec3 {
        return {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
    };
    const auto norm2 = [](const Vec3& u) {
        return std::norm(u[0]) + std::norm(u[1]) + std::norm(u[2]);
    };

    // null vector of (a - isolated I) from the best-conditioned row pair
    Vec3 rows[3];
    for (int i = 0; i < 3; ++i) {
        rows[i] = {a(i, 0), a(i, 1), a(i, 2)};
        rows[i][static_cast<std::size_t>(i)] -= isolated;
    }
    Vec3 v = cross(rows[0], rows[1]);
    double best = norm2(v);
    for (const auto& cand : {cross(rows[0], rows[2]), cross(rows[1], rows[2])}) {
        const double n2 = norm2(cand);
        if (n2 > best) {
            best = n2;
            v = cand;
        }
    }
    if (best < DBL_MIN) return {e_lo, e_mid, e_hi};
    const double inv = 1.0 / std::sqrt(best);
    for (Complex& z : v) z *= inv;

    // orthonormal basis of the complement
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::norm(v[static_cast<std::size_t>(i)]) < std::norm(v[static_cast<std::size_t>(k)])) k = i;
    Vec3 u1{};
    u1[static_cast<std::size_t>(k)] = 1.0;
    for (int i = 0; i < 3; ++i)
        u1[static_cast<std::size_t>(i)] -= std::conj(v[static_cast<std::size_t>(k)]) * v[static_cast<std::size_t>(i)];
    const double u1inv = 1.0 / std::sqrt(norm2(u1));
    for (Complex& z : u1) z *= u1inv;
    Vec3 u2 = cross(v, u1);
    for (Complex& z : u2) z = std::conj(z);
    const double u2inv = 1.0 / std::sqrt(norm2(u2));
    for (Complex& z : u2) z *= u2inv;

    const auto quad_form = [&](const Vec3& x, const Vec3& y) {
        Complex s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                s += std::conj(x[static_cast<std::size_t>(i)]) * a(i, j) * y[static_cast<std::size_t>(j)];
        return s;
    };

    const double lam0 = quad_form(v, v).real(); // Rayleigh polish of the isolated root
    const double g00 = quad_form(u1, u1).real();
    const double g11 = quad_form(u2, u2).real();
    const Complex g01 = quad_form(u1, u2);
    const double mean = 0.5 * (g00 + g11);
    const double split = std::hypot(0.5 * (g00 - g11), std::abs(g01));

    std::array<double, 3> ev{lam0, mean - split, mean + split};
    std::sort(ev.begin(), ev.end());
    return ev;
}

DensityMatrix3 DensityMatrix3::pure(int level) {
    if (level < 0 || level > 2) throw ContractViolation("DensityMatrix3::pure: level out of range");
    DensityMatrix3 rho;
    rho.m(level, level) = 1.0;
    return rho;
}

void DensityMatrix3::validate(double herm_tol, double trace_tol, double pos_tol) const {
    if (!m.all_finite()) throw ContractViolation("DensityMatrix3: non-finite entries");
    if (hermiticity_defect(m) > herm_tol)
        throw ContractViolation("DensityMatrix3: Hermiticity defect exceeds tolerance");
    if (trace_error() > trace_tol) throw ContractViolation("DensityMatrix3: trace is not 1");
    if (min_eigenvalue() < -pos_tol)
        throw ContractViolation("DensityMatrix3: negative eigenvalue beyond tolerance");
}

double purity(const DensityMatrix3& rho) {
    // trace(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double s = 0.0;
    for (const Complex& z : rho.m.e) s += std::norm(z);
    return s;
}

} // namespace stirap
