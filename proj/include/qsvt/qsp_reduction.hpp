#pragma once

// The 2x2 picture: on each sector L_sigma the iterated operator acts as a
// product of Z-rotations and the reflection U_sigma.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "error.hpp"
#include "matrix_core.hpp"
#include "poly_track.hpp"
#include "report.hpp"

namespace qsvt {

/// U_sigma = [[s, c], [c, -s]] with c = sqrt(1 - s^2).
inline ComplexMatrix u_sigma(double sigma) {
    if (!(sigma >= 0.0 && sigma <= 1.0))
        throw Error(Errc::OutOfRange, "sigma = " + short_num(sigma) + " not in [0, 1]");
    const double c = std::sqrt(std::max(0.0, 1.0 - sigma * sigma));
    ComplexMatrix m(2, 2);
    m << sigma, c, c, -sigma;
    return m;
}

/// e^{i t Z} = diag(e^{i t}, e^{-i t}).
inline ComplexMatrix z_rotation(double t) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = cis(t);
    m(1, 1) = cis(-t);
    return m;
}

/// A sector sigma = cos k together with a phase schedule.
struct QspInstance {
    double sigma = 1.0;
    double k = 0.0;
    PhaseSchedule schedule;

    static QspInstance from_k(double k, PhaseSchedule schedule) {
        if (!(k >= 0.0 && k <= std::numbers::pi / 2))
            throw Error(Errc::OutOfRange, "k = " + short_num(k) + " not in [0, pi/2]");
        return {std::clamp(std::cos(k), 0.0, 1.0), k, std::move(schedule)};
    }

    static QspInstance from_sigma(double sigma, PhaseSchedule schedule) {
        if (!(sigma >= 0.0 && sigma <= 1.0))
            throw Error(Errc::OutOfRange, "sigma = " + short_num(sigma) + " not in [0, 1]");
        return {sigma, std::acos(sigma), std::move(schedule)};
    }
};

/// prod_k e^{i theta_k Z} U_sigma e^{i phi_k Z} U_sigma, latest factor leftmost.
inline ComplexMatrix qsp_even_product(double sigma, const PhaseSchedule &schedule) {
    const ComplexMatrix us = u_sigma(sigma);
    ComplexMatrix m = identity(2);
    for (const auto &p : schedule.pairs()) m = z_rotation(p.theta) * us * z_rotation(p.phi) * us * m;
    return m;
}

/// Even product, or e^{i phi_{n+1} Z} U_sigma times it when the schedule has
/// a final phase.
inline ComplexMatrix qsp_product(const QspInstance &inst) {
    ComplexMatrix m = qsp_even_product(inst.sigma, inst.schedule);
    if (inst.schedule.final_phi()) m = z_rotation(*inst.schedule.final_phi()) * u_sigma(inst.sigma) * m;
    return m;
}

/// The same 2x2 matrix assembled from the recursion polynomials at sigma^2.
inline ComplexMatrix qsp_polynomial_matrix(double sigma, const PhaseSchedule &schedule) {
    const double x = sigma * sigma;
    const double c = std::sqrt(std::max(0.0, 1.0 - x));
    const Complex i{0.0, 1.0};
    ComplexMatrix m(2, 2);
    if (schedule.final_phi()) {
        const auto odd = odd_polynomials(schedule);
        const Complex th = odd.theta(x);
        const Complex om = odd.omega(x);
        m << th * sigma, om * c, std::conj(om) * c, -std::conj(th) * sigma;
    } else {
        const auto even = even_recursion(schedule);
        const Complex pi = even.pi(x);
        const Complex ph = even.phi(x);
        m << pi, i * ph * sigma * c, i * std::conj(ph) * sigma * c, std::conj(pi);
    }
    return m;
}

/// Entrywise agreement of the direct product with the polynomial matrix, and
/// |Pi_n|^2 + x(1-x)|Phi_n|^2 = 1 at x = sigma^2.
inline CheckReport qsp_check(const QspInstance &inst, double threshold = 1e-10) {
    CheckReport rep;
    const ComplexMatrix direct = qsp_product(inst);
    const ComplexMatrix poly = qsp_polynomial_matrix(inst.sigma, inst.schedule);
    rep.add("entrywise", (direct - poly).cwiseAbs().maxCoeff(), threshold);
    const auto even = even_recursion(inst.schedule);
    const double x = inst.sigma * inst.sigma;
    const double norm = std::norm(even.pi(x)) + x * (1.0 - x) * std::norm(even.phi(x));
    rep.add("unit norm", std::abs(norm - 1.0), threshold);
    return rep;
}

/// Homogeneous sector data for a single pair (theta, phi) at sigma = cos k.
struct HomogeneousParams {
    double theta = 0.0;
    double phi = 0.0;
    double k = 0.0;
    double gamma = 1.0;
    double zeta = 0.0;
    int s = 1;

    static HomogeneousParams make(double theta, double phi, double k) {
        const double c2k = std::cos(2.0 * k);
        HomogeneousParams h;
        h.theta = theta;
        h.phi = phi;
        h.k = k;
        h.gamma = std::cos(theta) * std::cos(phi) - std::sin(theta) * std::sin(phi) * c2k;
        h.zeta = std::sin(theta) * std::cos(phi) + std::sin(phi) * std::cos(theta) * c2k;
        h.s = std::sin(phi) >= 0.0 ? 1 : -1;
        return h;
    }

    /// sin(phi) sin(2k), the modulus of the off-diagonal entries.
    [[nodiscard]] double off() const { return std::sin(phi) * std::sin(2.0 * k); }

    /// sin(lambda) = sqrt(zeta^2 + sin^2 phi sin^2 2k).
    [[nodiscard]] double sin_lambda() const { return std::hypot(zeta, off()); }

    /// e^{i theta Z} U_sigma e^{i phi Z} U_sigma written through gamma and zeta.
    [[nodiscard]] ComplexMatrix step_matrix() const {
        const Complex i{0.0, 1.0};
        ComplexMatrix m(2, 2);
        m << Complex(gamma, zeta), i * cis(theta) * off(), i * cis(-theta) * off(), Complex(gamma, -zeta);
        return m;
    }
};

/// (T_n(g), U_{n-1}(g)) by the three-term recurrence; U_{-1} = 0.
inline std::pair<double, double> chebyshev_t_u(std::size_t n, double g) {
    double t_prev = 1.0, t = g;     // T_0, T_1
    double u_prev = 0.0, u = 1.0;   // U_{-1}, U_0
    if (n == 0) return {1.0, 0.0};
    for (std::size_t j = 1; j < n; ++j) {
        const double t_next = 2.0 * g * t - t_prev;
        const double u_next = 2.0 * g * u - u_prev;
        t_prev = t;
        t = t_next;
        u_prev = u;
        u = u_next;
    }
    return {t, u};
}

struct ClosedFormValues {
    Complex pi;
    Complex phi;
};

/// Pi_n(sigma^2) = T_n(gamma) + i zeta U_{n-1}(gamma),
/// Phi_n(sigma^2) = 2 e^{i theta} sin(phi) U_{n-1}(gamma).
inline ClosedFormValues homogeneous_closed_form(double theta, double phi, double k, std::size_t n) {
    const auto h = HomogeneousParams::make(theta, phi, k);
    const auto [t, u] = chebyshev_t_u(n, h.gamma);
    return {Complex(t, h.zeta * u), 2.0 * cis(theta) * std::sin(phi) * u};
}

/// The closed-form values arranged as the 2x2 sector matrix.
inline ComplexMatrix homogeneous_closed_matrix(double theta, double phi, double k, std::size_t n) {
    const auto v = homogeneous_closed_form(theta, phi, k, n);
    const double sc = 0.5 * std::sin(2.0 * k); // sigma sqrt(1 - sigma^2)
    const Complex i{0.0, 1.0};
    ComplexMatrix m(2, 2);
    m << v.pi, i * v.phi * sc, i * std::conj(v.phi) * sc, std::conj(v.pi);
    return m;
}

/// Eigen-structure of one homogeneous step: eigenvalues e^{+-i lambda} with
/// spectral projectors. When sin(lambda) is below the cutoff the step is
/// within that distance of +-I and no projectors are formed.
struct HomogeneousEig {
    HomogeneousParams params;
    double lambda = 0.0;
    double sin_lambda = 0.0;
    bool degenerate = false;
    ComplexMatrix p_plus;
    ComplexMatrix p_minus;
};

inline HomogeneousEig homogeneous_eig(double theta, double phi, double k, const Tolerances &tol = {}) {
    HomogeneousEig e;
    e.params = HomogeneousParams::make(theta, phi, k);
    e.sin_lambda = e.params.sin_lambda();
    e.lambda = std::atan2(e.sin_lambda, e.params.gamma);
    e.degenerate = e.sin_lambda <= tol.degenerate_sin;
    if (e.degenerate) return e;
    const double sl = e.sin_lambda;
    const double z = e.params.zeta;
    const double off = e.params.off();
    const Complex et = cis(theta);
    ComplexMatrix pp(2, 2), pm(2, 2);
    pp << sl + z, et * off, std::conj(et) * off, sl - z;
    pm << sl - z, -et * off, -std::conj(et) * off, sl + z;
    e.p_plus = pp / (2.0 * sl);
    e.p_minus = pm / (2.0 * sl);
    return e;
}

/// e^{i n lambda} P_+ + e^{-i n lambda} P_-.
inline ComplexMatrix spectral_power(const HomogeneousEig &e, std::size_t n) {
    if (e.degenerate) throw Error(Errc::OutOfRange, "spectral_power needs a non-degenerate spectrum");
    const double nl = static_cast<double>(n) * e.lambda;
    return cis(nl) * e.p_plus + cis(-nl) * e.p_minus;
}

inline ComplexMatrix matrix_power(const ComplexMatrix &m, std::size_t n) {
    ComplexMatrix out = identity(m.rows());
    for (std::size_t j = 0; j < n; ++j) out = m * out;
    return out;
}

/// Closed form against the n-th power of the directly multiplied step
/// (threshold 1e-8 n), plus the step written through gamma, zeta and the
/// unit-determinant identity.
inline CheckReport homogeneous_closed_form_check(double theta, double phi, double k, std::size_t n) {
    CheckReport rep;
    const auto h = HomogeneousParams::make(theta, phi, k);
    const ComplexMatrix step = qsp_even_product(std::clamp(std::cos(k), 0.0, 1.0), PhaseSchedule({{theta, phi}}));
    const double nn = static_cast<double>(std::max<std::size_t>(1, n));
    rep.add("step matrix", (step - h.step_matrix()).cwiseAbs().maxCoeff(), 1e-12);
    rep.add("gamma^2 + zeta^2 + off^2 = 1",
            std::abs(h.gamma * h.gamma + h.zeta * h.zeta + h.off() * h.off() - 1.0), 1e-12);
    rep.add("closed form vs power",
            (homogeneous_closed_matrix(theta, phi, k, n) - matrix_power(step, n)).cwiseAbs().maxCoeff(), 1e-8 * nn);
    return rep;
}

/// Projector identities and e^{i n lambda} P_+ + e^{-i n lambda} P_- = M^n
/// (threshold 1e-9 n). In the degenerate case M^n is compared with
/// sign(gamma)^n I instead.
inline CheckReport spectral_decomposition_check(double theta, double phi, double k, std::size_t n,
                                                const Tolerances &tol = {}) {
    CheckReport rep;
    const auto e = homogeneous_eig(theta, phi, k, tol);
    const ComplexMatrix step = e.params.step_matrix();
    const ComplexMatrix power = matrix_power(step, n);
    const double nn = static_cast<double>(std::max<std::size_t>(1, n));
    if (e.degenerate) {
        const double sign = e.params.gamma >= 0.0 ? 1.0 : (n % 2 ? -1.0 : 1.0);
        rep.note("degenerate spectrum: sin(lambda) = " + short_num(e.sin_lambda));
        rep.add("degenerate power", (power - sign * identity(2)).norm(),
                std::max(1e-9, 2.0 * tol.degenerate_sin) * nn);
        return rep;
    }
    const ComplexMatrix id = identity(2);
    rep.add("P+ + P- = I", (e.p_plus + e.p_minus - id).norm(), 1e-10);
    rep.add("P+^2 = P+", (e.p_plus * e.p_plus - e.p_plus).norm(), 1e-10);
    rep.add("P-^2 = P-", (e.p_minus * e.p_minus - e.p_minus).norm(), 1e-10);
    rep.add("P+ P- = 0", (e.p_plus * e.p_minus).norm(), 1e-10);
    rep.add("spectral reconstruction", (cis(e.lambda) * e.p_plus + cis(-e.lambda) * e.p_minus - step).norm(), 1e-10);
    rep.add("spectral power", (spectral_power(e, n) - power).norm(), 1e-9 * nn);
    return rep;
}

/// cos(lambda) for n = 1: cos(theta) cos(phi) - sin(theta) sin(phi) cos(2k).
inline double n1_cos_lambda(double theta, double phi, double k) {
    return std::cos(theta) * std::cos(phi) - std::sin(theta) * std::sin(phi) * std::cos(2.0 * k);
}

/// Eigenvalues of the single-step sector matrix against e^{+-i lambda} with
/// the closed cos(lambda).
inline CheckReport n1_cos_check(double theta, double phi, double k, const Tolerances &tol = {}) {
    CheckReport rep;
    const ComplexMatrix step = qsp_even_product(std::clamp(std::cos(k), 0.0, 1.0), PhaseSchedule({{theta, phi}}));
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(step);
    const auto ev = solver.eigenvalues();
    const double c = n1_cos_lambda(theta, phi, k);
    rep.add("Re eigenvalue 0", std::abs(ev(0).real() - c), tol.eig);
    rep.add("Re eigenvalue 1", std::abs(ev(1).real() - c), tol.eig);
    rep.add("conjugate pair", std::abs(ev(0) * ev(1) - 1.0) , tol.eig);
    return rep;
}

} // namespace qsvt
