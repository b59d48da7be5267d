#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix_core.hpp"
#include "polynomial.hpp"
#include "report.hpp"

namespace qsvt {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{i t}
inline Complex cis(double t) { return std::polar(1.0, t); }

/// Map any finite angle into [0, 2*pi).
inline double wrap_angle(double t) {
    double w = std::fmod(t, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w < kTwoPi ? w : 0.0;
}

struct PhasePair {
    double theta = 0.0;
    double phi = 0.0;
};

/// (theta_k, phi_k) for k = 1..n, plus phi_{n+1} when an odd product is wanted.
class PhaseSchedule {
  public:
    PhaseSchedule() = default;
    explicit PhaseSchedule(std::vector<PhasePair> pairs, std::optional<double> final_phi = std::nullopt)
        : pairs_(std::move(pairs)), final_phi_(final_phi) {
        for (const auto &p : pairs_) {
            check_angle(p.theta, "theta");
            check_angle(p.phi, "phi");
        }
        if (final_phi_) check_angle(*final_phi_, "final_phi");
    }

    /// n copies of the same pair.
    static PhaseSchedule homogeneous(std::size_t n, double theta, double phi,
                                     std::optional<double> final_phi = std::nullopt) {
        return PhaseSchedule(std::vector<PhasePair>(n, {theta, phi}), final_phi);
    }

    static PhaseSchedule random(RandomStream &rng, std::size_t n, bool with_final_phi) {
        std::vector<PhasePair> pairs(n);
        for (auto &p : pairs) {
            p.theta = rng.angle();
            p.phi = rng.angle();
        }
        std::optional<double> last;
        if (with_final_phi) last = rng.angle();
        return PhaseSchedule(std::move(pairs), last);
    }

    [[nodiscard]] std::size_t size() const noexcept { return pairs_.size(); }
    [[nodiscard]] const std::vector<PhasePair> &pairs() const noexcept { return pairs_; }
    [[nodiscard]] const PhasePair &operator[](std::size_t k) const { return pairs_.at(k); }
    [[nodiscard]] const std::optional<double> &final_phi() const noexcept { return final_phi_; }

    [[nodiscard]] double require_final_phi() const {
        if (!final_phi_) throw Error(Errc::MissingFinalPhase, "odd product needs phi_{n+1}");
        return *final_phi_;
    }

    [[nodiscard]] PhaseSchedule with_final_phi(std::optional<double> phi) const {
        return PhaseSchedule(pairs_, phi);
    }

    /// Concatenation: `*this` is applied first, then `later`. The final phase of `later` is kept.
    [[nodiscard]] PhaseSchedule then(const PhaseSchedule &later) const {
        auto all = pairs_;
        all.insert(all.end(), later.pairs_.begin(), later.pairs_.end());
        return PhaseSchedule(std::move(all), later.final_phi_);
    }

    friend bool operator==(const PhaseSchedule &a, const PhaseSchedule &b) {
        if (a.pairs_.size() != b.pairs_.size() || a.final_phi_ != b.final_phi_) return false;
        for (std::size_t k = 0; k < a.pairs_.size(); ++k)
            if (a.pairs_[k].theta != b.pairs_[k].theta || a.pairs_[k].phi != b.pairs_[k].phi) return false;
        return true;
    }

  private:
    static void check_angle(double t, const char *name) {
        if (!(t >= 0.0 && t < kTwoPi))
            throw Error(Errc::OutOfRange, std::string(name) + " = " + std::to_string(t) + " not in [0, 2pi)");
    }

    std::vector<PhasePair> pairs_;
    std::optional<double> final_phi_;
};

/// prod_k exp(i (a*theta_k + b*phi_k)), accumulated as a single phase.
inline Complex phase_product(const PhaseSchedule &s, double theta_sign, double phi_sign) {
    double total = 0.0;
    for (const auto &p : s.pairs()) total += theta_sign * p.theta + phi_sign * p.phi;
    return cis(std::fmod(total, kTwoPi));
}

struct PQPair {
    ComplexPolynomial p; // e^{i theta}(e^{-i phi} + 2i sin(phi) x)
    ComplexPolynomial q; // 2 e^{i theta} sin(phi), kept as a degree-0 polynomial
};

inline PQPair pq_of_phases(double theta, double phi) {
    const Complex e_theta = cis(theta);
    return {ComplexPolynomial{e_theta * cis(-phi), e_theta * Complex(0.0, 2.0 * std::sin(phi))},
            ComplexPolynomial::constant(2.0 * e_theta * std::sin(phi))};
}

/// (Pi_n, Phi_n) such that the even product has blocks
/// [[Pi_n(A*A), i Phi_n(A*A) A*B], [i Phi_n*(D*D) B*A, Pi_n*(D*D)]].
struct QsvtPolyPair {
    ComplexPolynomial pi = ComplexPolynomial::constant(1.0);
    ComplexPolynomial phi;
    std::size_t n = 0;
};

/// Pi_n = P_n Pi_{n-1} - Q_n Phi*_{n-1} (1-x) x
/// Phi_n = P_n Phi_{n-1} + Q_n Pi*_{n-1}
inline QsvtPolyPair even_recursion(const PhaseSchedule &schedule) {
    const ComplexPolynomial x_one_minus_x{0.0, 1.0, -1.0};
    QsvtPolyPair out;
    for (const auto &pair : schedule.pairs()) {
        const auto [p, q] = pq_of_phases(pair.theta, pair.phi);
        ComplexPolynomial pi = p * out.pi - q * out.phi.conj() * x_one_minus_x;
        ComplexPolynomial phi = p * out.phi + q * out.pi.conj();
        out.pi = std::move(pi);
        out.phi = std::move(phi);
        ++out.n;
    }
    return out;
}

/// (Theta_n, Omega_n) such that the odd product has blocks
/// [[Theta_n(AA*) A, Omega_n(AA*) B], [Omega_n*(DD*) C, Theta_n*(DD*) D]].
struct OddPolyPair {
    ComplexPolynomial theta;
    ComplexPolynomial omega;
};

inline OddPolyPair odd_polynomials(const PhaseSchedule &schedule) {
    const Complex e_last = cis(schedule.require_final_phi());
    const auto even = even_recursion(schedule);
    const Complex i{0.0, 1.0};
    const ComplexPolynomial one_minus_x{1.0, -1.0};
    return {e_last * (even.pi + i * even.phi.conj() * one_minus_x),
            e_last * (even.pi.conj() + i * even.phi * ComplexPolynomial::x())};
}

/// Values at x = 0 and x = 1 against the closed phase products:
///   Pi_n(0) = prod e^{i(theta-phi)},  Pi_n(1) = prod e^{i(theta+phi)},
///   Omega_n(0) = e^{i phi_{n+1}} prod e^{-i(theta-phi)},  Theta_n(1) = e^{i phi_{n+1}} prod e^{i(theta+phi)}.
/// The Omega/Theta rows are skipped when the schedule has no final phase.
inline CheckReport boundary_values(const PhaseSchedule &schedule, const Tolerances &tol = {}) {
    CheckReport rep;
    const auto even = even_recursion(schedule);
    rep.add("Pi_n(0)", std::abs(even.pi(0.0) - phase_product(schedule, 1.0, -1.0)), tol.poly);
    rep.add("Pi_n(1)", std::abs(even.pi(1.0) - phase_product(schedule, 1.0, 1.0)), tol.poly);
    if (schedule.final_phi()) {
        const auto odd = odd_polynomials(schedule);
        const Complex e_last = cis(*schedule.final_phi());
        rep.add("Omega_n(0)", std::abs(odd.omega(0.0) - e_last * phase_product(schedule, -1.0, 1.0)), tol.poly);
        rep.add("Theta_n(1)", std::abs(odd.theta(1.0) - e_last * phase_product(schedule, 1.0, 1.0)), tol.poly);
    } else {
        rep.note("no final phase: Omega_n(0) and Theta_n(1) not checked");
    }
    return rep;
}

} // namespace qsvt
