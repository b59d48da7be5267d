#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace qsvt {

using Complex = std::complex<double>;

/// Polynomial in one variable with complex coefficients.
///
/// Coefficients are held in the shifted Chebyshev basis T_j(2x - 1), which is
/// well conditioned on [0, 1] where every argument of interest (sigma^2, the
/// spectra of A*A and D*D) lives. Monomial coefficients grow exponentially
/// with the degree for the polynomials built by the QSVT recursion, while the
/// Chebyshev ones stay bounded. Both bases are real, so conjugating the
/// coefficients gives p*(x) = conj(p(x)) for real x in either representation.
///
/// Trailing coefficients with modulus below `kTrim` are dropped; the zero
/// polynomial has no coefficients.
class ComplexPolynomial {
  public:
    static constexpr double kTrim = 1e-14;

    ComplexPolynomial() = default;

    /// From monomial coefficients, lowest degree first: {a0, a1, a2} = a0 + a1 x + a2 x^2.
    ComplexPolynomial(std::initializer_list<Complex> monomial)
        : ComplexPolynomial(from_monomial(std::vector<Complex>(monomial))) {}

    static ComplexPolynomial from_monomial(const std::vector<Complex> &monomial) {
        ComplexPolynomial acc;
        for (auto it = monomial.rbegin(); it != monomial.rend(); ++it) {
            acc = acc.times_x();
            acc += constant(*it);
        }
        return acc;
    }

    static ComplexPolynomial from_chebyshev(std::vector<Complex> coeffs) {
        ComplexPolynomial p;
        p.cheb_ = std::move(coeffs);
        p.trim();
        return p;
    }

    static ComplexPolynomial constant(Complex c) { return from_chebyshev({c}); }

    /// The monomial x = (T_0 + T_1) / 2.
    static ComplexPolynomial x() { return from_chebyshev({0.5, 0.5}); }

    [[nodiscard]] const std::vector<Complex> &chebyshev_coefficients() const noexcept { return cheb_; }

    /// Monomial coefficients, lowest degree first. Exact in exact arithmetic;
    /// in floating point only meaningful for modest degrees.
    [[nodiscard]] std::vector<Complex> monomial_coefficients() const {
        std::vector<Complex> out(cheb_.size());
        if (cheb_.empty()) return out;
        // Monomial expansions of T_{j-1}(2x-1) and T_j(2x-1).
        std::vector<double> prev{1.0};
        std::vector<double> cur{-1.0, 2.0};
        out[0] += cheb_[0];
        for (std::size_t j = 1; j < cheb_.size(); ++j) {
            for (std::size_t m = 0; m < cur.size(); ++m) out[m] += cheb_[j] * cur[m];
            std::vector<double> next(cur.size() + 1, 0.0);
            for (std::size_t m = 0; m < cur.size(); ++m) {
                next[m] -= 2.0 * cur[m];
                next[m + 1] += 4.0 * cur[m];
            }
            for (std::size_t m = 0; m < prev.size(); ++m) next[m] -= prev[m];
            prev = std::move(cur);
            cur = std::move(next);
        }
        return out;
    }

    [[nodiscard]] bool is_zero() const noexcept { return cheb_.empty(); }
    /// Degree in x, or -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(cheb_.size()) - 1; }

    /// Clenshaw evaluation.
    [[nodiscard]] Complex operator()(Complex x) const noexcept {
        const Complex y = 2.0 * x - 1.0;
        Complex b1{}, b2{};
        for (std::size_t j = cheb_.size(); j-- > 1;) {
            const Complex b0 = cheb_[j] + 2.0 * y * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        if (cheb_.empty()) return {};
        return cheb_[0] + y * b1 - b2;
    }

    [[nodiscard]] ComplexPolynomial conj() const {
        std::vector<Complex> c(cheb_.size());
        std::transform(cheb_.begin(), cheb_.end(), c.begin(), [](Complex z) { return std::conj(z); });
        return from_chebyshev(std::move(c));
    }

    /// x * p(x), using x T_j = T_j / 2 + (T_{j+1} + T_{|j-1|}) / 4.
    [[nodiscard]] ComplexPolynomial times_x() const {
        if (cheb_.empty()) return {};
        std::vector<Complex> c(cheb_.size() + 1);
        for (std::size_t j = 0; j < cheb_.size(); ++j) {
            c[j] += 0.5 * cheb_[j];
            c[j + 1] += 0.25 * cheb_[j];
            c[j == 0 ? 1 : j - 1] += 0.25 * cheb_[j];
        }
        return from_chebyshev(std::move(c));
    }

    ComplexPolynomial &operator+=(const ComplexPolynomial &o) {
        if (o.cheb_.size() > cheb_.size()) cheb_.resize(o.cheb_.size());
        for (std::size_t j = 0; j < o.cheb_.size(); ++j) cheb_[j] += o.cheb_[j];
        trim();
        return *this;
    }

    ComplexPolynomial &operator-=(const ComplexPolynomial &o) {
        if (o.cheb_.size() > cheb_.size()) cheb_.resize(o.cheb_.size());
        for (std::size_t j = 0; j < o.cheb_.size(); ++j) cheb_[j] -= o.cheb_[j];
        trim();
        return *this;
    }

    ComplexPolynomial &operator*=(Complex s) {
        for (auto &c : cheb_) c *= s;
        trim();
        return *this;
    }

    friend ComplexPolynomial operator+(ComplexPolynomial a, const ComplexPolynomial &b) { return a += b; }
    friend ComplexPolynomial operator-(ComplexPolynomial a, const ComplexPolynomial &b) { return a -= b; }
    friend ComplexPolynomial operator*(ComplexPolynomial a, Complex s) { return a *= s; }
    friend ComplexPolynomial operator*(Complex s, ComplexPolynomial a) { return a *= s; }
    friend ComplexPolynomial operator-(ComplexPolynomial a) { return a *= -1.0; }

    /// T_a T_b = (T_{a+b} + T_{|a-b|}) / 2.
    friend ComplexPolynomial operator*(const ComplexPolynomial &a, const ComplexPolynomial &b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Complex> c(a.cheb_.size() + b.cheb_.size() - 1);
        for (std::size_t i = 0; i < a.cheb_.size(); ++i) {
            for (std::size_t j = 0; j < b.cheb_.size(); ++j) {
                const Complex half = 0.5 * a.cheb_[i] * b.cheb_[j];
                c[i + j] += half;
                c[i > j ? i - j : j - i] += half;
            }
        }
        return from_chebyshev(std::move(c));
    }

    /// Largest Chebyshev coefficient difference.
    friend double coefficient_distance(const ComplexPolynomial &a, const ComplexPolynomial &b) {
        const std::size_t n = std::max(a.cheb_.size(), b.cheb_.size());
        double d = 0.0;
        for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(a.cheb(j) - b.cheb(j)));
        return d;
    }

    friend std::ostream &operator<<(std::ostream &os, const ComplexPolynomial &p) {
        if (p.is_zero()) return os << "0";
        const auto m = p.monomial_coefficients();
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) os << " + ";
            os << m[j];
            if (j) os << "*x^" << j;
        }
        return os;
    }

  private:
    [[nodiscard]] Complex cheb(std::size_t j) const noexcept { return j < cheb_.size() ? cheb_[j] : Complex{}; }

    void trim() {
        while (!cheb_.empty() && std::abs(cheb_.back()) < kTrim) cheb_.pop_back();
    }

    std::vector<Complex> cheb_;
};

inline ComplexPolynomial conj_poly(const ComplexPolynomial &p) { return p.conj(); }

} // namespace qsvt
