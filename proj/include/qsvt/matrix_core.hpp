#pragma once

// Dense complex linear algebra kernels. Eigen provides the factorizations;
// this header fixes the conventions (ordering, tolerances, error codes) the
// rest of the library relies on.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "error.hpp"
#include "polynomial.hpp"
#include "random.hpp"

namespace qsvt {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical thresholds shared by every check. Relative ones are scaled by the
/// Frobenius norm of the quantity being tested (or of the identity).
struct Tolerances {
    double herm = 1e-10;      // relative Hermiticity defect
    double unit = 1e-10;      // unitarity / operator identities
    double recon = 1e-10;     // relative factorization reconstruction
    double psd = 1e-10;       // absolute negative-eigenvalue slack
    double poly = 1e-9;       // polynomial identities (scaled by n for products)
    double eig = 1e-9;        // eigenvalue and eigenvector identities
    double sigma_lo = 1e-7;   // sigma below this is treated as 0
    double sigma_hi = 1.0 - 1e-7; // sigma above this is treated as 1
    double degenerate_sin = 1e-8; // sin(lambda) cutoff for the 2x2 projector formula
};

struct HermitianEig {
    RealVector eigenvalues;    // ascending
    ComplexMatrix eigenvectors; // orthonormal columns
};

/// `left` and `right` are full unitary factors (rows x rows, cols x cols);
/// `singulars` has min(rows, cols) entries in descending order.
struct SvdResult {
    ComplexMatrix left;
    RealVector singulars;
    ComplexMatrix right;
};

inline bool all_finite(const ComplexMatrix &m) noexcept { return m.allFinite(); }

inline void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols())
        throw Error(Errc::NotSquare, std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                                         std::to_string(m.cols()));
}

inline void require_finite(const ComplexMatrix &m, const char *what) {
    if (!all_finite(m)) throw Error(Errc::NonFinite, std::string(what) + " has NaN or Inf entries");
}

inline ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

/// ||U*U - I||_F.
inline double unitarity_defect(const ComplexMatrix &u) {
    return (u.adjoint() * u - identity(u.cols())).norm();
}

inline HermitianEig hermitian_eig(const ComplexMatrix &m, const Tolerances &tol = {}) {
    require_square(m, "hermitian_eig input");
    require_finite(m, "hermitian_eig input");
    const double scale = m.norm();
    if ((m - m.adjoint()).norm() > tol.herm * scale)
        throw Error(Errc::NotHermitian, "||M - M*||_F = " + std::to_string((m - m.adjoint()).norm()));
    if (m.rows() == 0) return {};
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw Error(Errc::ConvergenceFailure, "Hermitian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline SvdResult svd(const ComplexMatrix &m) {
    require_finite(m, "svd input");
    if (m.size() == 0)
        return {identity(m.rows()), RealVector(0), identity(m.cols())};
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (solver.info() != Eigen::Success)
        throw Error(Errc::ConvergenceFailure, "Jacobi SVD did not converge");
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

inline double spectral_norm(const ComplexMatrix &m) {
    const auto s = svd(m).singulars;
    return s.size() ? s(0) : 0.0;
}

/// p(M) by the Clenshaw recurrence on Y = 2M - I (the Chebyshev analogue of
/// Horner's scheme). Exact algebra for any square M; numerically stable when
/// M is Hermitian with spectrum in [0, 1].
inline ComplexMatrix mat_poly_eval(const ComplexPolynomial &p, const ComplexMatrix &m) {
    require_square(m, "mat_poly_eval argument");
    const Index n = m.rows();
    const auto &c = p.chebyshev_coefficients();
    if (c.empty()) return ComplexMatrix::Zero(n, n);
    ComplexMatrix y = 2.0 * m;
    y.diagonal().array() -= 1.0;
    ComplexMatrix b1 = ComplexMatrix::Zero(n, n);
    ComplexMatrix b2 = ComplexMatrix::Zero(n, n);
    for (std::size_t j = c.size(); j-- > 1;) {
        ComplexMatrix b0 = 2.0 * y * b1 - b2;
        b0.diagonal().array() += c[j];
        b2 = std::move(b1);
        b1 = std::move(b0);
    }
    ComplexMatrix out = y * b1 - b2;
    out.diagonal().array() += c[0];
    return out;
}

/// p(M) through the eigendecomposition of a Hermitian M. Cross-check only.
inline ComplexMatrix mat_poly_eval_spectral(const ComplexPolynomial &p, const ComplexMatrix &m,
                                            const Tolerances &tol = {}) {
    const auto eig = hermitian_eig(m, tol);
    ComplexVector vals(eig.eigenvalues.size());
    for (Index i = 0; i < vals.size(); ++i) vals(i) = p(eig.eigenvalues(i));
    return eig.eigenvectors * vals.asDiagonal() * eig.eigenvectors.adjoint();
}

inline ComplexMatrix psd_sqrt(const ComplexMatrix &m, const Tolerances &tol = {}) {
    const auto eig = hermitian_eig(m, tol);
    if (eig.eigenvalues.size() == 0) return ComplexMatrix(0, 0);
    if (eig.eigenvalues.minCoeff() < -tol.psd)
        throw Error(Errc::NotPsd, "minimum eigenvalue " + std::to_string(eig.eigenvalues.minCoeff()));
    const RealVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    ComplexMatrix s = eig.eigenvectors * roots.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
    return 0.5 * (s + s.adjoint());
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix (filled row-major
/// from `rng`) with the phases of diag(R) moved into Q.
inline ComplexMatrix haar_unitary(Index n, RandomStream &rng) {
    if (n < 1) throw Error(Errc::OutOfRange, "haar_unitary needs n >= 1");
    ComplexMatrix z(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * identity(n);
    const ComplexMatrix &r = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        const double mod = std::abs(r(j, j));
        if (mod > 0.0) q.col(j) *= r(j, j) / mod;
    }
    return q;
}

inline ComplexMatrix haar_unitary(Index n, std::uint64_t seed) {
    RandomStream rng(seed);
    return haar_unitary(n, rng);
}

} // namespace qsvt
