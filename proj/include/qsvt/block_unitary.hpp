#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "matrix_core.hpp"
#include "poly_track.hpp"
#include "report.hpp"

namespace qsvt {

/// A subspace of C^N given by a full orthonormal basis whose first
/// `sub_dim` columns span it; the remaining columns span its complement.
class SubspaceSplit {
  public:
    SubspaceSplit() = default;

    SubspaceSplit(ComplexMatrix basis, Index sub_dim, const Tolerances &tol = {})
        : basis_(std::move(basis)), sub_dim_(sub_dim) {
        require_square(basis_, "split basis");
        require_finite(basis_, "split basis");
        if (sub_dim_ < 0 || sub_dim_ > basis_.cols())
            throw Error(Errc::DimensionMismatch, "sub_dim " + std::to_string(sub_dim_) + " outside [0, " +
                                                     std::to_string(basis_.cols()) + "]");
        const double defect = unitarity_defect(basis_);
        if (defect > tol.unit * std::max(1.0, std::sqrt(static_cast<double>(basis_.cols()))))
            throw Error(Errc::NotUnitary, "split basis defect " + short_num(defect));
    }

    /// First `sub_dim` standard basis vectors.
    static SubspaceSplit coordinate(Index total_dim, Index sub_dim) {
        return SubspaceSplit(identity(total_dim), sub_dim);
    }

    /// Random orthonormal completion: a Haar basis, so neither the subspace nor
    /// its basis is aligned with coordinates.
    static SubspaceSplit random(Index total_dim, Index sub_dim, RandomStream &rng) {
        return SubspaceSplit(haar_unitary(total_dim, rng), sub_dim);
    }

    /// Same subspace, different orthonormal bases: columns are mixed within
    /// the subspace and within the complement by independent unitaries.
    [[nodiscard]] SubspaceSplit recompleted(RandomStream &rng) const {
        ComplexMatrix mix = ComplexMatrix::Zero(total_dim(), total_dim());
        if (sub_dim_ > 0) mix.topLeftCorner(sub_dim_, sub_dim_) = haar_unitary(sub_dim_, rng);
        const Index rest = total_dim() - sub_dim_;
        if (rest > 0) mix.bottomRightCorner(rest, rest) = haar_unitary(rest, rng);
        return SubspaceSplit(basis_ * mix, sub_dim_);
    }

    [[nodiscard]] Index total_dim() const noexcept { return basis_.cols(); }
    [[nodiscard]] Index sub_dim() const noexcept { return sub_dim_; }
    [[nodiscard]] const ComplexMatrix &basis() const noexcept { return basis_; }
    [[nodiscard]] ComplexMatrix sub() const { return basis_.leftCols(sub_dim_); }
    [[nodiscard]] ComplexMatrix complement() const { return basis_.rightCols(total_dim() - sub_dim_); }

    /// Orthogonal projector onto the subspace (basis independent).
    [[nodiscard]] ComplexMatrix projector() const {
        const ComplexMatrix q = sub();
        return q * q.adjoint();
    }

  private:
    ComplexMatrix basis_;
    Index sub_dim_ = 0;
};

/// e^{i theta} on the subspace, e^{-i theta} on its complement. Built from the
/// projector, so it does not depend on how the split's basis was completed.
inline ComplexMatrix rotation(const SubspaceSplit &split, double theta) {
    const ComplexMatrix q = split.projector();
    const Complex plus = cis(theta);
    const Complex minus = cis(-theta);
    ComplexMatrix r = (plus - minus) * q;
    r.diagonal().array() += minus;
    return r;
}

/// A unitary U on C^N with the block layout
///   U = [[A, B], [C, D]] : H (+) H_perp -> K (+) K_perp.
/// Vectors and operators are stored in ambient coordinates; the blocks are
/// expressed in the split bases.
struct BlockUnitary {
    ComplexMatrix u;
    SubspaceSplit domain;   // H (+) H_perp
    SubspaceSplit codomain; // K (+) K_perp
    ComplexMatrix a, b, c, d;

    [[nodiscard]] Index dim() const noexcept { return u.rows(); }
    [[nodiscard]] Index h_dim() const noexcept { return domain.sub_dim(); }
    [[nodiscard]] Index k_dim() const noexcept { return codomain.sub_dim(); }

    /// Split-basis representation of an ambient operator from domain to codomain side.
    [[nodiscard]] ComplexMatrix to_split(const ComplexMatrix &ambient, bool codomain_rows) const {
        const ComplexMatrix &rows = codomain_rows ? codomain.basis() : domain.basis();
        return rows.adjoint() * ambient * domain.basis();
    }

    /// Ambient vector for (x, y) in H (+) H_perp.
    [[nodiscard]] ComplexVector embed_domain(const ComplexVector &x, const ComplexVector &y) const {
        ComplexVector v = ComplexVector::Zero(dim());
        if (x.size()) v += domain.sub() * x;
        if (y.size()) v += domain.complement() * y;
        return v;
    }

    /// Ambient vector for (a, b) in K (+) K_perp.
    [[nodiscard]] ComplexVector embed_codomain(const ComplexVector &x, const ComplexVector &y) const {
        ComplexVector v = ComplexVector::Zero(dim());
        if (x.size()) v += codomain.sub() * x;
        if (y.size()) v += codomain.complement() * y;
        return v;
    }

    /// Delta = [A, B] : H (+) H_perp -> K.
    [[nodiscard]] ComplexMatrix delta() const {
        ComplexMatrix del(k_dim(), dim());
        del.leftCols(h_dim()) = a;
        del.rightCols(dim() - h_dim()) = b;
        return del;
    }
};

/// The six block relations implied by U*U = UU* = I.
inline CheckReport relation_residuals(const BlockUnitary &bu, double threshold) {
    const Index h = bu.h_dim();
    const Index hp = bu.dim() - h;
    const Index k = bu.k_dim();
    const Index kp = bu.dim() - k;
    CheckReport rep;
    rep.add("A*A + C*C = I", (bu.a.adjoint() * bu.a + bu.c.adjoint() * bu.c - identity(h)).norm(), threshold);
    rep.add("B*B + D*D = I", (bu.b.adjoint() * bu.b + bu.d.adjoint() * bu.d - identity(hp)).norm(), threshold);
    rep.add("AA* + BB* = I", (bu.a * bu.a.adjoint() + bu.b * bu.b.adjoint() - identity(k)).norm(), threshold);
    rep.add("CC* + DD* = I", (bu.c * bu.c.adjoint() + bu.d * bu.d.adjoint() - identity(kp)).norm(), threshold);
    rep.add("A*B + C*D = 0", (bu.a.adjoint() * bu.b + bu.c.adjoint() * bu.d).norm(), threshold);
    rep.add("AC* + BD* = 0", (bu.a * bu.c.adjoint() + bu.b * bu.d.adjoint()).norm(), threshold);
    return rep;
}

inline double identity_scaled(const Tolerances &tol, Index n) {
    return tol.unit * std::max(1.0, std::sqrt(static_cast<double>(n)));
}

/// Extract A, B, C, D from U with respect to the given splits and validate
/// every block relation.
inline BlockUnitary decompose(const ComplexMatrix &u, const SubspaceSplit &domain, const SubspaceSplit &codomain,
                              const Tolerances &tol = {}) {
    require_square(u, "U");
    require_finite(u, "U");
    if (domain.total_dim() != u.cols() || codomain.total_dim() != u.rows())
        throw Error(Errc::DimensionMismatch, "splits do not match U of size " + std::to_string(u.rows()));
    const double threshold = identity_scaled(tol, u.rows());
    const double defect = unitarity_defect(u);
    if (defect > threshold) throw Error(Errc::NotUnitary, "||U*U - I||_F = " + short_num(defect));

    const ComplexMatrix blocks = codomain.basis().adjoint() * u * domain.basis();
    const Index h = domain.sub_dim();
    const Index k = codomain.sub_dim();
    const Index n = u.rows();
    BlockUnitary bu{u, domain, codomain,
                    blocks.topLeftCorner(k, h), blocks.topRightCorner(k, n - h),
                    blocks.bottomLeftCorner(n - k, h), blocks.bottomRightCorner(n - k, n - h)};
    const auto rel = relation_residuals(bu, threshold);
    for (const auto &r : rel.residuals)
        if (!r.passed()) throw Error(Errc::RelationViolation, r.name + " residual " + short_num(r.value));
    return bu;
}

/// Coordinate-split convenience: H = first h coordinates, K = first k coordinates.
inline BlockUnitary decompose(const ComplexMatrix &u, Index h, Index k, const Tolerances &tol = {}) {
    require_square(u, "U");
    return decompose(u, SubspaceSplit::coordinate(u.cols(), h), SubspaceSplit::coordinate(u.rows(), k), tol);
}

/// Unitary dilation U = [[A, sqrt(I - AA*)], [sqrt(I - A*A), -A*]] of an m x n
/// contraction, on C^{n+m} with H = first n and K = first m coordinates.
/// With `normalize`, A is first scaled by 1 / max(1, ||A||).
inline BlockUnitary dilate(const ComplexMatrix &a_in, bool normalize, const Tolerances &tol = {}) {
    require_finite(a_in, "A");
    ComplexMatrix a = a_in;
    const double norm = spectral_norm(a);
    if (normalize) {
        if (norm > 1.0) a /= norm;
    } else if (norm > 1.0 + tol.psd) {
        throw Error(Errc::NotContraction, "||A|| = " + short_num(norm));
    }
    const Index m = a.rows();
    const Index n = a.cols();
    ComplexMatrix u(m + n, n + m);
    u.topLeftCorner(m, n) = a;
    // Both square roots from one SVD, so A* sqrt(I - AA*) = sqrt(I - A*A) A* holds
    // to rounding even when some singular value is 1.
    const auto dec = svd(a);
    auto defect_sqrt = [&](const ComplexMatrix &basis) {
        RealVector c = RealVector::Ones(basis.cols());
        for (Index i = 0; i < dec.singulars.size(); ++i) {
            const double s = dec.singulars(i);
            c(i) = std::sqrt(std::max(0.0, (1.0 - s) * (1.0 + s)));
        }
        return ComplexMatrix(basis * c.cast<Complex>().asDiagonal() * basis.adjoint());
    };
    u.topRightCorner(m, m) = defect_sqrt(dec.left);
    u.bottomLeftCorner(n, n) = defect_sqrt(dec.right);
    u.bottomRightCorner(n, m) = -a.adjoint();
    BlockUnitary bu = decompose(u, n, m, tol);
    bu.a = a;
    return bu;
}

/// P = U* Pi_K U in ambient coordinates; in the domain split it reads
/// [[A*A, A*B], [B*A, B*B]].
inline ComplexMatrix projector_P(const BlockUnitary &bu) {
    return bu.u.adjoint() * bu.codomain.projector() * bu.u;
}

/// Domain-split block form of P assembled from the blocks.
inline ComplexMatrix projector_P_blocks(const BlockUnitary &bu) {
    const ComplexMatrix del = bu.delta();
    return del.adjoint() * del;
}

/// Delta Delta* = I_K and Delta* Delta = P.
inline CheckReport delta_check(const BlockUnitary &bu, const Tolerances &tol = {}) {
    const ComplexMatrix del = bu.delta();
    const ComplexMatrix p_split = bu.to_split(projector_P(bu), false);
    CheckReport rep;
    rep.add("Delta Delta* = I", (del * del.adjoint() - identity(bu.k_dim())).norm(), tol.unit);
    rep.add("Delta* Delta = P", (del.adjoint() * del - p_split).norm(), tol.unit);
    return rep;
}

/// U* R_K(theta) U = e^{i theta} P + e^{-i theta} (I - P).
inline CheckReport rotated_projector_check(const BlockUnitary &bu, double theta, const Tolerances &tol = {}) {
    const ComplexMatrix p = projector_P(bu);
    const ComplexMatrix lhs = bu.u.adjoint() * rotation(bu.codomain, theta) * bu.u;
    const ComplexMatrix rhs = cis(theta) * p + cis(-theta) * (identity(bu.dim()) - p);
    CheckReport rep;
    rep.add("U* R_K U = e^{it}P + e^{-it}(I-P)", (lhs - rhs).norm(), tol.unit);
    return rep;
}

/// P is Hermitian and idempotent and matches its block form.
inline CheckReport projector_check(const BlockUnitary &bu, const Tolerances &tol = {}) {
    const ComplexMatrix p = projector_P(bu);
    CheckReport rep;
    rep.add("P = P*", (p - p.adjoint()).norm(), tol.unit);
    rep.add("P^2 = P", (p * p - p).norm(), tol.unit);
    rep.add("P block form", (bu.to_split(p, false) - projector_P_blocks(bu)).norm(), tol.unit);
    return rep;
}

} // namespace qsvt
