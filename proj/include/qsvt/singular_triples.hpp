#pragma once

#include <string>
#include <vector>

#include "block_unitary.hpp"
#include "matrix_core.hpp"

namespace qsvt {

/// Which sector of K a left singular vector belongs to.
enum class SigmaClass {
    Kernel,   // sigma = 0, f in ker A* (= ker AA*)
    Unit,     // sigma = 1, f in ker B* (= ker(AA* - 1))
    Interior, // 0 < sigma < 1
};

/// (sigma, f, h) with AA* f = sigma^2 f and A*A h = sigma^2 h, in split
/// coordinates of K and H. For interior sigma, h = A* f / sigma, which pins
/// <f, A h> = sigma. A Kernel-class f with no right partner (dim K > dim H)
/// has an empty h.
struct SingularTriple {
    double sigma = 0.0;
    ComplexVector f;
    ComplexVector h;
    SigmaClass kind = SigmaClass::Interior;

    [[nodiscard]] bool has_h() const noexcept { return h.size() > 0; }
};

/// One triple per left singular vector of A, so the f's form an orthonormal
/// basis of K. Singular values within sigma_lo of 0 or 1 are snapped.
inline std::vector<SingularTriple> singular_triples(const BlockUnitary &bu, const Tolerances &tol = {}) {
    const Index k = bu.k_dim();
    const Index h = bu.h_dim();
    std::vector<SingularTriple> out;
    if (k == 0) return out;
    const auto dec = svd(bu.a);
    const Index p = std::min(k, h);
    out.reserve(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) {
        SingularTriple t;
        const double s = i < p ? dec.singulars(i) : 0.0;
        t.f = dec.left.col(i);
        if (s <= tol.sigma_lo) {
            t.kind = SigmaClass::Kernel;
            t.sigma = 0.0;
            if (i < p) t.h = dec.right.col(i);
        } else if (s >= tol.sigma_hi) {
            t.kind = SigmaClass::Unit;
            t.sigma = 1.0;
            t.h = dec.right.col(i);
        } else {
            t.kind = SigmaClass::Interior;
            t.sigma = s;
            t.h = bu.a.adjoint() * t.f / s;
        }
        out.push_back(std::move(t));
    }
    return out;
}

/// ||AA* f - s^2 f||, ||A*A h - s^2 h|| and the unit norms, per triple.
inline CheckReport triple_check(const BlockUnitary &bu, const std::vector<SingularTriple> &triples,
                                const Tolerances &tol = {}) {
    CheckReport rep;
    double eig_f = 0.0, eig_h = 0.0, norms = 0.0;
    const ComplexMatrix aa = bu.a * bu.a.adjoint();
    const ComplexMatrix a_a = bu.a.adjoint() * bu.a;
    for (const auto &t : triples) {
        const double s2 = t.sigma * t.sigma;
        eig_f = std::max(eig_f, (aa * t.f - s2 * t.f).norm());
        norms = std::max(norms, std::abs(t.f.norm() - 1.0));
        if (t.has_h()) {
            eig_h = std::max(eig_h, (a_a * t.h - s2 * t.h).norm());
            norms = std::max(norms, std::abs(t.h.norm() - 1.0));
        }
    }
    // Snapping sigma to 0/1 moves the eigen-equation by at most ~sigma_lo.
    const double snap = std::max(tol.eig, 2.0 * tol.sigma_lo);
    rep.add("AA* f = s^2 f", eig_f, snap);
    rep.add("A*A h = s^2 h", eig_h, snap);
    rep.add("|f| = |h| = 1", norms, tol.eig);
    return rep;
}

} // namespace qsvt
