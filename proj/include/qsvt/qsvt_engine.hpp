#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "block_unitary.hpp"
#include "poly_track.hpp"
#include "singular_triples.hpp"

namespace qsvt {

/// W = R_H(theta) U* R_K(phi) U.
inline ComplexMatrix wk(const BlockUnitary &bu, double theta, double phi) {
    return rotation(bu.domain, theta) * bu.u.adjoint() * rotation(bu.codomain, phi) * bu.u;
}

enum class Parity { Even, Odd };

inline const char *parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// An iterated QSVT operator in ambient coordinates. Even products map
/// H (+) H_perp to itself, odd ones map H (+) H_perp to K (+) K_perp.
struct QsvtProduct {
    ComplexMatrix matrix;
    Parity parity = Parity::Even;
    PhaseSchedule schedule;
    BlockUnitary source;
};

/// W_n ... W_2 W_1, the latest factor leftmost.
inline QsvtProduct even_product(const BlockUnitary &bu, const PhaseSchedule &schedule) {
    ComplexMatrix m = identity(bu.dim());
    for (const auto &p : schedule.pairs()) m = wk(bu, p.theta, p.phi) * m;
    return {std::move(m), Parity::Even, schedule, bu};
}

/// R_K(phi_{n+1}) U W_n ... W_1.
inline QsvtProduct odd_product(const BlockUnitary &bu, const PhaseSchedule &schedule) {
    const double last = schedule.require_final_phi();
    auto prod = even_product(bu, schedule);
    prod.matrix = rotation(bu.codomain, last) * bu.u * prod.matrix;
    prod.parity = Parity::Odd;
    return prod;
}

struct BlockQuad {
    ComplexMatrix tl, tr, bl, br;
};

/// The four blocks of a product in its split bases.
inline BlockQuad product_blocks(const QsvtProduct &prod) {
    const auto &bu = prod.source;
    const ComplexMatrix s = bu.to_split(prod.matrix, prod.parity == Parity::Odd);
    const Index h = bu.h_dim();
    const Index n = bu.dim();
    const Index r = prod.parity == Parity::Odd ? bu.k_dim() : h;
    return {s.topLeftCorner(r, h), s.topRightCorner(r, n - h), s.bottomLeftCorner(n - r, h),
            s.bottomRightCorner(n - r, n - h)};
}

/// Block form predicted by the polynomial bookkeeping.
inline BlockQuad predicted_blocks(const BlockUnitary &bu, const PhaseSchedule &schedule, Parity parity) {
    const Complex i{0.0, 1.0};
    if (parity == Parity::Even) {
        const auto polys = even_recursion(schedule);
        const ComplexMatrix a_a = bu.a.adjoint() * bu.a;
        const ComplexMatrix d_d = bu.d.adjoint() * bu.d;
        return {mat_poly_eval(polys.pi, a_a), i * mat_poly_eval(polys.phi, a_a) * bu.a.adjoint() * bu.b,
                i * mat_poly_eval(polys.phi.conj(), d_d) * bu.b.adjoint() * bu.a,
                mat_poly_eval(polys.pi.conj(), d_d)};
    }
    const auto polys = odd_polynomials(schedule);
    const ComplexMatrix aa = bu.a * bu.a.adjoint();
    const ComplexMatrix dd = bu.d * bu.d.adjoint();
    return {mat_poly_eval(polys.theta, aa) * bu.a, mat_poly_eval(polys.omega, aa) * bu.b,
            mat_poly_eval(polys.omega.conj(), dd) * bu.c, mat_poly_eval(polys.theta.conj(), dd) * bu.d};
}

inline double product_threshold(const Tolerances &tol, std::size_t n) {
    return tol.poly * static_cast<double>(std::max<std::size_t>(1, n));
}

/// Per-block Frobenius residuals between the product and its polynomial
/// block form; thresholds scale with n.
inline CheckReport block_form_check(const QsvtProduct &prod, const Tolerances &tol = {}) {
    const auto got = product_blocks(prod);
    const auto want = predicted_blocks(prod.source, prod.schedule, prod.parity);
    const double thr = product_threshold(tol, prod.schedule.size());
    CheckReport rep;
    const std::string tag = std::string(parity_name(prod.parity)) + " ";
    rep.add(tag + "top-left", (got.tl - want.tl).norm(), thr);
    rep.add(tag + "top-right", (got.tr - want.tr).norm(), thr);
    rep.add(tag + "bottom-left", (got.bl - want.bl).norm(), thr);
    rep.add(tag + "bottom-right", (got.br - want.br).norm(), thr);
    return rep;
}

/// Blocks of a single W against [[P(A*A), iQ(A*A)A*B], [iQ*(D*D)B*A, P*(D*D)]].
inline CheckReport wk_block_check(const BlockUnitary &bu, double theta, double phi, const Tolerances &tol = {}) {
    return block_form_check(even_product(bu, PhaseSchedule({{theta, phi}})), tol);
}

inline CheckReport product_unitarity(const QsvtProduct &prod, const Tolerances &tol = {}) {
    CheckReport rep;
    rep.add("product unitary", unitarity_defect(prod.matrix), identity_scaled(tol, prod.matrix.rows()));
    return rep;
}

/// <h, W_n..W_1 h> = Pi_n(sigma^2) for even products and
/// <f, R_K U W_n..W_1 h> = Theta_n(sigma^2) sigma for odd ones.
/// Odd checks require <f, A h> = sigma, which interior triples satisfy by
/// construction; a violation there raises PhaseConventionViolation.
inline CheckReport svt_values(const QsvtProduct &prod, const std::vector<SingularTriple> &triples,
                              const Tolerances &tol = {}) {
    const auto &bu = prod.source;
    const ComplexVector none;
    CheckReport rep;
    const auto even = even_recursion(prod.schedule);
    std::optional<OddPolyPair> odd;
    if (prod.parity == Parity::Odd) odd = odd_polynomials(prod.schedule);

    for (std::size_t idx = 0; idx < triples.size(); ++idx) {
        const auto &t = triples[idx];
        if (!t.has_h()) continue;
        std::ostringstream name;
        name << parity_name(prod.parity) << " sigma[" << idx << "]=" << t.sigma;
        const ComplexVector h_amb = bu.embed_domain(t.h, ComplexVector(bu.dim() - bu.h_dim()).setZero());
        const double x = t.sigma * t.sigma;
        if (prod.parity == Parity::Even) {
            const Complex got = h_amb.dot(prod.matrix * h_amb);
            rep.add(name.str(), std::abs(got - even.pi(x)), tol.poly);
            continue;
        }
        const Complex overlap = t.f.dot(bu.a * t.h);
        if (std::abs(overlap - t.sigma) > tol.poly) {
            if (t.kind == SigmaClass::Interior) {
                std::ostringstream msg;
                msg << "<f, A h> = " << overlap << " but sigma = " << t.sigma;
                throw Error(Errc::PhaseConventionViolation, msg.str());
            }
            rep.note(name.str() + ": snapped sigma, odd value not checked");
            continue;
        }
        const ComplexVector f_amb = bu.embed_codomain(t.f, ComplexVector(bu.dim() - bu.k_dim()).setZero());
        const Complex got = f_amb.dot(prod.matrix * h_amb);
        rep.add(name.str(), std::abs(got - odd->theta(x) * t.sigma), tol.poly);
    }
    return rep;
}

} // namespace qsvt
