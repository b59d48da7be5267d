#pragma once

// Invariant subspaces of the QSVT iteration and the actions of even and odd
// products on them. Every basis is stored in ambient coordinates of C^N, so
// U, U* and W act on them directly regardless of how the splits are chosen.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "block_unitary.hpp"
#include "qsp_reduction.hpp"
#include "qsvt_engine.hpp"
#include "singular_triples.hpp"

namespace qsvt {

enum class SubspaceLabel { L, LPerp, L0, L1, LSigma, LTilde, LTildePerp, LTilde0, LTilde1, LTildeSigma };

inline const char *label_name(SubspaceLabel l) {
    switch (l) {
    case SubspaceLabel::L: return "L";
    case SubspaceLabel::LPerp: return "L_perp";
    case SubspaceLabel::L0: return "L0";
    case SubspaceLabel::L1: return "L1";
    case SubspaceLabel::LSigma: return "L_sigma";
    case SubspaceLabel::LTilde: return "L~";
    case SubspaceLabel::LTildePerp: return "L~_perp";
    case SubspaceLabel::LTilde0: return "L~0";
    case SubspaceLabel::LTilde1: return "L~1";
    case SubspaceLabel::LTildeSigma: return "L~_sigma";
    }
    return "?";
}

/// Orthonormal columns spanning a labelled subspace of C^N.
struct SubspaceBasis {
    SubspaceLabel label = SubspaceLabel::L;
    double sigma = 0.0; // only meaningful for the sigma sectors
    ComplexMatrix columns;

    [[nodiscard]] Index dim() const noexcept { return columns.cols(); }
    [[nodiscard]] ComplexMatrix projector() const { return columns * columns.adjoint(); }
};

/// The sector of one interior triple. `mu` holds (A* f / sigma, 0) and
/// (0, B* f / sqrt(1 - sigma^2)); `nu` holds (f, 0) and
/// (0, C A* f / (sigma sqrt(1 - sigma^2))). Both are orthonormal pairs.
struct SigmaPlane {
    double sigma = 0.0;
    std::size_t triple = 0;
    ComplexMatrix mu;
    ComplexMatrix nu;
};

/// Everything the subspace checks need, built once per BlockUnitary.
struct Subspaces {
    ComplexMatrix l, l_perp, l0, l1;
    ComplexMatrix ker_a, ker_b;  // the two halves of L_perp
    ComplexMatrix lt, lt_perp, lt0, lt1;
    std::vector<SigmaPlane> planes;
    std::vector<SingularTriple> triples;

    /// All subspaces as labelled bases; one L_sigma entry per plane.
    [[nodiscard]] std::vector<SubspaceBasis> bases() const {
        std::vector<SubspaceBasis> out{{SubspaceLabel::L, 0.0, l},        {SubspaceLabel::LPerp, 0.0, l_perp},
                                       {SubspaceLabel::L0, 0.0, l0},      {SubspaceLabel::L1, 0.0, l1},
                                       {SubspaceLabel::LTilde, 0.0, lt},  {SubspaceLabel::LTildePerp, 0.0, lt_perp},
                                       {SubspaceLabel::LTilde0, 0.0, lt0}, {SubspaceLabel::LTilde1, 0.0, lt1}};
        for (const auto &p : planes) {
            out.push_back({SubspaceLabel::LSigma, p.sigma, p.mu});
            out.push_back({SubspaceLabel::LTildeSigma, p.sigma, p.nu});
        }
        return out;
    }
};

/// Modified Gram-Schmidt with re-orthogonalization; columns whose remaining
/// norm falls below `drop` are discarded.
inline ComplexMatrix orthonormalize(const ComplexMatrix &v, double drop = 1e-12) {
    ComplexMatrix q(v.rows(), v.cols());
    Index kept = 0;
    for (Index j = 0; j < v.cols(); ++j) {
        ComplexVector w = v.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (Index i = 0; i < kept; ++i) w -= q.col(i).dot(w) * q.col(i);
        const double n = w.norm();
        if (n > drop) q.col(kept++) = w / n;
    }
    return q.leftCols(kept);
}

inline ComplexMatrix hstack(const std::vector<ComplexMatrix> &parts, Index rows) {
    Index cols = 0;
    for (const auto &p : parts) cols += p.cols();
    ComplexMatrix out(rows, cols);
    Index at = 0;
    for (const auto &p : parts) {
        if (p.cols()) out.middleCols(at, p.cols()) = p;
        at += p.cols();
    }
    return out;
}

/// Build L, L_perp, L0, L1, L_sigma and the tilde images from the triples.
/// Kernel-class triples feed L0 / L~0, unit-class ones L1 / L~1, interior
/// ones a sigma plane each. ker A and ker B are read off the SVDs of A and B
/// with ranks fixed by the same classification, so the dimensions add up to N.
inline Subspaces build_subspaces(const BlockUnitary &bu, const std::vector<SingularTriple> &triples,
                                 const Tolerances &tol = {}) {
    const Index n = bu.dim();
    const Index h = bu.h_dim();
    const ComplexMatrix qh = bu.domain.sub();
    const ComplexMatrix qhp = bu.domain.complement();
    const ComplexMatrix qk = bu.codomain.sub();
    const ComplexMatrix qkp = bu.codomain.complement();
    const ComplexMatrix ca = bu.c * bu.a.adjoint();

    Subspaces s;
    s.triples = triples;
    std::vector<ComplexMatrix> l0, l1, lt0, lt1;
    Index rank_a = 0, rank_b = 0;
    for (std::size_t idx = 0; idx < triples.size(); ++idx) {
        const auto &t = triples[idx];
        switch (t.kind) {
        case SigmaClass::Kernel:
            l0.push_back(qhp * (bu.b.adjoint() * t.f));
            lt0.push_back(qk * t.f);
            ++rank_b;
            break;
        case SigmaClass::Unit:
            l1.push_back(qh * (bu.a.adjoint() * t.f));
            lt1.push_back(qk * t.f);
            ++rank_a;
            break;
        case SigmaClass::Interior: {
            if (!(t.sigma > tol.sigma_lo && t.sigma < tol.sigma_hi)) {
                std::ostringstream msg;
                msg << "interior sigma " << t.sigma << " outside (" << tol.sigma_lo << ", " << tol.sigma_hi << ")";
                throw Error(Errc::DegenerateScaling, msg.str());
            }
            const double c = std::sqrt(1.0 - t.sigma * t.sigma);
            SigmaPlane p;
            p.sigma = t.sigma;
            p.triple = idx;
            p.mu = ComplexMatrix(n, 2);
            p.mu.col(0) = qh * (bu.a.adjoint() * t.f) / t.sigma;
            p.mu.col(1) = qhp * (bu.b.adjoint() * t.f) / c;
            p.nu = ComplexMatrix(n, 2);
            p.nu.col(0) = qk * t.f;
            p.nu.col(1) = qkp * (ca * t.f) / (t.sigma * c);
            s.planes.push_back(std::move(p));
            ++rank_a;
            ++rank_b;
            break;
        }
        }
    }
    s.l0 = orthonormalize(hstack(l0, n));
    s.l1 = orthonormalize(hstack(l1, n));
    s.lt0 = orthonormalize(hstack(lt0, n));
    s.lt1 = orthonormalize(hstack(lt1, n));

    std::vector<ComplexMatrix> l_parts{s.l0, s.l1}, lt_parts{qk};
    for (const auto &p : s.planes) {
        l_parts.push_back(p.mu);
        lt_parts.push_back(p.nu.col(1));
    }
    s.l = orthonormalize(hstack(l_parts, n));
    s.lt = orthonormalize(hstack(lt_parts, n));

    const auto svd_a = svd(bu.a);
    const auto svd_b = svd(bu.b);
    const ComplexMatrix null_a = svd_a.right.rightCols(h - std::min(rank_a, h));
    const ComplexMatrix null_b = svd_b.right.rightCols((n - h) - std::min(rank_b, n - h));
    s.ker_a = qh * null_a;
    s.ker_b = qhp * null_b;
    s.l_perp = orthonormalize(hstack({s.ker_a, s.ker_b}, n));
    s.lt_perp = orthonormalize(hstack({qkp * (bu.c * null_a), qkp * (bu.d * null_b)}, n));
    return s;
}

/// Largest component of the columns of `x` outside span(q): ||(I - QQ*) X||_F.
inline double leakage(const ComplexMatrix &q, const ComplexMatrix &x) {
    if (x.cols() == 0) return 0.0;
    if (q.cols() == 0) return x.norm();
    return (x - q * (q.adjoint() * x)).norm();
}

/// Structural facts: orthonormality, dim L + dim L_perp = N, L orthogonal to
/// L_perp, the pieces L0, L1, L_sigma inside L, every (A* f, B* g) inside L,
/// and ker A, ker B annihilated by A, B.
inline CheckReport structure_check(const BlockUnitary &bu, const Subspaces &s, const Tolerances &tol = {}) {
    CheckReport rep;
    const Index n = bu.dim();
    rep.add("dim L + dim L_perp = N", std::abs(static_cast<double>(s.l.cols() + s.l_perp.cols() - n)), 0.5);
    rep.add("dim L~ + dim L~_perp = N", std::abs(static_cast<double>(s.lt.cols() + s.lt_perp.cols() - n)), 0.5);
    const double orth = s.l.cols() && s.l_perp.cols() ? (s.l.adjoint() * s.l_perp).norm() : 0.0;
    rep.add("L orthogonal to L_perp", orth, tol.unit);
    double planes_in_l = 0.0;
    for (const auto &p : s.planes) planes_in_l = std::max(planes_in_l, leakage(s.l, p.mu));
    rep.add("L0 in L", leakage(s.l, s.l0), tol.unit);
    rep.add("L1 in L", leakage(s.l, s.l1), tol.unit);
    rep.add("L_sigma in L", planes_in_l, tol.unit);
    const ComplexMatrix gen = hstack({bu.domain.sub() * bu.a.adjoint(), bu.domain.complement() * bu.b.adjoint()}, n);
    const double snap = std::max(tol.unit, 2.0 * tol.sigma_lo * std::sqrt(static_cast<double>(std::max<Index>(1, gen.cols()))));
    rep.add("(A*f, B*g) in L", leakage(s.l, gen), snap);
    const ComplexMatrix ka = bu.domain.sub().adjoint() * s.ker_a;
    const ComplexMatrix kb = bu.domain.complement().adjoint() * s.ker_b;
    rep.add("A ker A = 0", ka.cols() ? (bu.a * ka).norm() : 0.0, snap);
    rep.add("B ker B = 0", kb.cols() ? (bu.b * kb).norm() : 0.0, snap);
    return rep;
}

/// The ten inclusions U S in S~ and U* S~ in S for S in {L, L0, L1, L_sigma,
/// L_perp}, plus the mu -> nu matrix of U on each sigma plane against U_sigma.
inline CheckReport u_mapping_check(const BlockUnitary &bu, const Subspaces &s, const Tolerances &tol = {}) {
    CheckReport rep;
    const ComplexMatrix &u = bu.u;
    const ComplexMatrix ua = u.adjoint();
    rep.add("U L in L~", leakage(s.lt, u * s.l), tol.unit);
    rep.add("U L0 in L~0", leakage(s.lt0, u * s.l0), tol.unit);
    rep.add("U L1 in L~1", leakage(s.lt1, u * s.l1), tol.unit);
    rep.add("U L_perp in L~_perp", leakage(s.lt_perp, u * s.l_perp), tol.unit);
    rep.add("U* L~ in L", leakage(s.l, ua * s.lt), tol.unit);
    rep.add("U* L~0 in L0", leakage(s.l0, ua * s.lt0), tol.unit);
    rep.add("U* L~1 in L1", leakage(s.l1, ua * s.lt1), tol.unit);
    rep.add("U* L~_perp in L_perp", leakage(s.l_perp, ua * s.lt_perp), tol.unit);
    double fwd = 0.0, back = 0.0, change = 0.0;
    for (const auto &p : s.planes) {
        fwd = std::max(fwd, leakage(p.nu, u * p.mu));
        back = std::max(back, leakage(p.mu, ua * p.nu));
        const ComplexMatrix m = p.nu.adjoint() * u * p.mu;
        change = std::max(change, (m - u_sigma(p.sigma)).cwiseAbs().maxCoeff());
    }
    rep.add("U L_sigma in L~_sigma", fwd, tol.unit);
    rep.add("U* L~_sigma in L_sigma", back, tol.unit);
    rep.add("mu->nu basis change = U_sigma", change, 1e-10);
    return rep;
}

/// ||(I - P_S) W Q_S||_F for S in {L, L0, L1, L_sigma, L_perp}.
inline CheckReport invariance_check(const BlockUnitary &bu, double theta, double phi, const Subspaces &s,
                                    const Tolerances &tol = {}) {
    const ComplexMatrix w = wk(bu, theta, phi);
    CheckReport rep;
    rep.add("W L in L", leakage(s.l, w * s.l), tol.unit);
    rep.add("W L0 in L0", leakage(s.l0, w * s.l0), tol.unit);
    rep.add("W L1 in L1", leakage(s.l1, w * s.l1), tol.unit);
    double planes = 0.0;
    for (const auto &p : s.planes) planes = std::max(planes, leakage(p.mu, w * p.mu));
    rep.add("W L_sigma in L_sigma", planes, tol.unit);
    rep.add("W L_perp in L_perp", leakage(s.l_perp, w * s.l_perp), tol.unit);
    return rep;
}

/// Unit probe vectors in K used by the general (A* f, B* g) claims.
inline std::pair<ComplexVector, ComplexVector> probe_pair(Index k) {
    RandomStream rng(0x51ab5eedULL, static_cast<std::uint64_t>(k));
    ComplexVector f(k), g(k);
    for (Index i = 0; i < k; ++i) f(i) = rng.complex_normal();
    for (Index i = 0; i < k; ++i) g(i) = rng.complex_normal();
    if (k > 0) {
        f.normalize();
        g.normalize();
    }
    return {f, g};
}

/// max_j ||M q_j - z q_j|| over the columns of q.
inline double eigenline_residual(const ComplexMatrix &m, const ComplexMatrix &q, Complex z) {
    if (q.cols() == 0) return 0.0;
    return (m * q - z * q).colwise().norm().maxCoeff();
}

/// Even-product evolution: the general (A* f, B* g) formula, the four kernel
/// lines, and the mu -> nu matrix on every sigma plane.
inline CheckReport even_evolution_check(const BlockUnitary &bu, const PhaseSchedule &schedule, const Subspaces &s,
                                        const Tolerances &tol = {}) {
    CheckReport rep;
    const ComplexMatrix m = even_product(bu, schedule).matrix;
    const auto polys = even_recursion(schedule);
    const double thr = product_threshold(tol, schedule.size());
    const Complex i{0.0, 1.0};

    const auto [f, g] = probe_pair(bu.k_dim());
    const ComplexMatrix aa = bu.a * bu.a.adjoint();
    const ComplexMatrix bb = bu.b * bu.b.adjoint();
    const ComplexMatrix pi_aa = mat_poly_eval(polys.pi, aa);
    const ComplexMatrix phi_aa = mat_poly_eval(polys.phi, aa);
    const ComplexVector v = bu.embed_domain(bu.a.adjoint() * f, bu.b.adjoint() * g);
    const ComplexVector want = bu.embed_domain(bu.a.adjoint() * (pi_aa * f + i * phi_aa * (bb * g)),
                                               bu.b.adjoint() * (i * phi_aa.adjoint() * (aa * f) + pi_aa.adjoint() * g));
    rep.add("even (A*f, B*g)", (m * v - want).norm(), thr);

    rep.add("even kernel ker A", eigenline_residual(m, s.ker_a, phase_product(schedule, 1.0, -1.0)), 1e-10);
    rep.add("even kernel ker B", eigenline_residual(m, s.ker_b, phase_product(schedule, -1.0, -1.0)), 1e-10);
    rep.add("even kernel ker B*", eigenline_residual(m, s.l1, phase_product(schedule, 1.0, 1.0)), 1e-10);
    rep.add("even kernel ker A*", eigenline_residual(m, s.l0, phase_product(schedule, -1.0, 1.0)), 1e-10);

    double entry = 0.0, leak = 0.0;
    for (const auto &p : s.planes) {
        const ComplexMatrix got = p.mu.adjoint() * m * p.mu;
        entry = std::max(entry, (got - qsp_polynomial_matrix(p.sigma, schedule.with_final_phi(std::nullopt)))
                                    .cwiseAbs()
                                    .maxCoeff());
        leak = std::max(leak, leakage(p.mu, m * p.mu));
    }
    rep.add("even mu->nu matrix", entry, tol.poly);
    rep.add("even L_sigma closed", leak, thr);
    return rep;
}

/// Odd-product evolution into K (+) K_perp: general formula, kernel lines and
/// the mu -> nu matrix. The bottom component of the general formula uses
/// Theta_n*(AA*), which is what the product actually produces.
inline CheckReport odd_evolution_check(const BlockUnitary &bu, const PhaseSchedule &schedule, const Subspaces &s,
                                       const Tolerances &tol = {}) {
    const double last = schedule.require_final_phi();
    CheckReport rep;
    const ComplexMatrix m = odd_product(bu, schedule).matrix;
    const auto polys = odd_polynomials(schedule);
    const double thr = product_threshold(tol, schedule.size());

    const auto [f, g] = probe_pair(bu.k_dim());
    const ComplexMatrix aa = bu.a * bu.a.adjoint();
    const ComplexMatrix bb = bu.b * bu.b.adjoint();
    const ComplexMatrix ca = bu.c * bu.a.adjoint();
    const ComplexMatrix th = mat_poly_eval(polys.theta, aa);
    const ComplexMatrix om = mat_poly_eval(polys.omega, aa);
    const ComplexVector v = bu.embed_domain(bu.a.adjoint() * f, bu.b.adjoint() * g);
    const ComplexVector want =
        bu.embed_codomain(aa * (th * f) + om * (bb * g), ca * (om.adjoint() * f - th.adjoint() * g));
    rep.add("odd (A*f, B*g)", (m * v - want).norm(), thr);

    // ker A and ker B map to K_perp with the stated phases on C x and D y.
    const Complex e_phi = cis(-last) * phase_product(schedule, 0.0, -1.0);
    const Complex e_plus = phase_product(schedule, 1.0, 0.0);
    const Complex e_minus = phase_product(schedule, -1.0, 0.0);
    const ComplexMatrix &u = bu.u;
    const ComplexMatrix qkp_proj = bu.codomain.complement() * bu.codomain.complement().adjoint();
    auto line = [&](const ComplexMatrix &q, Complex z) {
        if (q.cols() == 0) return 0.0;
        return (m * q - z * (qkp_proj * (u * q))).colwise().norm().maxCoeff();
    };
    rep.add("odd kernel ker A", line(s.ker_a, e_phi * e_plus), 1e-10);
    rep.add("odd kernel ker B", line(s.ker_b, e_phi * e_minus), 1e-10);

    // ker A* and ker B* lines land on f0 and f1 with the boundary phases.
    const Complex omega0 = cis(last) * phase_product(schedule, -1.0, 1.0);
    const Complex theta1 = cis(last) * phase_product(schedule, 1.0, 1.0);
    double k0 = 0.0, k1 = 0.0;
    for (const auto &t : s.triples) {
        if (t.kind == SigmaClass::Kernel) {
            const ComplexVector in = bu.embed_domain(ComplexVector::Zero(bu.h_dim()), bu.b.adjoint() * t.f);
            const ComplexVector out =
                bu.embed_codomain(omega0 * t.f, -std::conj(polys.theta(0.0)) * (ca * t.f));
            k0 = std::max(k0, (m * in - out).norm());
        } else if (t.kind == SigmaClass::Unit) {
            const ComplexVector in = bu.embed_domain(bu.a.adjoint() * t.f, ComplexVector::Zero(bu.dim() - bu.h_dim()));
            const ComplexVector out = bu.embed_codomain(theta1 * t.f, std::conj(polys.omega(1.0)) * (ca * t.f));
            k1 = std::max(k1, (m * in - out).norm());
        }
    }
    rep.add("odd kernel ker A*", k0, 1e-10);
    rep.add("odd kernel ker B*", k1, 1e-10);

    double entry = 0.0, leak = 0.0;
    for (const auto &p : s.planes) {
        const ComplexMatrix got = p.nu.adjoint() * m * p.mu;
        entry = std::max(entry, (got - qsp_polynomial_matrix(p.sigma, schedule)).cwiseAbs().maxCoeff());
        leak = std::max(leak, leakage(p.nu, m * p.mu));
    }
    rep.add("odd mu->nu matrix", entry, tol.poly);
    rep.add("odd L_sigma to L~_sigma", leak, thr);
    return rep;
}

/// Eigenvalues of Q* M Q.
inline ComplexVector compressed_eigenvalues(const ComplexMatrix &m, const ComplexMatrix &q) {
    if (q.cols() == 0) return {};
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(q.adjoint() * m * q, false);
    if (solver.info() != Eigen::Success) throw Error(Errc::ConvergenceFailure, "compressed eigensolve failed");
    return solver.eigenvalues();
}

/// Greedy nearest-match distance between two eigenvalue multisets of equal
/// size; infinity if the sizes differ.
inline double match_spectra(const ComplexVector &got, const std::vector<Complex> &want) {
    if (static_cast<std::size_t>(got.size()) != want.size()) return std::numeric_limits<double>::infinity();
    std::vector<bool> used(want.size(), false);
    double worst = 0.0;
    for (Index i = 0; i < got.size(); ++i) {
        std::size_t best = want.size();
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < want.size(); ++j)
            if (!used[j] && std::abs(got(i) - want[j]) < dist) {
                dist = std::abs(got(i) - want[j]);
                best = j;
            }
        used[best] = true;
        worst = std::max(worst, dist);
    }
    return worst;
}

/// Interior planes grouped by equal sigma (|delta sigma| <= 1e-8).
inline std::vector<std::vector<std::size_t>> sigma_groups(const Subspaces &s) {
    std::vector<std::size_t> order(s.planes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.planes[a].sigma < s.planes[b].sigma; });
    std::vector<std::vector<std::size_t>> groups;
    for (auto i : order) {
        if (!groups.empty() && s.planes[i].sigma - s.planes[groups.back().back()].sigma <= 1e-8)
            groups.back().push_back(i);
        else
            groups.push_back({i});
    }
    return groups;
}

/// sin(lambda) for the sector matrix [[Pi, i Phi c], [i Phi* c, Pi*]]:
/// sqrt((Im Pi)^2 + |Phi|^2 c^2), without cancellation in 1 - (Re Pi)^2.
inline double sector_sin_lambda(Complex pi, Complex phi, double sigma) {
    const double c = sigma * std::sqrt(std::max(0.0, 1.0 - sigma * sigma));
    return std::hypot(pi.imag(), std::abs(phi) * c);
}

inline CheckReport n1_eigenvector_check(const BlockUnitary &bu, double theta, double phi, const Subspaces &s,
                                        const Tolerances &tol);

/// Spectrum of the even product on each invariant subspace against the
/// catalogue; for one-step schedules also cos(lambda) in closed form and the
/// explicit eigenvectors.
inline CheckReport spectral_map_check(const BlockUnitary &bu, const PhaseSchedule &schedule, const Subspaces &s,
                                      const Tolerances &tol = {}) {
    CheckReport rep;
    const ComplexMatrix m = even_product(bu, schedule).matrix;
    const auto polys = even_recursion(schedule);

    auto uniform = [](Index count, Complex z) { return std::vector<Complex>(static_cast<std::size_t>(count), z); };
    const ComplexVector e0 = compressed_eigenvalues(m, s.l0);
    const ComplexVector e1 = compressed_eigenvalues(m, s.l1);
    rep.add("spectrum L0", match_spectra(e0, uniform(s.l0.cols(), phase_product(schedule, -1.0, 1.0))), tol.eig);
    rep.add("spectrum L1", match_spectra(e1, uniform(s.l1.cols(), phase_product(schedule, 1.0, 1.0))), tol.eig);
    auto perp_want = uniform(s.ker_a.cols(), phase_product(schedule, 1.0, -1.0));
    const auto kb = uniform(s.ker_b.cols(), phase_product(schedule, -1.0, -1.0));
    perp_want.insert(perp_want.end(), kb.begin(), kb.end());
    const ComplexVector ep = compressed_eigenvalues(m, s.l_perp);
    rep.add("spectrum L_perp", match_spectra(ep, perp_want), tol.eig);

    double sigma_worst = 0.0, modulus = 0.0;
    for (const auto &group : sigma_groups(s)) {
        std::vector<ComplexMatrix> cols;
        std::vector<Complex> want;
        for (auto gi : group) {
            const auto &p = s.planes[gi];
            cols.push_back(p.mu);
            const double x = p.sigma * p.sigma;
            const Complex pi = polys.pi(x);
            const double sl = sector_sin_lambda(pi, polys.phi(x), p.sigma);
            want.emplace_back(pi.real(), sl);
            want.emplace_back(pi.real(), -sl);
        }
        const ComplexVector got = compressed_eigenvalues(m, hstack(cols, bu.dim()));
        sigma_worst = std::max(sigma_worst, match_spectra(got, want));
        for (Index j = 0; j < got.size(); ++j) modulus = std::max(modulus, std::abs(std::abs(got(j)) - 1.0));
    }
    for (const ComplexVector *e : {&e0, &e1, &ep})
        for (Index j = 0; j < e->size(); ++j) modulus = std::max(modulus, std::abs(std::abs((*e)(j)) - 1.0));
    rep.add("spectrum L_sigma", sigma_worst, tol.eig);
    rep.add("|eigenvalue| = 1", modulus, 1e-10);

    if (schedule.size() == 1) rep.merge(n1_eigenvector_check(bu, schedule[0].theta, schedule[0].phi, s, tol));
    return rep;
}

/// For a single pair (theta, phi): cos(lambda) against the closed expression
/// with sigma = cos k, and the eigenvectors
/// (A* / (1 - e^{i(phi-theta)} e^{+-i lambda}), B* / (1 - e^{i(theta+phi)} e^{+-i lambda})) f
/// against the eigen-equation and, where the sector spectrum is simple,
/// against a numerically computed eigenvector up to a scalar.
inline CheckReport n1_eigenvector_check(const BlockUnitary &bu, double theta, double phi, const Subspaces &s,
                                        const Tolerances &tol = {}) {
    CheckReport rep;
    const PhaseSchedule schedule({{theta, phi}});
    const ComplexMatrix m = even_product(bu, schedule).matrix;
    const auto polys = even_recursion(schedule);
    const auto groups = sigma_groups(s);
    std::vector<bool> simple(s.planes.size(), false);
    for (const auto &g : groups)
        if (g.size() == 1) simple[g.front()] = true;

    double cos_err = 0.0, eq_err = 0.0, overlap_err = 0.0;
    for (std::size_t pi_idx = 0; pi_idx < s.planes.size(); ++pi_idx) {
        const auto &p = s.planes[pi_idx];
        const auto &t = s.triples[p.triple];
        const double x = p.sigma * p.sigma;
        const double k = std::acos(std::clamp(p.sigma, 0.0, 1.0));
        const Complex pi = polys.pi(x);
        cos_err = std::max(cos_err, std::abs(pi.real() - n1_cos_lambda(theta, phi, k)));
        const double sl = sector_sin_lambda(pi, polys.phi(x), p.sigma);
        const double lambda = std::atan2(sl, pi.real());
        for (double sign : {1.0, -1.0}) {
            const Complex ev = cis(sign * lambda);
            const Complex d1 = 1.0 - cis(phi - theta) * ev;
            const Complex d2 = 1.0 - cis(theta + phi) * ev;
            if (std::abs(d1) < 1e-8 || std::abs(d2) < 1e-8) {
                std::ostringstream msg;
                msg << "EigenvectorUndefined: sigma " << p.sigma << (sign > 0 ? " (+)" : " (-)");
                rep.note(msg.str());
                continue;
            }
            ComplexVector v = bu.embed_domain(bu.a.adjoint() * t.f / d1, bu.b.adjoint() * t.f / d2);
            v.normalize();
            eq_err = std::max(eq_err, (m * v - ev * v).norm());
            if (!simple[pi_idx] || sl <= 1e-6) continue;
            Eigen::ComplexEigenSolver<ComplexMatrix> solver(p.mu.adjoint() * m * p.mu);
            Index best = 0;
            (solver.eigenvalues().array() - ev).abs().minCoeff(&best);
            ComplexVector w = p.mu * solver.eigenvectors().col(best);
            w.normalize();
            overlap_err = std::max(overlap_err, 1.0 - std::abs(v.dot(w)));
        }
    }
    rep.add("n=1 cos(lambda) closed form", cos_err, tol.eig);
    rep.add("n=1 eigenvector equation", eq_err, tol.eig);
    rep.add("n=1 eigenvector overlap", overlap_err, 1e-8);
    return rep;
}

} // namespace qsvt
