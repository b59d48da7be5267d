// Block-encode a random contraction, apply a three-step QSVT sequence and
// compare the transformed singular values with the recursion polynomials.

#include <iostream>

#include <qsvt/qsvt.hpp>

int main() {
    qsvt::RandomStream rng(7);

    qsvt::ComplexMatrix a(3, 2);
    for (qsvt::Index i = 0; i < a.rows(); ++i)
        for (qsvt::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.complex_normal();
    const auto bu = qsvt::dilate(a, /*normalize=*/true);

    const auto schedule = qsvt::PhaseSchedule::random(rng, 3, /*with_final_phi=*/true);
    const auto even = qsvt::even_product(bu, schedule);
    const auto odd = qsvt::odd_product(bu, schedule);
    const auto polys = qsvt::even_recursion(schedule);

    std::cout << "Pi_3 = " << polys.pi << "\n\n";
    for (const auto &t : qsvt::singular_triples(bu)) {
        if (!t.has_h()) continue;
        const auto h = bu.embed_domain(t.h, qsvt::ComplexVector::Zero(bu.dim() - bu.h_dim()));
        std::cout << "sigma = " << t.sigma << "  <h, W h> = " << h.dot(even.matrix * h)
                  << "  Pi_3(sigma^2) = " << polys.pi(t.sigma * t.sigma) << "\n";
    }

    std::cout << "\neven blocks:\n" << qsvt::block_form_check(even);
    std::cout << "odd blocks:\n" << qsvt::block_form_check(odd);
}
