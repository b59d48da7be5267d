#include <gtest/gtest.h>

#include <numbers>

#include <qsvt/block_unitary.hpp>
#include <qsvt/singular_triples.hpp>

using namespace qsvt;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

ComplexMatrix scalar(Complex a) {
    ComplexMatrix m(1, 1);
    m << a;
    return m;
}

} // namespace

TEST(Decompose, Identity) {
    const auto bu = decompose(identity(2), 1, 1);
    EXPECT_EQ(bu.a(0, 0), Complex(1.0));
    EXPECT_EQ(bu.b(0, 0), Complex(0.0));
    EXPECT_EQ(bu.c(0, 0), Complex(0.0));
    EXPECT_EQ(bu.d(0, 0), Complex(1.0));
}

TEST(Decompose, Swap) {
    const auto bu = decompose(mat2(0, 1, 1, 0), 1, 1);
    EXPECT_EQ(bu.a(0, 0), Complex(0.0));
    EXPECT_EQ(bu.b(0, 0), Complex(1.0));
    EXPECT_EQ(bu.c(0, 0), Complex(1.0));
    EXPECT_EQ(bu.d(0, 0), Complex(0.0));
}

TEST(Decompose, HaarRelations) {
    const auto bu = decompose(haar_unitary(8, 42), 3, 5);
    EXPECT_EQ(bu.a.rows(), 5);
    EXPECT_EQ(bu.a.cols(), 3);
    EXPECT_EQ(bu.d.rows(), 3);
    EXPECT_EQ(bu.d.cols(), 5);
    const auto rep = relation_residuals(bu, 1e-10);
    EXPECT_EQ(rep.residuals.size(), 6u);
    EXPECT_TRUE(rep.passed()) << rep;
}

TEST(Decompose, AllSubDimsIncludingDegenerate) {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        RandomStream rng(seed);
        const Index n = rng.uniform_int(1, 16);
        const Index h = seed % 3 == 0 ? 0 : (seed % 3 == 1 ? n : rng.uniform_int(0, n));
        const Index k = seed % 5 == 0 ? n : rng.uniform_int(0, n);
        const auto split_h = seed % 2 ? SubspaceSplit::random(n, h, rng) : SubspaceSplit::coordinate(n, h);
        const auto split_k = seed % 2 ? SubspaceSplit::random(n, k, rng) : SubspaceSplit::coordinate(n, k);
        const auto bu = decompose(haar_unitary(n, rng), split_h, split_k);
        EXPECT_TRUE(relation_residuals(bu, 1e-10).passed());
    }
}

TEST(Decompose, Errors) {
    auto code_of = [](auto &&fn) {
        try {
            fn();
        } catch (const Error &e) {
            return e.code();
        }
        return Errc::UnknownDemo;
    };
    EXPECT_EQ(code_of([] { decompose(2.0 * identity(2), 1, 1); }), Errc::NotUnitary);
    EXPECT_EQ(code_of([] { decompose(identity(2), SubspaceSplit::coordinate(3, 1), SubspaceSplit::coordinate(2, 1)); }),
              Errc::DimensionMismatch);
    EXPECT_EQ(code_of([] { decompose(identity(2), 3, 1); }), Errc::DimensionMismatch);
    EXPECT_EQ(code_of([] { decompose(ComplexMatrix::Zero(2, 3), 1, 1); }), Errc::NotSquare);
}

TEST(Dilate, ScalarExamples) {
    const auto bu = dilate(scalar(0.6), false);
    EXPECT_LE((bu.u - mat2(0.6, 0.8, 0.8, -0.6)).norm(), 1e-15);
    const auto one = dilate(scalar(1.0), false);
    EXPECT_LE((one.u - mat2(1, 0, 0, -1)).norm(), 1e-15);
}

TEST(Dilate, ZeroGivesBlockSwap) {
    const auto bu = dilate(ComplexMatrix::Zero(2, 2), false);
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    want.topRightCorner(2, 2) = identity(2);
    want.bottomLeftCorner(2, 2) = identity(2);
    EXPECT_LE((bu.u - want).norm(), 1e-15);
}

TEST(Dilate, RoundTripAndNormalization) {
    RandomStream rng(21);
    ComplexMatrix a(3, 5);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 5; ++j) a(i, j) = rng.complex_normal();
    try {
        dilate(a, false);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::NotContraction);
    }
    const auto bu = dilate(a, true);
    const ComplexMatrix scaled = a / spectral_norm(a);
    EXPECT_LE((bu.a - scaled).norm(), 1e-15);
    EXPECT_NEAR(spectral_norm(bu.a), 1.0, 1e-14);
    EXPECT_LE(unitarity_defect(bu.u), 1e-12);
    EXPECT_LE((bu.u.topLeftCorner(3, 5) - scaled).norm(), 1e-12);
    EXPECT_EQ(bu.dim(), 8);
}

TEST(ProjectorP, Examples) {
    const ComplexMatrix p = projector_P(decompose(identity(2), 1, 1));
    EXPECT_LE((p - mat2(1, 0, 0, 0)).norm(), 1e-15);
    const ComplexMatrix q = projector_P(dilate(scalar(0.6), false));
    EXPECT_LE((q - mat2(0.36, 0.48, 0.48, 0.64)).norm(), 1e-15);
    const auto haar = decompose(haar_unitary(8, 42), 3, 5);
    EXPECT_TRUE(projector_check(haar).passed());
}

TEST(ProjectorP, IndependentOfBasisCompletion) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomStream rng(seed);
        const Index n = rng.uniform_int(2, 12);
        const auto dom = SubspaceSplit::random(n, rng.uniform_int(0, n), rng);
        const auto cod = SubspaceSplit::random(n, rng.uniform_int(0, n), rng);
        const ComplexMatrix u = haar_unitary(n, rng);
        const auto a = decompose(u, dom, cod);
        const auto b = decompose(u, dom.recompleted(rng), cod.recompleted(rng));
        EXPECT_LE((projector_P(a) - projector_P(b)).norm(), 1e-10);
        // The split-basis blocks differ but P assembled from them agrees in ambient coordinates.
        const ComplexMatrix pa = a.domain.basis() * projector_P_blocks(a) * a.domain.basis().adjoint();
        const ComplexMatrix pb = b.domain.basis() * projector_P_blocks(b) * b.domain.basis().adjoint();
        EXPECT_LE((pa - pb).norm(), 1e-10);
    }
}

TEST(DeltaCheck, Examples) {
    const auto id = delta_check(decompose(identity(2), 1, 1));
    EXPECT_EQ(id.worst(), 0.0);
    EXPECT_LE(delta_check(dilate(scalar(0.6), false)).worst(), 1e-14);
    EXPECT_TRUE(delta_check(decompose(haar_unitary(8, 42), 3, 5)).passed());
}

TEST(RotatedProjector, Examples) {
    const auto bu = decompose(haar_unitary(8, 42), 3, 5);
    EXPECT_LE(rotated_projector_check(bu, 0.0).worst(), 1e-14);
    EXPECT_LE(rotated_projector_check(bu, kPi).worst(), 1e-13);
    EXPECT_TRUE(rotated_projector_check(bu, 1.234).passed());
    // At theta = pi both sides are -I.
    EXPECT_LE((rotation(bu.codomain, kPi) + identity(8)).norm(), 1e-15);
}

TEST(Rotation, Examples) {
    const auto s = SubspaceSplit::coordinate(2, 1);
    EXPECT_LE((rotation(s, 0.0) - identity(2)).norm(), 0.0);
    EXPECT_LE((rotation(s, kPi) + identity(2)).norm(), 1e-15);
    EXPECT_LE((rotation(s, kPi / 2) - mat2(Complex(0, 1), 0, 0, Complex(0, -1))).norm(), 1e-15);
}

TEST(SingularTriples, Examples) {
    const auto zero = dilate(ComplexMatrix::Zero(2, 2), false);
    for (const auto &t : singular_triples(zero)) {
        EXPECT_EQ(t.sigma, 0.0);
        EXPECT_EQ(t.kind, SigmaClass::Kernel);
    }
    const auto one = singular_triples(dilate(scalar(0.6), false));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_NEAR(one[0].sigma, 0.6, 1e-15);
    EXPECT_NEAR(std::abs(one[0].f(0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(one[0].h(0)), 1.0, 1e-15);
    EXPECT_LE(std::abs(one[0].f.dot(dilate(scalar(0.6), false).a * one[0].h) - 0.6), 1e-15);
}

TEST(SingularTriples, ClassificationCountsCoverK) {
    const auto bu = decompose(haar_unitary(8, 42), 3, 5);
    const auto triples = singular_triples(bu);
    EXPECT_EQ(triples.size(), 5u);
    int kernel = 0, unit = 0, interior = 0;
    for (const auto &t : triples) {
        kernel += t.kind == SigmaClass::Kernel;
        unit += t.kind == SigmaClass::Unit;
        interior += t.kind == SigmaClass::Interior;
    }
    EXPECT_EQ(kernel + unit + interior, 5);
    // K has dimension 5 and H dimension 3, so A* has a kernel of dimension at least 2.
    EXPECT_GE(kernel, 2);
    EXPECT_TRUE(triple_check(bu, triples).passed());
}
