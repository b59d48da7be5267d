#include <gtest/gtest.h>

#include <numbers>

#include <qsvt/qsp_reduction.hpp>

using namespace qsvt;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex I{0.0, 1.0};

} // namespace

TEST(USigma, Examples) {
    ComplexMatrix want(2, 2);
    want << 0.6, 0.8, 0.8, -0.6;
    EXPECT_LE((u_sigma(0.6) - want).norm(), 1e-15);
    want << 1, 0, 0, -1;
    EXPECT_LE((u_sigma(1.0) - want).norm(), 0.0);
    want << 0, 1, 1, 0;
    EXPECT_LE((u_sigma(0.0) - want).norm(), 0.0);
    for (double s : {0.0, 0.3, 0.77, 1.0}) {
        const ComplexMatrix u = u_sigma(s);
        EXPECT_LE((u * u - identity(2)).norm(), 1e-15);
    }
    try {
        u_sigma(1.1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::OutOfRange);
    }
    EXPECT_THROW(QspInstance::from_k(2.0, {}), Error);
    EXPECT_THROW(QspInstance::from_sigma(-0.1, {}), Error);
}

TEST(QspProduct, Examples) {
    const auto one = qsp_product(QspInstance::from_sigma(0.6, PhaseSchedule({{0.0, kPi / 2}})));
    EXPECT_LE(std::abs(one(0, 0) - Complex(0.0, -0.28)), 1e-15);
    const auto two = qsp_product(QspInstance::from_sigma(0.37, PhaseSchedule::homogeneous(2, 0.0, kPi / 2)));
    EXPECT_LE((two + identity(2)).norm(), 1e-14);
    const auto odd0 = qsp_product(QspInstance::from_sigma(0.6, PhaseSchedule({}, 0.0)));
    EXPECT_LE((odd0 - u_sigma(0.6)).norm(), 0.0);
}

TEST(QspCheck, RandomSchedulesOnGrid) {
    RandomStream rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = PhaseSchedule::random(rng, rng.uniform_int(0, 30), trial % 2 == 0);
        for (int j = 0; j < 20; ++j) {
            const auto rep = qsp_check(QspInstance::from_sigma(j / 19.0, s));
            EXPECT_TRUE(rep.passed()) << rep;
        }
    }
}

TEST(Chebyshev, TAndUAtCosine) {
    for (double x : {0.3, 1.1, 2.9}) {
        for (std::size_t n = 0; n <= 30; ++n) {
            const auto [t, u] = chebyshev_t_u(n, std::cos(x));
            EXPECT_NEAR(t, std::cos(n * x), 1e-12);
            EXPECT_NEAR(u, std::sin(n * x) / std::sin(x), 1e-11);
        }
    }
}

TEST(ClosedForm, OneStep) {
    const double theta = 0.7, phi = 1.9, k = 0.4;
    const auto h = HomogeneousParams::make(theta, phi, k);
    const auto v = homogeneous_closed_form(theta, phi, k, 1);
    EXPECT_LE(std::abs(v.pi - Complex(h.gamma, h.zeta)), 1e-15);
    EXPECT_LE(std::abs(v.phi - 2.0 * std::polar(1.0, theta) * std::sin(phi)), 1e-15);
    const ComplexMatrix direct = qsp_even_product(std::cos(k), PhaseSchedule({{theta, phi}}));
    EXPECT_LE((h.step_matrix() - direct).norm(), 1e-14);
}

TEST(ClosedForm, ZeroPhiIsPurePhase) {
    for (std::size_t n : {1u, 5u, 17u}) {
        const auto v = homogeneous_closed_form(0.9, 0.0, 0.6, n);
        EXPECT_LE(std::abs(v.pi - std::polar(1.0, 0.9 * static_cast<double>(n))), 1e-12);
        EXPECT_LE(std::abs(v.phi), 1e-15);
    }
}

TEST(ClosedForm, MatchesMatrixPowers) {
    RandomStream rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        const double theta = rng.angle(), phi = rng.angle(), k = rng.uniform(0.0, kPi / 2);
        for (std::size_t n : {1u, 2u, 10u, 50u}) {
            const auto rep = homogeneous_closed_form_check(theta, phi, k, n);
            EXPECT_TRUE(rep.passed()) << rep;
            const ComplexMatrix direct = qsp_even_product(std::cos(k), PhaseSchedule::homogeneous(n, theta, phi));
            EXPECT_LE((homogeneous_closed_matrix(theta, phi, k, n) - direct).norm(), 1e-8 * n);
        }
    }
}

TEST(HomogeneousEig, QuarterTurn) {
    const auto e = homogeneous_eig(kPi / 2, kPi / 2, kPi / 4);
    EXPECT_FALSE(e.degenerate);
    EXPECT_NEAR(e.lambda, kPi / 2, 1e-15);
    EXPECT_NEAR(e.sin_lambda, 1.0, 1e-15);
    const ComplexMatrix step = e.params.step_matrix();
    EXPECT_LE((step * e.p_plus - I * e.p_plus).norm(), 1e-15);
    EXPECT_LE((step * e.p_minus + I * e.p_minus).norm(), 1e-15);
}

TEST(HomogeneousEig, DegenerateFallback) {
    const auto id = homogeneous_eig(0.0, 0.0, 0.3);
    EXPECT_TRUE(id.degenerate);
    EXPECT_THROW(spectral_power(id, 3), Error);
    const auto rep = spectral_decomposition_check(0.0, 0.0, 0.3, 7);
    EXPECT_TRUE(rep.passed()) << rep;
    EXPECT_FALSE(rep.notes.empty());
    const auto minus = spectral_decomposition_check(kPi, 0.0, 0.3, 7);
    EXPECT_TRUE(minus.passed()) << minus;
}

TEST(HomogeneousEig, RandomSpectralPowers) {
    RandomStream rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const double theta = rng.angle(), phi = rng.angle(), k = rng.uniform(0.0, kPi / 2);
        const auto rep = spectral_decomposition_check(theta, phi, k, static_cast<std::size_t>(rng.uniform_int(1, 50)));
        EXPECT_TRUE(rep.passed()) << rep;
    }
}

TEST(OneStepCos, Grid) {
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            for (int c = 0; c <= 8; ++c) {
                const auto rep = n1_cos_check(a * kTwoPi / 8, b * kTwoPi / 8, c * kPi / 16);
                EXPECT_TRUE(rep.passed()) << rep;
            }
}
