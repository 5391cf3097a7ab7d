#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "srk/periodic_ops.hpp"
#include "support.hpp"

using namespace srk;
using srk::testing::random_field;
using srk::testing::random_scalar_Q;

constexpr double pi = std::numbers::pi;

TEST(FdCoefficients, SecondOrder) {
    auto c = fd_coefficients(1);
    auto a = c.a_full(), b = c.b_full();
    EXPECT_DOUBLE_EQ(a[0], -0.5);
    EXPECT_DOUBLE_EQ(a[1], 0.0);
    EXPECT_DOUBLE_EQ(a[2], 0.5);
    EXPECT_DOUBLE_EQ(b[0], 1.0);
    EXPECT_DOUBLE_EQ(b[1], -2.0);
    EXPECT_DOUBLE_EQ(b[2], 1.0);
}

TEST(FdCoefficients, FourthOrder) {
    auto c = fd_coefficients(2);
    EXPECT_NEAR(c.a[1], 2.0 / 3.0, 1e-16);
    EXPECT_NEAR(c.a[2], -1.0 / 12.0, 1e-16);
    EXPECT_NEAR(c.b[1], 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(c.b[2], -1.0 / 12.0, 1e-16);
    EXPECT_NEAR(c.b[0], -2.5, 1e-15);
}

TEST(FdCoefficients, Consistency) {
    for (int m = 1; m <= 4; ++m) {
        auto c = fd_coefficients(m);
        double first = 0, second = 0, sum = c.b[0];
        for (int k = 1; k <= m; ++k) {
            first += 2.0 * k * c.a[k];  // sum over -m..m of k a_k
            second += k * k * c.b[k];   // half of sum k^2 b_k
            sum += 2.0 * c.b[k];
        }
        EXPECT_NEAR(first, 1.0, 1e-14) << m;
        EXPECT_NEAR(second, 1.0, 1e-14) << m;
        EXPECT_NEAR(sum, 0.0, 1e-14) << m;
    }
}

TEST(FdCoefficients, RangeChecked) {
    EXPECT_THROW(fd_coefficients(0), std::invalid_argument);
    EXPECT_THROW(fd_coefficients(5), std::invalid_argument);
}

TEST(Symbols, SecondOrderClosedForm) {
    auto sp = symbols(1);
    for (double phi : {0.1, 0.7, 1.9, 3.0}) {
        EXPECT_NEAR(sp.a(phi), std::sin(phi), 1e-15);
        EXPECT_NEAR(sp.b(phi), -4 * std::pow(std::sin(phi / 2), 2), 1e-15);
        EXPECT_NEAR(sp.gap(phi), -4 * std::pow(std::sin(phi / 2), 4), 1e-15);
    }
    EXPECT_EQ(sp.a(0.0), 0.0);
    EXPECT_EQ(sp.b(0.0), 0.0);
}

TEST(Symbols, GapMatchesDirectEvaluationAwayFromZero) {
    for (int m = 1; m <= 4; ++m) {
        auto sp = symbols(m);
        for (double phi : {0.5, 1.0, 2.0, 3.1}) {
            const double a = sp.a(phi);
            EXPECT_NEAR(sp.gap(phi), sp.b(phi) + a * a, 1e-14);
        }
        EXPECT_EQ(sp.gap_order(), m + 1);
    }
}

TEST(Symbols, InequalitiesOnSamples) {
    for (int m = 1; m <= 3; ++m) {
        auto sp = symbols(m);
        for (int i = 1; i <= 10000; ++i) {
            const double phi = pi * i / 10001.0;
            ASSERT_GT(sp.a(phi), 0.0) << m << " " << phi;
            ASSERT_LT(sp.gap(phi), 0.0) << m << " " << phi;
        }
    }
}

TEST(BetaOfMode, Checkerboard) { EXPECT_NEAR(beta_of_mode(1, {pi, 0.0}), 1.0, 1e-15); }

TEST(BetaOfMode, LongWaves) {
    EXPECT_LT(beta_of_mode(1, {1e-4, 0.0}), 1e-8);
    for (int m = 1; m <= 3; ++m)
        for (double t : {0.3, 1.0, 2.5}) {
            const double b = beta_of_mode(m, {t, 0.5 * t});
            EXPECT_GE(b, 0.0);
            EXPECT_LT(b, 1.0);
        }
}

TEST(BetaOfMode, ZeroModeRejected) { EXPECT_THROW(beta_of_mode(2, {0.0, 0.0}), std::invalid_argument); }

TEST(PeriodicOps, ConstantsAreAnnihilated) {
    PeriodicOps ops(PeriodicGrid(2, 8), 3);
    Field c(ops.grid().nodes(), 1, 2.5);
    EXPECT_LE(ops.G(c).max_abs(), 1e-13);
    EXPECT_LE(ops.L(c).max_abs(), 1e-13);
}

TEST(PeriodicOps, FourierModeEigenvalues) {
    for (int m = 1; m <= 3; ++m) {
        PeriodicGrid g(2, 16);
        PeriodicOps ops(g, m);
        auto sp = symbols(m);
        const int kappa = 3;
        const double th = kappa * g.h;
        Field f = sample(g, 1, [&](const Point& r) { return Point{std::sin(kappa * r[0]), 0, 0}; });
        Field gf = ops.G(f), lf = ops.L(f);
        for (std::size_t i = 0; i < g.nodes(); ++i) {
            const double x = g.coords(i)[0];
            EXPECT_NEAR(gf.at(0, i), sp.a(th) / g.h * std::cos(kappa * x), 1e-13);
            EXPECT_NEAR(gf.at(1, i), 0.0, 1e-13);
            EXPECT_NEAR(lf[i], sp.b(th) / (g.h * g.h) * f[i], 1e-12);
        }
    }
}

TEST(PeriodicOps, Adjointness) {
    std::mt19937_64 rng(11);
    for (int dim : {2, 3})
        for (int m = 1; m <= 3; ++m) {
            PeriodicGrid g(dim, 8);
            PeriodicOps ops(g, m);
            for (int draw = 0; draw < 100; ++draw) {
                Field u = random_field(g.nodes(), dim, rng), f = random_field(g.nodes(), 1, rng);
                const double lhs = inner_product(g, ops.D(u), f), rhs = -inner_product(g, u, ops.G(f));
                ASSERT_NEAR(lhs, rhs, 1e-13 * norm(g, u) * norm(g, f));
            }
        }
}

TEST(PeriodicOps, DivergenceHasZeroMean) {
    std::mt19937_64 rng(12);
    PeriodicGrid g(3, 8);
    PeriodicOps ops(g, 2);
    Field d = ops.D(random_field(g.nodes(), 3, rng));
    EXPECT_LE(std::abs(weighted_mean(g, d)), 1e-14);
}

TEST(PeriodicOps, SIsSymmetricPositive) {
    std::mt19937_64 rng(13);
    for (auto [dim, n] : {std::pair{2, 8}, {2, 16}, {3, 8}})
        for (int m = 1; m <= 3; ++m) {
            PeriodicGrid g(dim, n);
            PeriodicOps ops(g, m);
            for (int draw = 0; draw < 200; ++draw) {
                Field f = random_scalar_Q(g, rng), h = random_scalar_Q(g, rng);
                const double ff = inner_product(g, f, f);
                ASSERT_GE(inner_product(g, ops.S(f), f), -1e-12 * ff);
                ASSERT_LT(inner_product(g, ops.L(f), f), 0.0);
                ASSERT_NEAR(inner_product(g, ops.S(f), h), inner_product(g, f, ops.S(h)),
                            1e-12 * std::sqrt(ff * inner_product(g, h, h)));
            }
        }
}

TEST(PoissonSolve, ZeroRhs) {
    PeriodicOps ops(PeriodicGrid(2, 8), 2);
    EXPECT_EQ(ops.poisson_solve(ops.grid().scalar()).max_abs(), 0.0);
}

TEST(PoissonSolve, SingleMode) {
    PeriodicGrid g(2, 16);
    PeriodicOps ops(g, 3);
    auto sp = symbols(3);
    Field r = sample(g, 1, [](const Point& p) { return Point{std::cos(2 * p[0] + p[1]), 0, 0}; });
    const double lam = (sp.b(2 * g.h) + sp.b(g.h)) / (g.h * g.h);
    Field p = ops.poisson_solve(r);
    EXPECT_LE((p - (1.0 / lam) * r).max_abs(), 1e-13);
}

TEST(PoissonSolve, RoundTrip) {
    std::mt19937_64 rng(14);
    for (int dim : {2, 3}) {
        PeriodicGrid g(dim, dim == 2 ? 16 : 8);
        PeriodicOps ops(g, 3);
        Field r = random_scalar_Q(g, rng);
        Field p = ops.poisson_solve(r);
        EXPECT_LE((ops.L(p) - r).max_abs(), 1e-12 * r.max_abs());
        EXPECT_LE(std::abs(weighted_mean(g, p)), 1e-14);
    }
}

TEST(PoissonSolve, RejectsNonzeroMean) {
    PeriodicOps ops(PeriodicGrid(2, 8), 1);
    Field r(ops.grid().nodes(), 1, 1.0);
    EXPECT_THROW(ops.poisson_solve(r), std::runtime_error);
}

TEST(HelmholtzSolve, RoundTrip) {
    std::mt19937_64 rng(15);
    PeriodicGrid g(2, 16);
    PeriodicOps ops(g, 3);
    Field r = random_field(g.nodes(), 2, rng);
    const double gnu = 0.03;
    Field u = ops.helmholtz_solve(r, gnu);
    EXPECT_LE((u - gnu * ops.L(u) - r).max_abs(), 1e-12 * r.max_abs());
}
