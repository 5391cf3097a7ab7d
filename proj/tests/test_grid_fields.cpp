#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "srk/cases.hpp"
#include "srk/grid.hpp"
#include "support.hpp"

using namespace srk;
using srk::testing::random_field;

TEST(TensorGrid, CellVolumesSumToOne) {
    for (const auto& g : {TensorGrid::uniform(10, 10), TensorGrid::stretched(11, 7)}) {
        double sx = 0, sy = 0;
        for (double v : g.dvx) sx += v;
        for (double v : g.dvy) sy += v;
        EXPECT_NEAR(sx, 1.0, 1e-15);
        EXPECT_NEAR(sy, 1.0, 1e-15);
        for (int j = 1; j < g.nx(); ++j) EXPECT_GT(g.x[j], g.x[j - 1]);
    }
}

TEST(TensorGrid, NodeClasses) {
    TensorGrid g = TensorGrid::uniform(4, 5);
    int corners = 0, boundary = 0;
    for (std::size_t i = 0; i < g.nodes(); ++i) {
        corners += g.is_corner(i);
        boundary += g.is_boundary(i);
        if (g.is_corner(i)) EXPECT_TRUE(g.is_boundary(i));
    }
    EXPECT_EQ(corners, 4);
    EXPECT_EQ(boundary, 2 * 5 + 2 * 6 - 4);
}

TEST(InnerProduct, OnesGiveTotalVolume) {
    for (const auto& g : {TensorGrid::uniform(10, 10), TensorGrid::stretched(11, 11)}) {
        Field one(g.nodes(), 1, 1.0);
        EXPECT_NEAR(inner_product(g, one, one), 1.0, 1e-14);
    }
}

TEST(InnerProduct, ZeroField) {
    TensorGrid g = TensorGrid::uniform(5, 5);
    std::mt19937_64 rng(1);
    EXPECT_EQ(inner_product(g, g.scalar(), random_field(g.nodes(), 1, rng)), 0.0);
}

TEST(InnerProduct, MatchesDoubleLoop) {
    TensorGrid g = TensorGrid::stretched(5, 5);
    std::mt19937_64 rng(2);
    for (int draw = 0; draw < 20; ++draw) {
        Field f = random_field(g.nodes(), 1, rng), h = random_field(g.nodes(), 1, rng);
        double ref = 0.0;
        for (int k = 0; k < g.ny(); ++k)
            for (int j = 0; j < g.nx(); ++j) ref += g.dvx[j] * g.dvy[k] * f[g.index(j, k)] * h[g.index(j, k)];
        EXPECT_NEAR(inner_product(g, f, h), ref, 1e-15);
    }
}

TEST(InnerProduct, SymmetricPositive) {
    std::mt19937_64 rng(3);
    TensorGrid tg = TensorGrid::stretched(11, 11);
    PeriodicGrid pg(2, 8);
    for (int draw = 0; draw < 100; ++draw) {
        Field a = random_field(tg.nodes(), 2, rng), b = random_field(tg.nodes(), 2, rng);
        EXPECT_NEAR(inner_product(tg, a, b), inner_product(tg, b, a), 1e-15);
        EXPECT_GT(inner_product(tg, a, a), 0.0);
        Field c = random_field(pg.nodes(), 1, rng), d = random_field(pg.nodes(), 1, rng);
        EXPECT_NEAR(inner_product(pg, c, d), inner_product(pg, d, c), 1e-14);
        EXPECT_GT(inner_product(pg, c, c), 0.0);
    }
}

TEST(InnerProduct, GridMismatchThrows) {
    TensorGrid g = TensorGrid::uniform(4, 4);
    Field bad(7, 1);
    EXPECT_THROW(inner_product(g, bad, bad), std::invalid_argument);
}

TEST(MaxNodeError, Basics) {
    TensorGrid g = TensorGrid::uniform(6, 6);
    auto fn = [](const Point& r) { return Point{std::sin(r[0]), r[1] * r[1], 0}; };
    Field f = sample(g, 2, fn);
    EXPECT_EQ(max_node_error(g, f, fn), 0.0);
    f.at(1, 17) += 1e-3;
    EXPECT_NEAR(max_node_error(g, f, fn), 1e-3, 1e-15);
}

TEST(KineticEnergy, TaylorGreenIsPiCubed) {
    for (int n : {8, 16, 32}) {
        PeriodicGrid g(3, n);
        Field u = sample(g, 3, [](const Point& r) { return tgv::velocity3d(r); });
        EXPECT_NEAR(kinetic_energy(g, u), std::pow(std::numbers::pi, 3), 1e-10) << n;
    }
}

TEST(KineticEnergy, ZeroAndScaling) {
    PeriodicGrid g(2, 8);
    std::mt19937_64 rng(4);
    Field u = random_field(g.nodes(), 2, rng);
    EXPECT_EQ(kinetic_energy(g, g.vector()), 0.0);
    EXPECT_NEAR(kinetic_energy(g, 2.0 * u), 4.0 * kinetic_energy(g, u), 1e-12);
}

TEST(DivergenceResidual, ZeroFields) {
    PeriodicOps ops(PeriodicGrid(2, 8), 2);
    FlowModel<PeriodicOps> M(ops, {}, TermPartition::imex());
    const auto& g = M.grid();
    auto [r0, xi] = divergence_residual_norm(M, g.vector(), g.scalar(), g.scalar(), 0.1, 0.0, 0.0);
    EXPECT_EQ(r0, 0.0);
    EXPECT_EQ(xi, 0.0);
}

TEST(DivergenceResidual, TaylorGreenInitialData) {
    PeriodicOps ops(PeriodicGrid(3, 32), 3);
    FlowModel<PeriodicOps> M(ops, {}, TermPartition::imex());
    const auto& g = M.grid();
    Field u = sample(g, 3, [](const Point& r) { return tgv::velocity3d(r); });
    auto [r0, xi] = divergence_residual_norm(M, u, g.scalar(), g.scalar(), 0.0, 0.0, 0.0);
    EXPECT_LE(r0, 1e-10);
    EXPECT_LE(xi, 1e-10);
}

TEST(FieldSpaces, ProjectionsLandInSpaces) {
    std::mt19937_64 rng(5);
    TensorGrid g = TensorGrid::stretched(11, 9);
    for (int draw = 0; draw < 20; ++draw) {
        Field p = random_field(g.nodes(), 1, rng);
        project_Q(g, p);
        EXPECT_LE(std::abs(weighted_mean(g, p)), 1e-14);
        for (std::size_t i = 0; i < g.nodes(); ++i)
            if (g.is_corner(i)) EXPECT_EQ(p[i], 0.0);
        Field u = random_field(g.nodes(), 2, rng);
        project_V(g, u);
        for (std::size_t i = 0; i < g.nodes(); ++i)
            if (g.is_boundary(i)) EXPECT_TRUE(u.at(0, i) == 0.0 && u.at(1, i) == 0.0);
    }
    PeriodicGrid pg(3, 8);
    Field q = random_field(pg.nodes(), 1, rng);
    project_Q(pg, q);
    EXPECT_LE(std::abs(weighted_mean(pg, q)), 1e-15);
}

TEST(FieldSpaces, ProjectionIsIdempotent) {
    std::mt19937_64 rng(6);
    TensorGrid g = TensorGrid::stretched(8, 8);
    Field p = random_field(g.nodes(), 1, rng);
    project_Q(g, p);
    Field p2 = p;
    project_Q(g, p2);
    EXPECT_LE((p2 - p).max_abs(), 1e-15);
}
