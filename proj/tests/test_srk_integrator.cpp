#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "srk/cases.hpp"
#include "srk/registry.hpp"
#include "srk/srk.hpp"
#include "support.hpp"

using namespace srk;
using srk::testing::pressure_correction_step;
using srk::testing::random_scalar_Q;
using srk::testing::random_vector_V;
using srk::testing::rel_diff;

using State = SRKState<Field, Field>;

TEST(SrkStep, ForwardBackwardEulerIsPressureCorrection) {
    std::mt19937_64 rng(41);
    const double tau = 0.05;
    TensorGrid tg = TensorGrid::stretched(11, 11);
    auto Mt = manufactured_model(tg, TermPartition::imex(), tau);
    FlowModel<PeriodicOps> Mp(PeriodicOps(PeriodicGrid(2, 16), 3), CaseForcing{0.1, {}}, TermPartition::imex());
    for (int r : {0, 1}) {
        StepConfig cfg = make_step_config(ars121(), 1, r, tau, 1.0 / tau);
        for (int draw = 0; draw < 5; ++draw) {
            State s{random_vector_V(tg, rng), random_scalar_Q(tg, rng), random_scalar_Q(tg, rng)};
            State a = s;
            srk_step(Mt, cfg, a, 0.02);
            State b = pressure_correction_step(Mt, s, 0.02, tau, r);
            EXPECT_LE(rel_diff(a.u, b.u), 1e-12);
            EXPECT_LE(rel_diff(a.p, b.p), 1e-12);
            if (r == 1) EXPECT_LE(rel_diff(a.q, b.q), 1e-12);

            const auto& pg = Mp.grid();
            State sp{random_vector_V(pg, rng), random_scalar_Q(pg, rng), random_scalar_Q(pg, rng)};
            State c = sp;
            srk_step(Mp, cfg, c, 0.0);
            State d = pressure_correction_step(Mp, sp, 0.0, tau, r);
            EXPECT_LE(rel_diff(c.u, d.u), 1e-12);
            EXPECT_LE(rel_diff(c.p, d.p), 1e-12);
        }
    }
}

TEST(SrkStep, UniformFlowIsSteady) {
    PeriodicGrid g(2, 8);
    FlowModel<PeriodicOps> M(PeriodicOps(g, 3), CaseForcing{0.1, {}}, TermPartition::imex());
    Field u0 = sample(g, 2, [](const Point&) { return Point{0.4, -0.2, 0}; });
    for (const auto& tab : registry())
        for (int r : {0, 1}) {
            StepConfig cfg = make_step_config(tab, tab.form, r, 0.1, 5.0);
            State s{u0, g.scalar(), g.scalar()};
            for (int n = 0; n < 3; ++n) srk_step(M, cfg, s, 0.1 * n);
            EXPECT_LE((s.u - u0).max_abs(), 1e-14) << tab.name << " r=" << r;
            EXPECT_LE(s.p.max_abs(), 1e-14) << tab.name << " r=" << r;
        }
}

TEST(SrkStep, ContinuityResidualHeldAfterFirstStep) {
    PeriodicGrid g(3, 16);
    FlowModel<PeriodicOps> M(PeriodicOps(g, 3), CaseForcing{0.0, {}}, TermPartition::imex());
    for (const auto& name : {"ARS(3,4,3)", "ARK4(3)6L[2]SA"})
        for (int r : {0, 1}) {
            auto tab = find_tableau(name);
            const double tau = r == 0 ? g.h : 0.7 * g.h, tb = tab.a_ss() * tau;
            StepConfig cfg = make_step_config(tab, 1, r, tau, 1.0 / tau);
            State s{sample(g, 3, [](const Point& x) { return tgv::velocity3d(x); }),
                    sample(g, 1, [](const Point& x) { return Point{tgv::pressure3d(x), 0, 0}; }), g.scalar()};
            project_Q(g, s.p);
            for (int n = 0; n < 3; ++n) {
                srk_step(M, cfg, s, n * tau);
                Field xi = continuity_residual(M, s.u, s.p, s.q, r == 0 ? tb : 0.0, r == 1 ? tb * tb : 0.0, 0.0);
                EXPECT_LE(node_rms(xi), 1e-12) << name << " r=" << r << " step " << n + 1;
            }
        }
}

TEST(SrkStep, PressureRateIgnoredWithoutIt) {
    std::mt19937_64 rng(42);
    TensorGrid g = TensorGrid::stretched(11, 11);
    auto M = manufactured_model(g, TermPartition::imex(), 0.05);
    for (const auto& name : {"ARS(3,4,3)", "BHR(5,5,3)", "SSP2(3,2,2)"}) {
        auto tab = find_tableau(name);
        StepConfig cfg = make_step_config(tab, tab.form, 0, 0.05, 10.0);
        State s{random_vector_V(g, rng), random_scalar_Q(g, rng), g.scalar()};
        State a = s, b = s;
        b.q = random_scalar_Q(g, rng);
        srk_step(M, cfg, a, 0.0);
        srk_step(M, cfg, b, 0.0);
        EXPECT_EQ((a.u - b.u).max_abs(), 0.0) << name;
        EXPECT_EQ((a.p - b.p).max_abs(), 0.0) << name;
    }
}

TEST(StepConfig, RejectsBadSettings) {
    EXPECT_THROW(make_step_config(ars343(), 2, 0, 0.1, 1.0), std::invalid_argument);
    EXPECT_THROW(make_step_config(ark4(), 2, 0, 0.1, 1.0), std::invalid_argument);
    EXPECT_NO_THROW(make_step_config(ssp2_322(), 2, 0, 0.1, 1.0));
    EXPECT_NO_THROW(make_step_config(ssp2_322(), 1, 0, 0.1, 1.0));
    EXPECT_THROW(make_step_config(ars343(), 1, 2, 0.1, 1.0), std::invalid_argument);
    EXPECT_THROW(make_step_config(ars343(), 1, 0, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(make_step_config(ars343(), 3, 0, 0.1, 1.0), std::invalid_argument);
    auto c = make_step_config(ark3(), 1, 1, 0.1, 2.0);
    EXPECT_EQ(c.cls, MethodClass::CK);
    EXPECT_EQ(int(c.d.size()), c.tab.s);
}

TEST(SrkStep, NonFiniteStateAborts) {
    PeriodicGrid g(2, 8);
    FlowModel<PeriodicOps> M(PeriodicOps(g, 2), CaseForcing{0.1, {}}, TermPartition::explicit_all());
    StepConfig cfg = make_step_config(ars232(), 1, 0, 0.1, 1.0);
    State s{g.vector(), g.scalar(), g.scalar()};
    s.u.at(0, 3) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(srk_step(M, cfg, s, 0.0), std::runtime_error);
}
