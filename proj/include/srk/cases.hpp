#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srk/dirichlet_ops.hpp"
#include "srk/fluxes.hpp"
#include "srk/grid.hpp"
#include "srk/periodic_ops.hpp"
#include "srk/registry.hpp"
#include "srk/srk.hpp"
#include "srk/stability.hpp"

namespace srk {

struct RunConfig {
    std::string case_id = "manufactured";
    std::string scheme = "ARS(3,4,3)";
    int form = 1;
    std::string mode = "imex";
    int rsigma = 0;
    double alpha_factor = 0.5;
    double alpha_tau = -1;  // fixed alpha*tau; < 0 = alpha_factor * (alpha tau)_max
    int n = 0;          // grid size; 0 = case default
    double dt = 0.0;    // 0 = case timestep rule
    double tmax = -1;   // < 0 = case default
    int m = 3;          // periodic stencil half-width
    std::string out;    // output directory, empty = none
};

struct HistoryRow {
    double t, K, R0, Xi;
};

struct RunReport {
    RunConfig cfg;
    std::string tableau;
    double tau = 0.0;
    int steps = 0;
    double alpha = 0.0;
    double e_u = NAN, e_p = NAN, e_k = NAN;
    double K_ref = 0.0;
    std::vector<HistoryRow> history;
    double wall_seconds = 0.0;
};

// ---- analytic solutions ----

namespace mms {
inline double g(double t) { return std::exp(t / 25.0) * std::sin(std::numbers::pi * t / 10.0); }
inline double dg(double t) {
    const double pi = std::numbers::pi;
    return std::exp(t / 25.0) * (std::sin(pi * t / 10.0) / 25.0 + pi / 10.0 * std::cos(pi * t / 10.0));
}
inline Point velocity(double t, const Point& r) { return {r[0] * g(t), -r[1] * g(t), 0.0}; }
inline Point dvelocity(double t, const Point& r) { return {r[0] * dg(t), -r[1] * dg(t), 0.0}; }
inline double pressure(double, const Point& r) { return r[0] + r[1]; }
inline Point source(double t, const Point& r) {
    const double gv = g(t), dv = dg(t);
    return {r[0] * (dv + gv * gv) + 1.0, r[1] * (gv * gv - dv) + 1.0, 0.0};
}
}  // namespace mms

namespace tgv {
// travelling vortex with mean flow (ub, vb)
inline Point velocity2d(double t, const Point& r, double nu, double ub = 1.0, double vb = 0.0) {
    const double x = r[0] - ub * t, y = r[1] - vb * t, f = std::exp(-2.0 * nu * t);
    return {ub + std::sin(x) * std::cos(y) * f, vb - std::cos(x) * std::sin(y) * f, 0.0};
}
inline double pressure2d(double t, const Point& r, double nu, double ub = 1.0, double vb = 0.0) {
    const double x = r[0] - ub * t, y = r[1] - vb * t;
    return 0.25 * (std::cos(2 * x) + std::cos(2 * y)) * std::exp(-4.0 * nu * t);
}
inline Point velocity3d(const Point& r) {
    return {std::cos(r[0]) * std::sin(r[1]) * std::sin(r[2]), -std::sin(r[0]) * std::cos(r[1]) * std::sin(r[2]), 0.0};
}
inline double pressure3d(const Point& r) {
    return (std::cos(2 * r[0]) + std::cos(2 * r[1])) * (2.0 + std::cos(2 * r[2])) / 16.0;
}
}  // namespace tgv

// ---- case table ----

struct CaseSpec {
    std::string id;
    bool periodic = true;
    int dim = 2;
    int n = 32;
    double nu = 0.0;
    double tmax = 1.0;
    bool has_exact = false;
};

inline CaseSpec case_spec(const std::string& id) {
    if (id == "manufactured") return {id, false, 2, 10, 0.1, 0.1, true};
    if (id == "tg2d_viscous") return {id, true, 2, 64, 0.5, 2.0, true};
    if (id == "tg2d_inviscid") return {id, true, 2, 32, 0.0, 6.0, true};
    if (id == "tg3d_inviscid") return {id, true, 3, 32, 0.0, 6.0, false};
    if (id == "tg3d_re800") return {id, true, 3, 64, 1.0 / 800.0, 10.0, false};
    throw std::invalid_argument("unknown case: " + id);
}

inline std::vector<std::string> case_ids() {
    return {"manufactured", "tg2d_viscous", "tg2d_inviscid", "tg3d_inviscid", "tg3d_re800"};
}

// Timestep rule of a case when none is given.
inline double default_tau(const CaseSpec& cs, const RunConfig& rc, double h) {
    if (cs.id == "manufactured") return 0.1;
    if (cs.id == "tg3d_inviscid") return rc.rsigma == 0 ? h : 0.7 * h;
    if (cs.id == "tg3d_re800") return 0.8 * h;
    if (rc.mode == "explicit") return 1.0 / (2.0 / h + 6.0 * cs.nu / (h * h));
    return 0.5 * h;
}

// (alpha tau)_max per (tableau, form, rsigma), computed once.
inline double cached_alpha_tau_max(const DoubleButcher& tab, int form, int rsigma) {
    static std::map<std::string, double> cache;
    std::ostringstream key;
    key << tab.name << '|' << form << '|' << rsigma;
    for (const auto& r : tab.A)
        for (double v : r) key << ',' << v;
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
    double v = alpha_tau_max(tab, form, rsigma);
    cache.emplace(key.str(), v);
    return v;
}

inline DoubleButcher resolve_tableau(const std::string& scheme) {
    if (std::filesystem::exists(scheme)) return load_tableau(scheme);
    return find_tableau(scheme);
}

// Xi = D u + sigma0 S p + sigma1 S q - H(t)
template <class Model>
Field continuity_residual(const Model& M, const Field& u, const Field& p, const Field& q, double sigma0,
                          double sigma1, double t) {
    Field xi = M.D(u) - M.H(t);
    if (sigma0 != 0.0) xi.axpy(sigma0, M.S(p));
    if (sigma1 != 0.0) xi.axpy(sigma1, M.S(q));
    return xi;
}

// (||R0||, ||Xi||) in the node-average norm, R0 = L^{-1} D u.
template <class Model>
std::pair<double, double> divergence_residual_norm(const Model& M, const Field& u, const Field& p, const Field& q,
                                                   double sigma0, double sigma1, double t) {
    Field r0 = M.solve_L(M.D(u));
    Field xi = continuity_residual(M, u, p, q, sigma0, sigma1, t);
    return {node_rms(r0), node_rms(xi)};
}

namespace detail {

template <class Model>
RunReport time_loop(const Model& M, const RunConfig& rc, const CaseSpec& cs, const DoubleButcher& tab, double tau_req,
                    double tmax, SRKState<Field, Field> st, const std::function<Field(double)>& exact_u,
                    const std::function<Field(double)>& exact_p,
                    const std::function<void(int, double, const SRKState<Field, Field>&)>& observer) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.cfg = rc;
    rep.tableau = tab.name;
    const int steps = std::max(1, int(std::ceil(tmax / tau_req - 1e-9)));
    const double tau = tmax / steps;
    rep.tau = tau;
    rep.steps = steps;
    if (rc.alpha_tau >= 0) rep.alpha = rc.alpha_tau / tau;
    else rep.alpha = rc.alpha_factor * cached_alpha_tau_max(tab, rc.form, rc.rsigma) / tau;
    StepConfig cfg = make_step_config(tab, rc.form, rc.rsigma, tau, rep.alpha);
    const double tb = tab.a_ss() * tau;
    const double sigma0 = rc.rsigma == 0 ? tb : 0.0, sigma1 = rc.rsigma == 1 ? tb * tb : 0.0;

    auto record = [&](double t) {
        auto [r0, xi] = divergence_residual_norm(M, st.u, st.p, st.q, sigma0, sigma1, t);
        rep.history.push_back({t, kinetic_energy(M.grid(), M.full(t, st.u)), r0, xi});
    };
    record(0.0);
    if (observer) observer(0, 0.0, st);
    for (int n = 1; n <= steps; ++n) {
        const double t = (n - 1) * tau;
        try {
            srk_step(M, cfg, st, t);
        } catch (const std::exception& e) {
            throw std::runtime_error("step " + std::to_string(n) + ": " + e.what());
        }
        record(n * tau);
        if (observer) observer(n, n * tau, st);
    }
    const double tf = steps * tau;
    if (exact_u) rep.e_u = max_node_error(M.full(tf, st.u), exact_u(tf));
    if (exact_p) {
        Field pe = exact_p(tf);
        Field pn = st.p;
        M.ops().to_Q(pe);
        M.ops().to_Q(pn);
        rep.e_p = max_node_error(pn, pe);
    }
    const bool two_step_ref = cs.id == "tg3d_inviscid" && rep.history.size() > 2;
    rep.K_ref = two_step_ref ? rep.history[2].K : rep.history[0].K;
    rep.e_k = rep.K_ref > 0.0 ? 1.0 - rep.history.back().K / rep.K_ref : NAN;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace detail

using StepObserver = std::function<void(int, double, const SRKState<Field, Field>&)>;

inline FlowModel<DirichletOps> manufactured_model(const TensorGrid& g, const TermPartition& part, double tau) {
    BoundaryData bd;
    bd.value = mms::velocity;
    bd.dt_value = mms::dvelocity;
    DirichletOps ops(g, bd);
    ops.set_hdot_step(1e-6 * tau);
    CaseForcing f{0.1, mms::source};
    return FlowModel<DirichletOps>(std::move(ops), f, part);
}

inline FlowModel<PeriodicOps> periodic_model(const CaseSpec& cs, int n, int m, const TermPartition& part) {
    PeriodicGrid g(cs.dim, n);
    return FlowModel<PeriodicOps>(PeriodicOps(g, m), CaseForcing{cs.nu, {}}, part);
}

// Initial state of a case: exact velocity and pressure, dp/dt = 0.
inline SRKState<Field, Field> initial_state(const FlowModel<DirichletOps>& M) {
    const auto& g = M.ops().grid();
    SRKState<Field, Field> st;
    st.u = sample(g, 2, [](const Point& r) { return mms::velocity(0.0, r); });
    project_V(g, st.u);
    st.p = sample(g, 1, [](const Point& r) { return Point{mms::pressure(0.0, r), 0, 0}; });
    project_Q(g, st.p);
    st.q = g.scalar();
    return st;
}

inline SRKState<Field, Field> initial_state(const FlowModel<PeriodicOps>& M, const CaseSpec& cs) {
    const auto& g = M.ops().grid();
    SRKState<Field, Field> st;
    if (cs.dim == 3) {
        st.u = sample(g, 3, [](const Point& r) { return tgv::velocity3d(r); });
        st.p = sample(g, 1, [](const Point& r) { return Point{tgv::pressure3d(r), 0, 0}; });
    } else {
        const double nu = cs.nu;
        st.u = sample(g, 2, [nu](const Point& r) { return tgv::velocity2d(0.0, r, nu); });
        st.p = sample(g, 1, [nu](const Point& r) { return Point{tgv::pressure2d(0.0, r, nu), 0, 0}; });
    }
    project_Q(g, st.p);
    st.q = g.scalar();
    return st;
}

inline RunReport run_case(const RunConfig& rc, const StepObserver& observer = {}) {
    const CaseSpec cs = case_spec(rc.case_id);
    const DoubleButcher tab = resolve_tableau(rc.scheme);
    const TermPartition part = TermPartition::from_mode(rc.mode);
    const double tmax = rc.tmax >= 0 ? rc.tmax : cs.tmax;
    const int n = rc.n > 0 ? rc.n : cs.n;

    if (!cs.periodic) {
        TensorGrid g = TensorGrid::uniform(n, n);
        const double h = 1.0 / n;
        const double tau = rc.dt > 0 ? rc.dt : default_tau(cs, rc, h);
        auto M = manufactured_model(g, part, tau);
        auto eu = [&](double t) { return sample(g, 2, [t](const Point& r) { return mms::velocity(t, r); }); };
        auto ep = [&](double t) {
            return sample(g, 1, [t](const Point& r) { return Point{mms::pressure(t, r), 0, 0}; });
        };
        return detail::time_loop(M, rc, cs, tab, tau, tmax, initial_state(M), eu, ep, observer);
    }
    auto M = periodic_model(cs, n, rc.m, part);
    const auto& g = M.ops().grid();
    const double tau = rc.dt > 0 ? rc.dt : default_tau(cs, rc, g.h);
    std::function<Field(double)> eu, ep;
    if (cs.has_exact && cs.dim == 2) {
        const double nu = cs.nu;
        eu = [&g, nu](double t) { return sample(g, 2, [t, nu](const Point& r) { return tgv::velocity2d(t, r, nu); }); };
        ep = [&g, nu](double t) {
            return sample(g, 1, [t, nu](const Point& r) { return Point{tgv::pressure2d(t, r, nu), 0, 0}; });
        };
    }
    return detail::time_loop(M, rc, cs, tab, tau, tmax, initial_state(M, cs), eu, ep, observer);
}

// ---- convergence ----

// Least-squares slope of log(y) against log(x); non-finite or non-positive
// samples are skipped and counted in *skipped.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, int* skipped = nullptr) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0, bad = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(std::isfinite(y[i]) && y[i] > 0 && x[i] > 0)) {
            ++bad;
            continue;
        }
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (skipped) *skipped = bad;
    if (n < 2) return NAN;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct ConvergenceRow {
    std::string scheme;
    double tau;
    double e_u, e_p, e_k;
    bool failed = false;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    // per scheme: slopes of e_u, e_p, |e_k| against tau
    std::map<std::string, std::array<double, 3>> slopes;
    std::map<std::string, std::array<int, 3>> skipped;  // excluded levels per variable
};

inline ConvergenceResult convergence_study(RunConfig base, const std::vector<std::string>& schemes,
                                           const std::vector<double>& taus) {
    if (taus.size() < 3) throw std::invalid_argument("convergence_study: need at least 3 levels");
    ConvergenceResult res;
    for (const auto& sch : schemes) {
        std::vector<double> x, eu, ep, ek;
        for (double tau : taus) {
            RunConfig rc = base;
            rc.scheme = sch;
            rc.dt = tau;
            ConvergenceRow row{sch, tau, NAN, NAN, NAN};
            try {
                RunReport r = run_case(rc);
                row.tau = r.tau;
                row.e_u = r.e_u;
                row.e_p = r.e_p;
                row.e_k = r.e_k;
            } catch (const std::exception&) {
                row.failed = true;
            }
            res.rows.push_back(row);
            x.push_back(row.tau);
            eu.push_back(row.e_u);
            ep.push_back(row.e_p);
            ek.push_back(std::abs(row.e_k));
        }
        int s1 = 0, s2 = 0, s3 = 0;
        res.slopes[sch] = {loglog_slope(x, eu, &s1), loglog_slope(x, ep, &s2), loglog_slope(x, ek, &s3)};
        res.skipped[sch] = {s1, s2, s3};
    }
    return res;
}

// ---- CSV ----

inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

inline void write_history_csv(std::ostream& os, const RunReport& r) {
    os << "t,K,R0_norm,Xi_norm\n";
    for (const auto& h : r.history) os << fmt(h.t) << ',' << fmt(h.K) << ',' << fmt(h.R0) << ',' << fmt(h.Xi) << '\n';
}

inline void write_summary_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "scheme,tau,e_u,e_p,e_k\n";
    for (const auto& r : rows)
        os << r.scheme << ',' << fmt(r.tau) << ',' << fmt(r.e_u) << ',' << fmt(r.e_p) << ',' << fmt(r.e_k) << '\n';
}

}  // namespace srk
