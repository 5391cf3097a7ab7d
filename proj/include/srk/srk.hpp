#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "srk/field.hpp"
#include "srk/tableau.hpp"

namespace srk {

// A model supplies, for velocity type V and pressure type P:
//   V C(t, u)                       explicit momentum term
//   V Dimp(t, u)                    implicit momentum term
//   V implicit_solve(t, tb, ustar)  solves u = ustar + tb * Dimp(t, u)
//   V G(p), P D(u), P solve_L(rhs)  discrete operators, L x = rhs
//   P H(t), P Hdot(t)               boundary contribution to D u = H
// V and P need +, -, scalar * and a zeros_like overload.

inline double zeros_like(double) { return 0.0; }
inline bool all_finite(double x) { return std::isfinite(x); }
inline bool all_finite(const Field& f) { return f.finite(); }

template <class V, class P>
struct SRKState {
    V u;
    P p;
    P q;  // dp/dt, only read when rsigma = 1
};

struct StepConfig {
    DoubleButcher tab;
    MethodClass cls = MethodClass::A;
    std::vector<double> d;  // kernel vector, CK and ARS only
    int form = 1;
    int rsigma = 0;
    double tau = 0.0;
    double alpha = 0.0;
};

inline StepConfig make_step_config(const DoubleButcher& tab, int form, int rsigma, double tau, double alpha) {
    validate(tab);
    StepConfig c;
    c.tab = tab;
    c.cls = classify(tab);
    if (c.cls != MethodClass::A) c.d = kernel_vector(tab);
    if (form != 1 && form != 2) throw std::invalid_argument("form must be 1 or 2");
    if (form == 2 && c.cls != MethodClass::A) throw std::invalid_argument(tab.name + ": form II needs a type A method");
    if (rsigma != 0 && rsigma != 1) throw std::invalid_argument("rsigma must be 0 or 1");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    c.form = form;
    c.rsigma = rsigma;
    c.tau = tau;
    c.alpha = alpha;
    return c;
}

// Stages of the implicit-explicit form where each stage ends with the
// explicit fluxes (pressure gradient included).
template <class Model, class V, class P>
void step_form1(const Model& M, const StepConfig& cfg, SRKState<V, P>& st, double t) {
    const DoubleButcher& T = cfg.tab;
    const int s = T.s;
    const bool typeA = cfg.cls == MethodClass::A;
    const bool ck = cfg.cls == MethodClass::CK;
    const int j0 = typeA ? 0 : 1;
    const double tau = cfg.tau, alpha = cfg.alpha, g = T.a_ss(), tb = g * tau;
    const int r = cfg.rsigma;
    const std::vector<double> c = T.c();

    const V& u0 = st.u;
    const P& p0 = st.p;
    const V vzero = zeros_like(u0);
    const P pzero = zeros_like(p0);
    const P w = r == 0 ? p0 : tb * st.q;
    const P base = alpha * (M.D(u0) - M.H(t));

    std::vector<V> K(s, vzero), Kh(s, vzero);
    std::vector<P> q(s, pzero), mut(s, pzero);
    P nu1 = pzero;
    if (!typeA) {
        Kh[0] = M.C(t, u0) - M.G(p0);
        if (ck) {
            K[0] = M.Dimp(t, u0);
            if (r == 1) q[0] = st.q;
            nu1 = M.D(Kh[0] + K[0]) - M.Hdot(t) + base;
        }
    }

    P pj = p0;
    for (int j = j0; j < s; ++j) {
        const double tj = t + c[j] * tau;

        V ustar = u0;
        for (int k = 0; k < j; ++k) {
            if (T.A[j][k] != 0.0) ustar = ustar + (tau * T.A[j][k]) * K[k];
            if (T.Ah[j][k] != 0.0) ustar = ustar + (tau * T.Ah[j][k]) * Kh[k];
        }
        V uj = M.implicit_solve(tj, tb, ustar);
        K[j] = (1.0 / tb) * (uj - ustar);
        V Cj = M.C(tj, uj);

        P mu = (typeA ? 1.0 : 1.0 - T.A[j][0] * alpha * tau) * w;
        for (int k = j0; k < j; ++k) mu = mu + (T.A[j][k] / g) * mut[k];
        P pst = pzero;
        if (r == 1) {
            pst = p0;
            for (int k = 0; k < j; ++k)
                if (T.A[j][k] != 0.0) pst = pst + (tau * T.A[j][k]) * q[k];
        }
        P pt = pst + mu - (alpha * tb) * w;
        P rhs = M.D(K[j] + Cj - M.G(pt)) - M.Hdot(tj) + base;
        if (ck) rhs = rhs - cfg.d[j] * nu1;
        pj = pt + M.solve_L(rhs);

        mut[j] = pj - (pst + mu);
        if (r == 1) q[j] = (1.0 / tb) * (pj - pst);
        Kh[j] = Cj - M.G(pj);
    }

    V un = u0;
    for (int k = 0; k < s; ++k) {
        if (T.b[k] != 0.0) un = un + (tau * T.b[k]) * K[k];
        if (T.bh[k] != 0.0) un = un + (tau * T.bh[k]) * Kh[k];
    }
    if (!all_finite(un) || !all_finite(pj)) throw std::runtime_error("SRK step produced non-finite values");
    st.u = std::move(un);
    st.p = std::move(pj);
    if (r == 1) st.q = q[s - 1];
}

// Stages that start with an explicit predictor; type A methods only.
template <class Model, class V, class P>
void step_form2(const Model& M, const StepConfig& cfg, SRKState<V, P>& st, double t) {
    const DoubleButcher& T = cfg.tab;
    if (cfg.cls != MethodClass::A) throw std::invalid_argument("form II needs a type A method");
    const int s = T.s;
    const double tau = cfg.tau, alpha = cfg.alpha, g = T.a_ss(), tb = g * tau;
    const int r = cfg.rsigma;
    const std::vector<double> c = T.c(), ch = T.chat();

    const V& u0 = st.u;
    const P& p0 = st.p;
    const V vzero = zeros_like(u0);
    const P pzero = zeros_like(p0);
    const P w = r == 0 ? p0 : tb * st.q;
    const P base = alpha * (M.D(u0) - M.H(t));

    std::vector<V> Hs(s, vzero);
    std::vector<P> q(s, pzero), qd(s, pzero);
    P pj = p0;
    for (int j = 0; j < s; ++j) {
        const double tj = t + c[j] * tau, thj = t + ch[j] * tau;

        V uE = u0;
        P pE = p0;
        for (int k = 0; k < j; ++k)
            if (T.Ah[j][k] != 0.0) {
                uE = uE + (tau * T.Ah[j][k]) * Hs[k];
                pE = pE + (tau * T.Ah[j][k]) * q[k];
            }
        V Khat = M.C(thj, uE) - M.G(pE);

        V ustar = u0 + (tau * T.A[j][j]) * Khat;
        for (int k = 0; k < j; ++k)
            if (T.A[j][k] != 0.0) ustar = ustar + (tau * T.A[j][k]) * Hs[k];
        V uj = M.implicit_solve(tj, tb, ustar);
        V Kimp = (1.0 / tb) * (uj - ustar);
        Hs[j] = Kimp + Khat;

        P pst = p0;
        P qst = r == 0 ? pzero : st.q;
        for (int k = 0; k < j; ++k)
            if (T.A[j][k] != 0.0) {
                pst = pst + (tau * T.A[j][k]) * q[k];
                if (r == 1) qst = qst + (tau * T.A[j][k]) * qd[k];
            }
        P pt = pst + tb * qst - (alpha * tb) * w;
        V R = M.C(tj, uj) + Kimp - M.G(pt);
        P rhs = M.D(R) - M.Hdot(tj) + base;
        pj = pt + M.solve_L(rhs);

        q[j] = (1.0 / tb) * (pj - pst);
        if (r == 1) qd[j] = (1.0 / tb) * (q[j] - qst);
    }

    V un = u0;
    for (int k = 0; k < s; ++k)
        if (T.b[k] != 0.0) un = un + (tau * T.b[k]) * Hs[k];
    if (!all_finite(un) || !all_finite(pj)) throw std::runtime_error("SRK step produced non-finite values");
    st.u = std::move(un);
    st.p = std::move(pj);
    if (r == 1) st.q = q[s - 1];
}

template <class Model, class V, class P>
void srk_step(const Model& M, const StepConfig& cfg, SRKState<V, P>& st, double t) {
    if (cfg.form == 1) step_form1(M, cfg, st, t);
    else step_form2(M, cfg, st, t);
}

}  // namespace srk
