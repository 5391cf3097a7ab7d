#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "srk/srk.hpp"
#include "srk/tableau.hpp"

namespace srk {

// Single-mode stand-in with tau = 1: no momentum terms, G = 1, L = -1 and
// D = -(1 - beta), so that S = DG - L = beta and L^{-1} D = 1 - beta.
struct ScalarModel {
    double beta = 0.0;
    double C(double, double) const { return 0.0; }
    double Dimp(double, double) const { return 0.0; }
    double implicit_solve(double, double, double ustar) const { return ustar; }
    double G(double p) const { return p; }
    double D(double u) const { return -(1.0 - beta) * u; }
    double solve_L(double r) const { return -r; }
    double H(double) const { return 0.0; }
    double Hdot(double) const { return 0.0; }
};

// Columns are the images of unit states under one step of the production
// step code. State order: (q, p, phi) for rsigma = 1, (p, phi) for rsigma = 0.
inline Eigen::MatrixXd amplification_matrix(const DoubleButcher& tab, int form, int rsigma, double alpha, double beta) {
    StepConfig cfg = make_step_config(tab, form, rsigma, 1.0, alpha);
    ScalarModel m{beta};
    const int n = rsigma == 1 ? 3 : 2;
    Eigen::MatrixXd M(n, n);
    for (int col = 0; col < n; ++col) {
        std::vector<double> e(n, 0.0);
        e[col] = 1.0;
        SRKState<double, double> st;
        if (rsigma == 1) {
            st.q = e[0];
            st.p = e[1];
            st.u = e[2];
        } else {
            st.q = 0.0;
            st.p = e[0];
            st.u = e[1];
        }
        srk_step(m, cfg, st, 0.0);
        if (rsigma == 1) {
            M(0, col) = st.q;
            M(1, col) = st.p;
            M(2, col) = st.u;
        } else {
            M(0, col) = st.p;
            M(1, col) = st.u;
        }
    }
    return M;
}

// Spectral radius with near-coincident eigenvalues merged: a defective
// eigenvalue splits by O(sqrt(eps)) in floating point, while the cluster mean
// stays accurate.
inline double spectral_radius(const Eigen::MatrixXd& M, double cluster_tol = 1e-5) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    auto ev = es.eigenvalues();
    const int n = int(ev.size());
    std::vector<bool> used(n, false);
    double rho = 0.0;
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        std::complex<double> sum = ev[i];
        int cnt = 1;
        used[i] = true;
        for (int k = i + 1; k < n; ++k)
            if (!used[k] && std::abs(ev[k] - ev[i]) < cluster_tol) {
                used[k] = true;
                sum += ev[k];
                ++cnt;
            }
        rho = std::max(rho, std::abs(sum / double(cnt)));
    }
    return rho;
}

struct AlphaScan {
    double beta_step = 0.005;
    double tol = 1e-3;       // bisection width in alpha
    double rho_tol = 1e-9;   // rho <= 1 + rho_tol counts as stable
    double alpha_hi = 5.0;
};

inline bool stable_for_all_beta(const DoubleButcher& tab, int form, int rsigma, double alpha, const AlphaScan& sc = {}) {
    const int nb = int(std::lround(1.0 / sc.beta_step));
    for (int i = 0; i <= nb; ++i) {
        const double beta = double(i) / nb;
        if (spectral_radius(amplification_matrix(tab, form, rsigma, alpha, beta)) > 1.0 + sc.rho_tol) return false;
    }
    return true;
}

// Largest alpha*tau keeping every sampled beta stable; 0 when no alpha > 0 is.
inline double alpha_tau_max(const DoubleButcher& tab, int form, int rsigma, const AlphaScan& sc = {}) {
    double lo = 0.0, hi = sc.alpha_hi;
    if (stable_for_all_beta(tab, form, rsigma, hi, sc)) return hi;
    if (!stable_for_all_beta(tab, form, rsigma, sc.tol, sc)) return 0.0;
    lo = sc.tol;
    while (hi - lo > sc.tol) {
        const double mid = 0.5 * (lo + hi);
        (stable_for_all_beta(tab, form, rsigma, mid, sc) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace srk
