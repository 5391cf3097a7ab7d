#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace srk {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct SolveStats {
    int iterations = 0;
    double rel_residual = 0.0;
};

// Preconditioned conjugate gradients for SPD A. Stops when
// ||r|| <= tol * ||b||. Throws when max_iter is exceeded.
template <class MatVec, class Precond>
SolveStats cg(MatVec&& A, Precond&& M, const Vec& b, Vec& x, double tol, int max_iter) {
    const std::size_t n = b.size();
    x.assign(n, 0.0);
    const double bnorm = std::sqrt(dot(b, b));
    SolveStats st;
    if (bnorm == 0.0) return st;
    Vec r = b, z(n), p(n), q(n);
    M(r, z);
    p = z;
    double rz = dot(r, z);
    for (int it = 1; it <= max_iter; ++it) {
        A(p, q);
        const double pq = dot(p, q);
        if (!(pq > 0.0)) throw std::runtime_error("cg: operator not positive definite");
        const double a = rz / pq;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += a * p[i];
            r[i] -= a * q[i];
        }
        const double rn = std::sqrt(dot(r, r));
        st.iterations = it;
        st.rel_residual = rn / bnorm;
        if (rn <= tol * bnorm) return st;
        M(r, z);
        const double rz1 = dot(r, z);
        const double beta = rz1 / rz;
        rz = rz1;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw std::runtime_error("cg: iteration cap exceeded (" + std::to_string(max_iter) + ")");
}

// Right-preconditioned BiCGSTAB for general A; x holds the initial guess.
template <class MatVec, class Precond>
SolveStats bicgstab(MatVec&& A, Precond&& M, const Vec& b, Vec& x, double tol, int max_iter) {
    const std::size_t n = b.size();
    if (x.size() != n) x.assign(n, 0.0);
    const double bnorm = std::sqrt(dot(b, b));
    SolveStats st;
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        return st;
    }
    Vec r(n), rhat, p(n, 0.0), v(n, 0.0), s(n), t(n), ph(n), sh(n);
    A(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    rhat = r;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    for (int it = 1; it <= max_iter; ++it) {
        st.iterations = it;
        double rn = std::sqrt(dot(r, r));
        st.rel_residual = rn / bnorm;
        if (rn <= tol * bnorm) return st;
        const double rho1 = dot(rhat, r);
        if (rho1 == 0.0) throw std::runtime_error("bicgstab: breakdown");
        const double beta = (rho1 / rho) * (alpha / omega);
        rho = rho1;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        M(p, ph);
        A(ph, v);
        alpha = rho / dot(rhat, v);
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (std::sqrt(dot(s, s)) <= tol * bnorm) {
            for (std::size_t i = 0; i < n; ++i) x[i] += alpha * ph[i];
            st.rel_residual = std::sqrt(dot(s, s)) / bnorm;
            return st;
        }
        M(s, sh);
        A(sh, t);
        omega = dot(t, s) / dot(t, t);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * ph[i] + omega * sh[i];
            r[i] = s[i] - omega * t[i];
        }
    }
    throw std::runtime_error("bicgstab: iteration cap exceeded (" + std::to_string(max_iter) + ")");
}

}  // namespace srk
