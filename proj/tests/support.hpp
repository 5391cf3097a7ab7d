#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <cmath>
#include <random>

#include "srk/cases.hpp"
#include "srk/dirichlet_ops.hpp"
#include "srk/fluxes.hpp"
#include "srk/grid.hpp"
#include "srk/periodic_ops.hpp"

namespace srk::testing {

inline Field random_field(std::size_t nodes, int ncomp, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Field f(nodes, ncomp);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = U(rng);
    return f;
}

template <class Grid>
Field random_scalar_Q(const Grid& g, std::mt19937_64& rng) {
    Field f = random_field(g.nodes(), 1, rng);
    project_Q(g, f);
    return f;
}

template <class Grid>
Field random_vector_V(const Grid& g, std::mt19937_64& rng) {
    Field f = random_field(g.nodes(), g.dim, rng);
    project_V(g, f);
    return f;
}

inline double rel_diff(const Field& a, const Field& b) {
    return (a - b).max_abs() / std::max(1.0, b.max_abs());
}

// Pressure-correction step written out by hand, alpha = 1/tau:
//   (u2 - u)/tau = C(t, u) + Dimp(t+tau, u2) - G p
//   pt = 0 (rsigma = 0) or p (rsigma = 1)
//   ut = u + tau (C(t+tau, u2) + Dimp(t+tau, u2) - G pt)
//   L (p' - pt) = D ut / tau - Hdot(t+tau) - H(t) / tau
//   u' = ut - tau G (p' - pt),   q' = (p' - p) / tau
template <class Model>
SRKState<Field, Field> pressure_correction_step(const Model& M, const SRKState<Field, Field>& s, double t,
                                                double tau, int rsigma) {
    const double t1 = t + tau;
    Field ustar = s.u + tau * (M.C(t, s.u) - M.G(s.p));
    Field u2 = M.implicit_solve(t1, tau, ustar);
    Field dimp = (1.0 / tau) * (u2 - ustar);
    Field pt = rsigma == 0 ? zeros_like(s.p) : s.p;
    Field ut = s.u + tau * (M.C(t1, u2) + dimp - M.G(pt));
    Field rhs = (1.0 / tau) * M.D(ut) - M.Hdot(t1) - (1.0 / tau) * M.H(t);
    Field dp = M.solve_L(rhs);
    SRKState<Field, Field> r;
    r.p = pt + dp;
    r.u = ut - tau * M.G(dp);
    r.q = (1.0 / tau) * (r.p - s.p);
    return r;
}

}  // namespace srk::testing
