#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "srk/dirichlet_ops.hpp"
#include "srk/field.hpp"
#include "srk/linalg.hpp"
#include "srk/periodic_ops.hpp"

namespace srk {

// Which terms go to the implicit part. explicit: none; imex: diffusion;
// implicit: convection, diffusion and source.
struct TermPartition {
    bool convection_implicit = false;
    bool diffusion_implicit = true;
    bool source_implicit = false;

    static TermPartition explicit_all() { return {false, false, false}; }
    static TermPartition imex() { return {false, true, false}; }
    static TermPartition implicit_all() { return {true, true, true}; }
    static TermPartition from_mode(const std::string& mode) {
        if (mode == "explicit") return explicit_all();
        if (mode == "imex") return imex();
        if (mode == "implicit") return implicit_all();
        throw std::invalid_argument("unknown mode: " + mode);
    }
};

struct CaseForcing {
    double nu = 0.0;
    std::function<Point(double, const Point&)> source;  // may be empty
};

// 1/2 sum_d [ d_d(w_d v) + w_d d_d v ]; with w = v this is the skew-symmetric
// convection term.
template <class Ops>
Field convection_frozen(const Ops& ops, const Field& w, const Field& v) {
    const auto& g = ops.grid();
    const std::size_t n = g.nodes();
    const int dim = g.dim;
    Field r(n, dim);
    std::vector<double> prod(n), dv(n);
    for (int i = 0; i < dim; ++i) {
        double* out = r.comp(i);
        for (int d = 0; d < dim; ++d) {
            const double* wd = w.comp(d);
            const double* vi = v.comp(i);
            for (std::size_t q = 0; q < n; ++q) prod[q] = wd[q] * vi[q];
            ops.deriv(prod.data(), dv.data(), d);
            for (std::size_t q = 0; q < n; ++q) out[q] += 0.5 * dv[q];
            ops.deriv(vi, dv.data(), d);
            for (std::size_t q = 0; q < n; ++q) out[q] += 0.5 * wd[q] * dv[q];
        }
    }
    return r;
}

template <class Ops>
Field convection(const Ops& ops, const Field& u) {
    Field r = convection_frozen(ops, u, u);
    project_V(ops.grid(), r);
    return r;
}

inline Field laplace_vector(const PeriodicOps& ops, const Field& u) { return ops.L(u); }
inline Field laplace_vector(const DirichletOps& ops, const Field& u) { return ops.laplace5(u); }

template <class Ops>
Field diffusion(const Ops& ops, double nu, const Field& u) {
    if (nu == 0.0) return zeros_like(u);
    Field r = laplace_vector(ops, u);
    r *= nu;
    project_V(ops.grid(), r);
    return r;
}

// Momentum terms of one case on one discretization, split per the partition.
// u is the V_h part; on Dirichlet grids the boundary field is added before
// fluxes are evaluated.
template <class Ops>
class FlowModel {
public:
    static constexpr bool dirichlet = std::is_same_v<Ops, DirichletOps>;

    FlowModel(Ops ops, CaseForcing forcing, TermPartition part)
        : ops_(std::move(ops)), f_(std::move(forcing)), part_(part) {}

    const Ops& ops() const { return ops_; }
    Ops& ops() { return ops_; }
    const TermPartition& partition() const { return part_; }
    const CaseForcing& forcing() const { return f_; }
    const auto& grid() const { return ops_.grid(); }

    Field full(double t, const Field& u) const {
        if constexpr (dirichlet) return u + ops_.boundary_field(t);
        else return u;
    }
    Field conv(double t, const Field& u) const { return convection(ops_, full(t, u)); }
    Field diff(double t, const Field& u) const { return diffusion(ops_, f_.nu, full(t, u)); }
    Field source(double t) const {
        const auto& g = ops_.grid();
        Field s(g.nodes(), g.dim);
        if (!f_.source) return s;
        for (std::size_t i = 0; i < g.nodes(); ++i) {
            Point v = f_.source(t, g.coords(i));
            for (int c = 0; c < g.dim; ++c) s.at(c, i) = v[c];
        }
        project_V(g, s);
        return s;
    }

    // C(t,u): explicit part
    Field C(double t, const Field& u) const { return part_sum(t, u, false); }
    // implicit part
    Field Dimp(double t, const Field& u) const { return part_sum(t, u, true); }

    // u = ustar + tb * Dimp(t, u)
    Field implicit_solve(double t, double tb, const Field& ustar) const {
        const bool any = part_.convection_implicit || (part_.diffusion_implicit && f_.nu != 0.0) ||
                         (part_.source_implicit && bool(f_.source));
        if (tb == 0.0 || !any) return ustar;
        const double gnu = part_.diffusion_implicit ? tb * f_.nu : 0.0;
        Field rhs = ustar;
        if (part_.source_implicit) rhs.axpy(tb, source(t));
        Field ub;
        if constexpr (dirichlet) {
            ub = ops_.boundary_field(t);
            if (gnu != 0.0) rhs.axpy(tb, diffusion(ops_, f_.nu, ub));
        }
        if (!part_.convection_implicit) return helm(rhs, gnu);

        // Picard: convection velocity frozen at the previous iterate
        Field w = ustar;
        for (int it = 0; it < max_picard; ++it) {
            Field wf = full(t, w);
            Field b = rhs;
            if constexpr (dirichlet) {
                Field nb = convection_frozen(ops_, wf, ub);
                project_V(ops_.grid(), nb);
                b.axpy(-tb, nb);
            }
            auto A = [&](const Vec& x, Vec& y) {
                Field xv = wrap(x, w);
                Field nx = convection_frozen(ops_, wf, xv);
                project_V(ops_.grid(), nx);
                Field lx = gnu != 0.0 ? diffusion(ops_, 1.0, xv) : zeros_like(xv);
                y = xv.raw();
                for (std::size_t q = 0; q < y.size(); ++q) y[q] += tb * nx[q] - gnu * lx[q];
            };
            auto M = [&](const Vec& x, Vec& y) { y = helm(wrap(x, w), gnu).raw(); };
            Vec sol = w.raw();
            bicgstab(A, M, b.raw(), sol, 1e-14, 500);
            Field next = wrap(sol, w);
            project_V(ops_.grid(), next);
            double change = (next - w).max_abs();
            w = std::move(next);
            if (change <= picard_tol * std::max(1.0, w.max_abs())) return w;
        }
        throw std::runtime_error("implicit velocity solve: Picard iteration cap exceeded");
    }

    Field G(const Field& p) const { return ops_.G(p); }
    Field D(const Field& u) const { return ops_.D(u); }
    Field S(const Field& p) const { return ops_.S(p); }
    Field solve_L(const Field& r) const { return ops_.solve_L(r); }
    Field H(double t) const {
        if constexpr (dirichlet) return ops_.H(t);
        else return ops_.grid().scalar();
    }
    Field Hdot(double t) const {
        if constexpr (dirichlet) return ops_.Hdot(t);
        else return ops_.grid().scalar();
    }

    // R(t,u,p) = C + Dimp - G p
    Field residual(double t, const Field& u, const Field& p) const {
        return C(t, u) + Dimp(t, u) - ops_.G(p);
    }

    int max_picard = 50;
    double picard_tol = 1e-12;

private:
    Field part_sum(double t, const Field& u, bool implicit) const {
        const auto& g = ops_.grid();
        Field r(g.nodes(), g.dim);
        if (part_.convection_implicit == implicit) r -= conv(t, u);
        if (part_.diffusion_implicit == implicit && f_.nu != 0.0) r += diff(t, u);
        if (part_.source_implicit == implicit && f_.source) r += source(t);
        return r;
    }
    Field helm(const Field& rhs, double gnu) const {
        Field v = ops_.helmholtz_solve(rhs, gnu);
        project_V(ops_.grid(), v);
        return v;
    }
    static Field wrap(const Vec& x, const Field& like) {
        Field f(like.nodes(), like.ncomp());
        f.raw() = x;
        return f;
    }

    Ops ops_;
    CaseForcing f_;
    TermPartition part_;
};

}  // namespace srk
