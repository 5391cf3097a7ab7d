#pragma once

#include <functional>
#include <stdexcept>

#include "srk/field.hpp"
#include "srk/grid.hpp"
#include "srk/linalg.hpp"

namespace srk {

// Velocity prescribed on the boundary; dt_value is the analytic time
// derivative and may be left empty.
struct BoundaryData {
    std::function<Point(double, const Point&)> value;
    std::function<Point(double, const Point&)> dt_value;

    static BoundaryData zero() {
        BoundaryData b;
        b.value = [](double, const Point&) { return Point{0.0, 0.0, 0.0}; };
        b.dt_value = b.value;
        return b;
    }
};

// Second-order operators on a tensor-product grid with Dirichlet velocity.
class DirichletOps {
public:
    using GridType = TensorGrid;

    explicit DirichletOps(const TensorGrid& g, BoundaryData bd = BoundaryData::zero())
        : g_(g), bd_(std::move(bd)) {
        // pinned system unknowns: all nodes except corners and <1,1>
        map_.assign(g_.nodes(), -1);
        for (std::size_t i = 0; i < g_.nodes(); ++i) {
            if (g_.is_corner(i) || i == g_.index(1, 1)) continue;
            map_[i] = int(free_.size());
            free_.push_back(i);
        }
        diag_ = Vec(free_.size());
        for (std::size_t f = 0; f < free_.size(); ++f) {
            auto c = g_.jk(free_[f]);
            diag_[f] = -g_.weight(free_[f]) * L_diag(c[0], c[1]);
        }
    }

    const TensorGrid& grid() const { return g_; }
    const BoundaryData& boundary() const { return bd_; }
    void set_boundary(BoundaryData bd) { bd_ = std::move(bd); }
    // step used for the time derivative of H when no analytic derivative is given
    void set_hdot_step(double dt) { hdot_step_ = dt; }

    // Centered gradient, zero on boundary nodes.
    Field G(const Field& f) const {
        Field r = g_.vector();
        for (int k = 1; k < g_.ny() - 1; ++k)
            for (int j = 1; j < g_.nx() - 1; ++j) {
                const std::size_t i = g_.index(j, k);
                r.at(0, i) = 0.5 * (f[g_.index(j + 1, k)] - f[g_.index(j - 1, k)]) / g_.dvx[j];
                r.at(1, i) = 0.5 * (f[g_.index(j, k + 1)] - f[g_.index(j, k - 1)]) / g_.dvy[k];
            }
        return r;
    }

    // Divergence of a full field, one-sided on boundary rows and columns.
    Field Div(const Field& F) const {
        Field r = g_.scalar();
        const int nx = g_.nx(), ny = g_.ny();
        const auto& x = g_.x;
        const auto& y = g_.y;
        for (int k = 0; k < ny; ++k)
            for (int j = 0; j < nx; ++j) {
                const std::size_t i = g_.index(j, k);
                double dx, dy;
                if (j == 0)
                    dx = (F.at(0, g_.index(1, k)) - F.at(0, i)) / (x[1] - x[0]);
                else if (j == nx - 1)
                    dx = (F.at(0, i) - F.at(0, g_.index(nx - 2, k))) / (x[nx - 1] - x[nx - 2]);
                else
                    dx = (F.at(0, g_.index(j + 1, k)) - F.at(0, g_.index(j - 1, k))) / (x[j + 1] - x[j - 1]);
                if (k == 0)
                    dy = (F.at(1, g_.index(j, 1)) - F.at(1, i)) / (y[1] - y[0]);
                else if (k == ny - 1)
                    dy = (F.at(1, i) - F.at(1, g_.index(j, ny - 2))) / (y[ny - 1] - y[ny - 2]);
                else
                    dy = (F.at(1, g_.index(j, k + 1)) - F.at(1, g_.index(j, k - 1))) / (y[k + 1] - y[k - 1]);
                r[i] = dx + dy;
            }
        return r;
    }

    // D on V_h; out-of-range and boundary values of u are zero.
    Field D(const Field& u) const { return Div(u); }

    // Flux-form Laplacian with the half weights next to the boundary.
    Field L(const Field& f) const {
        Field r = g_.scalar();
        for (int k = 0; k < g_.ny(); ++k)
            for (int j = 0; j < g_.nx(); ++j) r[g_.index(j, k)] = L_at(f, j, k);
        return r;
    }
    Field S(const Field& f) const { return D(G(f)) - L(f); }

    // L x = rhs for rhs in Q_h: corners and <1,1> pinned, CG on the rest.
    Field pinned_solve(const Field& rhs, SolveStats* stats = nullptr) const {
        const std::size_t nf = free_.size();
        Vec b(nf), x;
        for (std::size_t f = 0; f < nf; ++f) b[f] = -g_.weight(free_[f]) * rhs[free_[f]];
        Field work = g_.scalar();
        auto A = [&](const Vec& v, Vec& out) {
            work.fill(0.0);
            for (std::size_t f = 0; f < nf; ++f) work[free_[f]] = v[f];
            out.resize(nf);
            for (std::size_t f = 0; f < nf; ++f) {
                auto c = g_.jk(free_[f]);
                out[f] = -g_.weight(free_[f]) * L_at(work, c[0], c[1]);
            }
        };
        auto M = [&](const Vec& r, Vec& z) {
            z.resize(nf);
            for (std::size_t f = 0; f < nf; ++f) z[f] = r[f] / diag_[f];
        };
        SolveStats st = cg(A, M, b, x, 1e-12, int(10 * g_.nodes()));
        if (stats) *stats = st;
        Field out = g_.scalar();
        for (std::size_t f = 0; f < nf; ++f) out[free_[f]] = x[f];
        project_Q(g_, out);
        return out;
    }
    Field solve_L(const Field& rhs) const { return pinned_solve(rhs); }
    void to_Q(Field& f) const { project_Q(g_, f); }

    // Pi u_b(t): boundary samples, zero inside.
    Field boundary_field(double t) const { return boundary_sample(t, bd_.value); }

    // H(t) = -Div(Pi u_b(t)), moved into Q_h.
    Field H(double t) const {
        Field h = Div(boundary_field(t));
        h *= -1.0;
        project_Q(g_, h);
        return h;
    }
    Field Hdot(double t) const {
        Field h;
        if (bd_.dt_value) {
            h = Div(boundary_sample(t, bd_.dt_value));
            h *= -1.0;
        } else {
            const double d = hdot_step_;
            h = (H(t + d) - H(t - d)) * (0.5 / d);
        }
        project_Q(g_, h);
        return h;
    }

    // Standard 5-point Laplacian of a full field at interior nodes, zero elsewhere.
    Field laplace5(const Field& f) const {
        Field r(f.nodes(), f.ncomp());
        for (int c = 0; c < f.ncomp(); ++c)
            for (int k = 1; k < g_.ny() - 1; ++k)
                for (int j = 1; j < g_.nx() - 1; ++j) {
                    const double* p = f.comp(c);
                    const std::size_t i = g_.index(j, k);
                    const auto& x = g_.x;
                    const auto& y = g_.y;
                    double lx = ((p[g_.index(j + 1, k)] - p[i]) / (x[j + 1] - x[j]) -
                                 (p[i] - p[g_.index(j - 1, k)]) / (x[j] - x[j - 1])) / g_.dvx[j];
                    double ly = ((p[g_.index(j, k + 1)] - p[i]) / (y[k + 1] - y[k]) -
                                 (p[i] - p[g_.index(j, k - 1)]) / (y[k] - y[k - 1])) / g_.dvy[k];
                    r.at(c, i) = lx + ly;
                }
        return r;
    }

    // Centered first difference along axis at interior nodes, zero elsewhere.
    void deriv(const double* f, double* out, int axis) const {
        for (std::size_t i = 0; i < g_.nodes(); ++i) out[i] = 0.0;
        for (int k = 1; k < g_.ny() - 1; ++k)
            for (int j = 1; j < g_.nx() - 1; ++j) {
                const std::size_t i = g_.index(j, k);
                if (axis == 0)
                    out[i] = (f[g_.index(j + 1, k)] - f[g_.index(j - 1, k)]) / (g_.x[j + 1] - g_.x[j - 1]);
                else
                    out[i] = (f[g_.index(j, k + 1)] - f[g_.index(j, k - 1)]) / (g_.y[k + 1] - g_.y[k - 1]);
            }
    }

    // (I - gnu * laplace5) v = rhs on interior nodes, v zero on the boundary.
    Field helmholtz_solve(const Field& rhs, double gnu) const {
        Field v(rhs.nodes(), rhs.ncomp());
        if (gnu == 0.0) {
            v = rhs;
            project_V(g_, v);
            return v;
        }
        std::vector<std::size_t> inner;
        for (std::size_t i = 0; i < g_.nodes(); ++i)
            if (!g_.is_boundary(i)) inner.push_back(i);
        const std::size_t ni = inner.size();
        Field work = g_.scalar();
        auto A = [&](const Vec& in, Vec& out) {
            work.fill(0.0);
            for (std::size_t q = 0; q < ni; ++q) work[inner[q]] = in[q];
            Field lw = laplace5(work);
            out.resize(ni);
            for (std::size_t q = 0; q < ni; ++q)
                out[q] = g_.weight(inner[q]) * (in[q] - gnu * lw[inner[q]]);
        };
        Vec diag(ni);
        for (std::size_t q = 0; q < ni; ++q) {
            auto c = g_.jk(inner[q]);
            int j = c[0], k = c[1];
            double d = (1.0 / (g_.x[j + 1] - g_.x[j]) + 1.0 / (g_.x[j] - g_.x[j - 1])) / g_.dvx[j] +
                       (1.0 / (g_.y[k + 1] - g_.y[k]) + 1.0 / (g_.y[k] - g_.y[k - 1])) / g_.dvy[k];
            diag[q] = g_.weight(inner[q]) * (1.0 + gnu * d);
        }
        auto M = [&](const Vec& r, Vec& z) {
            z.resize(ni);
            for (std::size_t q = 0; q < ni; ++q) z[q] = r[q] / diag[q];
        };
        for (int c = 0; c < rhs.ncomp(); ++c) {
            Vec b(ni), x;
            for (std::size_t q = 0; q < ni; ++q) b[q] = g_.weight(inner[q]) * rhs.at(c, inner[q]);
            cg(A, M, b, x, 1e-13, int(10 * g_.nodes()));
            for (std::size_t q = 0; q < ni; ++q) v.at(c, inner[q]) = x[q];
        }
        return v;
    }

private:
    double phi(int j, int k, int j2, int k2) const {
        if (j2 < 0 || k2 < 0 || j2 >= g_.nx() || k2 >= g_.ny()) return 0.0;
        const bool b1 = g_.is_boundary(j, k), b2 = g_.is_boundary(j2, k2);
        if (b1 && b2) return 0.0;
        if (b1 || b2) return 0.5;
        return 1.0;
    }
    double L_at(const Field& f, int j, int k) const {
        const auto& x = g_.x;
        const auto& y = g_.y;
        const double fc = f[g_.index(j, k)];
        double s = 0.0;
        if (double w = phi(j, k, j + 1, k); w != 0.0)
            s += w * (f[g_.index(j + 1, k)] - fc) / (x[j + 1] - x[j]) / g_.dvx[j];
        if (double w = phi(j, k, j - 1, k); w != 0.0)
            s -= w * (fc - f[g_.index(j - 1, k)]) / (x[j] - x[j - 1]) / g_.dvx[j];
        if (double w = phi(j, k, j, k + 1); w != 0.0)
            s += w * (f[g_.index(j, k + 1)] - fc) / (y[k + 1] - y[k]) / g_.dvy[k];
        if (double w = phi(j, k, j, k - 1); w != 0.0)
            s -= w * (fc - f[g_.index(j, k - 1)]) / (y[k] - y[k - 1]) / g_.dvy[k];
        return s;
    }
    double L_diag(int j, int k) const {
        const auto& x = g_.x;
        const auto& y = g_.y;
        double s = 0.0;
        if (double w = phi(j, k, j + 1, k); w != 0.0) s -= w / (x[j + 1] - x[j]) / g_.dvx[j];
        if (double w = phi(j, k, j - 1, k); w != 0.0) s -= w / (x[j] - x[j - 1]) / g_.dvx[j];
        if (double w = phi(j, k, j, k + 1); w != 0.0) s -= w / (y[k + 1] - y[k]) / g_.dvy[k];
        if (double w = phi(j, k, j, k - 1); w != 0.0) s -= w / (y[k] - y[k - 1]) / g_.dvy[k];
        return s;
    }
    template <class Fn>
    Field boundary_sample(double t, const Fn& fn) const {
        Field u = g_.vector();
        for (std::size_t i = 0; i < g_.nodes(); ++i) {
            if (!g_.is_boundary(i)) continue;
            Point v = fn(t, g_.coords(i));
            u.at(0, i) = v[0];
            u.at(1, i) = v[1];
        }
        return u;
    }

    TensorGrid g_;
    BoundaryData bd_;
    double hdot_step_ = 1e-6;
    std::vector<int> map_;
    std::vector<std::size_t> free_;
    Vec diag_;
};

}  // namespace srk
