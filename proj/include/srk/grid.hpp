#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "srk/field.hpp"

namespace srk {

using Point = std::array<double, 3>;

// Uniform periodic grid on (0, length)^dim with n nodes per axis, x fastest.
struct PeriodicGrid {
    int dim = 2;
    int n = 8;
    double length = 2.0 * std::numbers::pi;
    double h = 2.0 * std::numbers::pi / 8;

    PeriodicGrid() = default;
    PeriodicGrid(int dim_, int n_, double length_ = 2.0 * std::numbers::pi)
        : dim(dim_), n(n_), length(length_), h(length_ / n_) {
        if (dim != 2 && dim != 3) throw std::invalid_argument("periodic grid: dim must be 2 or 3");
        if (n < 4) throw std::invalid_argument("periodic grid: need at least 4 nodes per axis");
    }

    std::size_t nodes() const { return dim == 2 ? std::size_t(n) * n : std::size_t(n) * n * n; }
    int wrap(int i) const { return ((i % n) + n) % n; }
    std::size_t index(int i, int j, int k = 0) const {
        return std::size_t(wrap(i)) + std::size_t(n) * (std::size_t(wrap(j)) + std::size_t(n) * wrap(k));
    }
    std::array<int, 3> ijk(std::size_t idx) const {
        int i = int(idx % n);
        int j = int((idx / n) % n);
        int k = dim == 3 ? int(idx / (std::size_t(n) * n)) : 0;
        return {i, j, k};
    }
    // Offset to the neighbour at distance 1 along axis d, without wrapping.
    std::size_t stride(int d) const {
        return d == 0 ? 1 : d == 1 ? std::size_t(n) : std::size_t(n) * n;
    }
    Point coords(std::size_t idx) const {
        auto c = ijk(idx);
        return {c[0] * h, c[1] * h, dim == 3 ? c[2] * h : 0.0};
    }
    double weight(std::size_t) const { return dim == 2 ? h * h : h * h * h; }

    Field scalar() const { return Field(nodes(), 1); }
    Field vector() const { return Field(nodes(), dim); }
    bool operator==(const PeriodicGrid& o) const {
        return dim == o.dim && n == o.n && length == o.length;
    }
};

// Tensor-product grid on the unit square; nodes x_0 = 0 < ... < x_Nx = 1.
struct TensorGrid {
    static constexpr int dim = 2;
    std::vector<double> x, y;
    std::vector<double> dvx, dvy;

    TensorGrid() = default;
    TensorGrid(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
        dvx = volumes(x);
        dvy = volumes(y);
    }

    static TensorGrid uniform(int nx, int ny) {
        return TensorGrid(linspace(nx), linspace(ny));
    }
    // tanh clustering towards both walls; c = 0 gives the uniform mesh
    static TensorGrid stretched(int nx, int ny, double c = 1.5) {
        return TensorGrid(clustered(nx, c), clustered(ny, c));
    }

    int nx() const { return int(x.size()); }  // node count, Nx + 1
    int ny() const { return int(y.size()); }
    std::size_t nodes() const { return x.size() * y.size(); }
    std::size_t index(int j, int k) const { return std::size_t(j) + x.size() * std::size_t(k); }
    std::array<int, 2> jk(std::size_t idx) const { return {int(idx % x.size()), int(idx / x.size())}; }
    Point coords(std::size_t idx) const {
        auto c = jk(idx);
        return {x[c[0]], y[c[1]], 0.0};
    }
    double weight(std::size_t idx) const {
        auto c = jk(idx);
        return dvx[c[0]] * dvy[c[1]];
    }
    bool is_boundary(int j, int k) const { return j == 0 || k == 0 || j == nx() - 1 || k == ny() - 1; }
    bool is_corner(int j, int k) const {
        return (j == 0 || j == nx() - 1) && (k == 0 || k == ny() - 1);
    }
    bool is_boundary(std::size_t idx) const {
        auto c = jk(idx);
        return is_boundary(c[0], c[1]);
    }
    bool is_corner(std::size_t idx) const {
        auto c = jk(idx);
        return is_corner(c[0], c[1]);
    }

    Field scalar() const { return Field(nodes(), 1); }
    Field vector() const { return Field(nodes(), 2); }
    bool operator==(const TensorGrid& o) const { return x == o.x && y == o.y; }

private:
    static std::vector<double> volumes(const std::vector<double>& c) {
        const int n = int(c.size());
        if (n < 3) throw std::invalid_argument("tensor grid: need at least 3 nodes per axis");
        if (c.front() != 0.0 || c.back() != 1.0) throw std::invalid_argument("tensor grid: axis must span [0,1]");
        std::vector<double> v(n);
        for (int j = 1; j < n; ++j)
            if (!(c[j] > c[j - 1])) throw std::invalid_argument("tensor grid: coordinates must increase");
        v[0] = 0.5 * (c[1] - c[0]);
        v[n - 1] = 0.5 * (c[n - 1] - c[n - 2]);
        for (int j = 1; j < n - 1; ++j) v[j] = 0.5 * (c[j + 1] - c[j - 1]);
        return v;
    }
    static std::vector<double> linspace(int cells) {
        std::vector<double> c(cells + 1);
        for (int j = 0; j <= cells; ++j) c[j] = double(j) / cells;
        c.back() = 1.0;
        return c;
    }
    static std::vector<double> clustered(int cells, double s) {
        if (s == 0.0) return linspace(cells);
        std::vector<double> c(cells + 1);
        for (int j = 0; j <= cells; ++j) {
            double xi = 2.0 * j / cells - 1.0;
            c[j] = 0.5 * (1.0 + std::tanh(s * xi) / std::tanh(s));
        }
        c.front() = 0.0;
        c.back() = 1.0;
        return c;
    }
};

// ---- inner products and norms ----

template <class Grid>
double inner_product(const Grid& g, const Field& a, const Field& b) {
    if (!a.same_shape(b) || a.nodes() != g.nodes()) throw std::invalid_argument("inner_product: grid mismatch");
    double s = 0.0;
    for (int c = 0; c < a.ncomp(); ++c) {
        const double* pa = a.comp(c);
        const double* pb = b.comp(c);
        for (std::size_t i = 0; i < a.nodes(); ++i) s += g.weight(i) * pa[i] * pb[i];
    }
    return s;
}

inline double inner_product(const PeriodicGrid& g, const Field& a, const Field& b) {
    if (!a.same_shape(b) || a.nodes() != g.nodes()) throw std::invalid_argument("inner_product: grid mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * g.weight(0);
}

template <class Grid>
double norm(const Grid& g, const Field& a) {
    return std::sqrt(inner_product(g, a, a));
}

template <class Grid>
double kinetic_energy(const Grid& g, const Field& u) {
    return 0.5 * inner_product(g, u, u);
}

// Root of the plain node average of squares (no volume weights).
inline double node_rms(const Field& f) {
    if (f.nodes() == 0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * f[i];
    return std::sqrt(s / double(f.nodes()));
}

// Max over nodes of |num - exact|, Euclidean norm across components.
inline double max_node_error(const Field& num, const Field& exact) {
    if (!num.same_shape(exact)) throw std::invalid_argument("max_node_error: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < num.nodes(); ++i) {
        double s = 0.0;
        for (int c = 0; c < num.ncomp(); ++c) {
            double d = num.at(c, i) - exact.at(c, i);
            s += d * d;
        }
        m = std::max(m, std::sqrt(s));
    }
    return m;
}

// Sample fn(r) -> std::array<double,3> (first ncomp entries used) at every node.
template <class Grid, class Fn>
Field sample(const Grid& g, int ncomp, Fn&& fn) {
    Field f(g.nodes(), ncomp);
    for (std::size_t i = 0; i < g.nodes(); ++i) {
        auto v = fn(g.coords(i));
        for (int c = 0; c < ncomp; ++c) f.at(c, i) = v[c];
    }
    return f;
}

template <class Grid, class Fn>
double max_node_error(const Grid& g, const Field& num, Fn&& exact) {
    return max_node_error(num, sample(g, num.ncomp(), exact));
}

// ---- field spaces ----

inline double weighted_mean(const PeriodicGrid& g, const Field& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i];
    (void)g;
    return s / double(f.size());
}

inline void project_Q(const PeriodicGrid& g, Field& f) {
    double m = weighted_mean(g, f);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= m;
}

// [f, 1] with the cell volumes; total volume is 1.
inline double weighted_mean(const TensorGrid& g, const Field& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes(); ++i) s += g.weight(i) * f[i];
    return s;
}

// Orthogonal projection onto Q_h: zero the corners, then remove the weighted
// mean from the remaining nodes so that [f,1] = 0 holds exactly.
inline void project_Q(const TensorGrid& g, Field& f) {
    double s = 0.0, w = 0.0;
    for (std::size_t i = 0; i < g.nodes(); ++i) {
        if (g.is_corner(i)) {
            f[i] = 0.0;
            continue;
        }
        s += g.weight(i) * f[i];
        w += g.weight(i);
    }
    const double m = s / w;
    for (std::size_t i = 0; i < g.nodes(); ++i)
        if (!g.is_corner(i)) f[i] -= m;
}

inline void project_V(const PeriodicGrid&, Field&) {}

inline void project_V(const TensorGrid& g, Field& u) {
    for (std::size_t i = 0; i < g.nodes(); ++i)
        if (g.is_boundary(i))
            for (int c = 0; c < u.ncomp(); ++c) u.at(c, i) = 0.0;
}

}  // namespace srk
