#pragma once

#include <boost/rational.hpp>
#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "srk/field.hpp"
#include "srk/grid.hpp"

namespace srk {

// Central stencil weights of half-width m. a[l], b[l] for l = 0..m; the
// negative side follows from a_{-l} = -a_l, b_{-l} = b_l.
struct StencilCoeffs {
    int m = 1;
    std::vector<double> a, b;

    // Full arrays indexed -m..m (position l + m).
    std::vector<double> a_full() const {
        std::vector<double> r(2 * m + 1, 0.0);
        for (int l = 1; l <= m; ++l) {
            r[m + l] = a[l];
            r[m - l] = -a[l];
        }
        return r;
    }
    std::vector<double> b_full() const {
        std::vector<double> r(2 * m + 1, 0.0);
        r[m] = b[0];
        for (int l = 1; l <= m; ++l) r[m + l] = r[m - l] = b[l];
        return r;
    }
};

inline StencilCoeffs fd_coefficients(int m) {
    if (m < 1 || m > 4) throw std::invalid_argument("fd_coefficients: m must be in 1..4");
    auto fact = [](int k) {
        std::int64_t r = 1;
        for (int i = 2; i <= k; ++i) r *= i;
        return r;
    };
    StencilCoeffs s;
    s.m = m;
    s.a.assign(m + 1, 0.0);
    s.b.assign(m + 1, 0.0);
    const std::int64_t mf2 = fact(m) * fact(m);
    double bsum = 0.0;
    for (int k = 1; k <= m; ++k) {
        // (-1)^{k+1} (m!)^2 / (k (m+k)! (m-k)!), numerator and denominator kept integral
        std::int64_t den = std::int64_t(k) * fact(m + k) * fact(m - k);
        double ak = double(mf2) / double(den);
        if (k % 2 == 0) ak = -ak;
        s.a[k] = ak;
        // b_k = 2 a_k / k
        double bk = 2.0 * double(mf2) / (double(den) * k);
        if (k % 2 == 0) bk = -bk;
        s.b[k] = bk;
        bsum += bk;
    }
    s.b[0] = -2.0 * bsum;
    return s;
}

namespace detail {

using Rational = boost::rational<std::int64_t>;
using RPoly = std::vector<Rational>;  // coefficients of s^0, s^1, ...

inline Rational stencil_a(int m, int k) {
    auto fact = [](int n) {
        std::int64_t r = 1;
        for (int i = 2; i <= n; ++i) r *= i;
        return r;
    };
    Rational r(fact(m) * fact(m), std::int64_t(k) * fact(m + k) * fact(m - k));
    return k % 2 == 0 ? -r : r;
}

inline RPoly padd(RPoly p, const RPoly& q) {
    if (q.size() > p.size()) p.resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) p[i] += q[i];
    return p;
}

inline RPoly pmul(const RPoly& p, const RPoly& q) {
    RPoly r(p.size() + q.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

inline RPoly pscale(RPoly p, Rational c) {
    for (auto& v : p) v *= c;
    return p;
}

// Chebyshev T_l(x) and U_l(x) at x = 1 - 2s, as polynomials in s.
inline std::vector<RPoly> chebyshev(int n, bool second_kind) {
    const RPoly x = {Rational(1), Rational(-2)};
    std::vector<RPoly> t = {{Rational(1)}, second_kind ? pscale(x, Rational(2)) : x};
    for (int l = 2; l <= n; ++l)
        t.push_back(padd(pscale(pmul(x, t[l - 1]), Rational(2)), pscale(t[l - 2], Rational(-1))));
    return t;
}

}  // namespace detail

// a(phi) = 2 sum a_l sin(l phi), b(phi) = b_0 + 2 sum b_l cos(l phi)
struct SymbolPair {
    StencilCoeffs c;
    SymbolPair() = default;
    SymbolPair(StencilCoeffs cc) : c(std::move(cc)) {}
    double a(double phi) const {
        double s = 0.0;
        for (int l = 1; l <= c.m; ++l) s += c.a[l] * std::sin(l * phi);
        return 2.0 * s;
    }
    // written as -4 sum b_l sin^2(l phi / 2) to avoid cancellation near 0
    double b(double phi) const {
        double s = 0.0;
        for (int l = 1; l <= c.m; ++l) {
            const double v = std::sin(0.5 * l * phi);
            s += c.b[l] * v * v;
        }
        return -4.0 * s;
    }
    // b(phi) + a(phi)^2. In s = sin^2(phi/2) this is a polynomial whose low
    // coefficients vanish exactly; they are cancelled in rational arithmetic
    // so the small-phi values keep full relative accuracy.
    double gap(double phi) const {
        if (gap_low_ < 0) build_gap();
        const double sv = std::pow(std::sin(0.5 * phi), 2);
        double r = 0.0;
        for (std::size_t i = gap_.size(); i-- > 0;) r = r * sv + gap_[i];
        return r * std::pow(sv, gap_low_);
    }
    // lowest nonzero power of s in b + a^2
    int gap_order() const {
        if (gap_low_ < 0) build_gap();
        return gap_low_;
    }

private:
    mutable int gap_low_ = -1;
    mutable std::vector<double> gap_;

    void build_gap() const {
        using namespace detail;
        const int m = c.m;
        auto T = chebyshev(m, false), U = chebyshev(m, true);
        RPoly bpoly = {Rational(0)}, asum = {Rational(0)};
        for (int l = 1; l <= m; ++l) {
            const Rational al = stencil_a(m, l), bl = Rational(2) * al / Rational(l);
            // 2 b_l (T_l - 1)
            bpoly = padd(bpoly, pscale(padd(T[l], {Rational(-1)}), Rational(2) * bl));
            asum = padd(asum, pscale(U[l - 1], al));
        }
        // a^2 = 4 sin^2(phi) asum^2 = 16 s (1 - s) asum^2
        RPoly a2 = pscale(pmul(pmul({Rational(0), Rational(1), Rational(-1)}, asum), asum), Rational(16));
        RPoly g = padd(bpoly, a2);
        int low = 0;
        while (low < int(g.size()) && g[low].numerator() == 0) ++low;
        if (low == int(g.size())) throw std::logic_error("SymbolPair: b + a^2 vanishes identically");
        gap_low_ = low;
        gap_.clear();
        for (std::size_t i = low; i < g.size(); ++i) gap_.push_back(boost::rational_cast<double>(g[i]));
    }
};

inline SymbolPair symbols(int m) { return SymbolPair{fd_coefficients(m)}; }

// beta = 1 - sum a(theta)^2 / (-sum b(theta)); the all-zero mode is rejected.
inline double beta_of_mode(int m, const std::vector<double>& theta) {
    auto sp = symbols(m);
    double num = 0.0, den = 0.0;
    for (double t : theta) {
        double av = sp.a(t);
        num += av * av;
        den -= sp.b(t);
    }
    if (!(den > 0.0)) throw std::invalid_argument("beta_of_mode: zero mode");
    return 1.0 - num / den;
}

namespace detail {

// Real-to-complex transforms with eigenvalue tables for L and for the
// one-dimensional second-difference symbol.
class FourierPlan {
public:
    FourierPlan(const PeriodicGrid& g, const StencilCoeffs& c) : g_(g) {
        const int n = g.n;
        nreal_ = g.nodes();
        nhalf_ = n / 2 + 1;
        ncplx_ = (g.dim == 2 ? std::size_t(n) : std::size_t(n) * n) * nhalf_;
        double* in = fftw_alloc_real(nreal_);
        fftw_complex* out = fftw_alloc_complex(ncplx_);
        if (g.dim == 2) {
            fwd_ = fftw_plan_dft_r2c_2d(n, n, in, out, FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_c2r_2d(n, n, out, in, FFTW_ESTIMATE);
        } else {
            fwd_ = fftw_plan_dft_r2c_3d(n, n, n, in, out, FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_c2r_3d(n, n, n, out, in, FFTW_ESTIMATE);
        }
        fftw_free(in);
        fftw_free(out);

        SymbolPair sp{c};
        std::vector<double> b1(n);
        for (int k = 0; k < n; ++k) b1[k] = sp.b(2.0 * std::numbers::pi * k / n) / (g.h * g.h);
        lam_.resize(ncplx_);
        // complex layout: [k][j][i] with i in 0..n/2 fastest
        for (std::size_t idx = 0; idx < ncplx_; ++idx) {
            std::size_t i = idx % nhalf_;
            std::size_t rest = idx / nhalf_;
            std::size_t j = rest % n;
            std::size_t k = rest / n;
            double v = b1[i] + b1[j];
            if (g.dim == 3) v += b1[k];
            lam_[idx] = v;
        }
    }
    ~FourierPlan() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    FourierPlan(const FourierPlan&) = delete;
    FourierPlan& operator=(const FourierPlan&) = delete;

    // out = F^{-1}[ mult(lambda) * F[in] ]; zero mode multiplier given separately.
    template <class Mult>
    void apply(const double* in, double* out, Mult&& mult) const {
        double* rbuf = fftw_alloc_real(nreal_);
        fftw_complex* cbuf = fftw_alloc_complex(ncplx_);
        std::copy(in, in + nreal_, rbuf);
        fftw_execute_dft_r2c(fwd_, rbuf, cbuf);
        const double scale = 1.0 / double(nreal_);
        for (std::size_t i = 0; i < ncplx_; ++i) {
            double f = mult(i, lam_[i]) * scale;
            cbuf[i][0] *= f;
            cbuf[i][1] *= f;
        }
        fftw_execute_dft_c2r(bwd_, cbuf, rbuf);
        std::copy(rbuf, rbuf + nreal_, out);
        fftw_free(rbuf);
        fftw_free(cbuf);
    }
    const std::vector<double>& lambda() const { return lam_; }

private:
    PeriodicGrid g_;
    std::size_t nreal_ = 0, nhalf_ = 0, ncplx_ = 0;
    fftw_plan fwd_ = nullptr, bwd_ = nullptr;
    std::vector<double> lam_;
};

}  // namespace detail

// G, D, L of order 2m on a periodic grid, with Fourier-diagonal solvers.
class PeriodicOps {
public:
    using GridType = PeriodicGrid;

    PeriodicOps(const PeriodicGrid& g, int m)
        : g_(g), c_(fd_coefficients(m)), plan_(std::make_shared<detail::FourierPlan>(g, c_)) {
        const int n = g.n;
        for (int l = 1; l <= c_.m; ++l) {
            std::vector<int> p(n), q(n);
            for (int i = 0; i < n; ++i) {
                p[i] = g.wrap(i + l);
                q[i] = g.wrap(i - l);
            }
            plus_.push_back(std::move(p));
            minus_.push_back(std::move(q));
        }
    }

    const PeriodicGrid& grid() const { return g_; }
    const StencilCoeffs& coeffs() const { return c_; }
    int m() const { return c_.m; }

    // out = d/dx_axis in, order 2m
    void deriv(const double* in, double* out, int axis) const {
        const double ih = 1.0 / g_.h;
        sweep(in, out, axis, [&](const double* f, std::size_t i, const std::size_t* pl, const std::size_t* mi) {
            double s = 0.0;
            for (int l = 0; l < c_.m; ++l) s += c_.a[l + 1] * (f[pl[l]] - f[mi[l]]);
            (void)i;
            return s * ih;
        });
    }
    // out = d2/dx_axis^2 in, order 2m
    void second(const double* in, double* out, int axis) const {
        const double ih2 = 1.0 / (g_.h * g_.h);
        sweep(in, out, axis, [&](const double* f, std::size_t i, const std::size_t* pl, const std::size_t* mi) {
            double s = c_.b[0] * f[i];
            for (int l = 0; l < c_.m; ++l) s += c_.b[l + 1] * (f[pl[l]] + f[mi[l]]);
            return s * ih2;
        });
    }

    Field G(const Field& f) const {
        Field r(g_.nodes(), g_.dim);
        for (int d = 0; d < g_.dim; ++d) deriv(f.comp(0), r.comp(d), d);
        return r;
    }
    Field D(const Field& u) const {
        Field r(g_.nodes(), 1);
        std::vector<double> tmp(g_.nodes());
        for (int d = 0; d < g_.dim; ++d) {
            deriv(u.comp(d), tmp.data(), d);
            double* o = r.comp(0);
            for (std::size_t i = 0; i < tmp.size(); ++i) o[i] += tmp[i];
        }
        return r;
    }
    // Componentwise Laplacian, scalar or vector input.
    Field L(const Field& f) const {
        Field r(f.nodes(), f.ncomp());
        std::vector<double> tmp(g_.nodes());
        for (int c = 0; c < f.ncomp(); ++c)
            for (int d = 0; d < g_.dim; ++d) {
                second(f.comp(c), tmp.data(), d);
                double* o = r.comp(c);
                for (std::size_t i = 0; i < tmp.size(); ++i) o[i] += tmp[i];
            }
        return r;
    }
    Field S(const Field& f) const { return D(G(f)) - L(f); }

    // L p = rhs with zero-mean rhs; the zero mode of p is set to 0.
    Field poisson_solve(const Field& rhs) const {
        double mean = weighted_mean(g_, rhs);
        if (std::abs(mean) > 1e-9 * std::max(1.0, rhs.max_abs()))
            throw std::runtime_error("poisson_solve: right-hand side has nonzero mean");
        Field p(rhs.nodes(), 1);
        plan_->apply(rhs.comp(0), p.comp(0), [](std::size_t i, double lam) { return i == 0 ? 0.0 : 1.0 / lam; });
        return p;
    }
    // (I - gnu * L) u = rhs, componentwise; gnu >= 0.
    Field helmholtz_solve(const Field& rhs, double gnu) const {
        if (gnu < 0.0) throw std::invalid_argument("helmholtz_solve: negative coefficient");
        if (gnu == 0.0) return rhs;
        Field u(rhs.nodes(), rhs.ncomp());
        for (int c = 0; c < rhs.ncomp(); ++c)
            plan_->apply(rhs.comp(c), u.comp(c), [gnu](std::size_t, double lam) { return 1.0 / (1.0 - gnu * lam); });
        return u;
    }
    Field solve_L(const Field& rhs) const { return poisson_solve(rhs); }
    void to_Q(Field& f) const { project_Q(g_, f); }

private:
    template <class K>
    void sweep(const double* in, double* out, int axis, K&& kern) const {
        const int n = g_.n;
        const int nk = g_.dim == 3 ? n : 1;
        const std::size_t st = g_.stride(axis);
        std::size_t pl[4], mi[4];
        for (int k = 0; k < nk; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const int pos[3] = {i, j, k};
                    const std::size_t idx = std::size_t(i) + std::size_t(n) * (std::size_t(j) + std::size_t(n) * k);
                    const std::size_t base = idx - std::size_t(pos[axis]) * st;
                    for (int l = 0; l < c_.m; ++l) {
                        pl[l] = base + std::size_t(plus_[l][pos[axis]]) * st;
                        mi[l] = base + std::size_t(minus_[l][pos[axis]]) * st;
                    }
                    out[idx] = kern(in, idx, pl, mi);
                }
    }

    PeriodicGrid g_;
    StencilCoeffs c_;
    std::shared_ptr<detail::FourierPlan> plan_;
    std::vector<std::vector<int>> plus_, minus_;
};

}  // namespace srk
