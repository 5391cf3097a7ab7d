#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace srk {

using Matrix = std::vector<std::vector<double>>;

enum class MethodClass { A, CK, ARS };

inline const char* to_string(MethodClass c) {
    switch (c) {
        case MethodClass::A: return "A";
        case MethodClass::CK: return "CK";
        case MethodClass::ARS: return "ARS";
    }
    return "?";
}

// Implicit (A, b) and explicit (Ah, bh) tableaux of one IMEX RK method.
struct DoubleButcher {
    std::string name;
    int form = 1;   // default SRK formulation, 1 or 2
    int order = 1;  // declared order
    int s = 0;
    Matrix A, Ah;
    std::vector<double> b, bh;

    double a_ss() const { return A[s - 1][s - 1]; }
    std::vector<double> c() const {
        std::vector<double> r(s, 0.0);
        for (int j = 0; j < s; ++j)
            for (int k = 0; k <= j; ++k) r[j] += A[j][k];
        return r;
    }
    std::vector<double> chat() const {
        std::vector<double> r(s, 0.0);
        for (int j = 0; j < s; ++j)
            for (int k = 0; k < j; ++k) r[j] += Ah[j][k];
        return r;
    }
    bool b_equals_bhat(double tol = 1e-12) const {
        for (int k = 0; k < s; ++k)
            if (std::abs(b[k] - bh[k]) > tol) return false;
        return true;
    }
    bool stiffly_accurate(double tol = 1e-14) const {
        for (int k = 0; k < s; ++k)
            if (std::abs(A[s - 1][k] - b[k]) > tol) return false;
        return true;
    }
};

// Throws on malformed shapes or when the method is not stiffly accurate
// SDIRK / ESDIRK with a strictly lower triangular explicit part.
inline void validate(const DoubleButcher& t) {
    const int s = t.s;
    auto fail = [&](const std::string& why) { throw std::invalid_argument(t.name + ": " + why); };
    if (s < 1) fail("no stages");
    if (int(t.A.size()) != s || int(t.Ah.size()) != s || int(t.b.size()) != s || int(t.bh.size()) != s)
        fail("dimension mismatch");
    for (int j = 0; j < s; ++j) {
        if (int(t.A[j].size()) != s || int(t.Ah[j].size()) != s) fail("dimension mismatch");
        for (int k = j; k < s; ++k)
            if (t.Ah[j][k] != 0.0) fail("explicit tableau not strictly lower triangular");
        for (int k = j + 1; k < s; ++k)
            if (t.A[j][k] != 0.0) fail("implicit tableau not lower triangular");
    }
    if (!t.stiffly_accurate()) fail("not stiffly accurate");
    const double g = t.a_ss();
    if (g == 0.0) fail("a_ss = 0");
    const int first = t.A[0][0] == 0.0 ? 1 : 0;
    if (first == 1) {
        for (int k = 0; k < s; ++k)
            if (t.A[0][k] != 0.0) fail("first implicit row must vanish for ESDIRK");
    }
    for (int j = first; j < s; ++j)
        if (std::abs(t.A[j][j] - g) > 1e-14) fail("diagonal not constant (SDIRK/ESDIRK required)");
    if (t.form != 1 && t.form != 2) fail("form must be 1 or 2");
}

inline MethodClass classify(const DoubleButcher& t) {
    if (t.A[0][0] != 0.0) return MethodClass::A;
    for (int k = 0; k < t.s; ++k)
        if (t.A[0][k] != 0.0) throw std::invalid_argument(t.name + ": degenerate implicit tableau");
    for (int j = 1; j < t.s; ++j)
        if (t.A[j][j] == 0.0) throw std::invalid_argument(t.name + ": degenerate implicit tableau");
    for (int j = 0; j < t.s; ++j)
        if (t.A[j][0] != 0.0) return MethodClass::CK;
    return MethodClass::ARS;
}

// Pressure solver calls per step.
inline int sigma_p(const DoubleButcher& t) { return classify(t) == MethodClass::A ? t.s : t.s - 1; }

// d_1 = 1, d_j = -a_ss^{-1} sum_{k<j} a_jk d_k; spans the kernel of A.
inline std::vector<double> kernel_vector(const DoubleButcher& t) {
    const double g = t.a_ss();
    if (g == 0.0) throw std::invalid_argument(t.name + ": a_ss = 0");
    std::vector<double> d(t.s, 0.0);
    d[0] = 1.0;
    for (int j = 1; j < t.s; ++j) {
        double s = 0.0;
        for (int k = 0; k < j; ++k) s += t.A[j][k] * d[k];
        d[j] = -s / g;
    }
    return d;
}

// R(z) = 1 + z bh^T (I - z Ah)^{-1} 1 by forward substitution.
inline std::complex<double> explicit_stability_R(const DoubleButcher& t, std::complex<double> z) {
    std::vector<std::complex<double>> y(t.s);
    std::complex<double> r = 1.0;
    for (int j = 0; j < t.s; ++j) {
        std::complex<double> acc = 1.0;
        for (int k = 0; k < j; ++k) acc += z * t.Ah[j][k] * y[k];
        y[j] = acc;
        r += z * t.bh[j] * y[j];
    }
    return r;
}

// Largest lambda with |R(i mu)| <= 1 + 1e-12 on [0, lambda], rounded down to 0.01.
inline double cfl_max_exact(const DoubleButcher& t, double mu_max = 20.0) {
    auto ok = [&](double mu) { return std::abs(explicit_stability_R(t, {0.0, mu})) <= 1.0 + 1e-12; };
    const double step = 1e-3;
    double good = 0.0;
    int i = 1;
    for (; i * step <= mu_max; ++i) {
        if (!ok(i * step)) break;
        good = i * step;
    }
    if (i * step > mu_max) return mu_max;
    double lo = good, hi = i * step;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

inline double cfl_max(const DoubleButcher& t) {
    return std::floor(cfl_max_exact(t) * 100.0 + 1e-9) / 100.0;
}

struct OrderReport {
    // residuals of sum b = 1, b.c = 1/2, b.c^2 = 1/3, b.Ac = 1/6 for (A,b) and (Ah,bh)
    double imp[4] = {0, 0, 0, 0};
    double exp[4] = {0, 0, 0, 0};
    bool b_equals_bhat = false;
    int checked_order = 1;
    bool passed(double tol = 1e-12) const {
        int n = checked_order >= 3 ? 4 : checked_order >= 2 ? 2 : 1;
        for (int i = 0; i < n; ++i)
            if (std::abs(imp[i]) > tol || std::abs(exp[i]) > tol) return false;
        return true;
    }
};

inline void order_residuals(const Matrix& A, const std::vector<double>& b, int s, double out[4]) {
    std::vector<double> c(s, 0.0);
    for (int j = 0; j < s; ++j)
        for (int k = 0; k < s; ++k) c[j] += A[j][k];
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (int j = 0; j < s; ++j) {
        s1 += b[j];
        s2 += b[j] * c[j];
        s3 += b[j] * c[j] * c[j];
        double ac = 0.0;
        for (int k = 0; k < s; ++k) ac += A[j][k] * c[k];
        s4 += b[j] * ac;
    }
    out[0] = s1 - 1.0;
    out[1] = s2 - 0.5;
    out[2] = s3 - 1.0 / 3.0;
    out[3] = s4 - 1.0 / 6.0;
}

inline OrderReport order_conditions(const DoubleButcher& t) {
    OrderReport r;
    order_residuals(t.A, t.b, t.s, r.imp);
    order_residuals(t.Ah, t.bh, t.s, r.exp);
    r.b_equals_bhat = t.b_equals_bhat();
    r.checked_order = std::min(t.order, 3);
    return r;
}

// ---- plain-text format ----
// name <string>
// form <1|2>
// order <int>
// s <int>
// A        followed by s rows of s numbers
// b        followed by one row of s numbers
// Ahat     s rows
// bhat     one row
// Lines starting with '#' are ignored.

inline void write_tableau(std::ostream& os, const DoubleButcher& t) {
    os << "name " << t.name << "\nform " << t.form << "\norder " << t.order << "\ns " << t.s << "\n";
    os << std::setprecision(17);
    auto row = [&](const std::vector<double>& r) {
        for (int k = 0; k < t.s; ++k) os << (k ? " " : "") << r[k];
        os << "\n";
    };
    os << "A\n";
    for (const auto& r : t.A) row(r);
    os << "b\n";
    row(t.b);
    os << "Ahat\n";
    for (const auto& r : t.Ah) row(r);
    os << "bhat\n";
    row(t.bh);
}

inline DoubleButcher read_tableau(std::istream& is) {
    DoubleButcher t;
    std::vector<std::string> lines;
    for (std::string line; std::getline(is, line);) {
        auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#') continue;
        lines.push_back(line.substr(p));
    }
    std::size_t i = 0;
    auto next = [&]() -> const std::string& {
        if (i >= lines.size()) throw std::runtime_error("tableau file: unexpected end");
        return lines[i++];
    };
    auto key = [&](const std::string& k) {
        std::istringstream ss(next());
        std::string w, rest;
        ss >> w;
        if (w != k) throw std::runtime_error("tableau file: expected '" + k + "', got '" + w + "'");
        std::getline(ss >> std::ws, rest);
        return rest;
    };
    auto nums = [&](int n) {
        std::istringstream ss(next());
        std::vector<double> r(n);
        for (int k = 0; k < n; ++k)
            if (!(ss >> r[k])) throw std::runtime_error("tableau file: bad row");
        return r;
    };
    t.name = key("name");
    t.form = std::stoi(key("form"));
    t.order = std::stoi(key("order"));
    t.s = std::stoi(key("s"));
    key("A");
    for (int j = 0; j < t.s; ++j) t.A.push_back(nums(t.s));
    key("b");
    t.b = nums(t.s);
    key("Ahat");
    for (int j = 0; j < t.s; ++j) t.Ah.push_back(nums(t.s));
    key("bhat");
    t.bh = nums(t.s);
    validate(t);
    return t;
}

inline DoubleButcher load_tableau(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_tableau(f);
}

// File-system friendly name: ARK4(3)6L[2]SA -> ARK4_3_6L_2_SA
inline std::string file_stem(const std::string& name) {
    std::string r;
    for (char ch : name) {
        if (std::isalnum(static_cast<unsigned char>(ch))) r += ch;
        else if (!r.empty() && r.back() != '_') r += '_';
    }
    while (!r.empty() && r.back() == '_') r.pop_back();
    return r;
}

}  // namespace srk
