#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace srk {

// Node values stored component-major: value(c, node) = data[c * nodes + node].
// Scalar fields have ncomp == 1.
class Field {
public:
    Field() = default;
    Field(std::size_t nodes, int ncomp, double fill = 0.0)
        : nodes_(nodes), ncomp_(ncomp), data_(nodes * ncomp, fill) {}

    std::size_t nodes() const { return nodes_; }
    int ncomp() const { return ncomp_; }
    std::size_t size() const { return data_.size(); }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }
    double& at(int c, std::size_t n) { return data_[c * nodes_ + n]; }
    double at(int c, std::size_t n) const { return data_[c * nodes_ + n]; }
    double* comp(int c) { return data_.data() + c * nodes_; }
    const double* comp(int c) const { return data_.data() + c * nodes_; }
    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    bool same_shape(const Field& o) const { return nodes_ == o.nodes_ && ncomp_ == o.ncomp_; }

    Field& operator+=(const Field& o) {
        check(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Field& operator-=(const Field& o) {
        check(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Field& operator*=(double s) {
        for (double& v : data_) v *= s;
        return *this;
    }
    // this += s * o
    Field& axpy(double s, const Field& o) {
        check(o);
        if (s == 0.0) return *this;
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
        return *this;
    }
    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }
    bool finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

private:
    void check(const Field& o) const {
        if (!same_shape(o)) throw std::invalid_argument("field shape mismatch");
    }

    std::size_t nodes_ = 0;
    int ncomp_ = 1;
    std::vector<double> data_;
};

inline Field operator+(Field a, const Field& b) { return a += b; }
inline Field operator-(Field a, const Field& b) { return a -= b; }
inline Field operator*(double s, Field a) { return a *= s; }
inline Field operator*(Field a, double s) { return a *= s; }
inline Field operator-(Field a) { return a *= -1.0; }

inline Field zeros_like(const Field& f) { return Field(f.nodes(), f.ncomp()); }

}  // namespace srk
