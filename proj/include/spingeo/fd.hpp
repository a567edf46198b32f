// Central finite differences on callables point -> value, with optional
// one-step Richardson extrapolation. Works for any value type supporting
// +, -, scalar multiplication (double, cd, VecR, VecC).
#pragma once

#include <functional>

#include "spingeo/field.hpp"
#include "spingeo/linalg.hpp"

namespace spingeo {

struct FDConfig {
    double h = 1e-4;
    int order = 4;  // 2 or 4
    bool richardson = false;

    void validate() const {
        if (h <= 0.0) throw DomainError("fd: step must be positive");
        if (order != 2 && order != 4) throw DomainError("fd: order must be 2 or 4");
    }

    // number of steps the widest stencil reaches from the base point
    int stencil_reach() const { return order == 2 ? 1 : 2; }
};

namespace detail {

template <class T>
T axpy(double a, const T& x, double b, const T& y) {
    T r = x;
    if constexpr (std::is_arithmetic_v<T>) {
        r = a * x + b * y;
    } else if constexpr (std::is_same_v<T, cd>) {
        r = a * x + b * y;
    } else {
        for (size_t i = 0; i < r.size(); ++i) r[i] = a * x[i] + b * y[i];
    }
    return r;
}

template <class F>
auto central_diff(const F& f, const VecR& p, int dir, double h, int order) {
    VecR q = p;
    if (order == 2) {
        q[dir] = p[dir] + h;
        auto fp = f(q);
        q[dir] = p[dir] - h;
        auto fm = f(q);
        return axpy(1.0 / (2.0 * h), fp, -1.0 / (2.0 * h), fm);
    }
    q[dir] = p[dir] + 2.0 * h;
    auto fp2 = f(q);
    q[dir] = p[dir] + h;
    auto fp1 = f(q);
    q[dir] = p[dir] - h;
    auto fm1 = f(q);
    q[dir] = p[dir] - 2.0 * h;
    auto fm2 = f(q);
    auto inner = axpy(8.0 / (12.0 * h), fp1, -8.0 / (12.0 * h), fm1);
    auto outer = axpy(-1.0 / (12.0 * h), fp2, 1.0 / (12.0 * h), fm2);
    return axpy(1.0, inner, 1.0, outer);
}

}  // namespace detail

// d f / d x_dir at p
template <class F>
auto fd_derivative(const F& f, const VecR& p, int dir, const FDConfig& cfg) {
    cfg.validate();
    auto d1 = detail::central_diff(f, p, dir, cfg.h, cfg.order);
    if (!cfg.richardson) return d1;
    auto d2 = detail::central_diff(f, p, dir, cfg.h / 2.0, cfg.order);
    const double w = (cfg.order == 2) ? 4.0 : 16.0;
    return detail::axpy(w / (w - 1.0), d2, -1.0 / (w - 1.0), d1);
}

// directional derivative along the coordinate-component vector e
template <class F>
auto fd_directional(const F& f, const VecR& p, const VecR& e, const FDConfig& cfg) {
    auto acc = detail::axpy(0.0, f(p), 0.0, f(p));  // zero of the right shape
    for (size_t dir = 0; dir < e.size(); ++dir) {
        if (e[dir] == 0.0) continue;
        auto d = fd_derivative(f, p, static_cast<int>(dir), cfg);
        acc = detail::axpy(1.0, acc, e[dir], d);
    }
    return acc;
}

// Jacobian of a real vector-valued map: J(i,j) = d f_i / d x_j
inline MatR fd_jacobian(const std::function<VecR(const VecR&)>& f, const VecR& p, const FDConfig& cfg) {
    const VecR f0 = f(p);
    MatR J(static_cast<int>(f0.size()), static_cast<int>(p.size()));
    for (int j = 0; j < J.cols; ++j) {
        const VecR dj = fd_derivative(f, p, j, cfg);
        for (int i = 0; i < J.rows; ++i) J(i, j) = dj[i];
    }
    return J;
}

}  // namespace spingeo
