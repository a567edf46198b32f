// A scenario is one chart-level verification problem: metrics g on M and h
// on N, a submersion candidate pi : M -> N, optional spinor data, and the
// numerical configuration.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spingeo/fd.hpp"
#include "spingeo/field.hpp"

namespace spingeo {

struct Tolerances {
    double conformality = 1e-6;
    double condition = 1e-4;   // fundamental equation / integrability / alpha conditions
    double harmonicity = 1e-6; // witness spinors
};

struct Scenario {
    std::string name;
    int m = 0, n = 0;
    Box box_M, box_N;
    Field g;   // m x m matrix field on M
    Field h;   // n x n matrix field on N
    Field pi;  // n-vector field on M
    std::optional<Field> psi;    // spinor field on N, dim 2^{n/2}
    std::optional<Field> alpha;  // vertical spinor field on M, dim 2^{floor((m-n)/2)}
    FDConfig fd;
    Tolerances tol;
    int grid_per_axis = 3;

    int k() const { return m - n; }
    int base_spinor_dim() const { return 1 << (n / 2); }
    int fibre_spinor_dim() const { return 1 << (k() / 2); }
    int total_spinor_dim() const { return 1 << ((m) / 2); }

    // evaluators with domain checks; stencil excursions get 25% slack per side
    std::function<MatR(const VecR&)> metric_M() const {
        return [this](const VecR& p) {
            if (!box_M.contains(p, 0.25))
                throw DomainError("point " + point_str(p) + " outside chart domain of M");
            return g.eval_matrix_real(p);
        };
    }
    std::function<MatR(const VecR&)> metric_N() const {
        return [this](const VecR& q) {
            if (!box_N.contains(q, 0.25))
                throw DomainError("point " + point_str(q) + " outside chart domain of N");
            return h.eval_matrix_real(q);
        };
    }
    std::function<VecR(const VecR&)> map() const {
        return [this](const VecR& p) {
            if (!box_M.contains(p, 0.25))
                throw DomainError("point " + point_str(p) + " outside chart domain of M");
            return pi.eval_vector_real(p);
        };
    }

    void validate_shapes() const {
        if (n < 2 || n % 2 != 0) throw DimensionError("scenario: target dimension must be even and >= 2");
        if (m <= n) throw DimensionError("scenario: source dimension must exceed target dimension");
        if (m > 9 || n > 9) throw DimensionError("scenario: chart dimensions limited to 9");
        if (box_M.dim() != m || box_N.dim() != n) throw DimensionError("scenario: domain box dimensions");
        if (g.rows != m || g.cols != m) throw DimensionError("scenario: g must be m x m");
        if (h.rows != n || h.cols != n) throw DimensionError("scenario: h must be n x n");
        if (pi.rows != n) throw DimensionError("scenario: pi must have n components");
        if (psi && static_cast<int>(psi->comps.size()) != base_spinor_dim())
            throw DimensionError("scenario: psi has wrong spinor dimension");
        if (alpha && static_cast<int>(alpha->comps.size()) != fibre_spinor_dim())
            throw DimensionError("scenario: alpha has wrong spinor dimension");
    }
};

// Uniform sample grid in the interior of box_M. A 20% margin per side keeps
// every nested finite-difference stencil far from the boundary; the margin
// must cover at least 2 steps (order 2) or 3 steps (order 4).
inline std::vector<VecR> sample_grid(const Scenario& s, int per_axis = 0) {
    if (per_axis <= 0) per_axis = s.grid_per_axis;
    const double margin = 0.2;
    const double need = (s.fd.order == 2 ? 2.0 : 3.0) * s.fd.h;
    for (int a = 0; a < s.m; ++a)
        if (margin * s.box_M.side(a) < need)
            throw DomainError("sample grid margin is smaller than the finite-difference stencil");
    std::vector<VecR> pts;
    const int total = [&] {
        int t = 1;
        for (int a = 0; a < s.m; ++a) t *= per_axis;
        return t;
    }();
    pts.reserve(total);
    for (int t = 0; t < total; ++t) {
        VecR p(s.m);
        int rem = t;
        for (int a = 0; a < s.m; ++a) {
            const int ia = rem % per_axis;
            rem /= per_axis;
            const double lo = s.box_M.lo[a] + margin * s.box_M.side(a);
            const double hi = s.box_M.hi[a] - margin * s.box_M.side(a);
            p[a] = (per_axis == 1) ? 0.5 * (lo + hi) : lo + (hi - lo) * ia / (per_axis - 1);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

// metric sanity at grid points
inline void validate_metrics(const Scenario& s) {
    auto gM = s.metric_M();
    auto hN = s.metric_N();
    auto piM = s.map();
    for (const auto& p : sample_grid(s)) {
        if (!is_spd(gM(p))) throw Error("scenario: g is not symmetric positive definite at a sample point");
        if (!is_spd(hN(piM(p)))) throw Error("scenario: h is not symmetric positive definite at a sample point");
    }
}

}  // namespace spingeo
