// Expression-backed fields on chart domains: scalars, vectors, matrices and
// spinors. Metrics and maps are real-typed; spinor components may be complex.
#pragma once

#include <string>
#include <vector>

#include "spingeo/expr.hpp"
#include "spingeo/linalg.hpp"

namespace spingeo {

// imaginary parts above this in a real-typed context are an error
inline constexpr double kRealLeakTol = 1e-12;

struct Box {
    VecR lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }

    double side(int axis) const { return hi[axis] - lo[axis]; }

    double diameter() const {
        double s = 0.0;
        for (int a = 0; a < dim(); ++a) s += side(a) * side(a);
        return std::sqrt(s);
    }

    // slack > 0 admits finite-difference stencil excursions past the box
    bool contains(const VecR& p, double slack_fraction = 0.0) const {
        if (static_cast<int>(p.size()) != dim()) return false;
        for (int a = 0; a < dim(); ++a) {
            const double s = slack_fraction * side(a);
            if (p[a] < lo[a] - s || p[a] > hi[a] + s) return false;
        }
        return true;
    }

    VecR center() const {
        VecR c(lo.size());
        for (size_t a = 0; a < lo.size(); ++a) c[a] = 0.5 * (lo[a] + hi[a]);
        return c;
    }
};

// point formatting for error messages
inline std::string point_str(const VecR& p) {
    std::string s = "(";
    char buf[32];
    for (size_t a = 0; a < p.size(); ++a) {
        std::snprintf(buf, sizeof buf, "%.6g", p[a]);
        s += buf;
        if (a + 1 < p.size()) s += ", ";
    }
    return s + ")";
}

enum class FieldKind { Scalar, Vector, Matrix, Spinor };

struct Field {
    FieldKind kind = FieldKind::Scalar;
    int rows = 1, cols = 1;  // vector/spinor: rows = length, cols = 1
    int domain_dim = 0;
    std::vector<Expr> comps;  // row-major for matrices

    static Field scalar(Expr e, int domain_dim) {
        Field f;
        f.kind = FieldKind::Scalar;
        f.domain_dim = domain_dim;
        f.comps = {std::move(e)};
        f.check_bind();
        return f;
    }

    static Field vector(std::vector<Expr> es, int domain_dim) {
        Field f;
        f.kind = FieldKind::Vector;
        f.rows = static_cast<int>(es.size());
        f.domain_dim = domain_dim;
        f.comps = std::move(es);
        f.check_bind();
        return f;
    }

    static Field matrix(std::vector<Expr> es, int rows, int cols, int domain_dim) {
        if (static_cast<int>(es.size()) != rows * cols) throw DimensionError("matrix field: component count");
        Field f;
        f.kind = FieldKind::Matrix;
        f.rows = rows;
        f.cols = cols;
        f.domain_dim = domain_dim;
        f.comps = std::move(es);
        f.check_bind();
        return f;
    }

    static Field spinor(std::vector<Expr> es, int domain_dim) {
        Field f;
        f.kind = FieldKind::Spinor;
        f.rows = static_cast<int>(es.size());
        f.domain_dim = domain_dim;
        f.comps = std::move(es);
        f.check_bind();
        return f;
    }

    static Field identity_matrix(int nn, int domain_dim) {
        std::vector<Expr> es;
        es.reserve(nn * nn);
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j) es.push_back(parse_expr(i == j ? "1" : "0"));
        return matrix(std::move(es), nn, nn, domain_dim);
    }

    void check_bind() const {
        for (const auto& e : comps)
            if (max_var_index(e) > domain_dim)
                throw DomainError("field uses coordinate beyond its chart dimension");
    }

    cd eval_scalar(const VecR& p) const {
        if (kind != FieldKind::Scalar) throw DimensionError("field is not scalar");
        return eval(comps[0], p);
    }

    VecC eval_spinor(const VecR& p) const {
        VecC v(comps.size());
        for (size_t i = 0; i < comps.size(); ++i) v[i] = eval(comps[i], p);
        return v;
    }

    double eval_real(const Expr& e, const VecR& p) const {
        const cd v = eval(e, p);
        if (std::abs(v.imag()) > kRealLeakTol * std::max(1.0, std::abs(v.real())))
            throw DomainError("complex value in real-typed field");
        return v.real();
    }

    VecR eval_vector_real(const VecR& p) const {
        if (kind != FieldKind::Vector) throw DimensionError("field is not a vector");
        VecR v(comps.size());
        for (size_t i = 0; i < comps.size(); ++i) v[i] = eval_real(comps[i], p);
        return v;
    }

    MatR eval_matrix_real(const VecR& p) const {
        if (kind != FieldKind::Matrix) throw DimensionError("field is not a matrix");
        MatR m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = eval_real(comps[i * cols + j], p);
        return m;
    }
};

// helpers for building fields from expression strings
inline Field make_vector_field(const std::vector<std::string>& exprs, int domain_dim) {
    std::vector<Expr> es;
    es.reserve(exprs.size());
    for (const auto& s : exprs) es.push_back(parse_expr(s));
    return Field::vector(std::move(es), domain_dim);
}

inline Field make_spinor_field(const std::vector<std::string>& exprs, int domain_dim) {
    std::vector<Expr> es;
    es.reserve(exprs.size());
    for (const auto& s : exprs) es.push_back(parse_expr(s));
    return Field::spinor(std::move(es), domain_dim);
}

inline Field make_matrix_field(const std::vector<std::string>& exprs, int nn, int domain_dim) {
    std::vector<Expr> es;
    es.reserve(exprs.size());
    for (const auto& s : exprs) es.push_back(parse_expr(s));
    return Field::matrix(std::move(es), nn, nn, domain_dim);
}

}  // namespace spingeo
