// Small dense linear algebra over double / complex<double>.
// Matrices here are tiny (frames up to 9x9, spinor spaces up to 8x8), so
// everything is plain row-major storage with O(n^3) algorithms.
#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace spingeo {

using cd = std::complex<double>;
using VecR = std::vector<double>;
using VecC = std::vector<cd>;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};
struct RankError : Error {
    explicit RankError(const std::string& what) : Error(what) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// ---------------------------------------------------------------------------
// complex matrices

struct MatC {
    int rows = 0, cols = 0;
    VecC a;

    MatC() = default;
    MatC(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, cd(0.0)) {}

    cd& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const cd& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static MatC identity(int n) {
        MatC m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline MatC operator+(const MatC& x, const MatC& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionError("matrix add: shape mismatch");
    MatC r(x.rows, x.cols);
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

inline MatC operator-(const MatC& x, const MatC& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionError("matrix sub: shape mismatch");
    MatC r(x.rows, x.cols);
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

inline MatC operator*(const MatC& x, cd s) {
    MatC r = x;
    for (auto& v : r.a) v *= s;
    return r;
}
inline MatC operator*(cd s, const MatC& x) { return x * s; }

inline MatC operator*(const MatC& x, const MatC& y) {
    if (x.cols != y.rows) throw DimensionError("matrix mul: shape mismatch");
    MatC r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const cd xik = x(i, k);
            if (xik == cd(0.0)) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

inline VecC operator*(const MatC& x, const VecC& v) {
    if (x.cols != static_cast<int>(v.size())) throw DimensionError("matrix-vector mul: shape mismatch");
    VecC r(x.rows, cd(0.0));
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
    return r;
}

inline MatC dagger(const MatC& x) {
    MatC r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = std::conj(x(i, j));
    return r;
}

inline MatC kron(const MatC& x, const MatC& y) {
    MatC r(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j)
            for (int k = 0; k < y.rows; ++k)
                for (int l = 0; l < y.cols; ++l)
                    r(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
    return r;
}

// Kronecker product of column spinors, first factor index is the major one.
inline VecC kron(const VecC& x, const VecC& y) {
    VecC r(x.size() * y.size());
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) r[i * y.size() + j] = x[i] * y[j];
    return r;
}

inline double norm_max(const MatC& x) {
    double m = 0.0;
    for (const auto& v : x.a) m = std::max(m, std::abs(v));
    return m;
}

inline double norm2(const VecC& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

inline double norm_max(const VecC& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

inline VecC operator+(const VecC& x, const VecC& y) {
    if (x.size() != y.size()) throw DimensionError("vector add: size mismatch");
    VecC r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

inline VecC operator-(const VecC& x, const VecC& y) {
    if (x.size() != y.size()) throw DimensionError("vector sub: size mismatch");
    VecC r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

inline VecC operator*(cd s, const VecC& x) {
    VecC r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
    return r;
}

// ---------------------------------------------------------------------------
// real matrices (metrics, Jacobians, frames)

struct MatR {
    int rows = 0, cols = 0;
    VecR a;

    MatR() = default;
    MatR(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const double& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static MatR identity(int n) {
        MatR m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline VecR operator*(const MatR& x, const VecR& v) {
    if (x.cols != static_cast<int>(v.size())) throw DimensionError("matrix-vector mul: shape mismatch");
    VecR r(x.rows, 0.0);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
    return r;
}

inline VecR operator+(const VecR& x, const VecR& y) {
    if (x.size() != y.size()) throw DimensionError("vector add: size mismatch");
    VecR r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

inline VecR operator-(const VecR& x, const VecR& y) {
    if (x.size() != y.size()) throw DimensionError("vector sub: size mismatch");
    VecR r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

inline VecR operator*(double s, const VecR& x) {
    VecR r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
    return r;
}

inline double dot(const VecR& x, const VecR& y) {
    if (x.size() != y.size()) throw DimensionError("dot: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// inner product u^T G v
inline double gdot(const MatR& G, const VecR& u, const VecR& v) {
    return dot(u, G * v);
}

inline double norm2(const VecR& v) { return std::sqrt(dot(v, v)); }

inline double norm_max(const MatR& x) {
    double m = 0.0;
    for (double v : x.a) m = std::max(m, std::abs(v));
    return m;
}

// Solve A x = b by Gaussian elimination with partial pivoting.
inline VecR solve(MatR A, VecR b) {
    const int nn = A.rows;
    if (A.cols != nn || static_cast<int>(b.size()) != nn) throw DimensionError("solve: shape mismatch");
    double scale = norm_max(A);
    if (scale == 0.0) throw RankError("solve: zero matrix");
    for (int col = 0; col < nn; ++col) {
        int piv = col;
        for (int r = col + 1; r < nn; ++r)
            if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
        if (std::abs(A(piv, col)) < 1e-12 * scale) throw RankError("solve: matrix numerically singular");
        if (piv != col) {
            for (int c = 0; c < nn; ++c) std::swap(A(piv, c), A(col, c));
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < nn; ++r) {
            const double f = A(r, col) / A(col, col);
            if (f == 0.0) continue;
            for (int c = col; c < nn; ++c) A(r, c) -= f * A(col, c);
            b[r] -= f * b[col];
        }
    }
    VecR x(nn, 0.0);
    for (int r = nn - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < nn; ++c) s -= A(r, c) * x[c];
        x[r] = s / A(r, r);
    }
    return x;
}

// Symmetric positive-definite test via Cholesky.
inline bool is_spd(const MatR& A, double sym_tol = 1e-9) {
    if (A.rows != A.cols) return false;
    const int nn = A.rows;
    const double scale = std::max(1.0, norm_max(A));
    for (int i = 0; i < nn; ++i)
        for (int j = i + 1; j < nn; ++j)
            if (std::abs(A(i, j) - A(j, i)) > sym_tol * scale) return false;
    MatR L(nn, nn);
    for (int i = 0; i < nn; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = A(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                L(i, i) = std::sqrt(s);
            } else {
                L(i, j) = s / L(j, j);
            }
        }
    }
    return true;
}

// Gram-Schmidt with respect to the inner product G, in the given order.
// Vectors are replaced by a G-orthonormal family spanning the same flag.
inline void gram_schmidt(std::vector<VecR>& vs, const MatR& G) {
    for (size_t i = 0; i < vs.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            const double c = gdot(G, vs[i], vs[j]);
            vs[i] = vs[i] - c * vs[j];
        }
        const double n2 = gdot(G, vs[i], vs[i]);
        if (n2 <= 1e-14) throw RankError("gram_schmidt: degenerate vector family");
        vs[i] = (1.0 / std::sqrt(n2)) * vs[i];
    }
}

}  // namespace spingeo
