// Explicit gamma-matrix representations of Clifford algebras, and the
// graded horizontal (x) vertical representations acting on pull-back spinors.
//
// Conventions, fixed once for the whole library:
//   * Clifford relation  g_a g_b + g_b g_a = -2 delta_ab, so v.v = -|v|^2
//     and the flat Dirac operator squares to -Laplace.
//   * Each generator is unitary and skew-Hermitian.
//   * For even d the chirality element is w = i^{d/2} g_1 ... g_d, with
//     w^2 = 1; conjugation is +1 on the positive chirality half, -1 on the
//     negative half.
//   * In dimension 2 the generators are fixed to
//       g_1 = [[0,-1],[1,0]],  g_2 = [[0,i],[i,0]],
//     so that g_1 d1 + g_2 d2 = [[0, -d/dz],[d/dzbar, 0]] with
//     d/dz = d1 - i d2 (no factor 1/2).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spingeo/linalg.hpp"

namespace spingeo {

struct GammaRep {
    int dim = 0;         // number of generators
    int spinor_dim = 0;  // 2^floor(dim/2)
    std::vector<MatC> gammas;
    MatC chirality;      // valid iff dim is even
    bool has_chirality = false;
    std::string convention_id;
};

namespace detail {

inline MatC gamma2_first() {
    MatC g(2, 2);
    g(0, 1) = -1.0;
    g(1, 0) = 1.0;
    return g;
}

inline MatC gamma2_second() {
    MatC g(2, 2);
    g(0, 1) = cd(0.0, 1.0);
    g(1, 0) = cd(0.0, 1.0);
    return g;
}

inline MatC volume_element(const std::vector<MatC>& gammas, int d) {
    MatC p = MatC::identity(gammas.empty() ? 1 : gammas[0].rows);
    for (const auto& g : gammas) p = p * g;
    // i^{d/2} prefactor
    cd phase(1.0, 0.0);
    for (int t = 0; t < d / 2; ++t) phase *= cd(0.0, 1.0);
    return phase * p;
}

}  // namespace detail

// Deterministic recursive doubling. Even dimensions are built from the
// two-dimensional seed by
//   d -> d+2:  {g_a (x) 1} u {w_d (x) s_1, w_d (x) s_2},
// odd dimensions append i*w to the even family one below.
inline GammaRep build_gamma(int d) {
    if (d < 1) throw DimensionError("build_gamma: d must be >= 1");
    GammaRep rep;
    rep.dim = d;
    rep.convention_id = "recursive-doubling-v1";
    if (d == 1) {
        MatC g(1, 1);
        g(0, 0) = cd(0.0, 1.0);
        rep.spinor_dim = 1;
        rep.gammas = {g};
        rep.has_chirality = false;
        return rep;
    }
    if (d == 2) {
        rep.spinor_dim = 2;
        rep.gammas = {detail::gamma2_first(), detail::gamma2_second()};
        rep.chirality = detail::volume_element(rep.gammas, 2);
        rep.has_chirality = true;
        return rep;
    }
    if (d % 2 == 1) {
        GammaRep base = build_gamma(d - 1);
        rep.spinor_dim = base.spinor_dim;
        rep.gammas = base.gammas;
        rep.gammas.push_back(cd(0.0, 1.0) * base.chirality);
        rep.has_chirality = false;
        return rep;
    }
    GammaRep base = build_gamma(d - 2);
    const MatC i2 = MatC::identity(2);
    rep.spinor_dim = base.spinor_dim * 2;
    rep.gammas.reserve(d);
    for (const auto& g : base.gammas) rep.gammas.push_back(kron(g, i2));
    rep.gammas.push_back(kron(base.chirality, detail::gamma2_first()));
    rep.gammas.push_back(kron(base.chirality, detail::gamma2_second()));
    rep.chirality = detail::volume_element(rep.gammas, d);
    rep.has_chirality = true;
    return rep;
}

// Representation adapted to a splitting into n horizontal and k vertical
// directions. Horizontal generators act on the base factor only, vertical
// ones act through the base chirality, so that
//   X . (psi (x) a) = (X . psi) (x) a
//   V . (psi (x) a) = conj(psi) (x) (V . a)        (k >= 2)
//   V . psi         = i conj(psi)                  (k == 1)
// with conj the Z2-grading conjugation on the base factor.
struct AdaptedRep {
    int n = 0;  // base (horizontal) dimension, even
    int k = 0;  // fibre (vertical) dimension
    GammaRep base;
    std::optional<GammaRep> fibre;  // present iff k >= 2
    std::vector<MatC> total_gammas;  // n + k generators
    MatC conjugation;
    int spinor_dim = 0;

    int fibre_spinor_dim() const { return fibre ? fibre->spinor_dim : 1; }
};

inline AdaptedRep build_adapted_rep(int n, int k) {
    if (n < 2 || n % 2 != 0) throw DimensionError("build_adapted_rep: base dimension must be even and >= 2");
    if (k < 1) throw DimensionError("build_adapted_rep: fibre dimension must be >= 1");
    AdaptedRep rep;
    rep.n = n;
    rep.k = k;
    rep.base = build_gamma(n);
    if (k == 1) {
        rep.spinor_dim = rep.base.spinor_dim;
        rep.total_gammas = rep.base.gammas;
        rep.total_gammas.push_back(cd(0.0, 1.0) * rep.base.chirality);
        rep.conjugation = rep.base.chirality;
        return rep;
    }
    rep.fibre = build_gamma(k);
    rep.spinor_dim = rep.base.spinor_dim * rep.fibre->spinor_dim;
    const MatC idf = MatC::identity(rep.fibre->spinor_dim);
    for (const auto& g : rep.base.gammas) rep.total_gammas.push_back(kron(g, idf));
    for (const auto& g : rep.fibre->gammas) rep.total_gammas.push_back(kron(rep.base.chirality, g));
    rep.conjugation = kron(rep.base.chirality, idf);
    return rep;
}

// Clifford multiplication by the frame vector with coefficients v
// (first n slots horizontal, last k vertical).
inline VecC clifford_mul(const AdaptedRep& rep, const VecR& v, const VecC& psi) {
    if (static_cast<int>(v.size()) != rep.n + rep.k)
        throw DimensionError("clifford_mul: coefficient vector has wrong length");
    if (static_cast<int>(psi.size()) != rep.spinor_dim)
        throw DimensionError("clifford_mul: spinor has wrong dimension");
    VecC out(psi.size(), cd(0.0));
    for (int a = 0; a < rep.n + rep.k; ++a) {
        if (v[a] == 0.0) continue;
        const MatC& g = rep.total_gammas[a];
        for (int i = 0; i < g.rows; ++i) {
            cd acc(0.0);
            for (int j = 0; j < g.cols; ++j) acc += g(i, j) * psi[j];
            out[i] += v[a] * acc;
        }
    }
    return out;
}

inline VecC conjugate(const AdaptedRep& rep, const VecC& psi) {
    if (static_cast<int>(psi.size()) != rep.spinor_dim)
        throw DimensionError("conjugate: spinor has wrong dimension");
    return rep.conjugation * psi;
}

// Action of a vertical-vector-valued 2-form F on a spinor:
//   sum_{i<j} e_i . e_j . F(i,j) . psi
// F is given as an antisymmetric n x n array of frame-coefficient vectors
// whose horizontal components must vanish.
inline VecC two_form_action(const AdaptedRep& rep, const std::vector<VecR>& F, const VecC& psi) {
    const int n = rep.n, m = rep.n + rep.k;
    if (static_cast<int>(F.size()) != n * n) throw DimensionError("two_form_action: F must be n x n");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const VecR& fij = F[i * n + j];
            if (static_cast<int>(fij.size()) != m) throw DimensionError("two_form_action: entry has wrong length");
            const VecR& fji = F[j * n + i];
            for (int a = 0; a < m; ++a)
                if (std::abs(fij[a] + fji[a]) > 1e-12)
                    throw Error("two_form_action: F is not antisymmetric");
            for (int i2 = 0; i2 < n; ++i2)
                if (fij[i2] != 0.0) throw Error("two_form_action: F has horizontal components");
        }
    VecC out(psi.size(), cd(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const VecC w = rep.total_gammas[i] * (rep.total_gammas[j] * clifford_mul(rep, F[i * n + j], psi));
            for (size_t t = 0; t < out.size(); ++t) out[t] += w[t];
        }
    return out;
}

}  // namespace spingeo
