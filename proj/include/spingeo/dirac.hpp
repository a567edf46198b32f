// Spin connection and Dirac operators on chart spinor fields, pull-back
// spinors through horizontally conformal submersions, the vertical Dirac
// operator, and the chain rule relating D^M to D^N with every labelled
// term of the decomposition
//   D^M = (H0)+(H1)+(H2)+(H3)+(V0)+(V1)+(V2)+(V3).
//
// Spinor components are always taken in a fixed orthonormal-frame
// trivialization: the Gram-Schmidt coordinate frame on the target chart,
// the adapted frame (E_i, V_a) on the source. The dilation identification
// keeps components unchanged; the dilation enters only through the frame
// E_i = lambda E1_i inside derivatives and connection coefficients.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spingeo/clifford.hpp"
#include "spingeo/geometry.hpp"
#include "spingeo/scenario.hpp"

namespace spingeo {

struct ChartSpinorField {
    int dim = 0;
    std::string frame_tag;  // "adapted-M" or "orthonormal-N"
    std::function<VecC(const VecR&)> eval;

    static ChartSpinorField from_field(const Field& f, std::string tag) {
        ChartSpinorField c;
        c.dim = static_cast<int>(f.comps.size());
        c.frame_tag = std::move(tag);
        c.eval = [f](const VecR& p) { return f.eval_spinor(p); };
        return c;
    }

    static ChartSpinorField constant(VecC value, std::string tag) {
        ChartSpinorField c;
        c.dim = static_cast<int>(value.size());
        c.frame_tag = std::move(tag);
        c.eval = [v = std::move(value)](const VecR&) { return v; };
        return c;
    }
};

// ---------------------------------------------------------------------------
// generic frame-trivialized spin covariant derivative and Dirac operator

inline VecC spin_cov_deriv_frame(const std::vector<MatC>& gammas, const std::vector<VecR>& frame,
                                 const ConnectionCoeffs& cc, const ChartSpinorField& psi,
                                 const VecR& p, int j, const FDConfig& cfg) {
    VecC d = fd_directional(psi.eval, p, frame[j], cfg);
    const VecC at_p = psi.eval(p);
    for (int k = 0; k < cc.dim; ++k)
        for (int l = k + 1; l < cc.dim; ++l) {
            const double coef = cc.at(j, k, l);
            if (coef == 0.0) continue;
            const VecC w = gammas[k] * (gammas[l] * at_p);
            for (size_t t = 0; t < d.size(); ++t) d[t] += 0.5 * coef * w[t];
        }
    return d;
}

inline VecC dirac_apply_frame(const std::vector<MatC>& gammas, const std::vector<VecR>& frame,
                              const ConnectionCoeffs& cc, const ChartSpinorField& psi,
                              const VecR& p, const FDConfig& cfg) {
    VecC out(static_cast<size_t>(gammas[0].rows), cd(0.0));
    for (int j = 0; j < cc.dim; ++j) {
        const VecC nj = spin_cov_deriv_frame(gammas, frame, cc, psi, p, j, cfg);
        const VecC w = gammas[j] * nj;
        for (size_t t = 0; t < out.size(); ++t) out[t] += w[t];
    }
    return out;
}

// ---------------------------------------------------------------------------
// chart Dirac operator in the Gram-Schmidt orthonormal frame of a metric

struct ChartFrame {
    int dim = 0;
    std::function<MatR(const VecR&)> metric;
    FDConfig fd;

    std::function<std::vector<VecR>(const VecR&)> frame_fn() const {
        auto met = metric;
        const int d = dim;
        return [met, d](const VecR& q) {
            std::vector<VecR> f(d);
            for (int i = 0; i < d; ++i) {
                f[i] = VecR(d, 0.0);
                f[i][i] = 1.0;
            }
            gram_schmidt(f, met(q));
            return f;
        };
    }

    ConnectionCoeffs connection_at(const VecR& q) const {
        return koszul_connection(metric, frame_fn(), q, fd);
    }
};

inline ChartFrame chart_frame_N(const Scenario& s) { return ChartFrame{s.n, s.metric_N(), s.fd}; }

inline ChartFrame chart_frame_flat(int dim, const Box& box, const FDConfig& fd) {
    auto metric = [box, dim](const VecR& q) {
        if (!box.contains(q, 0.5)) throw DomainError("point outside flat chart domain");
        return MatR::identity(dim);
    };
    return ChartFrame{dim, metric, fd};
}

inline VecC dirac_chart(const ChartFrame& chart, const std::vector<MatC>& gammas,
                        const ChartSpinorField& psi, const VecR& q) {
    return dirac_apply_frame(gammas, chart.frame_fn()(q), chart.connection_at(q), psi, q, chart.fd);
}

// ---------------------------------------------------------------------------
// per-scenario spin geometry bundle

struct SpinGeometry {
    const Scenario* s;
    FrameBuilder fb;
    AdaptedRep rep;     // adapted to the splitting (n horizontal, m-n vertical)
    ChartFrame nchart;  // target chart

    explicit SpinGeometry(const Scenario& sc)
        : s(&sc), fb(sc), rep(build_adapted_rep(sc.n, sc.k())), nchart(chart_frame_N(sc)) {}

    const GammaRep& nrep() const { return rep.base; }
};

inline VecC spin_covariant_derivative(const SpinGeometry& geo, const ChartSpinorField& psi,
                                      const FramePointData& fp, int j) {
    return spin_cov_deriv_frame(geo.rep.total_gammas, fp.frame(), geo.fb.connection_at(fp.p), psi,
                                fp.p, j, geo.s->fd);
}

// Dirac operator on M in the adapted frame
inline VecC dirac_m(const SpinGeometry& geo, const ChartSpinorField& psi, const VecR& p) {
    const FramePointData fp = geo.fb.frame_at(p);
    return dirac_apply_frame(geo.rep.total_gammas, fp.frame(), geo.fb.connection_at(p), psi, p,
                             geo.s->fd);
}

// Dirac operator on N in the Gram-Schmidt frame
inline VecC dirac_n(const SpinGeometry& geo, const ChartSpinorField& psi, const VecR& q) {
    return dirac_chart(geo.nchart, geo.nrep().gammas, psi, q);
}

// frame-tag dispatch: adapted-M fields live on the source chart,
// orthonormal-N fields on the target chart
inline VecC dirac_apply(const SpinGeometry& geo, const ChartSpinorField& psi, const VecR& p) {
    if (psi.frame_tag == "orthonormal-N") return dirac_n(geo, psi, p);
    return dirac_m(geo, psi, p);
}

// ---------------------------------------------------------------------------
// pull-backs

struct PullbackSpec {
    ChartSpinorField psi;                   // on N
    std::optional<ChartSpinorField> alpha;  // on M, absent when m-n == 1
    bool codim1 = false;
};

inline PullbackSpec make_pullback_spec(const SpinGeometry& geo, ChartSpinorField psi,
                                       std::optional<ChartSpinorField> alpha = std::nullopt) {
    PullbackSpec spec;
    spec.codim1 = (geo.s->k() == 1);
    if (static_cast<int>(psi.dim) != geo.nrep().spinor_dim)
        throw DimensionError("pullback: psi has wrong spinor dimension");
    spec.psi = std::move(psi);
    if (!spec.codim1) {
        if (alpha) {
            if (alpha->dim != geo.rep.fibre_spinor_dim())
                throw DimensionError("pullback: alpha has wrong spinor dimension");
            spec.alpha = std::move(alpha);
        } else {
            VecC e1(static_cast<size_t>(geo.rep.fibre_spinor_dim()), cd(0.0));
            e1[0] = 1.0;
            spec.alpha = ChartSpinorField::constant(std::move(e1), "adapted-M");
        }
    }
    return spec;
}

// vertical fibre-spinor value at p (the constant 1 when m-n == 1)
inline VecC alpha_value(const PullbackSpec& spec, const VecR& p) {
    if (spec.codim1) return VecC{cd(1.0)};
    const VecC a = spec.alpha->eval(p);
    if (norm2(a) < 1e-14) throw Error("pullback: alpha vanishes at a sample point");
    return a;
}

inline VecC pullback_spinor(const SpinGeometry& geo, const PullbackSpec& spec,
                            const FramePointData& fp) {
    const VecR q = geo.s->map()(fp.p);
    const VecC psi_q = spec.psi.eval(q);
    if (spec.codim1) return psi_q;
    return kron(psi_q, alpha_value(spec, fp.p));
}

inline ChartSpinorField pullback_field(const SpinGeometry& geo, const PullbackSpec& spec) {
    ChartSpinorField out;
    out.dim = geo.rep.spinor_dim;
    out.frame_tag = "adapted-M";
    auto piM = geo.s->map();
    auto psi = spec.psi;
    if (spec.codim1) {
        out.eval = [piM, psi](const VecR& p) { return psi.eval(piM(p)); };
    } else {
        auto alpha = *spec.alpha;
        out.eval = [piM, psi, alpha](const VecR& p) { return kron(psi.eval(piM(p)), alpha.eval(p)); };
    }
    return out;
}

// ---------------------------------------------------------------------------
// vertical spinor connection and vertical Dirac operator

// nabla^V_{e_j} alpha in the vertical frame trivialization, j a full frame slot
inline VecC vertical_cov_deriv(const SpinGeometry& geo, const PullbackSpec& spec,
                               const ConnectionCoeffs& cc, const FramePointData& fp, int j) {
    const int n = geo.s->n, k = geo.s->k();
    const std::vector<VecR> frame = fp.frame();
    if (spec.codim1) {
        // one-dimensional fibre spinor space: only the plain derivative survives
        ChartSpinorField a;
        a.dim = 1;
        a.eval = [](const VecR&) { return VecC{cd(1.0)}; };
        return fd_directional(a.eval, fp.p, frame[j], geo.s->fd);
    }
    const ChartSpinorField& a = *spec.alpha;
    VecC d = fd_directional(a.eval, fp.p, frame[j], geo.s->fd);
    const VecC at_p = a.eval(fp.p);
    const auto& gv = geo.rep.fibre->gammas;
    for (int b = 0; b < k; ++b)
        for (int c = b + 1; c < k; ++c) {
            const double coef = cc.at(j, n + b, n + c);
            if (coef == 0.0) continue;
            const VecC w = gv[b] * (gv[c] * at_p);
            for (size_t t = 0; t < d.size(); ++t) d[t] += 0.5 * coef * w[t];
        }
    return d;
}

// D^V alpha = sum_a gamma^V_a nabla^V_{V_a} alpha (zero by definition when m-n == 1)
inline VecC vertical_dirac(const SpinGeometry& geo, const PullbackSpec& spec,
                           const ConnectionCoeffs& cc, const FramePointData& fp) {
    const int n = geo.s->n, k = geo.s->k();
    if (spec.codim1) return VecC{cd(0.0)};
    VecC out(static_cast<size_t>(geo.rep.fibre->spinor_dim), cd(0.0));
    for (int a = 0; a < k; ++a) {
        const VecC na = vertical_cov_deriv(geo, spec, cc, fp, n + a);
        const VecC w = geo.rep.fibre->gammas[a] * na;
        for (size_t t = 0; t < out.size(); ++t) out[t] += w[t];
    }
    return out;
}

inline double horizontal_parallel_residual(const SpinGeometry& geo, const PullbackSpec& spec,
                                           const ConnectionCoeffs& cc, const FramePointData& fp) {
    if (spec.codim1) return 0.0;
    double r = 0.0;
    for (int i = 0; i < geo.s->n; ++i)
        r = std::max(r, norm2(vertical_cov_deriv(geo, spec, cc, fp, i)));
    return r;
}

// ---------------------------------------------------------------------------
// chain rule

struct ChainRuleBreakdown {
    VecC lhs;        // D^M psi~ at p
    VecC rhs_total;  // assembled right-hand side
    // H0,H1,H2,H3,V0,V1,V2,V3
    std::array<VecC, 8> terms;
    std::array<VecC, 5> step_lhs, step_rhs;
    std::array<double, 5> step_residuals{};
    double residual = 0.0;
    double term_sum_residual = 0.0;
    double lambda = 1.0;
    double I_H_norm = 0.0;
};

namespace detail {

inline void add_scaled(VecC& acc, const VecC& v, cd s = cd(1.0)) {
    for (size_t t = 0; t < acc.size(); ++t) acc[t] += s * v[t];
}

}  // namespace detail

inline ChainRuleBreakdown chain_rule(const SpinGeometry& geo, const PullbackSpec& spec, const VecR& p) {
    const Scenario& s = *geo.s;
    const int n = s.n, m = s.m, k = s.k();
    const auto& G = geo.rep.total_gammas;

    const FramePointData fp = geo.fb.frame_at(p);
    const ConnectionCoeffs cc = geo.fb.connection_at(p);
    const GeomInvariants gi = geom_invariants(geo.fb, fp, cc);
    const std::vector<VecR> frame = fp.frame();

    const ChartSpinorField pb = pullback_field(geo, spec);
    const VecC pb_p = pb.eval(p);
    const VecR q = s.map()(p);
    const VecC psi_q = spec.psi.eval(q);
    const VecC psibar_q = geo.nrep().chirality * psi_q;
    const VecC alpha_p = alpha_value(spec, p);

    ChainRuleBreakdown out;
    out.lambda = fp.lambda;

    const VecC zero(pb_p.size(), cd(0.0));
    for (auto& t : out.terms) t = zero;

    // (H0), (V0): gamma_j . e_j(pullback)
    for (int j = 0; j < m; ++j) {
        const VecC dj = fd_directional(pb.eval, p, frame[j], s.fd);
        detail::add_scaled(out.terms[j < n ? 0 : 4], G[j] * dj);
    }

    // connection terms, split by the type of the three slots
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                const double coef = cc.at(a, b, c);
                if (coef == 0.0) continue;
                const bool ah = a < n, bh = b < n, ch = c < n;
                int slot;
                double weight;
                if (ah && bh && ch) { slot = 1; weight = 0.25; }          // H1
                else if (ah && bh != ch) { slot = 2; weight = 0.25; }     // H2 (both orders counted)
                else if (ah) { slot = 3; weight = 0.25; }                 // H3
                else if (bh && ch) { slot = 5; weight = 0.25; }           // V1
                else if (bh != ch) { slot = 6; weight = 0.25; }           // V2 (both orders counted)
                else { slot = 7; weight = 0.25; }                         // V3
                const VecC w = G[a] * (G[b] * (G[c] * pb_p));
                detail::add_scaled(out.terms[slot], w, weight * coef);
            }

    // lhs is the direct Dirac evaluation; the labelled terms must reproduce it
    out.lhs = dirac_apply_frame(G, frame, cc, pb, p, s.fd);
    VecC term_sum = zero;
    for (const auto& t : out.terms) detail::add_scaled(term_sum, t);
    out.term_sum_residual = norm2(term_sum - out.lhs);

    // --- right-hand side pieces ---

    // lambda (D^N psi)~
    ChartSpinorField dn;
    dn.dim = spec.psi.dim;
    dn.frame_tag = "orthonormal-N";
    dn.eval = [&geo, &spec](const VecR& qq) { return dirac_n(geo, spec.psi, qq); };
    VecC dn_pull = spec.codim1 ? dn.eval(q) : kron(dn.eval(q), alpha_p);

    // fundamental vector (m-n) mu^V + (n-1) grad^H ln(lambda) + n mu^H
    VecR fund(m, 0.0);
    for (int t = 0; t < m; ++t)
        fund[t] = k * gi.mu_V[t] + (n - 1) * gi.grad_H_lnl[t] + n * gi.mu_H[t];

    // alpha correction terms
    VecC alpha_term = zero;
    for (int i = 0; i < n; ++i) {
        const VecC na = vertical_cov_deriv(geo, spec, cc, fp, i);
        if (spec.codim1) continue;  // exact zero: alpha is the constant 1
        detail::add_scaled(alpha_term, G[i] * kron(psi_q, na));
    }
    const VecC dv_alpha = vertical_dirac(geo, spec, cc, fp);
    VecC dv_term = zero;
    if (!spec.codim1) dv_term = kron(psibar_q, dv_alpha);

    out.rhs_total = zero;
    detail::add_scaled(out.rhs_total, dn_pull, cd(fp.lambda));
    detail::add_scaled(out.rhs_total, clifford_mul(geo.rep, fund, pb_p), cd(-0.5));
    detail::add_scaled(out.rhs_total, alpha_term);
    detail::add_scaled(out.rhs_total, two_form_action(geo.rep, gi.I_H, pb_p), cd(0.25));
    detail::add_scaled(out.rhs_total, dv_term);

    out.residual = norm2(out.lhs - out.rhs_total);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.I_H_norm = std::max(out.I_H_norm, frame_norm(gi.I_H[i * n + j]));

    // --- the five standalone identities of the decomposition ---

    // 1: (H0)+(H1)+(H3) = lambda (D^N psi)~ - (n-1)/2 grad^H(ln lambda) . psi~ + alpha term
    out.step_lhs[0] = out.terms[0] + out.terms[1] + out.terms[3];
    out.step_rhs[0] = zero;
    detail::add_scaled(out.step_rhs[0], dn_pull, cd(fp.lambda));
    detail::add_scaled(out.step_rhs[0], clifford_mul(geo.rep, gi.grad_H_lnl, pb_p), cd(-0.5 * (n - 1)));
    detail::add_scaled(out.step_rhs[0], alpha_term);

    // 2: (V2) = -(m-n)/2 mu^V . psi~
    out.step_lhs[1] = out.terms[6];
    out.step_rhs[1] = clifford_mul(geo.rep, VecR(-0.5 * k * gi.mu_V), pb_p);

    // 3: (V0)+(V3) = (conj psi o pi) (x) D^V alpha
    out.step_lhs[2] = out.terms[4] + out.terms[7];
    out.step_rhs[2] = dv_term;

    // 4: (H2) = 1/2 I^H . psi~ - n/2 mu^H . psi~
    out.step_lhs[3] = out.terms[2];
    out.step_rhs[3] = zero;
    detail::add_scaled(out.step_rhs[3], two_form_action(geo.rep, gi.I_H, pb_p), cd(0.5));
    detail::add_scaled(out.step_rhs[3], clifford_mul(geo.rep, VecR(static_cast<double>(n) * gi.mu_H), pb_p), cd(-0.5));

    // 5: (V1) = -1/4 I^H . psi~
    out.step_lhs[4] = out.terms[5];
    out.step_rhs[4] = zero;
    detail::add_scaled(out.step_rhs[4], two_form_action(geo.rep, gi.I_H, pb_p), cd(-0.25));

    for (int t = 0; t < 5; ++t) out.step_residuals[t] = norm2(out.step_lhs[t] - out.step_rhs[t]);

    return out;
}

// Decomposition specialized to Riemannian submersions with one-dimensional
// fibres and minimal horizontal distribution:
//   D^M psi~ = (D^N psi)~ - 1/2 mu^V . psi~ - i/4 sum_j E_j . A_{E_j}V . conj(psi~)
struct ONeillDecomposition {
    VecC lifted_dirac_n;
    VecC mean_curvature_term;
    VecC oneill_term;
    double residual = 0.0;
};

inline ONeillDecomposition oneill_chain_rule(const SpinGeometry& geo, const PullbackSpec& spec,
                                             const VecR& p) {
    const Scenario& s = *geo.s;
    if (s.k() != 1) throw DimensionError("oneill decomposition requires one-dimensional fibres");
    const FramePointData fp = geo.fb.frame_at(p);
    const ConnectionCoeffs cc = geo.fb.connection_at(p);
    const GeomInvariants gi = geom_invariants(geo.fb, fp, cc);
    if (std::abs(fp.lambda - 1.0) > 1e-6 || frame_norm(gi.grad_H_lnl) > 1e-6)
        throw Error("oneill decomposition requires a Riemannian submersion");
    if (frame_norm(gi.mu_H) > 1e-6)
        throw Error("oneill decomposition requires a minimal horizontal distribution");

    const int n = s.n;
    const VecR q = s.map()(p);
    const VecC pb_p = pullback_spinor(geo, spec, fp);

    ONeillDecomposition out;
    out.lifted_dirac_n = dirac_n(geo, spec.psi, q);
    out.mean_curvature_term = clifford_mul(geo.rep, VecR(-0.5 * gi.mu_V), pb_p);

    const VecC pb_conj = conjugate(geo.rep, pb_p);
    VecC third(pb_p.size(), cd(0.0));
    for (int j = 0; j < n; ++j) {
        // A_{E_j} V has horizontal frame coefficients gi.A[j]
        const VecC w = clifford_mul(geo.rep, gi.A[j], pb_conj);
        VecR ej(s.m, 0.0);
        ej[j] = 1.0;
        detail::add_scaled(third, clifford_mul(geo.rep, ej, w));
    }
    out.oneill_term = cd(0.0, -0.25) * third;

    VecC rhs = out.lifted_dirac_n;  // codim-1 pull-back keeps components
    detail::add_scaled(rhs, out.mean_curvature_term);
    detail::add_scaled(rhs, out.oneill_term);
    const VecC lhs = dirac_m(geo, pullback_field(geo, spec), p);
    out.residual = norm2(lhs - rhs);
    return out;
}

// ---------------------------------------------------------------------------
// constructive harmonic spinors on the flat plane

// psi+ from an expression in z = x1 + i x2, psi- from one in x1 - i x2;
// validated numerically through the Cauchy-Riemann residual on a probe grid.
inline ChartSpinorField harmonic_spinor_2d(const Expr& fplus, const Expr& fminus, const Box& box,
                                           const FDConfig& fd, double tol = 1e-8) {
    if (box.dim() != 2) throw DimensionError("harmonic_spinor_2d: box must be two-dimensional");
    auto plus = [fplus](const VecR& q) { return eval(fplus, q); };
    auto minus = [fminus](const VecR& q) { return eval(fminus, q); };
    double resid = 0.0;
    for (double t0 : {0.25, 0.5, 0.75})
        for (double t1 : {0.25, 0.5, 0.75}) {
            VecR q{box.lo[0] + t0 * box.side(0), box.lo[1] + t1 * box.side(1)};
            // d/dzbar psi+ and d/dz psi-
            const cd dzbar_p = fd_derivative(plus, q, 0, fd) + cd(0.0, 1.0) * fd_derivative(plus, q, 1, fd);
            const cd dz_m = fd_derivative(minus, q, 0, fd) - cd(0.0, 1.0) * fd_derivative(minus, q, 1, fd);
            resid = std::max(resid, std::max(std::abs(dzbar_p), std::abs(dz_m)));
        }
    if (resid > tol)
        throw Error("harmonic_spinor_2d: Cauchy-Riemann residual " + std::to_string(resid) +
                    " exceeds tolerance");
    ChartSpinorField out;
    out.dim = 2;
    out.frame_tag = "orthonormal-N";
    out.eval = [fplus, fminus](const VecR& q) { return VecC{eval(fplus, q), eval(fminus, q)}; };
    return out;
}

}  // namespace spingeo
