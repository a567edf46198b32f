// Dirac-morphism classification over a sample grid: the fundamental
// equation (m-n) mu^V + (n-1) grad^H(ln lambda) = 0, integrability of the
// horizontal distribution, the two conditions on the vertical spinor alpha,
// and cross-validation through pull-backs of harmonic witness spinors.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "spingeo/dirac.hpp"

namespace spingeo {

enum class Verdict { Yes, No, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct GridInfo {
    int per_axis = 0;
    int points = 0;
};

struct MorphismReport {
    Verdict verdict = Verdict::Inconclusive;
    double fundamental_eq_residual = 0.0;  // codim 1: without the mu^H part
    double mu_H_residual = 0.0;            // codim 1 only; zero otherwise
    double integrability_residual = 0.0;
    double alpha_dirac_residual = 0.0;
    double alpha_parallel_residual = 0.0;
    double max_conformality_residual = 0.0;
    std::vector<double> witness_residuals;
    GridInfo grid;
    Tolerances tol;
    bool internal_inconsistency = false;
};

// A residual passes at tol, fails hard above 10*tol, and is inconclusive
// in between: the corpus is designed with decadal margins.
namespace detail {

inline Verdict residual_verdict(double r, double tol) {
    if (r <= tol) return Verdict::Yes;
    if (r > 10.0 * tol) return Verdict::No;
    return Verdict::Inconclusive;
}

inline Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::No || b == Verdict::No) return Verdict::No;
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
    return Verdict::Yes;
}

}  // namespace detail

// residual maxima of the two alpha conditions over the grid
inline std::pair<double, double> check_alpha_conditions(const SpinGeometry& geo,
                                                        const PullbackSpec& spec) {
    const Scenario& s = *geo.s;
    if (s.k() == 1) return {0.0, 0.0};
    double dirac_resid = 0.0, parallel_resid = 0.0;
    for (const auto& p : sample_grid(s)) {
        const FramePointData fp = geo.fb.frame_at(p);
        const ConnectionCoeffs cc = geo.fb.connection_at(p);
        const GeomInvariants gi = geom_invariants(geo.fb, fp, cc);
        const VecC a = alpha_value(spec, p);
        // D^V alpha - n/2 mu^H . alpha, with mu^H acting through fibre gammas
        VecC lhs = vertical_dirac(geo, spec, cc, fp);
        for (int b = 0; b < s.k(); ++b) {
            if (gi.mu_H[s.n + b] == 0.0) continue;
            const VecC w = geo.rep.fibre->gammas[b] * a;
            for (size_t t = 0; t < lhs.size(); ++t) lhs[t] -= 0.5 * s.n * gi.mu_H[s.n + b] * w[t];
        }
        dirac_resid = std::max(dirac_resid, norm2(lhs));
        parallel_resid = std::max(parallel_resid, horizontal_parallel_residual(geo, spec, cc, fp));
    }
    return {dirac_resid, parallel_resid};
}

// theorem conditions only, no witnesses
inline MorphismReport check_conditions(const SpinGeometry& geo, const PullbackSpec& spec) {
    const Scenario& s = *geo.s;
    const int n = s.n, k = s.k();
    MorphismReport rep;
    rep.tol = s.tol;
    const auto grid = sample_grid(s);
    rep.grid = {s.grid_per_axis, static_cast<int>(grid.size())};

    for (const auto& p : grid) {
        const FramePointData fp = geo.fb.frame_at(p);
        rep.max_conformality_residual = std::max(rep.max_conformality_residual, fp.conformality_residual);
        const ConnectionCoeffs cc = geo.fb.connection_at(p);
        const GeomInvariants gi = geom_invariants(geo.fb, fp, cc);

        VecR fund(s.m, 0.0);
        if (k == 1) {
            for (int t = 0; t < s.m; ++t) fund[t] = gi.mu_V[t] + (n - 1) * gi.grad_H_lnl[t];
            rep.mu_H_residual = std::max(rep.mu_H_residual, frame_norm(gi.mu_H));
        } else {
            for (int t = 0; t < s.m; ++t) fund[t] = k * gi.mu_V[t] + (n - 1) * gi.grad_H_lnl[t];
        }
        rep.fundamental_eq_residual = std::max(rep.fundamental_eq_residual, frame_norm(fund));

        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                rep.integrability_residual =
                    std::max(rep.integrability_residual, frame_norm(gi.I_H[i * n + j]));
    }

    auto [ad, ap] = check_alpha_conditions(geo, spec);
    rep.alpha_dirac_residual = ad;
    rep.alpha_parallel_residual = ap;

    Verdict v = detail::residual_verdict(rep.fundamental_eq_residual, s.tol.condition);
    v = detail::combine(v, detail::residual_verdict(rep.integrability_residual, s.tol.condition));
    if (k == 1) v = detail::combine(v, detail::residual_verdict(rep.mu_H_residual, s.tol.condition));
    v = detail::combine(v, detail::residual_verdict(rep.alpha_dirac_residual, s.tol.condition));
    v = detail::combine(v, detail::residual_verdict(rep.alpha_parallel_residual, s.tol.condition));
    rep.verdict = v;
    return rep;
}

// Harmonic witness spinors on a flat even target: random holomorphic psi+
// and antiholomorphic psi- polynomial coefficients, reproducible from the
// seed (raw mt19937 draws, no distribution adapters).
inline std::vector<ChartSpinorField> make_harmonic_witnesses(const SpinGeometry& geo, int count,
                                                             unsigned seed) {
    const Scenario& s = *geo.s;
    if (s.n != 2) throw Error("witness generation supports two-dimensional targets only");
    const MatR h0 = s.metric_N()(s.box_N.center());
    const double hdev = std::max({std::abs(h0(0, 0) - 1.0), std::abs(h0(0, 1)),
                                  std::abs(h0(1, 0)), std::abs(h0(1, 1) - 1.0)});
    if (hdev > 1e-12) throw Error("witness generation requires the standard flat target metric");
    std::mt19937 gen(seed);
    auto coef = [&gen]() {
        const double re = 2.0 * (static_cast<double>(gen()) / std::mt19937::max()) - 1.0;
        const double im = 2.0 * (static_cast<double>(gen()) / std::mt19937::max()) - 1.0;
        return cd(re, im);
    };
    std::vector<ChartSpinorField> out;
    out.reserve(count);
    for (int w = 0; w < count; ++w) {
        std::vector<cd> cp{coef(), coef(), coef()}, cm{coef(), coef(), coef()};
        ChartSpinorField f;
        f.dim = 2;
        f.frame_tag = "orthonormal-N";
        f.eval = [cp, cm](const VecR& q) {
            const cd z(q[0], q[1]);
            const cd zb = std::conj(z);
            return VecC{cp[0] + cp[1] * z + cp[2] * z * z, cm[0] + cm[1] * zb + cm[2] * zb * zb};
        };
        out.push_back(std::move(f));
    }
    return out;
}

// full classification: theorem conditions plus harmonic-witness pull-backs
inline MorphismReport classify(const SpinGeometry& geo, const PullbackSpec& spec,
                               const std::vector<ChartSpinorField>& witnesses) {
    const Scenario& s = *geo.s;
    MorphismReport rep = check_conditions(geo, spec);
    const auto grid = sample_grid(s);
    auto piM = s.map();

    for (const auto& w : witnesses) {
        // a witness must itself be harmonic on the relevant part of N
        double dn_resid = 0.0;
        for (const auto& p : grid) dn_resid = std::max(dn_resid, norm2(dirac_n(geo, w, piM(p))));
        if (dn_resid > s.tol.harmonicity)
            throw Error("witness spinor is not harmonic (residual " + std::to_string(dn_resid) + ")");

        PullbackSpec wspec = spec;
        wspec.psi = w;
        const ChartSpinorField pb = pullback_field(geo, wspec);
        double dm_resid = 0.0;
        for (const auto& p : grid) dm_resid = std::max(dm_resid, norm2(dirac_m(geo, pb, p)));
        rep.witness_residuals.push_back(dm_resid);
    }

    if (rep.verdict == Verdict::Yes) {
        for (double r : rep.witness_residuals)
            if (r > s.tol.harmonicity) {
                rep.verdict = Verdict::Inconclusive;
                rep.internal_inconsistency = true;
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// explicit first-order systems for flat 3->2 and 4->2 submersion candidates

struct CRConditionReport {
    double plus_branch = 0.0;   // holomorphic branch
    double minus_branch = 0.0;  // antiholomorphic branch
    double vertical_constancy = 0.0;  // d pi / d (fibre coordinates)
};

// For a map (R^3 or R^4, flat) -> (R^2, flat): pi must not depend on the
// fibre coordinates (x3, and x4 if present), and (pi1, pi2) must satisfy
// the Cauchy-Riemann system in (x1, x2) for the plus branch, or the
// sign-flipped system for the minus branch.
inline CRConditionReport cr_condition_check(const Scenario& s) {
    if (s.n != 2 || (s.m != 3 && s.m != 4))
        throw DimensionError("cr_condition_check expects flat 3->2 or 4->2 scenarios");
    CRConditionReport rep;
    auto piM = s.map();
    for (const auto& p : sample_grid(s)) {
        const MatR J = fd_jacobian(piM, p, s.fd);
        const double cr1 = J(0, 0) - J(1, 1), cr2 = J(0, 1) + J(1, 0);
        const double ar1 = J(0, 0) + J(1, 1), ar2 = J(0, 1) - J(1, 0);
        rep.plus_branch = std::max({rep.plus_branch, std::abs(cr1), std::abs(cr2)});
        rep.minus_branch = std::max({rep.minus_branch, std::abs(ar1), std::abs(ar2)});
        for (int c = 2; c < s.m; ++c)
            for (int r = 0; r < 2; ++r)
                rep.vertical_constancy = std::max(rep.vertical_constancy, std::abs(J(r, c)));
    }
    return rep;
}

}  // namespace spingeo
