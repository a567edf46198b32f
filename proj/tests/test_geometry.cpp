#include <doctest.h>

#include <cmath>

#include "spingeo/corpus.hpp"
#include "spingeo/geometry.hpp"

using namespace spingeo;

TEST_CASE("linear conformal projection: lambda 2, vertical span, zero residual") {
    Scenario s = fixture("proj3to2").scenario;
    s.pi = make_vector_field({"2*x1", "2*x2"}, 3);
    s.box_N.lo = {-1.2, -1.2};
    s.box_N.hi = {1.2, 1.2};
    FrameBuilder fb(s);
    const FramePointData fp = fb.frame_at({0.05, -0.1, 0.08});
    CHECK(fp.lambda == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fp.conformality_residual < 1e-10);
    // V spans the third coordinate axis
    CHECK(std::abs(fp.V[0][0]) < 1e-10);
    CHECK(std::abs(fp.V[0][1]) < 1e-10);
    CHECK(std::abs(std::abs(fp.V[0][2]) - 1.0) < 1e-10);
}

TEST_CASE("non-conformal map is rejected with distinct singular values") {
    Scenario s = fixture("proj3to2").scenario;
    s.pi = make_vector_field({"x1", "2*x2"}, 3);
    s.box_N.lo = {-1.2, -1.2};
    s.box_N.hi = {1.2, 1.2};
    FrameBuilder fb(s);
    CHECK_THROWS_WITH_AS(static_cast<void>(fb.frame_at({0.0, 0.0, 0.0})),
                         doctest::Contains("not horizontally conformal"), Error);
    const FramePointData fp = fb.frame_at({0.0, 0.0, 0.0}, false);
    CHECK(fp.conformality_residual > 0.1);
}

TEST_CASE("rank-deficient map is rejected as a non-submersion") {
    Scenario s = fixture("proj3to2").scenario;
    s.pi = make_vector_field({"x1", "x1"}, 3);
    CHECK_THROWS_AS(FrameBuilder fb(s), RankError);
}

TEST_CASE("heisenberg adapted frame matches the closed-form coframe") {
    const Fixture f = fixture("heisenberg");
    FrameBuilder fb(f.scenario);
    const VecR p{0.12, -0.07, 0.03};
    const FramePointData fp = fb.frame_at(p);
    CHECK(fp.lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fp.conformality_residual < 1e-9);
    // E1 = d1, E2 = d2 + x1 d3, V = d3
    CHECK(fp.E[0][0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(fp.E[0][1]) < 1e-9);
    CHECK(std::abs(fp.E[0][2]) < 1e-9);
    CHECK(fp.E[1][1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fp.E[1][2] == doctest::Approx(p[0]).epsilon(1e-7));
    CHECK(std::abs(fp.V[0][0]) < 1e-9);
    CHECK(std::abs(fp.V[0][1]) < 1e-9);
    CHECK(fp.V[0][2] == doctest::Approx(1.0).epsilon(1e-9));
    // d pi (V) = 0 and frame Gram matrices are identities
    const MatR G = f.scenario.g.eval_matrix_real(p);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(gdot(G, fp.E[i], fp.E[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
    CHECK(std::abs(gdot(G, fp.E[0], fp.V[0])) < 1e-10);
    CHECK(std::abs(gdot(G, fp.E[1], fp.V[0])) < 1e-10);
    CHECK(std::abs(gdot(G, fp.V[0], fp.V[0]) - 1.0) < 1e-10);
    // d pi kills the vertical frame and maps the lifts onto X
    const MatR J = fd_jacobian(f.scenario.map(), p, f.scenario.fd);
    CHECK(norm2(J * fp.V[0]) < 1e-10);
    const VecR JE1 = J * fp.E1[0];
    CHECK(std::abs(JE1[0] - fp.X[0][0]) < 1e-9);
    CHECK(std::abs(JE1[1] - fp.X[0][1]) < 1e-9);
}

TEST_CASE("o'neill alternation at unit dilation: (nabla_{E_i} E_j)^V = half the bracket") {
    const Fixture f = fixture("heisenberg");
    FrameBuilder fb(f.scenario);
    const VecR p{0.08, -0.04, 0.06};
    const ConnectionCoeffs cc = fb.connection_at(p);
    const FramePointData fp = fb.frame_at(p);
    const GeomInvariants gi = geom_invariants(fb, fp, cc);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(cc.at(i, j, 2) - 0.5 * gi.I_H[i * 2 + j][2]) < 1e-7);
}

TEST_CASE("flat coordinate frame has a vanishing connection") {
    const Fixture f = fixture("proj3to2");
    FrameBuilder fb(f.scenario);
    const ConnectionCoeffs cc = fb.connection_at({0.05, 0.02, -0.1});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) CHECK(std::abs(cc.at(a, b, c)) < 1e-9);
}

TEST_CASE("heisenberg connection coefficients match the hand Koszul values") {
    // [E1,E2] = V, all other brackets zero:
    // c(0,1,2) = 1/2, c(0,2,1) = -1/2, c(1,2,0) = 1/2, c(2,0,1) = -1/2 etc.
    const Fixture f = fixture("heisenberg");
    FrameBuilder fb(f.scenario);
    for (const VecR& p : {VecR{0.0, 0.0, 0.0}, VecR{0.1, -0.05, 0.12}}) {
        const ConnectionCoeffs cc = fb.connection_at(p);
        CHECK(cc.at(0, 1, 2) == doctest::Approx(0.5).epsilon(1e-7));
        CHECK(cc.at(0, 2, 1) == doctest::Approx(-0.5).epsilon(1e-7));
        CHECK(cc.at(1, 0, 2) == doctest::Approx(-0.5).epsilon(1e-7));
        CHECK(cc.at(1, 2, 0) == doctest::Approx(0.5).epsilon(1e-7));
        CHECK(cc.at(2, 0, 1) == doctest::Approx(-0.5).epsilon(1e-7));
        CHECK(cc.at(2, 1, 0) == doctest::Approx(0.5).epsilon(1e-7));
        // entries diagonal in the last two slots vanish by antisymmetry
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(cc.at(a, b, b) == 0.0);
    }
}

TEST_CASE("warped metric: g(nabla_V V, E_i) = -d_i f for g33 = exp(2 f)") {
    const Fixture f = fixture("warped_nonminimal");  // f = x1
    FrameBuilder fb(f.scenario);
    const ConnectionCoeffs cc = fb.connection_at({0.07, -0.02, 0.05});
    CHECK(cc.at(2, 2, 0) == doctest::Approx(-1.0).epsilon(1e-7));  // g(nabla_V V, E1)
    CHECK(std::abs(cc.at(2, 2, 1)) < 1e-7);
}

TEST_CASE("metric compatibility is exact and torsion matches brackets") {
    const Fixture f = fixture("heisenberg");
    FrameBuilder fb(f.scenario);
    const VecR p{0.06, 0.11, -0.04};
    const ConnectionCoeffs cc = fb.connection_at(p);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) CHECK(cc.at(a, b, c) == -cc.at(a, c, b));
    // torsion check for the one nonzero bracket: c(0,1,g) - c(1,0,g) = g([E1,E2], e_g)
    CHECK(cc.at(0, 1, 2) - cc.at(1, 0, 2) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(std::abs(cc.at(0, 1, 0) - cc.at(1, 0, 0)) < 1e-7);
    CHECK(std::abs(cc.at(0, 1, 1) - cc.at(1, 0, 1)) < 1e-7);
}

TEST_CASE("geometric invariants on the corpus oracles") {
    SUBCASE("flat projection: everything vanishes") {
        const Fixture f = fixture("proj3to2");
        FrameBuilder fb(f.scenario);
        const VecR p{0.03, -0.08, 0.02};
        const FramePointData fp = fb.frame_at(p);
        const GeomInvariants gi = geom_invariants(fb, fp, fb.connection_at(p));
        CHECK(frame_norm(gi.mu_V) < 1e-8);
        CHECK(frame_norm(gi.mu_H) < 1e-8);
        CHECK(frame_norm(gi.grad_H_lnl) < 1e-8);
        for (const auto& v : gi.I_H) CHECK(frame_norm(v) < 1e-8);
    }
    SUBCASE("warped fibre: mu_V = -grad f with f = x1") {
        const Fixture f = fixture("warped_nonminimal");
        FrameBuilder fb(f.scenario);
        const VecR p{0.04, 0.09, -0.06};
        const FramePointData fp = fb.frame_at(p);
        const GeomInvariants gi = geom_invariants(fb, fp, fb.connection_at(p));
        CHECK(gi.mu_V[0] == doctest::Approx(-1.0).epsilon(1e-7));
        CHECK(std::abs(gi.mu_V[1]) < 1e-7);
        CHECK(fp.lambda == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(frame_norm(gi.mu_H) < 1e-7);
    }
    SUBCASE("heisenberg: unit integrability tensor, minimal fibres") {
        const Fixture f = fixture("heisenberg");
        FrameBuilder fb(f.scenario);
        const VecR p{-0.05, 0.03, 0.1};
        const FramePointData fp = fb.frame_at(p);
        const GeomInvariants gi = geom_invariants(fb, fp, fb.connection_at(p));
        CHECK(frame_norm(gi.I_H[0 * 2 + 1]) == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(frame_norm(gi.mu_V) < 1e-7);
        // A_{E_1}V = -1/2 E_2 and A_{E_2}V = 1/2 E_1 from the hand Koszul table
        CHECK(gi.A[0 * 1 + 0][1] == doctest::Approx(-0.5).epsilon(1e-7));
        CHECK(gi.A[1 * 1 + 0][0] == doctest::Approx(0.5).epsilon(1e-7));
    }
    SUBCASE("conformal balance on the warped_conformal fixture") {
        const Fixture f = fixture("warped_conformal");
        FrameBuilder fb(f.scenario);
        const VecR p{0.05, -0.03, 0.08, 0.02};
        const FramePointData fp = fb.frame_at(p);
        CHECK(fp.lambda == doctest::Approx(std::exp(2.0 * p[0])).epsilon(1e-8));
        const GeomInvariants gi = geom_invariants(fb, fp, fb.connection_at(p));
        // mu_V = -e^{2 x1} E_1, grad_H ln lambda = 2 e^{2 x1} E_1
        CHECK(gi.mu_V[0] == doctest::Approx(-std::exp(2.0 * p[0])).epsilon(1e-6));
        CHECK(gi.grad_H_lnl[0] == doctest::Approx(2.0 * std::exp(2.0 * p[0])).epsilon(1e-6));
        const VecR fund = 2.0 * gi.mu_V + gi.grad_H_lnl;
        CHECK(frame_norm(fund) < 1e-6);
    }
}

TEST_CASE("mean curvature of the horizontal distribution equals grad_V ln lambda") {
    const Scenario s = vertical_dilation_scenario();
    FrameBuilder fb(s);
    for (const auto& p : sample_grid(s, 2)) {
        const FramePointData fp = fb.frame_at(p);
        CHECK(fp.lambda == doctest::Approx(std::exp(p[2])).epsilon(1e-8));
        const GeomInvariants gi = geom_invariants(fb, fp, fb.connection_at(p));
        const VecR diff = gi.mu_H - gi.grad_V_lnl;
        CHECK(frame_norm(diff) < 1e-6);
        CHECK(gi.mu_H[2] == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("holo3to2: dilation from the complex derivative, straight fibres") {
    const Fixture f = fixture("holo3to2");
    FrameBuilder fb(f.scenario);
    const VecR p{1.05, 0.08, -0.02};
    const double r = std::hypot(p[0], p[1]);
    const FramePointData fp = fb.frame_at(p);
    CHECK(fp.lambda == doctest::Approx(2.0 * r).epsilon(1e-8));
    const GeomInvariants gi = geom_invariants(fb, fp, fb.connection_at(p));
    CHECK(frame_norm(gi.mu_V) < 1e-6);
    CHECK(frame_norm(gi.grad_H_lnl) == doctest::Approx(1.0 / r).epsilon(1e-6));
    for (const auto& v : gi.I_H) CHECK(frame_norm(v) < 1e-6);
    CHECK(frame_norm(gi.mu_H) < 1e-6);
}

TEST_CASE("sample grid respects margins") {
    const Fixture f = fixture("proj3to2");
    const auto grid = sample_grid(f.scenario, 3);
    CHECK(grid.size() == 27);
    for (const auto& p : grid)
        for (int a = 0; a < 3; ++a) {
            CHECK(p[a] >= f.scenario.box_M.lo[a] + 0.19 * f.scenario.box_M.side(a));
            CHECK(p[a] <= f.scenario.box_M.hi[a] - 0.19 * f.scenario.box_M.side(a));
        }
}
