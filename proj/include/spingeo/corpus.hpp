// Built-in fixtures with closed-form geometry. Every expected value below is
// derived by hand in the oracle_note of its fixture; the test suites compare
// the numerical pipeline against these derivations.
#pragma once

#include <string>
#include <vector>

#include "spingeo/morphism.hpp"
#include "spingeo/scenario.hpp"

namespace spingeo {

struct FixtureExpected {
    double lambda_at_center = 1.0;
    double mu_V_norm = 0.0;
    double mu_H_norm = 0.0;
    double I_H_norm = 0.0;
    Verdict verdict = Verdict::Yes;
    // which condition carries the failure for "no" fixtures
    std::string responsible;  // "", "fundamental", "integrability", "mu_H"
};

struct Fixture {
    std::string name;
    Scenario scenario;
    FixtureExpected expected;
    std::string oracle_note;
};

namespace detail {

inline Box centered_box(const VecR& center, double side) {
    Box b;
    b.lo.resize(center.size());
    b.hi.resize(center.size());
    for (size_t a = 0; a < center.size(); ++a) {
        b.lo[a] = center[a] - side / 2.0;
        b.hi[a] = center[a] + side / 2.0;
    }
    return b;
}

inline Scenario base_scenario(const std::string& name, int m, int n, const Box& bm, const Box& bn) {
    Scenario s;
    s.name = name;
    s.m = m;
    s.n = n;
    s.box_M = bm;
    s.box_N = bn;
    s.g = Field::identity_matrix(m, m);
    s.h = Field::identity_matrix(n, n);
    s.fd.h = 1e-4 * bm.diameter();
    s.fd.order = 4;
    return s;
}

}  // namespace detail

inline Fixture fixture(const std::string& name) {
    using detail::base_scenario;
    using detail::centered_box;

    if (name == "proj3to2") {
        Fixture f;
        f.scenario = base_scenario(name, 3, 2, centered_box({0, 0, 0}, 0.5), centered_box({0, 0}, 1.2));
        f.scenario.pi = make_vector_field({"x1", "x2"}, 3);
        f.name = name;
        f.expected = {1.0, 0.0, 0.0, 0.0, Verdict::Yes, ""};
        f.oracle_note =
            "Standard projection of flat R^3 onto flat R^2. Fibres are x3-lines, hence "
            "geodesics (mu_V = 0); the horizontal distribution is the coordinate (x1,x2)-plane "
            "field, integrable (I_H = 0) and with totally geodesic leaves (mu_H = 0); "
            "pi*h = g on H gives lambda = 1. All connection coefficients vanish for the "
            "coordinate frame of the flat metric, so pull-backs of harmonic spinors are "
            "harmonic: a Dirac morphism.";
        return f;
    }
    if (name == "proj4to2") {
        Fixture f;
        f.scenario = base_scenario(name, 4, 2, centered_box({0, 0, 0, 0}, 0.5), centered_box({0, 0}, 1.2));
        f.scenario.pi = make_vector_field({"x1", "x2"}, 4);
        f.name = name;
        f.expected = {1.0, 0.0, 0.0, 0.0, Verdict::Yes, ""};
        f.oracle_note =
            "Standard projection of flat R^4 onto flat R^2 with two-dimensional flat fibres. "
            "Same closed form as proj3to2: all Christoffel symbols of the coordinate frame "
            "vanish, so mu_V = mu_H = 0, I_H = 0, lambda = 1. With a constant vertical spinor "
            "alpha, the vertical connection is flat: D^V alpha = 0 and alpha is parallel in "
            "horizontal directions. A Dirac morphism.";
        return f;
    }
    if (name == "warped_nonminimal") {
        Fixture f;
        f.scenario = base_scenario(name, 3, 2, centered_box({0, 0, 0}, 0.5), centered_box({0, 0}, 1.2));
        f.scenario.g = make_matrix_field({"1", "0", "0",
                                          "0", "1", "0",
                                          "0", "0", "exp(2*x1)"}, 3, 3);
        f.scenario.pi = make_vector_field({"x1", "x2"}, 3);
        f.name = name;
        f.expected = {1.0, 1.0, 0.0, 0.0, Verdict::No, "fundamental"};
        f.oracle_note =
            "g = dx1^2 + dx2^2 + e^{2 x1} dx3^2, pi = (x1, x2). The unit vertical is "
            "V = e^{-x1} d3; the diagonal-metric Christoffel symbol G^1_33 = -(1/2) d1 g33 "
            "= -e^{2 x1} gives nabla_V V = -d1, so mu_V = -grad(x1) with |mu_V| = 1. "
            "lambda = 1 and H is the integrable coordinate plane (I_H = 0, mu_H = 0). "
            "The fundamental equation residual |mu_V + (n-1) grad_H ln lambda| = 1: "
            "not a Dirac morphism (fibres are not minimal).";
        return f;
    }
    if (name == "heisenberg") {
        Fixture f;
        f.scenario = base_scenario(name, 3, 2, centered_box({0, 0, 0}, 0.5), centered_box({0, 0}, 1.2));
        // g = dx1^2 + dx2^2 + (dx3 - x1 dx2)^2
        f.scenario.g = make_matrix_field({"1", "0", "0",
                                          "0", "1 + x1^2", "-x1",
                                          "0", "-x1", "1"}, 3, 3);
        f.scenario.pi = make_vector_field({"x1", "x2"}, 3);
        f.name = name;
        f.expected = {1.0, 0.0, 0.0, 1.0, Verdict::No, "integrability"};
        f.oracle_note =
            "Heisenberg-type invariant metric: g = dx1^2 + dx2^2 + theta^2 with "
            "theta = dx3 - x1 dx2, pi = (x1, x2). Adapted frame E1 = d1, E2 = d2 + x1 d3, "
            "V = d3 (all g-unit, lambda = 1). The only nonzero bracket is [E1, E2] = d3 = V, "
            "so I_H(E1,E2) = V with norm 1, and Koszul gives G_12^3 = 1/2, G_13^2 = -1/2, "
            "G_23^1 = 1/2 (cyclic, all others zero): mu_V = 0, mu_H = 0. Horizontal "
            "distribution is not integrable: not a Dirac morphism.";
        return f;
    }
    if (name == "warped_conformal") {
        Fixture f;
        f.scenario = base_scenario(name, 4, 2, centered_box({0, 0, 0, 0}, 0.5), centered_box({0, 0}, 1.2));
        f.scenario.g = make_matrix_field({"exp(-4*x1)", "0", "0", "0",
                                          "0", "exp(-4*x1)", "0", "0",
                                          "0", "0", "exp(2*x1)", "0",
                                          "0", "0", "0", "exp(2*x1)"}, 4, 4);
        f.scenario.pi = make_vector_field({"x1", "x2"}, 4);
        f.name = name;
        f.expected = {1.0, 1.0, 0.0, 0.0, Verdict::Yes, ""};
        f.oracle_note =
            "g = e^{-4 x1}(dx1^2 + dx2^2) + e^{2 x1}(dx3^2 + dx4^2), pi = (x1, x2): "
            "horizontally conformal with lambda = e^{2 x1} (pi*h = I = lambda^2 g on H). "
            "Fibre warp w = e^{x1}: unit verticals V_a = e^{-x1} d_{2+a} give "
            "nabla_{V_a} V_a = -e^{4 x1} d1, so mu_V = -e^{4 x1} d1 = -e^{2 x1} E_1 in the "
            "unit frame E_i = e^{2 x1} d_i, while grad_H ln lambda = 2 e^{2 x1} E_1; hence "
            "(m-n) mu_V + (n-1) grad_H ln lambda = 0 identically. H is a coordinate plane "
            "field (integrable) and the mixed Christoffel symbols g(nabla_{E_i} V_a, V_b) "
            "vanish, so a constant alpha is horizontally parallel with D^V alpha = 0. "
            "mu_V does not vanish (g-norm e^{2 x1}, equal to 1 at the center) but the "
            "conformal balance holds: a Dirac morphism.";
        return f;
    }
    if (name == "flat_principal") {
        Fixture f;
        f.scenario = base_scenario(name, 4, 2, centered_box({0, 0, 0, 0}, 0.5), centered_box({0, 0}, 1.2));
        f.scenario.pi = make_vector_field({"x1", "x2"}, 4);
        f.scenario.alpha = make_spinor_field({"1", "0"}, 4);
        f.name = name;
        f.expected = {1.0, 0.0, 0.0, 0.0, Verdict::Yes, ""};
        f.oracle_note =
            "Flat principal-bundle model: product R^2 x R^2 with an abelian translation "
            "group acting on the fibre factor, flat invariant connection (horizontal "
            "distribution = coordinate planes), constant alpha. All structure constants "
            "vanish, so D^V alpha = 0 and alpha is horizontally parallel; mu_V = mu_H = 0, "
            "I_H = 0, lambda = 1. The flat bundle is a Dirac morphism; contrast with "
            "heisenberg, whose invariant connection has curvature I_H != 0.";
        return f;
    }
    if (name == "holo3to2") {
        Fixture f;
        Box bm = detail::centered_box({1.0, 0.0, 0.0}, 0.5);
        Box bn;
        bn.lo = {0.30, -0.85};
        bn.hi = {1.75, 0.85};
        f.scenario = base_scenario(name, 3, 2, bm, bn);
        f.scenario.pi = make_vector_field({"x1^2 - x2^2", "2*x1*x2"}, 3);
        f.name = name;
        f.expected = {2.0, 0.0, 0.0, 0.0, Verdict::No, "fundamental"};
        f.oracle_note =
            "pi = (x1^2 - x2^2, 2 x1 x2) on a box centered at (1,0,0), the complex square "
            "in z = x1 + i x2, constant in x3. d pi restricted to the (x1,x2)-plane is "
            "conformal with factor |2z|, so lambda = 2 |z| (= 2 at the center) and the "
            "fibres are straight x3-lines: mu_V = 0. H = span(d1, d2) is integrable "
            "(I_H = 0) and lambda is x3-independent (mu_H = grad_V ln lambda = 0). But "
            "grad_H ln lambda = (x1, x2)/|z|^2 has norm 1/|z| != 0, so the fundamental "
            "equation fails with residual |mu_V + (n-1) grad_H ln lambda| = 1/|z|: "
            "not a Dirac morphism.";
        return f;
    }
    throw Error("unknown fixture '" + name + "'");
}

inline std::vector<std::string> list_fixtures() {
    return {"proj3to2",  "proj4to2",      "warped_nonminimal", "heisenberg",
            "warped_conformal", "flat_principal", "holo3to2"};
}

// Auxiliary scenario (not part of the fixture registry): a vertically
// varying dilation, used to probe the identity mu_H = grad_V ln lambda.
// g = e^{-2 x3}(dx1^2 + dx2^2) + dx3^2, pi = (x1, x2), lambda = e^{x3}.
// Unit horizontals E_i = e^{x3} d_i satisfy [E_i, V] = -E_i with V = d3,
// so Koszul gives g(nabla_{E_i} E_i, V) = 1 and mu_H = V = grad_V ln lambda.
// mu_V = 0 (straight fibres, g33 = 1) but mu_H != 0, so the codimension-one
// minimality condition fails: not a Dirac morphism.
inline Scenario vertical_dilation_scenario() {
    Scenario s = detail::base_scenario("vertical_dilation", 3, 2,
                                       detail::centered_box({0, 0, 0}, 0.5),
                                       detail::centered_box({0, 0}, 1.2));
    s.g = make_matrix_field({"exp(-2*x3)", "0", "0",
                             "0", "exp(-2*x3)", "0",
                             "0", "0", "1"}, 3, 3);
    s.pi = make_vector_field({"x1", "x2"}, 3);
    return s;
}

}  // namespace spingeo
