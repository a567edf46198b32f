#include <doctest.h>

#include <cmath>
#include <functional>

#include "spingeo/fd.hpp"

using namespace spingeo;

TEST_CASE("central differences are exact on quadratics") {
    auto f = [](const VecR& p) { return p[0] * p[0]; };
    FDConfig cfg{1e-3, 2, false};
    CHECK(fd_derivative(f, {3.0}, 0, cfg) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("order-2 derivative of sin at 0") {
    auto f = [](const VecR& p) { return std::sin(p[0]); };
    FDConfig cfg{1e-3, 2, false};
    CHECK(fd_derivative(f, {0.0}, 0, cfg) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("order-4 derivative of exp(2x) at 0") {
    auto f = [](const VecR& p) { return std::exp(2.0 * p[0]); };
    FDConfig cfg{1e-2, 4, false};
    CHECK(std::abs(fd_derivative(f, {0.0}, 0, cfg) - 2.0) < 1e-7);
}

TEST_CASE("order-2 error scales as h^2") {
    auto f = [](const VecR& p) { return std::exp(p[0]); };
    auto err = [&](double h) {
        FDConfig cfg{h, 2, false};
        return std::abs(fd_derivative(f, {0.0}, 0, cfg) - 1.0);
    };
    const double r = err(1e-2) / err(5e-3);
    CHECK(r > 3.2);  // ratio ~ 4 when h halves
    CHECK(r < 4.8);
}

TEST_CASE("richardson extrapolation sharpens the order-2 stencil") {
    auto f = [](const VecR& p) { return std::sin(p[0]); };
    FDConfig plain{1e-2, 2, false};
    FDConfig rich{1e-2, 2, true};
    const double e_plain = std::abs(fd_derivative(f, {0.3}, 0, plain) - std::cos(0.3));
    const double e_rich = std::abs(fd_derivative(f, {0.3}, 0, rich) - std::cos(0.3));
    CHECK(e_rich < e_plain / 100.0);
}

TEST_CASE("complex-valued derivative") {
    auto f = [](const VecR& p) { return std::exp(cd(0.0, 1.0) * p[0]); };
    FDConfig cfg{1e-3, 4, false};
    const cd d = fd_derivative(f, {0.5}, 0, cfg);
    const cd want = cd(0.0, 1.0) * std::exp(cd(0.0, 0.5));
    CHECK(std::abs(d - want) < 1e-10);
}

TEST_CASE("jacobian of a linear map") {
    std::function<VecR(const VecR&)> f = [](const VecR& p) { return VecR{2.0 * p[0], 2.0 * p[1]}; };
    FDConfig cfg{1e-4, 2, false};
    const MatR J = fd_jacobian(f, {0.3, -0.2, 0.9}, cfg);
    CHECK(J.rows == 2);
    CHECK(J.cols == 3);
    CHECK(J(0, 0) == doctest::Approx(2.0));
    CHECK(J(1, 1) == doctest::Approx(2.0));
    CHECK(std::abs(J(0, 1)) < 1e-10);
    CHECK(std::abs(J(0, 2)) < 1e-10);
    CHECK(std::abs(J(1, 2)) < 1e-10);
}

TEST_CASE("jacobian oracle: hand-differentiated nonlinear map") {
    // f = (x1, x2 - x1 x3) at (1,1,1) -> [[1,0,0],[-1,1,-1]]
    std::function<VecR(const VecR&)> f = [](const VecR& p) {
        return VecR{p[0], p[1] - p[0] * p[2]};
    };
    FDConfig cfg{1e-4, 4, false};
    const MatR J = fd_jacobian(f, {1.0, 1.0, 1.0}, cfg);
    CHECK(J(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(J(0, 1)) < 1e-9);
    CHECK(std::abs(J(0, 2)) < 1e-9);
    CHECK(J(1, 0) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(J(1, 1) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(J(1, 2) == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("directional derivative combines coordinate partials") {
    auto f = [](const VecR& p) { return p[0] * p[0] + 3.0 * p[1]; };
    FDConfig cfg{1e-4, 2, false};
    // along (1, 2) at (1, 0): 2*1*1 + 3*2 = 8
    CHECK(fd_directional(f, {1.0, 0.0}, {1.0, 2.0}, cfg) == doctest::Approx(8.0).epsilon(1e-8));
}

TEST_CASE("vector-valued directional derivative") {
    auto f = [](const VecR& p) { return VecC{cd(p[0] * p[1], 0.0), cd(0.0, p[1])}; };
    FDConfig cfg{1e-4, 2, false};
    const VecC d = fd_directional(f, {2.0, 5.0}, {1.0, 0.0}, cfg);
    CHECK(std::abs(d[0] - cd(5.0, 0.0)) < 1e-9);
    CHECK(std::abs(d[1]) < 1e-12);
}

TEST_CASE("config validation") {
    auto f = [](const VecR& p) { return p[0]; };
    CHECK_THROWS_AS(fd_derivative(f, {0.0}, 0, FDConfig{-1.0, 2, false}), DomainError);
    CHECK_THROWS_AS(fd_derivative(f, {0.0}, 0, FDConfig{1e-3, 3, false}), DomainError);
}
