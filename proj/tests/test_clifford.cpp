#include <doctest.h>

#include <complex>
#include <random>

#include "spingeo/clifford.hpp"

using namespace spingeo;

namespace {

// test-side oracle: complex determinant by Gaussian elimination
cd det(MatC A) {
    const int n = A.rows;
    cd d(1.0);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(A(r, c)) > std::abs(A(piv, c))) piv = r;
        if (std::abs(A(piv, c)) < 1e-14) return cd(0.0);
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(c, j));
            d = -d;
        }
        d *= A(c, c);
        for (int r = c + 1; r < n; ++r) {
            const cd f = A(r, c) / A(c, c);
            for (int j = c; j < n; ++j) A(r, j) -= f * A(c, j);
        }
    }
    return d;
}

double anticommutator_norm(const MatC& a, const MatC& b) {
    return norm_max(a * b + b * a);
}

void check_gamma_invariants(const std::vector<MatC>& gs, int dim) {
    const MatC id = MatC::identity(gs[0].rows);
    for (int a = 0; a < dim; ++a) {
        CHECK(norm_max(gs[a] * gs[a] + id) < 1e-12);                    // g_a^2 = -1
        CHECK(norm_max(dagger(gs[a]) * gs[a] - id) < 1e-12);            // unitary
        CHECK(norm_max(dagger(gs[a]) + gs[a]) < 1e-12);                 // skew-Hermitian
        for (int b = a + 1; b < dim; ++b) CHECK(anticommutator_norm(gs[a], gs[b]) < 1e-12);
    }
}

}  // namespace

TEST_CASE("canonical two-dimensional generators and the plane Dirac matrix") {
    const GammaRep rep = build_gamma(2);
    REQUIRE(rep.spinor_dim == 2);
    // g1 = [[0,-1],[1,0]], g2 = [[0,i],[i,0]]
    CHECK(rep.gammas[0](0, 0) == cd(0.0));
    CHECK(rep.gammas[0](0, 1) == cd(-1.0));
    CHECK(rep.gammas[0](1, 0) == cd(1.0));
    CHECK(rep.gammas[0](1, 1) == cd(0.0));
    CHECK(rep.gammas[1](0, 0) == cd(0.0));
    CHECK(rep.gammas[1](0, 1) == cd(0.0, 1.0));
    CHECK(rep.gammas[1](1, 0) == cd(0.0, 1.0));
    CHECK(rep.gammas[1](1, 1) == cd(0.0));
    // chirality diag(1,-1)
    CHECK(norm_max(rep.chirality - [] {
              MatC w(2, 2);
              w(0, 0) = 1.0;
              w(1, 1) = -1.0;
              return w;
          }()) < 1e-15);

    // assembling g1 a + g2 b for (a,b) = coefficients of (d1, d2) gives
    //   [[0, -(a - i b)], [a + i b, 0]]:
    // the operator matrix [[0, -d/dz],[d/dzbar, 0]] with d/dz = d1 - i d2.
    auto assembled = [&](cd a, cd b) { return a * rep.gammas[0] + b * rep.gammas[1]; };
    const MatC d1 = assembled(1.0, 0.0);
    CHECK(d1(0, 1) == cd(-1.0));
    CHECK(d1(1, 0) == cd(1.0));
    const MatC d2 = assembled(0.0, 1.0);
    CHECK(d2(0, 1) == cd(0.0, 1.0));
    CHECK(d2(1, 0) == cd(0.0, 1.0));
}

TEST_CASE("gamma invariants for dimensions 1 through 6") {
    for (int d = 1; d <= 6; ++d) {
        const GammaRep rep = build_gamma(d);
        REQUIRE(static_cast<int>(rep.gammas.size()) == d);
        REQUIRE(rep.spinor_dim == (1 << (d / 2)));
        check_gamma_invariants(rep.gammas, d);
        if (d % 2 == 0) {
            REQUIRE(rep.has_chirality);
            const MatC id = MatC::identity(rep.spinor_dim);
            CHECK(norm_max(rep.chirality * rep.chirality - id) < 1e-12);
            CHECK(norm_max(dagger(rep.chirality) - rep.chirality) < 1e-12);
            for (const auto& g : rep.gammas)
                CHECK(norm_max(rep.chirality * g + g * rep.chirality) < 1e-12);
        }
    }
}

TEST_CASE("build_gamma is deterministic") {
    const GammaRep a = build_gamma(5), b = build_gamma(5);
    for (int i = 0; i < 5; ++i) CHECK(norm_max(a.gammas[i] - b.gammas[i]) == 0.0);
}

TEST_CASE("dimension four: characteristic polynomial of each generator is (t^2+1)^2") {
    const GammaRep rep = build_gamma(4);
    for (const auto& g : rep.gammas) {
        for (cd t : {cd(0.3, 0.1), cd(-1.0, 0.5), cd(2.0, -0.7)}) {
            MatC m = t * MatC::identity(4) - g;
            const cd expect = (t * t + cd(1.0)) * (t * t + cd(1.0));
            CHECK(std::abs(det(m) - expect) < 1e-10);
        }
    }
}

TEST_CASE("adapted representation invariants") {
    for (auto [n, k] : {std::pair{2, 1}, {2, 2}, {2, 3}, {4, 1}, {4, 2}}) {
        const AdaptedRep rep = build_adapted_rep(n, k);
        REQUIRE(static_cast<int>(rep.total_gammas.size()) == n + k);
        REQUIRE(rep.spinor_dim == (1 << ((n + k) / 2)));
        check_gamma_invariants(rep.total_gammas, n + k);
        // conjugation squares to one, anticommutes with horizontal generators,
        // commutes with vertical ones
        const MatC id = MatC::identity(rep.spinor_dim);
        CHECK(norm_max(rep.conjugation * rep.conjugation - id) < 1e-12);
        for (int a = 0; a < n; ++a)
            CHECK(norm_max(rep.conjugation * rep.total_gammas[a] +
                           rep.total_gammas[a] * rep.conjugation) < 1e-12);
        for (int a = n; a < n + k; ++a)
            CHECK(norm_max(rep.conjugation * rep.total_gammas[a] -
                           rep.total_gammas[a] * rep.conjugation) < 1e-12);
    }
}

TEST_CASE("build_adapted_rep rejects odd base dimensions") {
    CHECK_THROWS_AS(build_adapted_rep(3, 1), DimensionError);
    CHECK_THROWS_AS(build_adapted_rep(0, 1), DimensionError);
}

TEST_CASE("adapted (2,1): volume element is plus identity, matching i*sigma family") {
    const AdaptedRep rep = build_adapted_rep(2, 1);
    const MatC vol = rep.total_gammas[0] * rep.total_gammas[1] * rep.total_gammas[2];
    CHECK(norm_max(vol - MatC::identity(2)) < 1e-14);

    // oracle: the Pauli family {i s1, i s2, i s3} has the same volume element
    MatC s1(2, 2), s2(2, 2), s3(2, 2);
    s1(0, 1) = s1(1, 0) = 1.0;
    s2(0, 1) = cd(0, -1);
    s2(1, 0) = cd(0, 1);
    s3(0, 0) = 1.0;
    s3(1, 1) = -1.0;
    const cd i(0, 1);
    const MatC vol_pauli = (i * s1) * (i * s2) * (i * s3);
    CHECK(norm_max(vol_pauli - MatC::identity(2)) < 1e-14);

    // vertical slot is i * diag(1,-1): V . psi = i (psi+, -psi-)
    const VecC psi{cd(0.3, 0.4), cd(-1.0, 2.0)};
    const VecC v = clifford_mul(rep, {0.0, 0.0, 1.0}, psi);
    CHECK(std::abs(v[0] - i * psi[0]) < 1e-15);
    CHECK(std::abs(v[1] + i * psi[1]) < 1e-15);
}

TEST_CASE("unit vertical action equals i times conjugation when the fibre is a line") {
    for (int n : {2, 4}) {
        const AdaptedRep rep = build_adapted_rep(n, 1);
        for (int b = 0; b < rep.spinor_dim; ++b) {
            VecC e(rep.spinor_dim, cd(0.0));
            e[b] = 1.0;
            VecR vert(n + 1, 0.0);
            vert[n] = 1.0;
            const VecC lhs = clifford_mul(rep, vert, e);
            const VecC rhs = cd(0, 1) * conjugate(rep, e);
            CHECK(norm2(lhs - rhs) < 1e-14);
        }
    }
}

TEST_CASE("adapted (2,2): kronecker oracle for horizontal and vertical action") {
    const AdaptedRep rep = build_adapted_rep(2, 2);
    const GammaRep base = build_gamma(2), fib = build_gamma(2);
    const VecC psi{cd(0.5, -1.0), cd(2.0, 0.25)};
    const VecC alpha{cd(-0.75, 0.5), cd(1.5, 1.0)};
    const VecC pb = kron(psi, alpha);

    // horizontal slot i: (g^N_i psi) (x) alpha
    for (int i = 0; i < 2; ++i) {
        VecR v(4, 0.0);
        v[i] = 1.0;
        const VecC got = clifford_mul(rep, v, pb);
        const VecC want = kron(base.gammas[i] * psi, alpha);
        CHECK(norm2(got - want) < 1e-14);
    }
    // vertical slot a: conj(psi) (x) (g^V_a alpha)
    for (int a = 0; a < 2; ++a) {
        VecR v(4, 0.0);
        v[2 + a] = 1.0;
        const VecC got = clifford_mul(rep, v, pb);
        const VecC want = kron(base.chirality * psi, fib.gammas[a] * alpha);
        CHECK(norm2(got - want) < 1e-14);
    }
    // conjugation = diag(1,-1) (x) identity
    const VecC got = conjugate(rep, pb);
    const VecC want = kron(base.chirality * psi, alpha);
    CHECK(norm2(got - want) < 1e-14);
}

TEST_CASE("conjugation is involutive") {
    const AdaptedRep rep = build_adapted_rep(2, 2);
    const VecC psi{cd(1, 2), cd(3, -1), cd(0, 1), cd(-2, 0.5)};
    CHECK(norm2(conjugate(rep, conjugate(rep, psi)) - psi) < 1e-15);

    const AdaptedRep rep1 = build_adapted_rep(2, 1);
    const VecC ab{cd(5, 1), cd(2, -3)};
    const VecC c = conjugate(rep1, ab);
    CHECK(c[0] == ab[0]);
    CHECK(c[1] == -ab[1]);
}

TEST_CASE("clifford_mul is linear and rejects shape mismatches") {
    const AdaptedRep rep = build_adapted_rep(2, 1);
    const VecC psi{cd(1, 0), cd(0, 1)};
    const VecC zero = clifford_mul(rep, {0, 0, 0}, psi);
    CHECK(norm2(zero) == 0.0);
    const VecC a = clifford_mul(rep, {0.3, -1.2, 0.7}, psi);
    const VecC b1 = clifford_mul(rep, {0.3, 0, 0}, psi);
    const VecC b2 = clifford_mul(rep, {0, -1.2, 0}, psi);
    const VecC b3 = clifford_mul(rep, {0, 0, 0.7}, psi);
    CHECK(norm2(a - (b1 + b2 + b3)) < 1e-14);
    CHECK_THROWS_AS(clifford_mul(rep, {1.0, 0.0}, psi), DimensionError);
    CHECK_THROWS_AS(clifford_mul(rep, {1, 0, 0}, VecC{cd(1)}), DimensionError);
}

TEST_CASE("polarized clifford relation and isometry on random inputs") {
    // hand-rolled generator: raw mt19937 draws keep the case reproducible
    std::mt19937 gen(42);
    auto u = [&gen] { return 2.0 * (static_cast<double>(gen()) / std::mt19937::max()) - 1.0; };
    for (auto [n, k] : {std::pair{2, 1}, {2, 2}, {4, 2}}) {
        const AdaptedRep rep = build_adapted_rep(n, k);
        const int m = n + k;
        for (int trial = 0; trial < 25; ++trial) {
            VecR v(m), w(m);
            for (int a = 0; a < m; ++a) {
                v[a] = u();
                w[a] = u();
            }
            VecC psi(rep.spinor_dim);
            for (int t = 0; t < rep.spinor_dim; ++t) psi[t] = cd(u(), u());
            // v.(w.psi) + w.(v.psi) = -2 <v,w> psi  (frame is orthonormal)
            const VecC lhs = clifford_mul(rep, v, clifford_mul(rep, w, psi)) +
                             clifford_mul(rep, w, clifford_mul(rep, v, psi));
            const VecC rhs = cd(-2.0 * dot(v, w)) * psi;
            CHECK(norm2(lhs - rhs) < 1e-12 * (1.0 + norm2(psi)));
            // |v.psi| = |v| |psi|
            CHECK(norm2(clifford_mul(rep, v, psi)) ==
                  doctest::Approx(norm2(v) * norm2(psi)).epsilon(1e-12));
        }
    }
}

TEST_CASE("two-form action") {
    const AdaptedRep rep = build_adapted_rep(2, 1);
    const VecC psi{cd(0.2, 0.5), cd(1.0, -0.3)};

    std::vector<VecR> zero(4, VecR(3, 0.0));
    CHECK(norm2(two_form_action(rep, zero, psi)) == 0.0);

    // F(0,1) = unit vertical: E1 . E2 . V . psi = psi (volume element is identity)
    std::vector<VecR> F(4, VecR(3, 0.0));
    F[0 * 2 + 1][2] = 1.0;
    F[1 * 2 + 0][2] = -1.0;
    const VecC got = two_form_action(rep, F, psi);
    CHECK(norm2(got - psi) < 1e-14);

    // swapping (i,j) with negated entries leaves the action unchanged
    std::vector<VecR> Fswap(4, VecR(3, 0.0));
    Fswap[1 * 2 + 0][2] = -1.0;
    Fswap[0 * 2 + 1][2] = 1.0;
    CHECK(norm2(two_form_action(rep, Fswap, psi) - got) == 0.0);

    std::vector<VecR> bad(4, VecR(3, 0.0));
    bad[0 * 2 + 1][2] = 1.0;  // missing the mirrored entry
    CHECK_THROWS_AS(two_form_action(rep, bad, psi), Error);
}
