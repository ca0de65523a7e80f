#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "orbindex/lie_chern_weil.hpp"

using namespace orbindex;

namespace {

WeylElement random_weyl(std::mt19937_64& rng, int n, int max_deg, int terms, uint32_t mask = 0) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> expd(0, max_deg);
    WeylElement w(n, mask);
    for (int t = 0; t < terms; ++t) {
        Mono m(static_cast<size_t>(2 * n), 0);
        int deg = expd(rng);
        std::uniform_int_distribution<int> pick(0, 2 * n - 1);
        for (int d = 0; d < deg; ++d) ++m[static_cast<size_t>(pick(rng))];
        int c = coef(rng);
        if (c == 0) c = 1;
        w += WeylElement::monomial(n, m, Laurent(c), mask);
    }
    return w;
}

MatrixWeyl random_matrix_weyl(std::mt19937_64& rng, int N, int n, int max_deg, uint32_t mask) {
    MatrixWeyl m(N, n, mask);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m.at(i, j) = random_weyl(rng, n, max_deg, 2, mask);
    return m;
}

}  // namespace

TEST_CASE("cotrace at N = 1 reduces to the scalar cocycle") {
    std::mt19937_64 rng(3);
    Cyclotomic lam = Cyclotomic::root(3, 1);
    TwistedTraceData trace = TwistedTraceData::from_eigenvalues({lam});
    LieCocycle theta(1, trace, 1);
    TwistedCocycle tau(1, trace);
    uint32_t mask = tau.complex_mask();
    for (int trial = 0; trial < 10; ++trial) {
        WeylElement x0 = random_weyl(rng, 2, 2, 2, mask);
        WeylElement x1 = random_weyl(rng, 2, 2, 2, mask);
        WeylElement x2 = random_weyl(rng, 2, 2, 2, mask);
        Laurent lhs = theta({MatrixWeyl::embed_scalar(1, x1), MatrixWeyl::embed_scalar(1, x2)},
                            MatrixWeyl::embed_scalar(1, x0));
        Laurent rhs = tau({x0, x1, x2}) - tau({x0, x2, x1});
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("cotrace antisymmetry: repeated argument vanishes") {
    std::mt19937_64 rng(5);
    TwistedTraceData trace = TwistedTraceData::from_eigenvalues({Cyclotomic(-1)});
    LieCocycle theta(1, trace, 2);
    uint32_t mask = theta.mask();
    MatrixWeyl x = random_matrix_weyl(rng, 2, 2, 2, mask);
    MatrixWeyl x0 = random_matrix_weyl(rng, 2, 2, 2, mask);
    CHECK(theta({x, x}, x0).is_zero());
}

TEST_CASE("lie coboundary of the cocycle vanishes") {
    std::mt19937_64 rng(7);
    TwistedTraceData trace = TwistedTraceData::from_eigenvalues({Cyclotomic(-1)});
    LieCocycle theta(1, trace, 1);
    uint32_t mask = theta.mask();
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<MatrixWeyl> args;
        for (int s = 0; s < 3; ++s) args.push_back(random_matrix_weyl(rng, 1, 2, 2, mask));
        MatrixWeyl x0 = random_matrix_weyl(rng, 1, 2, 2, mask);
        REQUIRE(lie_coboundary(theta, args, x0).is_zero());
    }
}

TEST_CASE("projection and curvature basics") {
    // N = 1, pure Weyl parts, one fixed pair + one normal pair
    const int n = 2, N = 1;
    uint32_t mask = 0b10;
    auto gen = [&](int g) { return WeylElement::generator(n, g, mask); };
    WeylElement p1 = gen(0), q1 = gen(2);
    WeylElement z = gen(1), zb = gen(3);

    // degree-1 argument projects to zero
    CHECK(project_h(MatrixWeyl::embed_scalar(N, q1)).is_zero());
    // identity matrix tensor p1 q1 projects to itself
    MatrixWeyl pq = MatrixWeyl::embed_scalar(N, p1.mul(q1));
    CHECK(project_h(pq) == pq);
    // idempotence on h-elements
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        MatrixWeyl x = random_matrix_weyl(rng, 2, n, 3, mask);
        MatrixWeyl px = project_h(x);
        REQUIRE(project_h(px) == px);
    }

    // C(p1, u11) = -p1 q1
    WeylElement u11 = q1.mul(q1).mul(p1) * rat(1, 2);
    MatrixWeyl c1 = curvature(MatrixWeyl::embed_scalar(N, p1), MatrixWeyl::embed_scalar(N, u11));
    CHECK(c1 == -MatrixWeyl::embed_scalar(N, p1.mul(q1)));

    // C(p1, v1r) = -E_r at N = 2
    MatrixWeyl p1m = MatrixWeyl::embed_scalar(2, p1);
    MatrixWeyl v11 = MatrixWeyl::unit(2, 0, 0, q1);
    MatrixWeyl c2 = curvature(p1m, v11);
    CHECK(c2 == -MatrixWeyl::unit(2, 0, 0, WeylElement::one(n, mask)));

    // C(p1, w1s) = -z zb
    WeylElement w1 = q1.mul(z).mul(zb);
    MatrixWeyl c3 = curvature(MatrixWeyl::embed_scalar(N, p1), MatrixWeyl::embed_scalar(N, w1));
    CHECK(c3 == -MatrixWeyl::embed_scalar(N, z.mul(zb)));

    // antisymmetry
    CHECK(curvature(c1, c1).is_zero());
}

TEST_CASE("genus series pinned values") {
    TwistedTraceData trace = TwistedTraceData::from_eigenvalues({Cyclotomic(-1)});
    // x = 0: constant N * tr_gamma(1)
    {
        HElement x;
        x.fixed_quad = WeylElement(1, 0);
        x.normal_quad = WeylElement(1, 1);
        x.matrix = {{Laurent()}, };
        x.matrix.assign(2, std::vector<Laurent>(2));
        Jet s = genus_series(x, trace, 2);
        CHECK(s.coeff(0) == Laurent(rat(2, 2)));  // N=2 times tr(1)=1/2 -> 1
        CHECK(s.coeff(1).is_zero());
    }
    // sigma block alone at order 1: N + sigma t
    {
        HElement x;
        x.fixed_quad = WeylElement(1, 0);
        x.normal_quad = WeylElement(1, 1);
        x.matrix.assign(2, std::vector<Laurent>(2));
        x.matrix[0][0] = Laurent(5);
        Jet s = genus_series(x, trace, 1);
        CHECK(s.coeff(0) == Laurent(1));            // 2 * 1/2
        CHECK(s.coeff(1) == Laurent(rat(5, 2)));    // 5 * tr_gamma(1)
    }
    // Ahat factor alone, one nu: starts 1 + c2 (h nu)^2 t^2
    {
        TwistedTraceData none = TwistedTraceData::from_eigenvalues({});
        HElement x;
        x.fixed_quad = WeylElement::generator(1, 0).mul(WeylElement::generator(1, 1)) * rat(3);
        x.normal_quad = WeylElement(0, 0);
        x.matrix.assign(1, std::vector<Laurent>(1, Laurent()));
        Jet s = genus_series(x, none, 2);
        CHECK(s.coeff(0) == Laurent(1));
        CHECK(s.coeff(1).is_zero());
        // nu = 3: coefficient c2 * 9 * h^2 with c2 the pinned Ahat quadratic coefficient
        Laurent expect = Laurent::h_power(2) * rat(-3, 2);  // -(h nu)^2/6 at nu = 3
        CHECK(s.coeff(2) == expect);
    }
}

TEST_CASE("local index verification at k = 1") {
    for (const auto& lam : {Cyclotomic(-1), Cyclotomic::root(3, 1), Cyclotomic::root(4, 1)}) {
        for (int N : {1, 2}) {
            auto report = verify_local_index(1, {lam}, N);
            for (const auto& c : report.cases) {
                INFO(c.name, " lhs=", c.lhs, " rhs=", c.rhs);
                REQUIRE(c.pass);
            }
        }
    }
}

TEST_CASE("local index verification at k = 2, pure fixed part") {
    auto report = verify_local_index(2, {}, 1);
    for (const auto& c : report.cases) {
        INFO(c.name, " lhs=", c.lhs, " rhs=", c.rhs);
        REQUIRE(c.pass);
    }
}

TEST_CASE("unsupported ranges are rejected") {
    CHECK_THROWS_AS(verify_local_index(5, {}, 1), unsupported_error);
    CHECK_THROWS_AS(verify_local_index(1, {}, 9), unsupported_error);
}

TEST_CASE("V-twisted cocycle") {
    std::mt19937_64 rng(31);
    Cyclotomic lam = Cyclotomic::root(3, 1);
    TwistedTraceData trace = TwistedTraceData::from_eigenvalues({lam});
    uint32_t mask = 0b10;

    // trivial one-dimensional V reduces to the plain cocycle at N = 1
    {
        LieCocycle theta_v(1, trace, CMatrix::identity(1));
        LieCocycle theta_plain(1, trace, 1);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<MatrixWeyl> args = {random_matrix_weyl(rng, 1, 2, 2, mask),
                                            random_matrix_weyl(rng, 1, 2, 2, mask)};
            MatrixWeyl x0 = random_matrix_weyl(rng, 1, 2, 2, mask);
            REQUIRE(theta_v(args, x0) == theta_plain(args, x0));
        }
    }

    // regular representation of Z2 at gamma != e: the V-trace factor kills
    // identity-matrix arguments
    {
        CMatrix gv(2, 2);
        gv.at(0, 1) = Cyclotomic(1);
        gv.at(1, 0) = Cyclotomic(1);  // swap = regular rep of Z2 at the flip
        LieCocycle theta_v(1, trace, gv);
        std::vector<MatrixWeyl> args;
        for (int s = 0; s < 2; ++s)
            args.push_back(MatrixWeyl::embed_scalar(2, random_weyl(rng, 2, 2, 2, mask)));
        MatrixWeyl x0 = MatrixWeyl::embed_scalar(2, random_weyl(rng, 2, 2, 2, mask));
        CHECK(theta_v(args, x0).is_zero());
    }

    // gamma-twisted matrix trace cyclicity: tr(gv M0 M1) = tr(gv (gv^-1 M1 gv) M0)
    {
        CMatrix gv(2, 2);
        gv.at(0, 1) = Cyclotomic(1);
        gv.at(1, 0) = Cyclotomic(-1);
        CMatrix m0(2, 2), m1(2, 2);
        m0.at(0, 0) = Cyclotomic(2);
        m0.at(1, 0) = Cyclotomic(3);
        m1.at(0, 1) = Cyclotomic(5);
        m1.at(1, 1) = Cyclotomic(-1);
        auto tr = [](const CMatrix& m) {
            Cyclotomic t;
            for (int i = 0; i < m.rows(); ++i) t += m.at(i, i);
            return t;
        };
        Cyclotomic lhs = tr(gv * m0 * m1);
        Cyclotomic rhs = tr(gv * (gv.inverse() * m1 * gv) * m0);
        CHECK(lhs == rhs);
    }

    // infinite-order V action is rejected
    {
        CMatrix bad(1, 1);
        bad.at(0, 0) = Cyclotomic(2);
        CHECK_THROWS_AS(LieCocycle(1, trace, bad), domain_error);
    }
}

TEST_CASE("ev1 of the cocycle vanishes on h arguments") {
    std::mt19937_64 rng(37);
    TwistedTraceData trace = TwistedTraceData::from_eigenvalues({Cyclotomic(-1)});
    LieCocycle theta(1, trace, 1);
    uint32_t mask = theta.mask();
    auto gen = [&](int g) { return WeylElement::generator(2, g, mask); };
    // h arguments: quadratics on the fixed pair and the invariant z zb
    std::vector<MatrixWeyl> h_args = {
        MatrixWeyl::embed_scalar(1, gen(0).mul(gen(2))),
        MatrixWeyl::embed_scalar(1, gen(1).mul(gen(3))),
    };
    for (const auto& h : h_args) {
        for (int trial = 0; trial < 5; ++trial) {
            MatrixWeyl other = MatrixWeyl::embed_scalar(1, random_weyl(rng, 2, 3, 3, mask));
            REQUIRE(theta.ev1({h, other}).is_zero());
            REQUIRE(theta.ev1({other, h}).is_zero());
        }
    }
}

TEST_CASE("chern-weil pairing edge cases") {
    TwistedTraceData trace = TwistedTraceData::from_eigenvalues({Cyclotomic(-1)});
    const int n = 2;
    uint32_t mask = 0b10;
    auto gen = [&](int g) { return WeylElement::generator(n, g, mask); };
    WeylElement p1 = gen(0), q1 = gen(2);
    // q = 1: chi(P)(v1 ^ v2) = P(C(v1, v2)); with the E_r direction the genus
    // degree-1 value is -tr_gamma(1) = -1/2
    std::vector<MatrixWeyl> wedge = {MatrixWeyl::embed_scalar(1, p1),
                                     MatrixWeyl::embed_scalar(1, q1)};
    Laurent v = chern_weil(wedge, trace, 1);
    CHECK(v == Laurent(rat(-1, 2)));
    // zero wedge args
    std::vector<MatrixWeyl> zero_wedge = {MatrixWeyl(1, n, mask), MatrixWeyl(1, n, mask)};
    CHECK(chern_weil(zero_wedge, trace, 1).is_zero());
    CHECK_THROWS_AS(chern_weil(wedge, trace, 2), domain_error);
}

TEST_CASE("curvature lands in h on the vector-field family") {
    // arguments of the form q^a z^b p_i (x) 1, q^a z^b zb z (x) 1, q^a (x) E_st
    const int n = 2, N = 2;
    uint32_t mask = 0b10;
    TwistedTraceData trace = TwistedTraceData::from_eigenvalues({Cyclotomic::root(4, 1)});
    auto gen = [&](int g) { return WeylElement::generator(n, g, mask); };
    WeylElement q1 = gen(2), p1 = gen(0), z = gen(1), zb = gen(3);
    std::vector<MatrixWeyl> family = {
        MatrixWeyl::embed_scalar(N, p1),
        MatrixWeyl::embed_scalar(N, q1.mul(p1)),
        MatrixWeyl::embed_scalar(N, q1.mul(q1).mul(p1)),
        MatrixWeyl::embed_scalar(N, z.mul(zb).mul(p1)),
        MatrixWeyl::embed_scalar(N, q1.mul(z).mul(zb)),
        MatrixWeyl::unit(N, 0, 1, q1),
        MatrixWeyl::unit(N, 1, 0, q1.mul(q1)),
    };
    for (size_t i = 0; i < family.size(); ++i) {
        for (size_t j = i + 1; j < family.size(); ++j) {
            MatrixWeyl c = curvature(family[i], family[j]);
            // membership in h: splits into quadratic + constant-matrix parts
            REQUIRE_NOTHROW(HElement::split(c, 1, 1));
            MatrixWeyl back = MatrixWeyl::embed_scalar(N, c.trace().graded_part(2) * rat(1, N));
            for (int r = 0; r < N; ++r)
                for (int col = 0; col < N; ++col) {
                    Laurent c0 = c.at(r, col).constant_term();
                    if (!c0.is_zero())
                        back.at(r, col) += WeylElement::scalar(n, c0, mask);
                }
            REQUIRE(c == back);
        }
    }
}

TEST_CASE("local index verification at k = 2 with a twist") {
    auto report = verify_local_index(2, {Cyclotomic(-1)}, 1);
    REQUIRE(report.cases.size() == 16);
    for (const auto& c : report.cases) {
        INFO(c.name, " lhs=", c.lhs, " rhs=", c.rhs);
        REQUIRE(c.pass);
    }
}
