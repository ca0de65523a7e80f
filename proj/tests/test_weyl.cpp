#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "orbindex/symplectic.hpp"
#include "orbindex/weyl.hpp"

using namespace orbindex;

namespace {

WeylElement gen_p(int n, int i, uint32_t mask = 0) { return WeylElement::generator(n, i, mask); }
WeylElement gen_q(int n, int i, uint32_t mask = 0) { return WeylElement::generator(n, n + i, mask); }

WeylElement random_weyl(std::mt19937_64& rng, int n, int max_deg, int terms, uint32_t mask = 0) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> expd(0, max_deg);
    WeylElement w(n, mask);
    for (int t = 0; t < terms; ++t) {
        Mono m(static_cast<size_t>(2 * n), 0);
        int remaining = expd(rng);
        std::uniform_int_distribution<int> pick(0, 2 * n - 1);
        for (int d = 0; d < remaining; ++d) ++m[static_cast<size_t>(pick(rng))];
        int c = coef(rng);
        if (c == 0) c = 1;
        w += WeylElement::monomial(n, m, Laurent(c), mask);
    }
    return w;
}

}  // namespace

TEST_CASE("star product on generators") {
    WeylElement p = gen_p(1, 0), q = gen_q(1, 0);
    CHECK(star(WeylElement::one(1), q) == q);
    CHECK(star(p, q) == p.mul(q) + WeylElement::scalar(1, Laurent::h_power(1)));
    // [p, q] = 2h
    CHECK(star(p, q) - star(q, p) == WeylElement::scalar(1, Laurent::h_power(1) * rat(2)));
}

TEST_CASE("star degree-0 part is the commutative product") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        WeylElement a = random_weyl(rng, 2, 3, 3);
        WeylElement b = random_weyl(rng, 2, 3, 3);
        WeylElement s = star(a, b);
        WeylElement c = a.mul(b);
        WeylElement s0(2, 0);
        for (const auto& [m, coeff] : s.terms()) {
            Cyclotomic c0 = coeff.coeff(0);
            if (!c0.is_zero()) s0 += WeylElement::monomial(2, m, Laurent(c0), 0);
        }
        REQUIRE(s0 == c);
    }
}

TEST_CASE("star associativity on random triples") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        WeylElement a = random_weyl(rng, n, 4, 3);
        WeylElement b = random_weyl(rng, n, 4, 3);
        WeylElement c = random_weyl(rng, n, 4, 3);
        REQUIRE(star(star(a, b), c) == star(a, star(b, c)));
    }
}

TEST_CASE("star associativity with complex pairs") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        uint32_t mask = 0b10;
        WeylElement a = random_weyl(rng, 2, 3, 3, mask);
        WeylElement b = random_weyl(rng, 2, 3, 3, mask);
        WeylElement c = random_weyl(rng, 2, 3, 3, mask);
        REQUIRE(star(star(a, b), c) == star(a, star(b, c)));
    }
}

TEST_CASE("complex generators satisfy [z, zb] = 4ih") {
    uint32_t mask = 1;
    WeylElement z = WeylElement::generator(1, 0, mask);
    WeylElement zb = WeylElement::generator(1, 1, mask);
    WeylElement comm = star(z, zb) - star(zb, z);
    CHECK(comm == WeylElement::scalar(1, Laurent::h_power(1, cyclo_i() * rat(4)), mask));
}

TEST_CASE("complex basis round trip and q1 conversion") {
    std::mt19937_64 rng(17);
    WeylElement q = gen_q(1, 0);
    WeylElement zq = to_complex_basis(q, 1);
    WeylElement expect =
        (WeylElement::generator(1, 0, 1) + WeylElement::generator(1, 1, 1)) * rat(1, 2);
    CHECK(zq == expect);
    for (int trial = 0; trial < 25; ++trial) {
        WeylElement a = random_weyl(rng, 2, 4, 4);
        REQUIRE(to_real_basis(to_complex_basis(a, 0b11), 0b11) == a);
        REQUIRE(to_real_basis(to_complex_basis(a, 0b10), 0b10) == a);
    }
    for (int trial = 0; trial < 15; ++trial) {
        WeylElement a = random_weyl(rng, 1, 3, 3);
        WeylElement b = random_weyl(rng, 1, 3, 3);
        REQUIRE(to_complex_basis(star(a, b), 1) ==
                star(to_complex_basis(a, 1), to_complex_basis(b, 1)));
    }
}

TEST_CASE("sp derivation") {
    WeylElement p = gen_p(1, 0), q = gen_q(1, 0);
    WeylElement h = p.mul(q);
    CHECK(sp_derivation(h, q) == q);
    CHECK(sp_derivation(h, p) == -p);
    CHECK(sp_derivation(h, WeylElement::one(1)).is_zero());
    CHECK_THROWS_AS(sp_derivation(q, p), domain_error);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        WeylElement a = random_weyl(rng, 2, 3, 3);
        WeylElement b = random_weyl(rng, 2, 3, 3);
        WeylElement hh = gen_p(2, 0).mul(gen_q(2, 0)) + gen_q(2, 1).mul(gen_q(2, 1)) * rat(1, 2);
        REQUIRE(sp_derivation(hh, star(a, b)) ==
                star(sp_derivation(hh, a), b) + star(a, sp_derivation(hh, b)));
    }
}

TEST_CASE("symplectomorphisms act as star automorphisms") {
    std::mt19937_64 rng(29);
    SymplecticMap rot = SymplecticMap::rotation(2, 0, Cyclotomic::root(3, 1));
    SymplecticMap flip = SymplecticMap::minus_one(2);
    for (int trial = 0; trial < 20; ++trial) {
        WeylElement a = random_weyl(rng, 2, 3, 3);
        WeylElement b = random_weyl(rng, 2, 3, 3);
        for (const auto& g : {rot, flip}) {
            REQUIRE(g.apply(star(a, b)) == star(g.apply(a), g.apply(b)));
        }
        REQUIRE((rot * flip).apply(a) == rot.apply(flip.apply(a)));
    }
    WeylElement pq_h =
        gen_p(1, 0).mul(gen_q(1, 0)) + WeylElement::scalar(1, Laurent::h_power(1));
    CHECK(SymplecticMap::identity(1).apply(pq_h) == pq_h);
    CHECK(SymplecticMap::minus_one(1).apply(pq_h) == pq_h);
}

TEST_CASE("sp derivation matches the matrix action on generators") {
    WeylElement h = gen_p(1, 0).mul(gen_q(1, 0));
    auto m = sp_matrix(h);
    CHECK(m[0][0] == Laurent(-1));
    CHECK(m[1][1] == Laurent(1));
    CHECK(m[0][1].is_zero());
    CHECK(m[1][0].is_zero());
    WeylElement h2 = gen_q(1, 0).mul(gen_q(1, 0)) * rat(1, 2);
    auto m2 = sp_matrix(h2);
    CHECK(m2[1][0] == Laurent(-1));
    CHECK(m2[0][0].is_zero());
    CHECK(m2[0][1].is_zero());
    CHECK(m2[1][1].is_zero());
}

TEST_CASE("rotation eigenvalue convention: gamma(z) = lambda z") {
    Cyclotomic lam = Cyclotomic::root(3, 1);
    SymplecticMap rot = SymplecticMap::rotation(1, 0, lam);
    WeylElement z = gen_q(1, 0) + gen_p(1, 0) * cyclo_i();
    WeylElement image = rot.apply(z);
    CHECK(image == z * lam);
    CHECK(rot.order() == 3);
}

TEST_CASE("rendering") {
    WeylElement p = gen_p(1, 0), q = gen_q(1, 0);
    CHECK(star(p, q).str() == "h + p1*q1");
    CHECK((p.mul(p).mul(q) * rat(-1, 2)).str() == "-1/2*p1^2*q1");
    CHECK(WeylElement::one(1).str() == "1");
}
