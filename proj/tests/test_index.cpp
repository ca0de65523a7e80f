#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbindex/char_index.hpp"
#include "orbindex/symplectic.hpp"

using namespace orbindex;

namespace {

RingModelPtr one_gen_ring(int top) {
    RingModel r;
    r.generator_names = {"x"};
    r.generator_degrees = {2};
    r.top_degree = top;
    Mono m{static_cast<uint16_t>(top / 2)};
    r.integrals[m] = Cyclotomic(1);
    return std::make_shared<RingModel>(r);
}

}  // namespace

TEST_CASE("a-hat series coefficients") {
    Sector s;
    s.ring = one_gen_ring(8);
    RingElement x = RingElement::generator(s.ring, 0);
    s.tangent_roots = {x};
    RingElement a = a_hat_class(s);
    CHECK(a.coeff(Mono{0}) == Laurent(1));
    CHECK(a.coeff(Mono{2}) == Laurent(rat(-1, 24)));
    CHECK(a.coeff(Mono{4}) == Laurent(rat(7, 5760)));

    // no roots -> 1
    Sector s0;
    s0.ring = one_gen_ring(4);
    CHECK(a_hat_class(s0) == RingElement::scalar(s0.ring, Laurent(1)));

    // multiplicativity over disjoint root sets
    Sector s2;
    s2.ring = one_gen_ring(8);
    RingElement y = RingElement::generator(s2.ring, 0);
    s2.tangent_roots = {y, y};
    Sector s2a;
    s2a.ring = s2.ring;
    s2a.tangent_roots = {y};
    CHECK(a_hat_class(s2) == a_hat_class(s2a) * a_hat_class(s2a));
}

TEST_CASE("twisted chern character") {
    Sector s;
    s.ring = one_gen_ring(4);
    RingElement x = RingElement::generator(s.ring, 0);
    // trivial line
    BundleBlock triv{Cyclotomic(1), {RingElement(s.ring)}};
    CHECK(chern_twisted({triv}, s) == RingElement::scalar(s.ring, Laurent(1)));
    // mu = zeta3 line with root x
    BundleBlock tw{Cyclotomic::root(3, 1), {x}};
    RingElement ch = chern_twisted({tw}, s);
    Mono m0{0}, m1{1}, m2{2};
    CHECK(ch.coeff(m0) == Laurent(Cyclotomic::root(3, 1)));
    CHECK(ch.coeff(m1) == Laurent(Cyclotomic::root(3, 1)));
    CHECK(ch.coeff(m2) == Laurent(Cyclotomic::root(3, 1) * rat(1, 2)));
}

TEST_CASE("normal factor") {
    // single lambda = -1, root 0: factor 2, inverse 1/2
    Sector s;
    s.ring = one_gen_ring(2);
    s.normal = {{Cyclotomic(-1), RingElement(s.ring)}};
    RingElement f = normal_factor_inverse(s);
    CHECK(f == RingElement::scalar(s.ring, Laurent(rat(1, 2))));

    // no normal blocks: 1
    Sector s0;
    s0.ring = one_gen_ring(2);
    CHECK(normal_factor_inverse(s0) == RingElement::scalar(s0.ring, Laurent(1)));

    // lambda = zeta4, root x at top degree 2: series inversion against direct product
    Sector s1;
    s1.ring = one_gen_ring(2);
    RingElement x = RingElement::generator(s1.ring, 0);
    s1.normal = {{Cyclotomic::root(4, 1), x}};
    RingElement inv = normal_factor_inverse(s1);
    RingElement direct = RingElement::scalar(s1.ring, Laurent(1)) -
                         (-x).exp() * Laurent(Cyclotomic::root(4, 1).inverse());
    CHECK(inv * direct == RingElement::scalar(s1.ring, Laurent(1)));

    // lambda = 1 rejected
    Sector sbad;
    sbad.ring = one_gen_ring(2);
    sbad.normal = {{Cyclotomic(1), RingElement(sbad.ring)}};
    CHECK_THROWS_AS(normal_factor_inverse(sbad), domain_error);
}

TEST_CASE("point quotient index = invariant dimension") {
    for (long order = 1; order <= 8; ++order) {
        for (long repexp = 0; repexp < order; ++repexp) {
            OrbifoldModel model = models::point_quotient(order, repexp);
            Cyclotomic idx = kawasaki_index(model);
            Cyclotomic expect(repexp % order == 0 ? 1 : 0);
            INFO("order=", order, " rep=", repexp);
            REQUIRE(idx == expect);
            // independent character-orthogonality oracle
            Cyclotomic osum;
            for (long j = 0; j < order; ++j) osum += Cyclotomic::root(order, repexp * j);
            REQUIRE(idx == osum * rat(1, order));
        }
    }
}

TEST_CASE("football and torus indices match the fixed point oracle") {
    for (long m : {2L, 3L, 4L}) {
        OrbifoldModel model = models::football(m);
        Cyclotomic idx = kawasaki_index(model);
        CHECK(idx == Cyclotomic(1));
        REQUIRE(model.lefschetz.has_value());
        CHECK(lefschetz_oracle(*model.lefschetz) == idx);
    }
    OrbifoldModel torus = models::torus_z2();
    Cyclotomic idx = kawasaki_index(torus);
    CHECK(idx == Cyclotomic(1));
    CHECK(lefschetz_oracle(*torus.lefschetz) == idx);
}

TEST_CASE("bundle difference E = F gives zero") {
    OrbifoldModel model = models::football(2);
    for (auto& s : model.sectors) s.bundle_f = s.bundle_e;
    CHECK(kawasaki_index(model) == Cyclotomic());
}

TEST_CASE("sector sum locality") {
    OrbifoldModel model = models::football(3);
    Cyclotomic full = kawasaki_index(model);
    OrbifoldModel partial = model;
    Sector dropped = partial.sectors.back();
    partial.sectors.pop_back();
    partial.geometric = false;
    Cyclotomic less = kawasaki_index(partial);
    Laurent contrib = sector_integral(dropped,
                                      (chern_twisted(dropped.bundle_e, dropped) -
                                       chern_twisted(dropped.bundle_f, dropped)) *
                                          normal_factor_inverse(dropped) *
                                          a_hat_class(dropped)) *
                      rat(1, dropped.m);
    CHECK(Laurent(full) == Laurent(less) + contrib);
}

TEST_CASE("deformed index h-structure") {
    Rational c = rat(5, 3);
    OrbifoldModel model = models::football_deformed(2, c);
    Laurent idx = algebraic_index(model);
    // h^0 coefficient: the undeformed index
    CHECK(idx.coeff(0) == Cyclotomic(1));
    // h^{-1} coefficient: -c times the rank-weighted volume of the main sector
    CHECK(idx.coeff(-1) == Cyclotomic(-c));
    // c = 0 recovers the integer index exactly
    OrbifoldModel flat = models::football_deformed(2, rat(0));
    CHECK(algebraic_index(flat) == Laurent(1));
    // omega = 0 reduces algebraic to kawasaki on every gallery model
    for (long m : {2L, 3L, 4L}) {
        OrbifoldModel plain = models::football(m);
        CHECK(algebraic_index(plain) == Laurent(kawasaki_index(plain)));
    }
}

TEST_CASE("additivity in bundles") {
    OrbifoldModel a = models::football(3);
    OrbifoldModel b = models::football(3);
    // b: E' = twisted line with mu = zeta3^j at sector gamma^j on cone points
    for (auto& s : b.sectors) {
        if (s.normal.empty()) continue;
        s.bundle_e[0].mu = s.normal[0].first;
    }
    b.geometric = false;
    OrbifoldModel joint = a;
    for (size_t i = 0; i < joint.sectors.size(); ++i) {
        auto blocks = b.sectors[i].bundle_e;
        joint.sectors[i].bundle_e.insert(joint.sectors[i].bundle_e.end(), blocks.begin(),
                                         blocks.end());
    }
    joint.geometric = false;
    CHECK(kawasaki_index(joint) == kawasaki_index(a) + kawasaki_index(b));
}

TEST_CASE("non-integer geometric result is flagged") {
    OrbifoldModel model = models::football(2);
    model.sectors.pop_back();  // break the model
    CHECK_THROWS_AS(kawasaki_index(model), domain_error);
}

TEST_CASE("sector weights match centralizer orders of the acting group") {
    for (long m : {2L, 3L, 4L}) {
        OrbifoldModel model = models::football(m);
        FiniteSubgroup grp({SymplecticMap::rotation(1, 0, Cyclotomic::root(m, 1))});
        for (const auto& s : model.sectors) {
            if (s.normal.empty()) continue;  // main sector: principal isotropy 1
            // point sectors: isotropy = centralizer of the sector element,
            // which in the cyclic group is the whole group
            REQUIRE(s.m == static_cast<long>(grp.size()));
        }
        REQUIRE(model.sectors[0].m == 1);
    }
}
