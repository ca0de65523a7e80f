#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "orbindex/cocycle.hpp"

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

}  // namespace

TEST_CASE("simplex integration") {
    CHECK(simplex_monomial_integral({0, 0}) == rat(1, 2));
    CHECK(simplex_monomial_integral({1, 0}) == rat(1, 6));
    CHECK(simplex_monomial_integral({1, 1}) == rat(1, 8));
    CHECK(simplex_monomial_integral({}) == rat(1));
    CHECK(simplex_monomial_integral({0, 0, 0, 0}) == rat(1, 24));
}

TEST_CASE("alpha pair operator") {
    // alpha_{01} on p (x) q (x) 1 -> (1/2) 1 (x) 1 (x) 1
    int k = 1;
    WeylElement p = WeylElement::generator(k, 0), q = WeylElement::generator(k, 1);
    SlotTensor t = SlotTensor::from_tuple({p, q, WeylElement::one(k)}, 2 * k);
    SlotTensor a = alpha_pair(t, 0, 1);
    REQUIRE(a.terms.size() == 1);
    CHECK(a.terms[0].slots[0] == WeylElement::one(k));
    CHECK(a.terms[0].slots[1] == WeylElement::one(k));
    auto it = a.terms[0].coeff.terms().begin();
    CHECK(it->second == Laurent(rat(1, 2)));
    // constant slot kills derivatives
    SlotTensor t2 = SlotTensor::from_tuple({WeylElement::one(k), p, q}, 2 * k);
    CHECK(alpha_pair(t2, 0, 1).is_zero());
    // nilpotence: applying more than the total degree kills
    SlotTensor t3 = SlotTensor::from_tuple({p, q, WeylElement::one(k)}, 2 * k);
    SlotTensor once = alpha_pair(t3, 0, 1);
    CHECK(alpha_pair(once, 0, 1).is_zero());
    CHECK_THROWS_AS(alpha_pair(t3, 0, 5), domain_error);
}

TEST_CASE("pi operator") {
    int k = 1;
    WeylElement y1 = WeylElement::generator(k, 0), y2 = WeylElement::generator(k, 1);
    SlotTensor t = SlotTensor::from_tuple({WeylElement::one(k), y1, y2}, 2 * k);
    SlotTensor out = pi_operator(t, k);
    REQUIRE(out.terms.size() == 1);  // the odd permutation dies on derivative
    CHECK(out.terms[0].slots[1] == WeylElement::one(k));
    CHECK(out.terms[0].slots[2] == WeylElement::one(k));
}

TEST_CASE("tau_2 normalization: tau(c_2) = 1") {
    CocycleEvaluator tau(1);
    Chain c2 = fundamental_cycle(1, 1);
    CHECK(tau.eval_chain(c2) == Laurent(1));
}

TEST_CASE("tau_2 is normalized and a cocycle") {
    CocycleEvaluator tau(1);
    // vanishes when an inner slot is 1
    std::mt19937_64 rng(3);
    WeylElement a = random_weyl(rng, 1, 3, 3);
    CHECK(tau({WeylElement::one(1), WeylElement::one(1), a}).is_zero());
    CHECK(tau({a, WeylElement::one(1), a}).is_zero());

    // untwisted coboundary vanishes on random 4-tuples
    Automorphism id = [](const WeylElement& x) { return x; };
    auto f = [&tau](const std::vector<WeylElement>& t) { return tau(t); };
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<WeylElement> tuple;
        for (int s = 0; s < 4; ++s) tuple.push_back(random_weyl(rng, 1, 3, 3));
        REQUIRE(cochain_coboundary(f, id, tuple).is_zero());
    }
}

TEST_CASE("tau_4 on the fundamental cycle") {
    CocycleEvaluator tau(2);
    Chain c4 = fundamental_cycle(2, 2);
    CHECK(tau.eval_chain(c4) == Laurent(1));
}

TEST_CASE("twisted trace closed form") {
    // single eigenvalue -1: tr(1) = 1/2, tr(z zb) = 0
    auto d = TwistedTraceData::from_eigenvalues({Cyclotomic(-1)});
    uint32_t full = 1;
    WeylElement one = WeylElement::one(1, full);
    WeylElement z = WeylElement::generator(1, 0, full);
    WeylElement zb = WeylElement::generator(1, 1, full);
    CHECK(twisted_trace(d, one) == Laurent(rat(1, 2)));
    CHECK(twisted_trace(d, z.mul(zb)).is_zero());
    // real-basis input is rejected
    CHECK_THROWS_AS(twisted_trace(d, WeylElement::one(1)), domain_error);
}

TEST_CASE("twisted trace identity on random pairs") {
    std::mt19937_64 rng(7);
    for (const auto& lam : {Cyclotomic(-1), Cyclotomic::root(3, 1), Cyclotomic::root(4, 1),
                            Cyclotomic::root(6, 1)}) {
        auto d = TwistedTraceData::from_eigenvalues({lam});
        uint32_t full = 1;
        for (int trial = 0; trial < 25; ++trial) {
            WeylElement a = random_weyl(rng, 1, 4, 3, full);
            WeylElement b = random_weyl(rng, 1, 4, 3, full);
            Laurent lhs = twisted_trace(d, star(a, b));
            Laurent rhs = twisted_trace(d, star(twisted_action(d, b), a));
            REQUIRE(lhs == rhs);
        }
    }
    // two eigenvalues: symmetry under permuting the eigenvalue slots
    {
        auto d12 = TwistedTraceData::from_eigenvalues({Cyclotomic(-1), Cyclotomic::root(3, 1)});
        auto d21 = TwistedTraceData::from_eigenvalues({Cyclotomic::root(3, 1), Cyclotomic(-1)});
        std::mt19937_64 r2(8);
        for (int trial = 0; trial < 10; ++trial) {
            WeylElement a = random_weyl(r2, 2, 3, 4, 0b11);
            // swap the two pairs in a
            WeylElement swapped(2, 0b11);
            for (const auto& [m, c] : a.terms()) {
                Mono ms = {m[1], m[0], m[3], m[2]};
                swapped += WeylElement::monomial(2, ms, c, 0b11);
            }
            REQUIRE(twisted_trace(d12, a) == twisted_trace(d21, swapped));
        }
    }
}

TEST_CASE("twisted cocycle: value on the fundamental cycle") {
    // tau^gamma(c_2) = det^{-1}(1 - gamma^{-1}) = prod (1 - conj lambda)^{-1}
    for (const auto& lam : {Cyclotomic(-1), Cyclotomic::root(3, 1), Cyclotomic::root(4, 1)}) {
        TwistedCocycle tg(1, TwistedTraceData::from_eigenvalues({lam}));
        Chain c2 = fundamental_cycle(1, 2, tg.complex_mask());
        Laurent expect(
            (Cyclotomic(1) - lam.conj()).inverse());
        CHECK(tg.eval_chain(c2) == expect);
    }
}

TEST_CASE("twisted cocycle: coboundary vanishes") {
    std::mt19937_64 rng(11);
    TwistedCocycle tg(1, TwistedTraceData::from_eigenvalues({Cyclotomic(-1)}));
    uint32_t mask = tg.complex_mask();
    Automorphism gamma = [&tg](const WeylElement& x) { return tg.gamma(x); };
    auto f = [&tg](const std::vector<WeylElement>& t) { return tg(t); };
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<WeylElement> tuple;
        for (int s = 0; s < 4; ++s) tuple.push_back(random_weyl(rng, 2, 3, 2, mask));
        REQUIRE(cochain_coboundary(f, gamma, tuple).is_zero());
    }
    // pairing consistency: tau^gamma on chain-level boundaries vanishes
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<WeylElement> tuple;
        for (int s = 0; s < 4; ++s) tuple.push_back(random_weyl(rng, 2, 2, 2, mask));
        Chain b = twisted_boundary(Chain::single(tuple), gamma);
        REQUIRE(tg.eval_chain(b).is_zero());
    }
}

TEST_CASE("h-invariance and insertion vanishing") {
    std::mt19937_64 rng(13);
    Cyclotomic lam = Cyclotomic::root(3, 1);
    TwistedCocycle tg(1, TwistedTraceData::from_eigenvalues({lam}));
    uint32_t mask = tg.complex_mask();
    const int n = 2;
    // spanning quadratics of h = sp_2 (+) sp^gamma_2: p1^2, p1 q1, q1^2, z zb
    std::vector<WeylElement> hs;
    {
        WeylElement p = WeylElement::generator(n, 0, mask);
        WeylElement q = WeylElement::generator(n, 2, mask);
        WeylElement z = WeylElement::generator(n, 1, mask);
        WeylElement zb = WeylElement::generator(n, 3, mask);
        hs = {p.mul(p), p.mul(q), q.mul(q), z.mul(zb)};
    }
    for (const auto& h : hs) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<WeylElement> tuple;
            for (int s = 0; s < 3; ++s) tuple.push_back(random_weyl(rng, n, 2, 2, mask));
            // (i): sum over slots of tau(... [h, a_i] ...) = 0
            Laurent acc;
            for (int i = 0; i < 3; ++i) {
                auto t2 = tuple;
                t2[static_cast<size_t>(i)] = star_commutator(h, tuple[static_cast<size_t>(i)]);
                acc += tg(t2);
            }
            REQUIRE(acc.is_zero());
            // (iii): alternating insertion of h vanishes
            std::vector<WeylElement> base = {tuple[0], tuple[1]};
            Laurent ins;
            for (int i = 1; i <= 2; ++i) {
                std::vector<WeylElement> t3;
                for (int j = 0; j < i; ++j) t3.push_back(base[static_cast<size_t>(j)]);
                t3.push_back(h);
                for (int j = i; j < 2; ++j) t3.push_back(base[static_cast<size_t>(j)]);
                ins += (i % 2 == 0) ? tg(t3) : -tg(t3);
            }
            REQUIRE(ins.is_zero());
        }
    }
}
