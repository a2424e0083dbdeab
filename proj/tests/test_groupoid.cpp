#include "wittlab/groupoid.hpp"

#include "wittlab/error.hpp"

#include <doctest.h>

#include <random>

using namespace wittlab;

TEST_CASE("structure map values from the definitions") {
    auto ctx = WittContext::make(make_prime_field(2), 2);
    GroupoidPoint pt(ctx->from_json({0, 1}), ctx->from_json({1, 0}));
    // p*(0,1) = 0, so the target stays (1,0)
    CHECK(target(pt) == ctx->from_json({1, 0}));
    CHECK(source(pt) == ctx->from_json({1, 0}));

    std::mt19937_64 rng(17);
    for (int k = 0; k < 30; ++k) {
        auto r = ctx->random(rng, 2);
        CHECK(target(identity_at(r)) == r);
        CHECK(source(identity_at(r)) == r);
    }
}

TEST_CASE("composition of composable pairs") {
    auto ctx = WittContext::make(make_gf4(), 2);
    std::mt19937_64 rng(18);
    for (int k = 0; k < 50; ++k) {
        auto m1 = ctx->random(rng, 3), m2 = ctx->random(rng, 3), r = ctx->random(rng, 3);
        GroupoidPoint f(m1, r);
        GroupoidPoint g(m2, target(f));
        auto c = compose(f, g);
        CHECK(c.m == witt_add(m1, m2));
        CHECK(c.r == r);
        CHECK(source(c) == source(f));
        CHECK(target(c) == target(g));
    }
}

TEST_CASE("groupoid laws: associativity, identities, inverses") {
    auto ctx = WittContext::make(make_prime_field(3), 3);
    std::mt19937_64 rng(19);
    for (int k = 0; k < 100; ++k) {
        auto r = ctx->random(rng, 2);
        GroupoidPoint f(ctx->random(rng, 2), r);
        GroupoidPoint g(ctx->random(rng, 2), target(f));
        GroupoidPoint h(ctx->random(rng, 2), target(g));
        CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
        CHECK(compose(identity_at(source(f)), f) == f);
        CHECK(compose(f, identity_at(target(f))) == f);
        auto inv = inverse_morphism(f);
        CHECK(compose(f, inv) == identity_at(source(f)));
        CHECK(compose(inv, f) == identity_at(target(f)));
    }
}

TEST_CASE("non-composable pairs are rejected") {
    auto ctx = WittContext::make(make_prime_field(2), 2);
    GroupoidPoint f(ctx->one(2), ctx->zero(2));
    // target(f) = p*1 = (0,1) != (1,0)
    GroupoidPoint g(ctx->one(2), ctx->from_json({1, 0}));
    CHECK_THROWS_WITH_AS(compose(f, g), doctest::Contains("NotComposable"), error);
}

TEST_CASE("morphism products: special values from the ring structure") {
    auto ctx = WittContext::make(make_gf4(), 2);
    std::mt19937_64 rng(20);
    for (int k = 0; k < 40; ++k) {
        auto m = ctx->random(rng, 2), mp = ctx->random(rng, 2);
        auto r = ctx->random(rng, 2), rp = ctx->random(rng, 2);
        // (m,0)(m',0) = (p m m', 0)
        auto prod0 = morphism_mul(GroupoidPoint(m, ctx->zero(2)), GroupoidPoint(mp, ctx->zero(2)));
        CHECK(prod0.m == mul_p(witt_mul(m, mp)));
        CHECK(prod0.r == ctx->zero(2));
        // e is a ring homomorphism: (0,r)(0,r') = (0, r r')
        auto prod1 = morphism_mul(identity_at(r), identity_at(rp));
        CHECK(prod1.m == ctx->zero(2));
        CHECK(prod1.r == witt_mul(r, rp));
    }
}

TEST_CASE("s, t, c, e are ring homomorphisms on 100 random pairs in W_3(F_4)") {
    auto ctx = WittContext::make(make_gf4(), 2);
    std::mt19937_64 rng(21);
    for (int k = 0; k < 100; ++k) {
        GroupoidPoint a(ctx->random(rng, 3), ctx->random(rng, 3));
        GroupoidPoint b(ctx->random(rng, 3), ctx->random(rng, 3));
        auto sum = morphism_add(a, b);
        auto prod = morphism_mul(a, b);
        CHECK(source(sum) == witt_add(source(a), source(b)));
        CHECK(source(prod) == witt_mul(source(a), source(b)));
        CHECK(target(sum) == witt_add(target(a), target(b)));
        CHECK(target(prod) == witt_mul(target(a), target(b)));
        // e respects both operations
        auto r1 = ctx->random(rng, 3), r2 = ctx->random(rng, 3);
        CHECK(identity_at(witt_add(r1, r2)) == morphism_add(identity_at(r1), identity_at(r2)));
        CHECK(identity_at(witt_mul(r1, r2)) == morphism_mul(identity_at(r1), identity_at(r2)));
        // c is a ring homomorphism on composable pairs: build matched pairs
        GroupoidPoint a2(ctx->random(rng, 3), target(a));
        GroupoidPoint b2(ctx->random(rng, 3), target(b));
        auto lhs = morphism_mul(compose(a, a2), compose(b, b2));
        auto rhs = compose(morphism_mul(a, b), morphism_mul(a2, b2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pi0 over char p: projection to the 0th coordinate") {
    auto ctx = WittContext::make(make_prime_field(2), 2);
    // ring homomorphism, exhaustively over W_2(F_2)
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) {
            auto x = ctx->vector_at(i, 2), y = ctx->vector_at(j, 2);
            auto R = ctx->ring();
            CHECK(pi0_projection(witt_add(x, y)) == R->add(pi0_projection(x), pi0_projection(y)));
            CHECK(pi0_projection(witt_mul(x, y)) == R->mul(pi0_projection(x), pi0_projection(y)));
        }
    // projection([a]) = a
    CHECK(pi0_projection(ctx->teichmuller(ctx->ring()->one(), 2)) == ctx->ring()->one());
}

TEST_CASE("projection kills p-multiples: 10^4 sampled pairs in W_3(F_4)") {
    auto ctx = WittContext::make(make_gf4(), 2);
    std::mt19937_64 rng(22);
    for (int k = 0; k < 10000; ++k) {
        auto x = ctx->random(rng, 3), m = ctx->random(rng, 3);
        CHECK(pi0_projection(witt_add(x, mul_p(m))) == pi0_projection(x));
    }
}

TEST_CASE("pi0 representable form demands char p") {
    auto ctx = WittContext::make(make_integers_mod(4), 2);
    CHECK_THROWS_WITH_AS(pi0_projection(ctx->one(2)), doctest::Contains("CharMismatch"), error);
}

TEST_CASE("pi0 cosets match the projection kernel on W_2(F_2) and W_2(F_4)") {
    for (auto R : {make_prime_field(2), RingPtr(make_gf4())}) {
        auto ctx = WittContext::make(R, 2);
        auto cosets = pi0_cosets(ctx, 2);
        // x ~ y iff x - y is a p-multiple iff same 0th coordinate here
        auto card = mpz_get_ui(R->cardinality()->get_mpz_t());
        CHECK(cosets.size() == card);
        unsigned long total = 0;
        for (const auto& c : cosets) {
            total += c.size();
            Elem proj = pi0_projection(ctx->vector_at(c.front(), 2));
            for (const auto& idx : c)
                CHECK(pi0_projection(ctx->vector_at(idx, 2)) == proj);
        }
        CHECK(total == card * card);
    }
}

TEST_CASE("pi1 of W_2(F_2) and basic membership") {
    auto ctx = WittContext::make(make_prime_field(2), 2);
    auto tors = pi1_elements(ctx, 2);
    REQUIRE(tors.size() == 2);
    CHECK(tors[0] == ctx->from_json({0, 0}));
    CHECK(tors[1] == ctx->from_json({0, 1}));
    CHECK(pi1_contains(ctx->zero(3)));
    // cross-check V-shaped members against the direct p x = 0 test in W_3(F_4)
    auto c4 = WittContext::make(make_gf4(), 2);
    for (long i = 0; i < 64; ++i) {
        auto x = c4->vector_at(i, 3);
        bool direct = (mul_p(x) == c4->zero(3));
        CHECK(direct == pi1_contains(x));
    }
}
