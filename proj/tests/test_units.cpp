#include "wittlab/units.hpp"

#include "wittlab/error.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace wittlab;

TEST_CASE("membership tests from the definitions") {
    auto ctx = WittContext::make(make_prime_field(2), 2);
    // (1,1) satisfies p*u = p
    CHECK(membership(ctx->from_json({1, 1}), Subobject::one_plus_wp));
    // (0,a) is killed by the level-dropping F
    CHECK(membership(ctx->from_json({0, 1}), Subobject::w_frobenius_kernel));
    // p-torsion
    CHECK(membership(ctx->from_json({0, 1}), Subobject::w_p_torsion));
    CHECK(!membership(ctx->from_json({1, 0}), Subobject::w_p_torsion));
    // mu_p: [1] yes, (1,1) no
    CHECK(membership(ctx->one(2), Subobject::mu_p));
    CHECK(!membership(ctx->from_json({1, 1}), Subobject::mu_p));
}

TEST_CASE("mu_p membership of Teichmuller roots of unity") {
    auto B = make_mu_p_coefficients(3); // F_3[t]/(t^3-1)
    auto ctx = WittContext::make(B, 3);
    Elem t = B->var_elem("t");
    CHECK(membership(ctx->teichmuller(t, 2), Subobject::mu_p));
    CHECK(membership(ctx->teichmuller(B->mul(t, t), 2), Subobject::mu_p));
}

TEST_CASE("special unit certificate") {
    auto ctx = WittContext::make(make_prime_field(2), 2);
    CHECK_NOTHROW(SpecialUnit(ctx->from_json({1, 1})));
    CHECK_THROWS_WITH_AS(SpecialUnit(ctx->from_json({0, 1})), doctest::Contains("NotSpecialUnit"),
                         error);
}

TEST_CASE("inverse of (1,a) over W_2(F_4) is itself when p = 2") {
    auto F4 = make_gf4();
    auto ctx = WittContext::make(F4, 2);
    Elem a = F4->var_elem("t");
    SpecialUnit u(ctx->from_coords({F4->one(), a}));
    auto inv = invert_special_unit(u);
    CHECK(inv == u.value()); // solve a + b = 0 in char 2
    // u = 1 -> 1
    CHECK(invert_special_unit(SpecialUnit(ctx->one(2))) == ctx->one(2));
}

TEST_CASE("every special unit of W_3(Z/8) is invertible (512 vectors)") {
    auto ctx = WittContext::make(make_integers_mod(8), 2);
    CHECK(ctx->space_size(3).value() == 512);
    auto units = enumerate_special_units(ctx, 3);
    CHECK(!units.empty());
    for (const auto& u : units) {
        auto inv = invert_special_unit(SpecialUnit(u));
        CHECK(witt_mul(u, inv) == ctx->one(3));
    }
}

TEST_CASE("every special unit of W_3(F_4) is invertible") {
    auto ctx = WittContext::make(make_gf4(), 2);
    auto units = enumerate_special_units(ctx, 3);
    CHECK(!units.empty());
    for (const auto& u : units) {
        auto inv = invert_special_unit(SpecialUnit(u));
        CHECK(witt_mul(u, inv) == ctx->one(3));
    }
}

TEST_CASE("inversion also works over Z/4 (p-nilpotent, not char p)") {
    auto ctx = WittContext::make(make_integers_mod(4), 2);
    auto units = enumerate_special_units(ctx, 2);
    CHECK(!units.empty());
    for (const auto& u : units) {
        auto inv = invert_special_unit(SpecialUnit(u));
        CHECK(witt_mul(u, inv) == ctx->one(2));
    }
}

TEST_CASE("inversion precondition: p-nilpotent base") {
    auto ctx = WittContext::make(make_integers(), 2);
    SpecialUnit u(ctx->one(2));
    CHECK_THROWS_WITH_AS(invert_special_unit(u), doctest::Contains("NotPNilpotent"), error);
}

TEST_CASE("decomposition example over F_2[s]/(s^2)") {
    auto R = make_mod_poly(2, {0, 0, 1}, "s"); // F_2[s]/(s^2)
    auto ctx = WittContext::make(R, 2);
    Elem s = R->var_elem("s");
    Elem zeta = R->add(R->one(), s); // (1+s)^2 = 1
    std::mt19937_64 rng(23);
    for (int k = 0; k < 10; ++k) {
        Elem a = R->random(rng);
        WittVector u = ctx->from_coords({zeta, a});
        REQUIRE(frobenius(u) == ctx->one(1));
        auto dec = decompose_gm_sharp(u);
        CHECK(dec.zeta == zeta);
        CHECK(R->is_zero(dec.w.coord(0)));
        CHECK(compose_gm_sharp(dec.zeta, dec.w) == u);
    }
    // u = 1 -> (1, 0)
    auto dec1 = decompose_gm_sharp(ctx->one(2));
    CHECK(dec1.zeta == R->one());
    CHECK(dec1.w == ctx->zero(2));
    // F(u) != 1 is rejected
    CHECK_THROWS_WITH_AS(decompose_gm_sharp(ctx->zero(2)), doctest::Contains("NotInKernel"), error);
}

TEST_CASE("square-zero kernel: all 0th-coordinate-zero pairs in W_2(F_4)") {
    auto ctx = WittContext::make(make_gf4(), 2);
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) {
            auto a = ctx->from_coords({ctx->ring()->zero(), ctx->ring()->element_at(i)});
            auto b = ctx->from_coords({ctx->ring()->zero(), ctx->ring()->element_at(j)});
            CHECK(witt_mul(a, b) == ctx->zero(2));
        }
}

TEST_CASE("f' is a monoid homomorphism and the decomposition is bijective") {
    // rings of size <= 16, W_3
    for (auto R : {make_prime_field(2), RingPtr(make_gf4()), make_dual_numbers(2),
                   make_prime_field(3)}) {
        Int p = R->characteristic();
        auto ctx = WittContext::make(R, p);
        auto units = enumerate_frobenius_kernel_units(ctx, 3);
        auto mu = enumerate_mu_p(R, p);
        // The kernel of f' is V(W[F]); the Verschiebung costs one level, so
        // the W[F] factor of the product decomposition lives at level n-1.
        auto wf = enumerate_w_frobenius_kernel(ctx, 2);

        // cardinality identity |W^x[F]| = |mu_p| * |W[F]|
        CHECK(units.size() == mu.size() * wf.size());

        // monoid homomorphism on all pairs (or a 200-pair sample if large)
        std::mt19937_64 rng(31);
        std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
        bool exhaustive = units.size() * units.size() <= 4096;
        auto run_pair = [&](const WittVector& u, const WittVector& v) {
            Elem lhs = f_prime(witt_mul(u, v));
            Elem rhs = ctx->ring()->mul(f_prime(u), f_prime(v));
            CHECK(lhs == rhs);
            // kernel parts are square-zero and the map to mu_p x W[F] is a
            // group homomorphism
            auto du = decompose_gm_sharp(u);
            auto dv = decompose_gm_sharp(v);
            auto dp = decompose_gm_sharp(witt_mul(u, v));
            CHECK(witt_mul(du.w, dv.w) == ctx->zero(3));
            CHECK(dp.zeta == ctx->ring()->mul(du.zeta, dv.zeta));
            CHECK(dp.w == witt_add(du.w, dv.w));
        };
        if (exhaustive) {
            for (const auto& u : units)
                for (const auto& v : units) run_pair(u, v);
        } else {
            for (std::size_t k = 0; k < 200; ++k) run_pair(units[pick(rng)], units[pick(rng)]);
        }

        // bijectivity: decompose-compose round trip plus distinct images
        std::set<std::string> images;
        for (const auto& u : units) {
            auto d = decompose_gm_sharp(u);
            CHECK(compose_gm_sharp(d.zeta, d.w) == u);
            images.insert(ctx->ring()->to_string(d.zeta) + "|" + d.w.str());
        }
        CHECK(images.size() == units.size());
    }
}

TEST_CASE("one_plus_wp and frobenius-kernel units coincide over char p") {
    for (auto R : {make_prime_field(2), RingPtr(make_gf4()), make_dual_numbers(3)}) {
        Int p = R->characteristic();
        auto ctx = WittContext::make(R, p);
        auto a = enumerate_special_units(ctx, 2);
        auto b = enumerate_frobenius_kernel_units(ctx, 2);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
}
