#include "wittlab/endo.hpp"

#include "wittlab/error.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <set>

using namespace wittlab;

TEST_CASE("identity element and the twisted composition example") {
    auto F4 = make_gf4();
    auto ctx = WittContext::make(F4, 2);
    Elem a = F4->var_elem("t");
    Elem b = F4->add(F4->var_elem("t"), F4->one());

    auto e1 = make_endo(ctx->from_coords({F4->one(), a}), 1);
    auto e2 = make_endo(ctx->from_coords({F4->one(), b}), 0);
    auto c = endo_compose(e1, e2);
    // ((1,a),1) o ((1,b),0) = ((1, a + b^p), 1)
    CHECK(c.u == ctx->from_coords({F4->one(), F4->add(a, F4->mul(b, b))}));
    CHECK(c.frob_exp == 1);

    auto id = identity_endo(ctx, 2);
    CHECK(endo_compose(id, e1).u == e1.u);
    CHECK(endo_compose(e1, id).u == e1.u);
}

TEST_CASE("associativity on 100 random triples") {
    auto ctx = WittContext::make(make_gf4(), 2);
    auto units = enumerate_special_units(ctx, 2);
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    std::uniform_int_distribution<unsigned> fpick(0, 3);
    for (int k = 0; k < 100; ++k) {
        EndoElement e1{units[pick(rng)], fpick(rng), 2};
        EndoElement e2{units[pick(rng)], fpick(rng), 2};
        EndoElement e3{units[pick(rng)], fpick(rng), 2};
        auto l = endo_compose(endo_compose(e1, e2), e3);
        auto r = endo_compose(e1, endo_compose(e2, e3));
        CHECK(l.u == r.u);
        CHECK(l.frob_exp == r.frob_exp);
    }
}

TEST_CASE("W_n-linearity: structure level 1 forces u = 1") {
    auto F4 = make_gf4();
    auto ctx = WittContext::make(F4, 2);
    Elem a = F4->var_elem("t");
    WittVector u = ctx->from_coords({F4->one(), a});
    CHECK(!is_wn_linear(u, 1));
    CHECK(is_wn_linear(u, 2)); // follows from p*u = p
    CHECK(is_wn_linear(u, 3));
    CHECK(is_wn_linear(ctx->one(2), 1));
    CHECK_THROWS_WITH_AS(make_endo(u, 0, 1), doctest::Contains("NotSpecialUnit"), error);
}

TEST_CASE("apply_endo is the identity for (1, 0) and compatible with the target map") {
    auto ctx = WittContext::make(make_gf4(), 2);
    std::mt19937_64 rng(52);
    auto id = identity_endo(ctx, 3);
    auto units = enumerate_special_units(ctx, 3);
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    for (int k = 0; k < 100; ++k) {
        GroupoidPoint pt(ctx->random(rng, 3), ctx->random(rng, 3));
        CHECK(apply_endo(id, pt) == pt);
        // (u, 0) fixes r and rescales m without moving the target
        EndoElement e{units[pick(rng)], 0, 2};
        auto moved = apply_endo(e, pt);
        CHECK(moved.r == pt.r);
        CHECK(target(moved) == target(pt));
    }
}

TEST_CASE("apply_endo is a map of ring groupoids") {
    auto ctx = WittContext::make(make_gf4(), 2);
    std::mt19937_64 rng(53);
    auto units = enumerate_special_units(ctx, 3);
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    std::uniform_int_distribution<unsigned> fpick(0, 2);
    for (int k = 0; k < 100; ++k) {
        EndoElement e{units[pick(rng)], fpick(rng), 2};
        GroupoidPoint x(ctx->random(rng, 3), ctx->random(rng, 3));
        GroupoidPoint y(ctx->random(rng, 3), ctx->random(rng, 3));
        // morphism ring structure
        CHECK(apply_endo(e, morphism_mul(x, y)) ==
              morphism_mul(apply_endo(e, x), apply_endo(e, y)));
        CHECK(apply_endo(e, morphism_add(x, y)) ==
              morphism_add(apply_endo(e, x), apply_endo(e, y)));
        // structure maps
        CHECK(source(apply_endo(e, x)) == apply_endo_object(e, source(x)));
        CHECK(target(apply_endo(e, x)) == apply_endo_object(e, target(x)));
        CHECK(apply_endo(e, identity_at(x.r)) == identity_at(apply_endo_object(e, x.r)));
        // groupoid composition
        GroupoidPoint x2(ctx->random(rng, 3), target(x));
        CHECK(apply_endo(e, compose(x, x2)) == compose(apply_endo(e, x), apply_endo(e, x2)));
    }
}

TEST_CASE("action composition matches endo composition on 100 random pairs") {
    auto ctx = WittContext::make(make_gf4(), 2);
    std::mt19937_64 rng(54);
    auto units = enumerate_special_units(ctx, 2);
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    std::uniform_int_distribution<unsigned> fpick(0, 2);
    for (int k = 0; k < 100; ++k) {
        EndoElement e1{units[pick(rng)], fpick(rng), 2};
        EndoElement e2{units[pick(rng)], fpick(rng), 2};
        GroupoidPoint pt(ctx->random(rng, 2), ctx->random(rng, 2));
        CHECK(apply_endo(endo_compose(e1, e2), pt) == apply_endo(e1, apply_endo(e2, pt)));
    }
}

TEST_CASE("every (u, 0) is invertible") {
    auto ctx = WittContext::make(make_gf4(), 2);
    for (const auto& u : enumerate_special_units(ctx, 3)) {
        EndoElement e{u, 0, 2};
        auto inv = invert_unit_endo(e);
        auto c = endo_compose(e, inv);
        CHECK(c.u == ctx->one(3));
        CHECK(c.frob_exp == 0);
    }
}

TEST_CASE("enumeration over F_2: counts and the structure-level-1 collapse") {
    auto ctx = WittContext::make(make_prime_field(2), 2);
    auto all = enumerate_endos(ctx, 2, 2, 2);
    CHECK(all.size() == 6); // units {(1,0),(1,1)} x exponents {0,1,2}
    auto lvl1 = enumerate_endos(ctx, 2, 1, 2);
    REQUIRE(lvl1.size() == 3);
    for (const auto& e : lvl1) CHECK(e.u == ctx->one(2));
}

TEST_CASE("fibers over each Frobenius exponent are equal-sized torsors") {
    for (auto R : {make_prime_field(2), RingPtr(make_gf4()), make_dual_numbers(2)}) {
        auto ctx = WittContext::make(R, R->characteristic());
        auto endos = enumerate_endos(ctx, 3, 2, 3);
        std::map<unsigned, std::vector<WittVector>> fibers;
        for (const auto& e : endos) fibers[e.frob_exp].push_back(e.u);
        REQUIRE(fibers.size() == 4);
        std::size_t sz = fibers[0].size();
        for (const auto& [i, fiber] : fibers) CHECK(fiber.size() == sz);
        // torsor: translating fiber_0 by any element reproduces the fiber
        auto base = fibers[0];
        std::set<std::string> base_set;
        for (const auto& u : base) base_set.insert(u.str());
        auto pivot = invert_special_unit(SpecialUnit(base.front()));
        for (const auto& u : base) base_set.erase(witt_mul(u, pivot).str());
        CHECK(base_set.empty());
    }
}

TEST_CASE("stabilization: identical enumerations at structure levels 2, 3, 4") {
    for (auto R : {make_prime_field(2), RingPtr(make_gf4()), make_dual_numbers(2)}) {
        auto ctx = WittContext::make(R, R->characteristic());
        auto e2 = enumerate_endos(ctx, 4, 2, 2);
        auto e3 = enumerate_endos(ctx, 4, 3, 2);
        auto e4 = enumerate_endos(ctx, 4, 4, 2);
        REQUIRE(e2.size() == e3.size());
        REQUIRE(e2.size() == e4.size());
        for (std::size_t i = 0; i < e2.size(); ++i) {
            CHECK(e2[i].u == e3[i].u);
            CHECK(e2[i].u == e4[i].u);
            CHECK(e2[i].frob_exp == e3[i].frob_exp);
            CHECK(e2[i].frob_exp == e4[i].frob_exp);
        }
    }
}

TEST_CASE("endo JSON round trip") {
    auto F4 = make_gf4();
    auto ctx = WittContext::make(F4, 2);
    auto e = endo_from_json(ctx, 2, nlohmann::json{{"u", {"1", "t"}}, {"i", 1}});
    CHECK(e.u == ctx->from_coords({F4->one(), F4->var_elem("t")}));
    CHECK(e.frob_exp == 1);
    CHECK(e.to_json()["i"] == 1);
}
