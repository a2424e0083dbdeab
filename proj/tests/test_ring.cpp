#include "wittlab/ring.hpp"

#include "wittlab/error.hpp"

#include <doctest.h>

#include <random>

using namespace wittlab;

namespace {

// quantified ring-axiom fuzz shared by several rings
void check_ring_axioms(const RingPtr& R, int triples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < triples; ++k) {
        Elem a = R->random(rng), b = R->random(rng), c = R->random(rng);
        CHECK(R->add(R->add(a, b), c) == R->add(a, R->add(b, c)));
        CHECK(R->mul(R->mul(a, b), c) == R->mul(a, R->mul(b, c)));
        CHECK(R->add(a, b) == R->add(b, a));
        CHECK(R->mul(a, b) == R->mul(b, a));
        CHECK(R->mul(a, R->add(b, c)) == R->add(R->mul(a, b), R->mul(a, c)));
        CHECK(R->mul(a, R->one()) == a);
        CHECK(R->add(a, R->zero()) == a);
        CHECK(R->add(a, R->neg(a)) == R->zero());
    }
}

} // namespace

TEST_CASE("exact division by prime powers") {
    CHECK(exact_div_p_power(12, 2, 2) == 3);
    CHECK(exact_div_p_power(0, 5, 3) == 0);
    CHECK_THROWS_WITH_AS(exact_div_p_power(10, 2, 2), doctest::Contains("NotDivisible"), error);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-999, 999);
    for (int k = 0; k < 100; ++k) {
        Int n = d(rng);
        CHECK(exact_div_p_power(n * 8, 2, 3) == n);
        CHECK(exact_div_p_power(n * 27, 3, 3) == n);
    }
}

TEST_CASE("modular arithmetic basics") {
    auto Z8 = make_integers_mod(8);
    CHECK(Z8->add(Z8->from_int(5), Z8->from_int(5)) == Z8->from_int(2));
    CHECK(Z8->invert(Z8->from_int(3)) == Z8->from_int(3));

    auto Z9 = make_integers_mod(9);
    CHECK_THROWS_WITH_AS(Z9->invert(Z9->from_int(3)), doctest::Contains("NotAUnit"), error);
}

TEST_CASE("GF(4) arithmetic and inversion") {
    auto F4 = make_gf4();
    Elem t = F4->var_elem("t");
    CHECK(F4->mul(t, t) == F4->add(t, F4->one())); // t^2 = t + 1
    CHECK(F4->invert(t) == F4->add(t, F4->one())); // t (t+1) = 1
    CHECK(F4->cardinality().value() == 4);
    CHECK(F4->characteristic() == 2);
}

TEST_CASE("fractional-exponent monomial quotient") {
    // F_2[x^(1/4)] / (x^2)
    auto R = make_poly_quotient(make_prime_field(2), 2, {{"x", 2, std::int64_t(2)}});
    Elem h = R->parse("x^(1/2)");
    Elem th = R->parse("x^(3/2)");
    CHECK(R->is_zero(R->mul(h, th))); // x^2 = 0
    CHECK(R->mul(h, h) == R->parse("x"));
    CHECK(R->cardinality().value() == 256);

    // products stay within the monoid: denominators divide p^K
    CHECK_THROWS_AS(R->parse("x^(1/3)"), error);
}

TEST_CASE("general ideals rejected, monomial relations kept") {
    CHECK_THROWS_AS(
        make_poly_quotient(make_poly_quotient(make_prime_field(2), 2, {{"x", 0, {}}}), 2,
                           {{"y", 0, {}}}),
        error);
    auto R = make_poly_quotient(make_prime_field(3), 3, {{"x", 1, std::int64_t(3)}});
    CHECK(R->is_zero(R->parse("x^3")));
    CHECK(!R->is_zero(R->parse("x^(8/3)")));
}

TEST_CASE("characteristic equals additive order of one") {
    for (auto R : {make_integers_mod(8), make_integers_mod(81),
                   RingPtr(make_gf4()), make_mu_p_coefficients(3)}) {
        auto ord = R->additive_order_of_one();
        REQUIRE(ord.has_value());
        CHECK(*ord == R->characteristic());
    }
}

TEST_CASE("ring axioms fuzz") {
    check_ring_axioms(make_integers(), 300, 11);
    check_ring_axioms(make_integers_mod(81), 300, 12);
    check_ring_axioms(make_gf4(), 300, 13);
    check_ring_axioms(make_dual_numbers(2), 300, 14);
    check_ring_axioms(make_mu_p_coefficients(3), 300, 15);
    check_ring_axioms(make_poly_quotient(make_prime_field(2), 2, {{"x", 2, std::int64_t(2)}}), 300,
                      16);
}

TEST_CASE("inverse times element is one, exhaustively on small rings") {
    for (auto R : {make_integers_mod(8), make_integers_mod(9), make_integers_mod(64),
                   RingPtr(make_gf4()), make_dual_numbers(2), make_mu_p_coefficients(2)}) {
        auto card = R->cardinality();
        REQUIRE(card.has_value());
        REQUIRE(*card <= 64);
        long total = mpz_get_si(card->get_mpz_t());
        for (long i = 0; i < total; ++i) {
            Elem a = R->element_at(i);
            auto inv = R->try_invert(a);
            if (inv) CHECK(R->mul(a, *inv) == R->one());
        }
    }
}

TEST_CASE("mod_poly with reducible modulus: group algebra of mu_p") {
    auto B = make_mu_p_coefficients(3); // F_3[t]/(t^3 - 1)
    Elem t = B->var_elem("t");
    CHECK(B->pow(t, 3) == B->one());
    CHECK(B->invert(t) == B->pow(t, 2));
    // t - 1 is a zero divisor, hence not invertible
    CHECK(!B->try_invert(B->sub(t, B->one())).has_value());
}

TEST_CASE("descriptor round trip") {
    auto R = make_poly_quotient(make_gf4(), 2, {{"x", 1, std::int64_t(2)}, {"y", 0, {}}});
    auto S = ring_from_descriptor(R->descriptor());
    CHECK(R->same_ring(*S));
    CHECK(ring_from_string("Z/8")->same_ring(*make_integers_mod(8)));
    CHECK(ring_from_string("F5")->same_ring(*make_prime_field(5)));
    CHECK_THROWS_AS(ring_from_string("F4"), error); // needs an explicit modulus
}

TEST_CASE("element parser and printer") {
    auto F4 = make_gf4();
    CHECK(F4->parse("t^2") == F4->add(F4->var_elem("t"), F4->one()));
    auto R = make_poly_quotient(make_prime_field(2), 2, {{"x", 2, std::int64_t(2)}});
    Elem e = R->parse("1+x^(1/4)+x^(7/4)");
    CHECK(R->parse(R->to_string(e)) == e);
    CHECK(R->to_string(R->zero()) == "0");
}

TEST_CASE("mixed rings are rejected") {
    auto Z8 = make_integers_mod(8);
    auto Z9 = make_integers_mod(9);
    CHECK_THROWS_WITH_AS(Z8->add(Z8->one(), Z9->one()), doctest::Contains("MixedRings"), error);
}

TEST_CASE("frobenius root in perfect rings") {
    auto F4 = make_gf4();
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        Elem a = F4->random(rng);
        CHECK(F4->pow(F4->frobenius_root(a), 2) == a);
    }
    auto R = make_poly_quotient(make_prime_field(3), 3, {{"x", 2, {}}});
    Elem v = R->parse("x^(8/3)+2*x");
    CHECK(R->pow(R->frobenius_root(v), 3) == v);
}
