#include "wittlab/pd.hpp"

#include "wittlab/error.hpp"

#include <doctest.h>

#include <random>

using namespace wittlab;

namespace {

PDPtr univariate(RingPtr coeff, long p, unsigned k, std::int64_t bound_deg) {
    std::int64_t scale = 1;
    for (unsigned i = 0; i < k; ++i) scale *= p;
    return PDAlgebra::make(std::move(coeff), p, {{"x", true, k}}, bound_deg * scale);
}

PDElement random_element(const PDPtr& alg, std::mt19937_64& rng, bool integral_only) {
    auto monos = alg->monomial_basis(alg->degree_bound_num());
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    std::uniform_int_distribution<int> nterms(1, 4);
    PDElement acc = alg->zero();
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        PDMono m = monos[pick(rng)];
        if (integral_only)
            for (auto& [fr, n] : m.parts) fr = 0;
        acc = alg->add(acc, alg->monomial(m, alg->coeff()->random(rng)));
    }
    return acc;
}

} // namespace

TEST_CASE("products of divided powers") {
    auto D = univariate(make_integers(), 2, 2, 8);
    std::size_t x = 0;
    CHECK(D->mul(D->gamma(x, 1), D->gamma(x, 1)) ==
          D->scale_by(D->coeff()->from_int(2), D->gamma(x, 2)));
    CHECK(D->mul(D->gamma(x, 2), D->gamma(x, 2)) ==
          D->scale_by(D->coeff()->from_int(6), D->gamma(x, 4)));
    // x^p = p! gamma_p
    CHECK(D->var_power(x, 2 * D->scale(x)) == D->scale_by(D->coeff()->from_int(2), D->gamma(x, 2)));
}

TEST_CASE("gamma_1^p vanishes mod p") {
    for (long p : {2L, 3L, 5L}) {
        auto D = univariate(make_prime_field(p), p, 1, 2 * p + 1);
        CHECK(D->pow(D->gamma(0, 1), static_cast<unsigned long>(p)).is_zero());
    }
}

TEST_CASE("gamma_i gamma_j = binom(i+j, i) gamma_{i+j}, exhaustive below the bound") {
    auto D = univariate(make_integers(), 3, 1, 8);
    for (std::int64_t i = 1; i < 8; ++i)
        for (std::int64_t j = 1; i + j < 8; ++j) {
            Int b = binomial(static_cast<unsigned long>(i + j), static_cast<unsigned long>(i));
            CHECK(D->mul(D->gamma(0, i), D->gamma(0, j)) ==
                  D->scale_by(D->coeff()->from_int(b), D->gamma(0, i + j)));
        }
}

TEST_CASE("fractional part carries into the gamma index") {
    auto D = univariate(make_prime_field(2), 2, 2, 6);
    // x^(1/2) * x^(3/2) = x^2 = 2 gamma_2 = 0 mod 2
    auto a = D->var_power(0, 2); // x^(1/2), scale 4
    auto b = D->var_power(0, 6); // x^(3/2)
    CHECK(D->mul(a, b).is_zero());
    auto Dz = univariate(make_integers(), 2, 2, 6);
    CHECK(Dz->mul(Dz->var_power(0, 2), Dz->var_power(0, 6)) ==
          Dz->scale_by(Dz->coeff()->from_int(2), Dz->gamma(0, 2)));
}

TEST_CASE("gamma_expand digit forms") {
    auto D = univariate(make_integers(), 2, 2, 8);
    // gamma_p is its own digit monomial with multinomial 1
    auto e2 = gamma_expand(D, 0, 2);
    CHECK(e2.multinomial == 1);
    CHECK(e2.digit_monomial == D->gamma(0, 2));
    // gamma_3 = (1/3) x gamma_2: digit monomial x*gamma_2 equals 3 gamma_3
    auto e3 = gamma_expand(D, 0, 3);
    CHECK(e3.multinomial == 3);
    CHECK(e3.digit_monomial == D->scale_by(D->coeff()->from_int(3), D->gamma(0, 3)));
    // check the defining identity digit_monomial = multinomial * gamma_n generally
    auto D5 = univariate(make_integers(), 5, 1, 26);
    for (std::int64_t n = 1; n < 26; ++n) {
        auto e = gamma_expand(D5, 0, n);
        CHECK(e.digit_monomial == D5->scale_by(D5->coeff()->from_int(e.multinomial), D5->gamma(0, n)));
    }
}

TEST_CASE("substitution: monomial rule x -> x^2 on gamma_2 over Z") {
    auto D = univariate(make_integers(), 2, 1, 9);
    SubstImage image{{D->coeff()->one(), {{0, 2 * D->scale(0)}}}};
    auto out = pd_substitute(D->gamma(0, 2), D, {{0, image}});
    CHECK(out == D->scale_by(D->coeff()->from_int(12), D->gamma(0, 4)));
}

TEST_CASE("substitution: scaling rule x -> x t multiplies gamma_p by t^p") {
    for (long p : {2L, 3L}) {
        auto D = PDAlgebra::make(make_prime_field(p), p,
                                 {{"x", true, 1}, {"t", false, 1}}, (2 * p + 1) * p);
        std::size_t x = 0, t = 1;
        SubstImage image{{D->coeff()->one(), {{x, D->scale(x)}, {t, D->scale(t)}}}};
        auto out = pd_substitute(D->gamma(x, p), D, {{x, image}});
        auto expect = D->mul(D->gamma(x, p), D->var_power(t, p * D->scale(t)));
        CHECK(out == expect);
    }
}

TEST_CASE("substitution: additive rule and the convolution formula") {
    auto D2 = PDAlgebra::make(make_integers(), 2, {{"y", true, 1}, {"z", true, 1}}, 20);
    auto Dx = univariate(make_integers(), 2, 1, 10);
    SubstImage split{{D2->coeff()->one(), {{0, D2->scale(0)}}},
                     {D2->coeff()->one(), {{1, D2->scale(1)}}}};
    // gamma_2(y+z) = gamma_2(y) + y z + gamma_2(z)
    auto out = pd_substitute(Dx->gamma(0, 2), D2, {{0, split}});
    auto yz = D2->mul(D2->gamma(0, 1), D2->gamma(1, 1));
    auto expect = D2->add(D2->add(D2->gamma(0, 2), yz), D2->gamma(1, 2));
    CHECK(out == expect);
    // the full convolution identity for all n < 2p
    for (std::int64_t n = 1; n < 10; ++n) {
        auto lhs = pd_substitute(Dx->gamma(0, n), D2, {{0, split}});
        PDElement rhs = D2->zero();
        for (std::int64_t i = 0; i <= n; ++i)
            rhs = D2->add(rhs, D2->mul(D2->gamma(0, i), D2->gamma(1, n - i)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("substitution is a ring homomorphism on random pairs") {
    std::mt19937_64 rng(61);
    // monomial rule over Z with fractional parts
    auto D = univariate(make_integers(), 2, 2, 4);
    auto Dbig = univariate(make_integers(), 2, 2, 8);
    SubstImage square{{Dbig->coeff()->one(), {{0, 2 * Dbig->scale(0)}}}};
    for (int k = 0; k < 100; ++k) {
        auto a = random_element(D, rng, false), b = random_element(D, rng, false);
        auto img = [&](const PDElement& e) { return pd_substitute(e, Dbig, {{0, square}}); };
        CHECK(img(D->mul(a, b)) == Dbig->mul(img(a), img(b)));
        CHECK(img(D->add(a, b)) == Dbig->add(img(a), img(b)));
    }
    // additive rule over F_3 with integral parts
    auto Dx = univariate(make_prime_field(3), 3, 1, 7);
    auto D2 = PDAlgebra::make(make_prime_field(3), 3, {{"y", true, 1}, {"z", true, 1}}, 7 * 3);
    SubstImage split{{D2->coeff()->one(), {{0, D2->scale(0)}}},
                     {D2->coeff()->one(), {{1, D2->scale(1)}}}};
    for (int k = 0; k < 100; ++k) {
        auto a = random_element(Dx, rng, true), b = random_element(Dx, rng, true);
        auto img = [&](const PDElement& e) { return pd_substitute(e, D2, {{0, split}}); };
        CHECK(img(Dx->mul(a, b)) == D2->mul(img(a), img(b)));
        CHECK(img(Dx->add(a, b)) == D2->add(img(a), img(b)));
    }
    // scaling rule x -> x t, fractional parts allowed
    auto Ds = PDAlgebra::make(make_prime_field(2), 2, {{"x", true, 2}, {"t", false, 2}}, 5 * 4);
    auto Dsrc = univariate(make_prime_field(2), 2, 2, 5);
    SubstImage scale_rule{{Ds->coeff()->one(), {{0, Ds->scale(0)}, {1, Ds->scale(1)}}}};
    for (int k = 0; k < 100; ++k) {
        auto a = random_element(Dsrc, rng, false), b = random_element(Dsrc, rng, false);
        auto img = [&](const PDElement& e) { return pd_substitute(e, Ds, {{0, scale_rule}}); };
        CHECK(img(Dsrc->mul(a, b)) == Ds->mul(img(a), img(b)));
        CHECK(img(Dsrc->add(a, b)) == Ds->add(img(a), img(b)));
    }
    // frobenius-style additive rule x -> b0 x + b1 x^p over F_4, integral parts
    auto F4 = make_gf4();
    auto Da = univariate(F4, 2, 0, 9);
    SubstImage add_rule{{F4->var_elem("t"), {{0, 1}}}, {F4->one(), {{0, 2}}}};
    for (int k = 0; k < 100; ++k) {
        auto a = random_element(Da, rng, true), b = random_element(Da, rng, true);
        auto img = [&](const PDElement& e) { return pd_substitute(e, Da, {{0, add_rule}}); };
        CHECK(img(Da->mul(a, b)) == Da->mul(img(a), img(b)));
        CHECK(img(Da->add(a, b)) == Da->add(img(a), img(b)));
    }
}

TEST_CASE("Z computations reduce to the F_p computations") {
    for (long p : {2L, 3L}) {
        auto Dz = univariate(make_integers(), p, 1, 2 * p + 1);
        auto Dp = univariate(make_prime_field(p), p, 1, 2 * p + 1);
        std::mt19937_64 rng(71);
        auto reduce = [&](const PDElement& e) { return pd_substitute(e, Dp, {}); };
        for (int k = 0; k < 50; ++k) {
            auto a = random_element(Dz, rng, false), b = random_element(Dz, rng, false);
            CHECK(reduce(Dz->mul(a, b)) == Dp->mul(reduce(a), reduce(b)));
        }
    }
}

TEST_CASE("frobenius-style additive rule x -> b0 x + b1 x^p") {
    // over Z with b0 = 2, b1 = 3, p = 2:
    // gamma_2(2x + 3x^2) = 4 gamma_2 + 36 gamma_3 + 108 gamma_4
    auto D = univariate(make_integers(), 2, 1, 9);
    auto Z = D->coeff();
    SubstImage rule{{Z->from_int(2), {{0, D->scale(0)}}}, {Z->from_int(3), {{0, 2 * D->scale(0)}}}};
    auto out = pd_substitute(D->gamma(0, 2), D, {{0, rule}});
    auto expect = D->add(D->scale_by(Z->from_int(4), D->gamma(0, 2)),
                         D->add(D->scale_by(Z->from_int(36), D->gamma(0, 3)),
                                D->scale_by(Z->from_int(108), D->gamma(0, 4))));
    CHECK(out == expect);

    // over F_4 the cross terms vanish and only b0^2 gamma_2 survives
    auto F4 = make_gf4();
    auto Dp = univariate(F4, 2, 1, 9);
    Elem b0 = F4->var_elem("t");
    SubstImage rulep{{b0, {{0, Dp->scale(0)}}}, {F4->one(), {{0, 2 * Dp->scale(0)}}}};
    auto outp = pd_substitute(Dp->gamma(0, 2), Dp, {{0, rulep}});
    CHECK(outp == Dp->scale_by(F4->mul(b0, b0), Dp->gamma(0, 2)));
}

TEST_CASE("truncation bound errors") {
    auto D = univariate(make_integers(), 2, 1, 5);
    CHECK_THROWS_WITH_AS(D->gamma(0, 5), doctest::Contains("Truncated"), error);
    CHECK_THROWS_WITH_AS(D->var_power(0, 5 * D->scale(0)), doctest::Contains("Truncated"), error);
}
