#include "wittlab/rigidity.hpp"

#include "wittlab/error.hpp"

#include <doctest.h>

using namespace wittlab;

TEST_CASE("coefficient pin-down: three routes agree") {
    // N = 0: c = 1 for every p
    for (long p : {2L, 3L, 5L}) {
        auto r = pin_down_coefficient(p, 0);
        CHECK(r.residue == 1);
        CHECK(r.closed_form == 1);
        CHECK(r.full_equation_holds_mod_p);
    }
    // p = 2, N = 1: closed form 4, oracle 4!/2! = 12, both 0 mod 2
    auto r21 = pin_down_coefficient(2, 1);
    CHECK(r21.closed_form == 4);
    CHECK(r21.functorial == 4);
    CHECK(r21.oracle == 12);
    CHECK(r21.residue == 0);
    // p = 3, N = 1: closed form 2160, oracle 9!/3! = 60480, both 0 mod 3
    auto r31 = pin_down_coefficient(3, 1);
    CHECK(r31.closed_form == 2160);
    CHECK(r31.oracle == 60480);
    CHECK(r31.residue == 0);
    // the full grid stays consistent
    for (long p : {2L, 3L, 5L})
        for (unsigned N : {0u, 1u, 2u}) CHECK_NOTHROW(pin_down_coefficient(p, N));
}

TEST_CASE("factorial ratio values behind the closed form") {
    CHECK(factorial_ratio({1, 1}, {1}) == 1);
    CHECK(factorial_ratio({2, 2}, {1}) == 4);
    CHECK(factorial_ratio({3, 6}, {2}) == 2160);
    CHECK_THROWS_WITH_AS(factorial_ratio({2}, {3}), doctest::Contains("NotInteger"), error);
}

TEST_CASE("frobenius difference polynomial, odd p") {
    // p = 3: F = a^{1/3} b^{2/3} - a^{2/3} b^{1/3}
    auto f3 = frobenius_difference_poly(3);
    CHECK(f3.c[1] == 1);
    CHECK(f3.c[2] == 2); // -1 mod 3
    CHECK(f3.all_nonzero);
    CHECK(f3.matches_binomial_formula);
    CHECK(!f3.has_extra_terms);
    for (long p : {3L, 5L, 7L}) {
        auto fd = frobenius_difference_poly(p);
        CHECK(fd.all_nonzero);
        CHECK(fd.matches_binomial_formula);
        CHECK(!fd.has_extra_terms);
    }
}

TEST_CASE("frobenius difference polynomial, p = 2 anomaly") {
    auto f2 = frobenius_difference_poly(2);
    CHECK(f2.has_extra_terms); // the b term outside sum c_i a^{i/p} b^{(p-i)/p}
    CHECK(f2.c[1] == 1);       // -ab part survives as a^{1/2} b^{1/2}
    // F = b + a^{1/2} b^{1/2} in char 2
    auto R = f2.f.owner();
    Elem expect = R->add(R->var_elem("b"), R->mul(R->var_pow("a", 1, 2), R->var_pow("b", 1, 2)));
    CHECK(f2.f == expect);
}

TEST_CASE("difference polynomial satisfies its defining identity over Z") {
    for (long p : {2L, 3L, 5L}) {
        auto A = make_poly_quotient(make_integers(), p, {{"a", 1, {}}, {"b", 1, {}}});
        Elem a = A->var_elem("a"), b = A->var_elem("b");
        // rebuild p * F~(a^p, b^p) from the raw terms via the public API:
        // (a-b)^p + b^p - a^p must be divisible by p with the right quotient
        Elem G = A->sub(A->add(A->pow(A->sub(a, b), p), A->pow(b, p)), A->pow(a, p));
        // compare against p * (sum over F's terms with exponents scaled by p)
        auto fd = frobenius_difference_poly(p);
        Elem sum = A->zero();
        for (const auto& [ev, c] : fd.f.terms) {
            // fd.f exponent numerators live at scale p^{K+1} with K = 2
            std::int64_t sa = ev[0] / (p * p), sb = ev[1] / (p * p); // numerators at scale p
            Elem t = A->from_int(c.z);
            if (sa) t = A->mul(t, A->var_pow("a", sa * p, p)); // exponent sa (scaled back by p)
            if (sb) t = A->mul(t, A->var_pow("b", sb * p, p));
            sum = A->add(sum, t);
        }
        // G = p * F~(a^p, b^p) mod p^2 is all we can read off mod-p data; check mod p^2
        auto Amod = make_poly_quotient(make_integers_mod(Int(p) * Int(p)), p,
                                       {{"a", 1, {}}, {"b", 1, {}}});
        auto transport = [&](const Elem& v) {
            Elem out = Amod->zero();
            for (const auto& [ev, c] : v.terms) {
                Elem t = Amod->from_int(c.z);
                if (ev[0]) t = Amod->mul(t, Amod->var_pow("a", ev[0], p));
                if (ev[1]) t = Amod->mul(t, Amod->var_pow("b", ev[1], p));
                out = Amod->add(out, t);
            }
            return out;
        };
        Elem lhs = transport(G);
        Elem rhs = Amod->mul(Amod->from_int(p), transport(sum));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("kernel of the H(a, F(a,b)) constraint is zero for p = 3, 5") {
    CHECK(difference_kernel_dimension(3) == 0);
    CHECK(difference_kernel_dimension(5) == 0);
    CHECK_THROWS_WITH_AS(difference_kernel_dimension(2), doctest::Contains("ConfigInvalid"), error);
}

TEST_CASE("splitting step 1: unique section through gamma_p") {
    for (long p : {2L, 3L, 5L}) {
        auto r = splitting_section_solver(p, 1);
        CHECK(r.solution_count == 1);
        CHECK(r.kernel_dimension == 0);
        CHECK(r.matches_expected);
    }
}

TEST_CASE("splitting step 2: symmetric section through sum of gamma_p") {
    for (long p : {2L, 3L}) {
        auto r = splitting_section_solver(p, 2);
        CHECK(r.solution_count == 1);
        CHECK(r.kernel_dimension == 0);
        CHECK(r.matches_expected);
    }
}

TEST_CASE("splitting step 3: the y^p/(p-1)! correction") {
    for (long p : {2L, 3L}) {
        auto r = splitting_section_solver(p, 3);
        CHECK(r.solution_count == 1);
        CHECK(r.kernel_dimension == 0);
        CHECK(r.matches_expected);
    }
}
