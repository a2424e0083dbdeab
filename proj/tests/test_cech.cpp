#include "wittlab/cech.hpp"

#include "wittlab/error.hpp"
#include "wittlab/units.hpp"

#include <doctest.h>

using namespace wittlab;

namespace {

// index of a monomial in the basis
std::size_t find_mono(const std::vector<ExpVec>& basis, const ExpVec& m) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == m) return i;
    REQUIRE(false);
    return 0;
}

std::vector<std::uint32_t> unit_vec(std::size_t n, std::size_t at) {
    std::vector<std::uint32_t> v(n, 0);
    v[at] = 1;
    return v;
}

} // namespace

TEST_CASE("d0 on the low coordinates, p = 2, witt level 2") {
    CechComplex cx(2, 2, 4);
    // d0(X_0) = 0
    const auto& b1 = cx.basis(0, 1);
    REQUIRE(b1.size() == 1); // only X_0 has weight 1
    const auto& m = cx.d0(1);
    for (std::size_t i = 0; i < m.rows(); ++i) CHECK(m.at(i, 0) == 0);

    // d0(X_1) = Y_0^2 in degree 2
    const auto& b02 = cx.basis(0, 2);
    std::size_t col = find_mono(b02, ExpVec{0, 1});
    const auto& b12 = cx.basis(1, 2);
    std::size_t row = find_mono(b12, ExpVec{0, 0, 2, 0}); // Y_0^2
    const auto& d = cx.d0(2);
    for (std::size_t i = 0; i < d.rows(); ++i) CHECK(d.at(i, col) == (i == row ? 1u : 0u));
}

TEST_CASE("d1 kills Y_0 and not X_0") {
    for (long p : {2L, 3L}) {
        CechComplex cx(p, 2, p);
        const auto& b = cx.basis(1, 1);
        std::size_t iy = find_mono(b, ExpVec{0, 0, 1, 0});
        std::size_t ix = find_mono(b, ExpVec{1, 0, 0, 0});
        const auto& d = cx.d1(1);
        for (std::size_t i = 0; i < d.rows(); ++i) CHECK(d.at(i, iy) == 0);
        bool nonzero = false;
        for (std::size_t i = 0; i < d.rows(); ++i) nonzero = nonzero || d.at(i, ix) != 0;
        CHECK(nonzero);
    }
}

TEST_CASE("d1 d0 = 0 in all degrees for supported (p, n_w)") {
    CHECK(CechComplex(2, 2, 4).d_squared_zero_all());
    CHECK(CechComplex(2, 3, 4).d_squared_zero_all());
    CHECK(CechComplex(3, 2, 9).d_squared_zero_all());
    CHECK(CechComplex(3, 3, 9).d_squared_zero_all());
}

TEST_CASE("H^0 is the X_0 line, H^1 degree 1 is spanned by Y_0") {
    for (long p : {2L, 3L}) {
        CechComplex cx(p, 3, p * p);
        for (std::int64_t d = 1; d <= p * p; ++d) CHECK(cx.h0_is_x0_line(d));
        auto coh = cx.cohomology(1);
        REQUIRE(coh.h1_dim == 1);
        REQUIRE(coh.h1_reps.size() == 1);
        const auto& b = cx.basis(1, 1);
        ExpVec y0(b[0].size(), 0);
        y0[3] = 1; // X0 X1 X2 Y0 ...
        std::size_t iy = find_mono(b, y0);
        for (std::size_t i = 0; i < b.size(); ++i)
            CHECK(coh.h1_reps[0][i] == (i == iy ? 1u : 0u));
        // and that class is not a coboundary
        CHECK(!cx.is_coboundary(1, coh.h1_reps[0]));
    }
}

TEST_CASE("mu_p action: weight 1 on the Y_0 class, weight 0 on H^0") {
    for (long p : {2L, 3L}) {
        CechComplex cx(p, 3, p * p);
        auto B = make_mu_p_coefficients(p);
        Elem zeta = B->var_elem("t");
        // u = [zeta]: Teichmuller unit over B
        std::vector<Elem> u{zeta, B->zero(), B->zero()};

        auto coh1 = cx.cohomology(1);
        REQUIRE(coh1.h1_reps.size() == 1);
        CHECK(cx.weight_of_class(1, 1, coh1.h1_reps[0], B, u, zeta, 0) == 1);

        // H^0 classes in a few degrees all have weight 0
        for (std::int64_t d = 1; d <= p; ++d) {
            auto coh = cx.cohomology(d);
            for (const auto& h : coh.h0_basis)
                CHECK(cx.weight_of_class(0, d, h, B, u, zeta, 0) == 0);
        }
    }
}

TEST_CASE("sharp-direction points act with weight 0") {
    for (long p : {2L, 3L}) {
        CechComplex cx(p, 3, p * p);
        auto B = make_sharp_coefficients(p); // F_p[e]/(e^p)
        Elem eps = B->var_elem("e");
        // u = (1, eps, 0): p u = p over char p since eps^p = 0
        std::vector<Elem> u{B->one(), eps, B->zero()};
        Elem one = B->one();

        auto coh1 = cx.cohomology(1);
        CHECK(cx.weight_of_class(1, 1, coh1.h1_reps[0], B, u, one, 0) == 0);
        auto coh2 = cx.cohomology(2);
        for (const auto& h : coh2.h0_basis) CHECK(cx.weight_of_class(0, 2, h, B, u, one, 0) == 0);
    }
}

TEST_CASE("H^0 closed under multiplication with additive weights") {
    CechComplex cx(3, 2, 9);
    auto B = make_mu_p_coefficients(3);
    Elem zeta = B->var_elem("t");
    std::vector<Elem> u{zeta, B->zero()};
    auto c1 = cx.cohomology(1), c2 = cx.cohomology(2);
    REQUIRE(c1.h0_dim == 1);
    REQUIRE(c2.h0_dim == 1);
    auto prod = cx.multiply_h0(1, c1.h0_basis[0], 2, c2.h0_basis[0]);
    // the product is again a cocycle of weight 0 = 0 + 0
    auto c3 = cx.cohomology(3);
    bool is_h0 = false;
    for (const auto& h : c3.h0_basis) is_h0 = is_h0 || h == prod;
    CHECK(is_h0);
    CHECK(cx.weight_of_class(0, 3, prod, B, u, zeta, 0) ==
          (cx.weight_of_class(0, 1, c1.h0_basis[0], B, u, zeta, 0) +
           cx.weight_of_class(0, 2, c2.h0_basis[0], B, u, zeta, 0)) %
              3);
}

TEST_CASE("weight obstruction: the H^1 generator separates mu_p from the sharp part") {
    // the mu_p direction acts with weight 1 on the Y_0 class while every
    // sharp-direction unit (u_0 = 1) acts with weight 0; no functorial
    // G_m-grading could produce both
    CechComplex cx(2, 3, 4);
    auto Bmu = make_mu_p_coefficients(2);
    auto Bsh = make_sharp_coefficients(2);
    auto coh = cx.cohomology(1);
    unsigned w_mu = cx.weight_of_class(1, 1, coh.h1_reps[0], Bmu,
                                       {Bmu->var_elem("t"), Bmu->zero(), Bmu->zero()},
                                       Bmu->var_elem("t"), 0);
    unsigned w_sh = cx.weight_of_class(1, 1, coh.h1_reps[0], Bsh,
                                       {Bsh->one(), Bsh->var_elem("e"), Bsh->zero()},
                                       Bsh->one(), 0);
    CHECK(w_mu == 1);
    CHECK(w_sh == 0);
    CHECK(w_mu != w_sh);
}

TEST_CASE("caps are enforced") {
    CHECK_THROWS_WITH_AS(CechComplex(2, 4, 4), doctest::Contains("CapExceeded"), error);
    CHECK_THROWS_WITH_AS(CechComplex(2, 2, 5), doctest::Contains("CapExceeded"), error);
}
