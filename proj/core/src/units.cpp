#include "wittlab/units.hpp"

#include "wittlab/error.hpp"

namespace wittlab {

bool membership(const WittVector& x, Subobject which) {
    const auto& ctx = *x.ctx();
    switch (which) {
        case Subobject::w_p_torsion:
            return mul_p(x) == x.ctx()->zero(x.level());
        case Subobject::w_frobenius_kernel:
            if (x.level() == 1) return true; // F lands in W_0 = 0
            return frobenius(x) == x.ctx()->zero(x.level() - 1);
        case Subobject::one_plus_wp:
            return mul_p(x) == mul_p(x.ctx()->one(x.level()));
        case Subobject::mu_p: {
            if (x != ctx.teichmuller(x.coord(0), x.level())) return false;
            const Ring& R = *ctx.ring();
            return R.pow(x.coord(0), ctx.p_ui()) == R.one();
        }
    }
    return false;
}

SpecialUnit::SpecialUnit(WittVector u) : u_(std::move(u)) {
    if (!membership(u_, Subobject::one_plus_wp))
        raise(errc::not_special_unit, "p*u != p for " + u_.str());
}

WittVector invert_special_unit(const SpecialUnit& su) {
    const WittVector& u = su.value();
    const auto& ctx = *u.ctx();
    const Ring& R = *ctx.ring();
    if (!R.p_nilpotent(ctx.p()))
        raise(errc::not_p_nilpotent, "inversion needs a p-nilpotent or char-p base");

    const unsigned n = u.level();
    const auto& cache = witt_cache(ctx.p(), n);

    // ghost values w_i(u) are the pivots: P_i(u, z) = w_i(u) * z_i + (z_i-free)
    std::vector<Elem> ghosts = ghost(u);
    std::vector<Elem> z(n, R.zero());
    WittVector one = ctx.one(n);
    for (unsigned i = 0; i < n; ++i) {
        WittVector partial = ctx.from_coords(std::vector<Elem>(z));
        Elem residue = R.sub(one.coord(i), witt_mul(u, partial).coord(i));
        auto pivot_inv = R.try_invert(ghosts[i]);
        if (!pivot_inv) raise(errc::not_a_unit, "triangular pivot is not a unit");
        z[i] = R.mul(*pivot_inv, residue);
    }
    WittVector inv = ctx.from_coords(std::move(z));
    if (witt_mul(u, inv) != one) raise(errc::inconsistent, "inverse verification failed");
    (void)cache;
    return inv;
}

Elem f_prime(const WittVector& u) {
    const Ring& R = *u.ctx()->ring();
    WittVector shifted = witt_sub(u, u.ctx()->one(u.level()));
    return R.add(R.one(), shifted.coord(0));
}

GmSharpDecomposition decompose_gm_sharp(const WittVector& u) {
    const auto& ctx = *u.ctx();
    const Ring& R = *ctx.ring();
    if (!ctx.char_p()) raise(errc::char_mismatch, "decomposition lives over char-p bases");
    if (frobenius(u) != ctx.one(u.level() - 1))
        raise(errc::not_in_kernel, "F(u) != 1 for " + u.str());

    Elem zeta = u.coord(0);
    if (R.pow(zeta, ctx.p_ui()) != R.one()) raise(errc::inconsistent, "zeta^p != 1");
    // [zeta]^{-1} = [zeta^{p-1}] since zeta^p = 1
    Elem zeta_inv = R.pow(zeta, ctx.p_ui() - 1);
    WittVector v = witt_mul(u, ctx.teichmuller(zeta_inv, u.level()));
    WittVector w = witt_sub(v, ctx.one(u.level()));
    if (!R.is_zero(w.coord(0))) raise(errc::inconsistent, "kernel part has nonzero 0th coordinate");
    return GmSharpDecomposition{std::move(zeta), std::move(w)};
}

WittVector compose_gm_sharp(const Elem& zeta, const WittVector& w) {
    const auto& ctx = *w.ctx();
    WittVector one_plus_w = witt_add(ctx.one(w.level()), w);
    return witt_mul(ctx.teichmuller(zeta, w.level()), one_plus_w);
}

namespace {

template <typename Pred>
std::vector<WittVector> enumerate_filtered(const WittCtxPtr& ctx, unsigned n, const Int& cap,
                                           Pred pred) {
    auto size = ctx->space_size(n);
    if (!size || *size > cap) raise(errc::ring_too_large, "enumeration over cap");
    unsigned long total = mpz_get_ui(size->get_mpz_t());
    std::vector<WittVector> out;
    for (unsigned long i = 0; i < total; ++i) {
        WittVector x = ctx->vector_at(Int(static_cast<long>(i)), n);
        if (pred(x)) out.push_back(std::move(x));
    }
    return out;
}

} // namespace

std::vector<WittVector> enumerate_special_units(const WittCtxPtr& ctx, unsigned n,
                                                const Int& cap) {
    return enumerate_filtered(ctx, n, cap,
                              [](const WittVector& x) { return membership(x, Subobject::one_plus_wp); });
}

std::vector<WittVector> enumerate_frobenius_kernel_units(const WittCtxPtr& ctx, unsigned n,
                                                         const Int& cap) {
    return enumerate_filtered(ctx, n, cap, [&](const WittVector& x) {
        return frobenius(x) == ctx->one(n - 1);
    });
}

std::vector<WittVector> enumerate_w_frobenius_kernel(const WittCtxPtr& ctx, unsigned n,
                                                     const Int& cap) {
    return enumerate_filtered(ctx, n, cap, [](const WittVector& x) {
        return membership(x, Subobject::w_frobenius_kernel);
    });
}

std::vector<Elem> enumerate_mu_p(const RingPtr& ring, const Int& p, const Int& cap) {
    auto card = ring->cardinality();
    if (!card || *card > cap) raise(errc::ring_too_large, "mu_p enumeration over cap");
    unsigned long total = mpz_get_ui(card->get_mpz_t());
    unsigned long pu = mpz_get_ui(p.get_mpz_t());
    std::vector<Elem> out;
    for (unsigned long i = 0; i < total; ++i) {
        Elem a = ring->element_at(Int(static_cast<long>(i)));
        if (ring->pow(a, pu) == ring->one()) out.push_back(std::move(a));
    }
    return out;
}

} // namespace wittlab
