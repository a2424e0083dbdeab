#include "wittlab/endo.hpp"

#include "wittlab/error.hpp"

#include <sstream>

namespace wittlab {

std::string EndoElement::str() const {
    std::ostringstream os;
    os << u.str() << " * Frob^" << frob_exp;
    return os.str();
}

nlohmann::json EndoElement::to_json() const {
    return nlohmann::json{{"u", u.to_json()}, {"i", frob_exp}};
}

EndoElement make_endo(WittVector u, unsigned frob_exp, unsigned structure_level) {
    SpecialUnit check(u); // certifies p*u = p
    if (!is_wn_linear(u, structure_level))
        raise(errc::not_special_unit,
              "unit is not W_n-linear at structure level " + std::to_string(structure_level));
    return EndoElement{std::move(u), frob_exp, structure_level};
}

EndoElement identity_endo(const WittCtxPtr& ctx, unsigned n, unsigned structure_level) {
    return EndoElement{ctx->one(n), 0, structure_level};
}

bool is_wn_linear(const WittVector& u, unsigned structure_level) {
    const auto& ctx = *u.ctx();
    // q = (p*1)^(structure_level - 1) as an element of the truncated ring
    WittVector p_elem = mul_p(ctx.one(u.level()));
    WittVector q = ctx.one(u.level());
    for (unsigned k = 1; k < structure_level; ++k) q = witt_mul(q, p_elem);
    return witt_mul(u, q) == q;
}

namespace {

WittVector frob_power(const WittVector& x, unsigned i) {
    WittVector r = x;
    for (unsigned k = 0; k < i; ++k) r = frobenius_char_p(r);
    return r;
}

void check_compatible(const EndoElement& a, const EndoElement& b) {
    if (!a.u.ctx()->same(*b.u.ctx())) raise(errc::mixed_rings, "endos over different rings");
    if (a.u.level() != b.u.level()) raise(errc::level_mismatch, "endos at different witt levels");
    if (a.structure_level != b.structure_level)
        raise(errc::level_mismatch, "endos at different structure levels");
}

} // namespace

EndoElement endo_compose(const EndoElement& e1, const EndoElement& e2) {
    check_compatible(e1, e2);
    WittVector twisted = witt_mul(e1.u, frob_power(e2.u, e1.frob_exp));
    return EndoElement{std::move(twisted), e1.frob_exp + e2.frob_exp, e1.structure_level};
}

GroupoidPoint apply_endo(const EndoElement& e, const GroupoidPoint& pt) {
    if (!e.u.ctx()->same(*pt.m.ctx())) raise(errc::mixed_rings, "endo and point disagree");
    WittVector m = witt_mul(e.u, frob_power(pt.m, e.frob_exp));
    WittVector r = frob_power(pt.r, e.frob_exp);
    return GroupoidPoint(std::move(m), std::move(r));
}

WittVector apply_endo_object(const EndoElement& e, const WittVector& r) {
    return frob_power(r, e.frob_exp);
}

EndoElement invert_unit_endo(const EndoElement& e) {
    if (e.frob_exp != 0) raise(errc::not_a_unit, "only Frobenius-free endos are invertible");
    WittVector inv = invert_special_unit(SpecialUnit(e.u));
    return EndoElement{std::move(inv), 0, e.structure_level};
}

std::vector<EndoElement> enumerate_endos(const WittCtxPtr& ctx, unsigned n_witt,
                                         unsigned structure_level, unsigned frob_bound,
                                         const Int& cap) {
    std::vector<WittVector> units = enumerate_special_units(ctx, n_witt, cap);
    std::vector<EndoElement> out;
    for (const auto& u : units) {
        if (!is_wn_linear(u, structure_level)) continue;
        for (unsigned i = 0; i <= frob_bound; ++i)
            out.push_back(EndoElement{u, i, structure_level});
    }
    return out;
}

EndoElement endo_from_json(const WittCtxPtr& ctx, unsigned n, const nlohmann::json& j,
                           unsigned structure_level) {
    if (!j.is_object() || !j.contains("u") || !j.contains("i"))
        raise(errc::parse_error, "endo JSON needs fields u and i");
    WittVector u = ctx->from_json(j.at("u"));
    if (u.level() != n) raise(errc::level_mismatch, "endo unit has wrong level");
    return make_endo(std::move(u), j.at("i").get<unsigned>(), structure_level);
}

} // namespace wittlab
