#include "wittlab/groupoid.hpp"

#include "wittlab/error.hpp"

#include <algorithm>
#include <map>

namespace wittlab {

GroupoidPoint::GroupoidPoint(WittVector m_, WittVector r_) : m(std::move(m_)), r(std::move(r_)) {
    if (!m.ctx()->same(*r.ctx())) raise(errc::mixed_rings, "groupoid point parts disagree");
    if (m.level() != r.level()) raise(errc::level_mismatch, "groupoid point parts disagree");
}

WittVector source(const GroupoidPoint& pt) { return pt.r; }

WittVector target(const GroupoidPoint& pt) { return witt_add(pt.r, mul_p(pt.m)); }

GroupoidPoint identity_at(const WittVector& r) {
    return GroupoidPoint(r.ctx()->zero(r.level()), r);
}

GroupoidPoint compose(const GroupoidPoint& first, const GroupoidPoint& second) {
    if (target(first) != source(second))
        raise(errc::not_composable, "target(first) != source(second)");
    return GroupoidPoint(witt_add(first.m, second.m), first.r);
}

GroupoidPoint inverse_morphism(const GroupoidPoint& pt) {
    return GroupoidPoint(witt_neg(pt.m), target(pt));
}

GroupoidPoint morphism_add(const GroupoidPoint& a, const GroupoidPoint& b) {
    return GroupoidPoint(witt_add(a.m, b.m), witt_add(a.r, b.r));
}

GroupoidPoint morphism_neg(const GroupoidPoint& a) {
    return GroupoidPoint(witt_neg(a.m), witt_neg(a.r));
}

GroupoidPoint morphism_mul(const GroupoidPoint& a, const GroupoidPoint& b) {
    // (m1,r1)*(m2,r2) = (r2 m1 + r1 m2 + d(m1) m2, r1 r2), d = (x p)
    WittVector m = witt_add(witt_add(witt_mul(b.r, a.m), witt_mul(a.r, b.m)),
                            witt_mul(mul_p(a.m), b.m));
    return GroupoidPoint(std::move(m), witt_mul(a.r, b.r));
}

Elem pi0_projection(const WittVector& x) {
    if (!x.ctx()->char_p())
        raise(errc::char_mismatch, "representable pi0 needs a char-p base");
    return x.coord(0);
}

std::vector<std::vector<Int>> pi0_cosets(const WittCtxPtr& ctx, unsigned n, const Int& cap) {
    auto size = ctx->space_size(n);
    if (!size || *size > cap) raise(errc::ring_too_large, "pi0 coset enumeration over cap");
    unsigned long total = mpz_get_ui(size->get_mpz_t());

    // index lookup for coordinates
    std::map<std::vector<std::string>, unsigned long> index_of;
    std::vector<WittVector> all;
    all.reserve(total);
    for (unsigned long i = 0; i < total; ++i) {
        all.push_back(ctx->vector_at(Int(static_cast<long>(i)), n));
        std::vector<std::string> key;
        for (const auto& c : all.back().coords()) key.push_back(ctx->ring()->to_string(c));
        index_of[key] = i;
    }
    auto idx = [&](const WittVector& v) {
        std::vector<std::string> key;
        for (const auto& c : v.coords()) key.push_back(ctx->ring()->to_string(c));
        return index_of.at(key);
    };

    // image of multiplication by p
    std::vector<bool> in_image(total, false);
    for (unsigned long i = 0; i < total; ++i) in_image[idx(mul_p(all[i]))] = true;
    std::vector<WittVector> image;
    for (unsigned long i = 0; i < total; ++i)
        if (in_image[i]) image.push_back(all[i]);

    std::vector<std::vector<Int>> cosets;
    std::vector<bool> seen(total, false);
    for (unsigned long i = 0; i < total; ++i) {
        if (seen[i]) continue;
        std::vector<Int> coset;
        for (const auto& t : image) {
            unsigned long j = idx(witt_add(all[i], t));
            if (!seen[j]) {
                seen[j] = true;
                coset.push_back(Int(static_cast<long>(j)));
            }
        }
        std::sort(coset.begin(), coset.end());
        cosets.push_back(std::move(coset));
    }
    return cosets;
}

std::vector<WittVector> pi1_elements(const WittCtxPtr& ctx, unsigned n, const Int& cap) {
    auto size = ctx->space_size(n);
    if (!size || *size > cap) raise(errc::ring_too_large, "pi1 enumeration over cap");
    unsigned long total = mpz_get_ui(size->get_mpz_t());
    std::vector<WittVector> out;
    for (unsigned long i = 0; i < total; ++i) {
        WittVector x = ctx->vector_at(Int(static_cast<long>(i)), n);
        if (pi1_contains(x)) out.push_back(std::move(x));
    }
    return out;
}

bool pi1_contains(const WittVector& x) { return mul_p(x) == x.ctx()->zero(x.level()); }

} // namespace wittlab
