#ifndef WITTLAB_ENDO_HPP
#define WITTLAB_ENDO_HPP

/// The endomorphism monoid acting on the ring groupoid [W/pW]: elements
/// (u, i) with p*u = p and a Frobenius exponent i, composing by the twisted
/// product (u, i) o (v, j) = (u * F^i(v), i + j). A point (m, r) maps to
/// (u * F^i(m), F^i(r)). The W_n(k)-linearity condition collapses the unit
/// to 1 exactly when the structure level is 1.

#include "wittlab/groupoid.hpp"
#include "wittlab/units.hpp"

namespace wittlab {

struct EndoElement {
    WittVector u;            // special unit: p*u = p
    unsigned frob_exp = 0;
    unsigned structure_level = 2;

    std::string str() const;
    nlohmann::json to_json() const;
};

EndoElement make_endo(WittVector u, unsigned frob_exp, unsigned structure_level = 2);
EndoElement identity_endo(const WittCtxPtr& ctx, unsigned n, unsigned structure_level = 2);

/// u respects the W_n(k)-structure: u * p^{n-1} = p^{n-1} in the truncated
/// ring (for n = 1 this reads u = 1; for n >= 2 it follows from p*u = p).
bool is_wn_linear(const WittVector& u, unsigned structure_level);

EndoElement endo_compose(const EndoElement& e1, const EndoElement& e2);
GroupoidPoint apply_endo(const EndoElement& e, const GroupoidPoint& pt);
WittVector apply_endo_object(const EndoElement& e, const WittVector& r);

/// Inverse of (u, 0); uses the special-unit triangular solve.
EndoElement invert_unit_endo(const EndoElement& e);

std::vector<EndoElement> enumerate_endos(const WittCtxPtr& ctx, unsigned n_witt,
                                         unsigned structure_level, unsigned frob_bound,
                                         const Int& enumeration_cap = 65536);

EndoElement endo_from_json(const WittCtxPtr& ctx, unsigned n, const nlohmann::json& j,
                           unsigned structure_level = 2);

} // namespace wittlab

#endif
