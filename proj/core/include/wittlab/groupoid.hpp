#ifndef WITTLAB_GROUPOID_HPP
#define WITTLAB_GROUPOID_HPP

/// The quasi-ideal [W --(xp)--> W] as a ring groupoid at finite truncation.
/// A point (m, r) is the morphism r -> r + p*m. Source, target, identity and
/// composition are all ring homomorphisms for the morphism ring structure
///   (m1, r1) * (m2, r2) = (r2*m1 + r1*m2 + (p*m1)*m2, r1*r2).

#include "wittlab/witt.hpp"

namespace wittlab {

struct GroupoidPoint {
    WittVector m; // ideal part
    WittVector r; // ring part

    GroupoidPoint(WittVector m_, WittVector r_);

    bool operator==(const GroupoidPoint& other) const { return m == other.m && r == other.r; }
    bool operator!=(const GroupoidPoint& other) const { return !(*this == other); }
    std::string str() const { return "(m=" + m.str() + ", r=" + r.str() + ")"; }
};

WittVector source(const GroupoidPoint& pt);
WittVector target(const GroupoidPoint& pt);
GroupoidPoint identity_at(const WittVector& r);
/// Defined when target(first) = source(second); errc::not_composable otherwise.
GroupoidPoint compose(const GroupoidPoint& first, const GroupoidPoint& second);
GroupoidPoint inverse_morphism(const GroupoidPoint& pt);

GroupoidPoint morphism_add(const GroupoidPoint& a, const GroupoidPoint& b);
GroupoidPoint morphism_mul(const GroupoidPoint& a, const GroupoidPoint& b);
GroupoidPoint morphism_neg(const GroupoidPoint& a);

/// pi0 over a char-p base is the base ring itself with projection x -> x_0.
/// Asking for this representable form off characteristic p is a CharMismatch.
Elem pi0_projection(const WittVector& x);

/// pi0 off characteristic p, by enumeration: the cosets of the image of (xp)
/// in W_n(R). Each coset is returned as a sorted list of indices into the
/// standard enumeration of W_n(R).
std::vector<std::vector<Int>> pi0_cosets(const WittCtxPtr& ctx, unsigned n,
                                         const Int& enumeration_cap = 4096);

/// pi1 at the basepoint 0: all x with p*x = 0 (independent of basepoint by
/// translation).
std::vector<WittVector> pi1_elements(const WittCtxPtr& ctx, unsigned n,
                                     const Int& enumeration_cap = 65536);
bool pi1_contains(const WittVector& x);

} // namespace wittlab

#endif
