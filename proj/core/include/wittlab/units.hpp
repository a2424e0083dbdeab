#ifndef WITTLAB_UNITS_HPP
#define WITTLAB_UNITS_HPP

/// Subgroup and submonoid objects inside W_n: the p-torsion W[p], the
/// Frobenius kernel W[F], the special units (1+W[p])^x = {u : p*u = p},
/// mu_p, and the characteristic-p product decomposition
/// W^x[F] ~ W[F] x mu_p through f'(u) = 1 + (u-1)_0.
///
/// Frobenius-kernel tests use the level-dropping F (ghost-exact), so
/// W_n[F] means "F : W_n -> W_{n-1} kills x"; the same-level char-p power
/// map enters only where char-p identities require it.

#include "wittlab/witt.hpp"

namespace wittlab {

enum class Subobject { w_p_torsion, w_frobenius_kernel, one_plus_wp, mu_p };

bool membership(const WittVector& x, Subobject which);

/// A Witt vector with the certificate p*u = p, checked at construction.
class SpecialUnit {
  public:
    explicit SpecialUnit(WittVector u);
    const WittVector& value() const { return u_; }

  private:
    WittVector u_;
};

/// Inverse of a special unit over a p-nilpotent (or char-p) base, by
/// triangular coordinate solving against the product polynomials.
WittVector invert_special_unit(const SpecialUnit& u);

/// f' : W^x[F] -> mu_p, u -> 1 + (u - 1)_0.
Elem f_prime(const WittVector& u);

struct GmSharpDecomposition {
    Elem zeta;     // in mu_p of the base ring
    WittVector w;  // in W[F], 0-th coordinate zero
};

/// u = [zeta] * (1 + w); requires a char-p base and F(u) = 1.
GmSharpDecomposition decompose_gm_sharp(const WittVector& u);
WittVector compose_gm_sharp(const Elem& zeta, const WittVector& w);

std::vector<WittVector> enumerate_special_units(const WittCtxPtr& ctx, unsigned n,
                                                const Int& enumeration_cap = 65536);
/// All u with F(u) = 1 (level-dropping), i.e. W^x[F] at truncation.
std::vector<WittVector> enumerate_frobenius_kernel_units(const WittCtxPtr& ctx, unsigned n,
                                                         const Int& enumeration_cap = 65536);
std::vector<Elem> enumerate_mu_p(const RingPtr& ring, const Int& p,
                                 const Int& enumeration_cap = 4096);
std::vector<WittVector> enumerate_w_frobenius_kernel(const WittCtxPtr& ctx, unsigned n,
                                                     const Int& enumeration_cap = 65536);

} // namespace wittlab

#endif
