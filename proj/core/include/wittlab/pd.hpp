#ifndef WITTLAB_PD_HPP
#define WITTLAB_PD_HPP

/// Divided-power algebras with fractional exponents, truncated above a
/// degree bound. A monomial carries, per variable, a fractional part
/// alpha in [0,1) (numerator at scale p^K) and a gamma index n, standing
/// for x^alpha * gamma_n(x); for variables without divided powers the pair
/// encodes the plain exponent alpha + n. This basis is integral over Z:
///   x^a gamma_m * x^b gamma_n = binom(m+n, m) x^{a+b} gamma_{m+n},
///   x * gamma_n = (n+1) gamma_{n+1},
/// so characteristic-0 identities and their mod-p reductions come from one
/// computation. The gamma_{p^j}-digit form is recovered by gamma_expand.

#include "wittlab/bigint.hpp"
#include "wittlab/ring.hpp"

#include <map>
#include <memory>

namespace wittlab {

struct PDVar {
    std::string name;
    bool divided = true; // carries gamma_n generators
    unsigned frac_k = 0; // fractional exponents in (1/p^frac_k) N
};

class PDAlgebra;
using PDPtr = std::shared_ptr<const PDAlgebra>;

/// (frac numerator at the variable scale, gamma index) per variable.
struct PDMono {
    std::vector<std::pair<std::int64_t, std::int64_t>> parts;
    bool operator<(const PDMono& o) const { return parts < o.parts; }
    bool operator==(const PDMono& o) const { return parts == o.parts; }
};

class PDElement {
  public:
    PDElement() = default;

    const PDPtr& owner() const { return owner_; }
    const std::vector<std::pair<PDMono, Elem>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool operator==(const PDElement& o) const;
    bool operator!=(const PDElement& o) const { return !(*this == o); }

    std::string str() const;

  private:
    explicit PDElement(PDPtr owner) : owner_(std::move(owner)) {}
    PDPtr owner_;
    std::vector<std::pair<PDMono, Elem>> terms_;
    friend class PDAlgebra;
};

/// One additive summand of a substitution image: coeff * prod_v x_v^e_v,
/// exponent numerators at the target variable scales, gamma-free.
struct SubstAtom {
    Elem coeff;
    std::vector<std::pair<std::size_t, std::int64_t>> powers;
};
using SubstImage = std::vector<SubstAtom>;

class PDAlgebra : public std::enable_shared_from_this<PDAlgebra> {
  public:
    /// degree_bound is a numerator at the common scale p^{max K}.
    static PDPtr make(RingPtr coeff, Int p, std::vector<PDVar> vars, std::int64_t degree_bound_num);

    const RingPtr& coeff() const { return coeff_; }
    const Int& p() const { return p_; }
    unsigned long p_ui() const { return mpz_get_ui(p_.get_mpz_t()); }
    const std::vector<PDVar>& vars() const { return vars_; }
    std::int64_t scale(std::size_t v) const { return scales_[v]; }
    std::int64_t common_scale() const { return common_scale_; }
    std::int64_t degree_bound_num() const { return degree_bound_num_; }

    /// degree of a monomial, as a numerator at the common scale.
    std::int64_t degree_num(const PDMono& m) const;

    PDElement zero() const { return PDElement(shared_from_this()); }
    PDElement one() const { return monomial(unit_mono(), coeff_->one()); }
    PDElement from_int(const Int& n) const { return monomial(unit_mono(), coeff_->from_int(n)); }
    PDElement monomial(const PDMono& m, const Elem& c) const;
    PDElement scalar(const Elem& c) const { return monomial(unit_mono(), c); }

    /// gamma_n(x_v); errc::truncated when the degree leaves the range.
    PDElement gamma(std::size_t v, std::int64_t n) const;
    /// x_v^(num/ p^K_v); for divided variables num may exceed the scale, the
    /// integer part becomes n! gamma_n.
    PDElement var_power(std::size_t v, std::int64_t num) const;
    /// Like the above but returning zero past the bound (truncation ideal).
    PDElement gamma_trunc(std::size_t v, std::int64_t n) const;
    PDElement var_power_trunc(std::size_t v, std::int64_t num) const;

    PDElement add(const PDElement& a, const PDElement& b) const;
    PDElement mul(const PDElement& a, const PDElement& b) const;
    PDElement neg(const PDElement& a) const;
    PDElement sub(const PDElement& a, const PDElement& b) const { return add(a, neg(b)); }
    PDElement scale_by(const Elem& c, const PDElement& a) const;
    PDElement pow(const PDElement& a, unsigned long e) const;

    std::size_t var_index(const std::string& name) const;

    /// All monomials of degree < bound (numerator at common scale).
    std::vector<PDMono> monomial_basis(std::int64_t bound_num) const;
    std::vector<PDMono> monomials_of_degree(std::int64_t degree_num) const;

    Elem coefficient_of(const PDElement& a, const PDMono& m) const;

    PDMono unit_mono() const { return PDMono{{std::vector<std::pair<std::int64_t, std::int64_t>>(
        vars_.size(), {0, 0})}}; }

    bool same(const PDAlgebra& o) const;

  private:
    PDAlgebra(RingPtr coeff, Int p, std::vector<PDVar> vars, std::int64_t bound);

    RingPtr coeff_;
    Int p_;
    std::vector<PDVar> vars_;
    std::vector<std::int64_t> scales_;
    std::int64_t common_scale_ = 1;
    std::int64_t degree_bound_num_ = 0;
};

/// Ring-homomorphic substitution. Variables absent from `images` map to the
/// target variable of the same name. Divided powers of a sum expand by the
/// convolution formula; fractional parts require a single-atom image (or a
/// perfect char-p coefficient ring for coefficient roots).
PDElement pd_substitute(const PDElement& el, const PDPtr& target,
                        const std::map<std::size_t, SubstImage>& images);

struct GammaExpansion {
    PDElement digit_monomial; // x^{n_0} prod_j gamma_{p^j}^{n_j}, equal to multinomial * gamma_n
    Int multinomial;          // n! / prod_j (p^j!)^{n_j}, verified by exact division
    std::vector<std::int64_t> digits;
};

/// Digit form of gamma_n in the gamma_{p^j} basis, with its exact
/// multinomial unit.
GammaExpansion gamma_expand(const PDPtr& alg, std::size_t v, std::int64_t n);

} // namespace wittlab

#endif
