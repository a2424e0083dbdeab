#ifndef WITTLAB_RING_HPP
#define WITTLAB_RING_HPP

/// Exact arithmetic over the concrete finite-presentation commutative rings
/// the rest of the library computes in: Z, Z/m, F_p, univariate quotients
/// F_p[t]/(f), and multivariate polynomial rings with optional fractional
/// exponents (denominators dividing p^K) and monomial-nilpotence relations.
///
/// Elements are immutable values in a unique normal form; equality of
/// elements is equality of normal forms. General (non-monomial) ideals are
/// rejected at construction.

#include "wittlab/bigint.hpp"
#include "wittlab/error.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace wittlab {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

enum class RingKind { integers, integers_mod, prime_field, mod_poly, poly_quotient };

/// Exponent vector of a multivariate monomial. Entry v is the numerator of
/// the exponent of variable v at scale p^K_v (integer-exponent variables
/// have K_v = 0).
using ExpVec = std::vector<std::int64_t>;

class Elem {
  public:
    Elem() = default;

    const RingPtr& owner() const { return owner_; }

    // Payload; which member is meaningful depends on owner()->kind().
    Int z;                                           // integers, integers_mod, prime_field
    std::vector<std::uint32_t> poly;                 // mod_poly coefficients, ascending degree
    std::vector<std::pair<ExpVec, Elem>> terms;      // poly_quotient, sorted by exponent vector

    bool operator==(const Elem& other) const;
    bool operator!=(const Elem& other) const { return !(*this == other); }

  private:
    explicit Elem(RingPtr owner) : owner_(std::move(owner)) {}
    RingPtr owner_;
    friend class Ring;
    friend class IntegerRing;
    friend class ModularRing;
    friend class ModPolyRing;
    friend class MultivarRing;
};

struct Variable {
    std::string name;
    unsigned frac_k = 0;                   // exponents live in (1/p^frac_k) * N
    std::optional<std::int64_t> nil_exp;   // x^e = 0 for e >= nil_exp (integer threshold)
};

class Ring : public std::enable_shared_from_this<Ring> {
  public:
    virtual ~Ring() = default;

    virtual RingKind kind() const = 0;
    virtual Int characteristic() const = 0;
    virtual std::optional<Int> cardinality() const = 0;

    virtual Elem from_int(const Int& n) const = 0;
    virtual Elem add(const Elem& a, const Elem& b) const = 0;
    virtual Elem mul(const Elem& a, const Elem& b) const = 0;
    virtual Elem neg(const Elem& a) const = 0;
    virtual bool is_zero(const Elem& a) const = 0;
    virtual std::optional<Elem> try_invert(const Elem& a) const = 0;
    virtual std::string to_string(const Elem& a) const = 0;
    virtual nlohmann::json descriptor() const = 0;
    virtual Elem random(std::mt19937_64& rng) const = 0;

    /// idx-th element under a fixed enumeration, 0 <= idx < cardinality().
    virtual Elem element_at(const Int& idx) const;

    /// Unique p-th root in perfect char-p rings (coefficientwise / exponentwise).
    virtual Elem frobenius_root(const Elem& a) const;

    /// Generator element for a named variable, when the ring has one.
    virtual Elem var_elem(const std::string& name) const;

    /// Lift an element of the coefficient base ring into this ring (identity
    /// for scalar rings).
    virtual Elem embed_scalar(const Elem& base_elem) const;

    /// Exposed by small univariate quotient rings so polynomial evaluation
    /// can run on raw coefficient vectors.
    struct ModPolyView {
        std::uint32_t p;
        const std::vector<std::uint32_t>* modulus;
    };
    virtual std::optional<ModPolyView> mod_poly_view() const { return std::nullopt; }

    /// name^(num/den) as an element; den must divide the variable's p^K scale.
    virtual Elem var_pow(const std::string& name, std::int64_t num, std::int64_t den) const;

    Elem zero() const { return from_int(0); }
    Elem one() const { return from_int(1); }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem pow(const Elem& a, unsigned long e) const;
    Elem invert(const Elem& a) const;
    bool equal(const Elem& a, const Elem& b) const;

    bool same_ring(const Ring& other) const { return descriptor() == other.descriptor(); }
    bool is_char_p(const Int& p) const { return characteristic() == p; }
    /// True when p is nilpotent in the ring (char = p^k, k >= 1).
    bool p_nilpotent(const Int& p) const;

    /// Additive order of 1, by iteration; nullopt if > cap.
    std::optional<Int> additive_order_of_one(unsigned long cap = 1 << 20) const;

    /// Parse an element from the expression grammar (integers, variables,
    /// + - * ^, parenthesized fractional exponents like x^(1/4)).
    Elem parse(const std::string& text) const;

    RingPtr ptr() const { return shared_from_this(); }

  protected:
    Elem make() const { return Elem(ptr()); }
    void check_owner(const Elem& a) const;
};

// Constructors
RingPtr make_integers();
RingPtr make_integers_mod(const Int& m);
RingPtr make_prime_field(const Int& p);
/// Quotient F_p[var]/(modulus); modulus monic, ascending coefficients.
/// An irreducible modulus yields the finite field F_{p^deg}.
RingPtr make_mod_poly(const Int& p, std::vector<std::uint32_t> modulus, std::string var = "t");
/// Polynomial quotient over a scalar base ring. frac_p scales fractional
/// exponents; only monomial relations (nil_exp thresholds) are accepted.
RingPtr make_poly_quotient(RingPtr base, Int frac_p, std::vector<Variable> vars);

RingPtr ring_from_descriptor(const nlohmann::json& j);
/// Shorthand: "Z", "Z/8", "F5" (prime only; other rings need descriptors).
RingPtr ring_from_string(const std::string& s);

// Ready-made rings used across the test rosters.
RingPtr make_gf4();                       // F_2[t]/(t^2+t+1)
RingPtr make_dual_numbers(const Int& p);  // F_p[e]/(e^2)
RingPtr make_mu_p_coefficients(const Int& p); // F_p[t]/(t^p - 1)
RingPtr make_sharp_coefficients(const Int& p); // F_p[e]/(e^p)

// Operator sugar; both operands must share an owner.
Elem operator+(const Elem& a, const Elem& b);
Elem operator-(const Elem& a, const Elem& b);
Elem operator*(const Elem& a, const Elem& b);
Elem operator-(const Elem& a);

/// Render an element as a JSON value: a number for small integer residues,
/// else its string form.
nlohmann::json elem_to_json(const Elem& a);

/// Build a univariate-quotient element from reduced raw coefficients
/// (internal fast path; the ring must expose mod_poly_view()).
Elem mod_poly_from_raw(const Ring& ring, std::vector<std::uint32_t> coeffs);

} // namespace wittlab

#endif
