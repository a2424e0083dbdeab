#ifndef WITTLAB_INTPOLY_HPP
#define WITTLAB_INTPOLY_HPP

/// Sparse multivariate polynomials over Z with integer exponents. Just
/// enough machinery to derive and evaluate Witt structural polynomials and
/// nerve face maps: arithmetic, powers, composition, specialization into an
/// arbitrary coefficient ring, and weighted-homogeneity checks.

#include "wittlab/bigint.hpp"
#include "wittlab/ring.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace wittlab {

class IntPoly {
  public:
    using Exp = std::vector<std::uint32_t>;

    IntPoly() = default;
    explicit IntPoly(unsigned nvars) : nvars_(nvars) {}

    static IntPoly constant(unsigned nvars, const Int& c);
    static IntPoly variable(unsigned nvars, unsigned idx);

    unsigned nvars() const { return nvars_; }
    const std::map<Exp, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    IntPoly operator+(const IntPoly& other) const;
    IntPoly operator-(const IntPoly& other) const;
    IntPoly operator*(const IntPoly& other) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly& other) const {
        return nvars_ == other.nvars_ && terms_ == other.terms_;
    }

    IntPoly scaled(const Int& c) const;
    IntPoly pow(unsigned long e) const;

    /// Divide every coefficient by p^k exactly; throws errc::not_divisible.
    IntPoly exact_div_p_power(const Int& p, unsigned k) const;

    /// Substitute images[v] for variable v (full composition).
    IntPoly compose(const std::vector<IntPoly>& images) const;

    /// Specialize into a coefficient ring at the given arguments.
    Elem evaluate(const Ring& ring, const std::vector<Elem>& args) const;

    /// All monomials have weighted degree exactly d (unless zero).
    bool homogeneous(const std::vector<long>& weights, long d) const;

    void add_term(const Exp& e, const Int& c);

    std::string str(const std::vector<std::string>& names) const;

  private:
    unsigned nvars_ = 0;
    std::map<Exp, Int> terms_;
};

} // namespace wittlab

#endif
