#ifndef WITTLAB_CECH_HPP
#define WITTLAB_CECH_HPP

/// Graded Cech complex of the presentation W -> [W/pW] at finite Witt level:
/// level-k functions are polynomials in the Witt coordinates of W x M^k,
/// with X_i of weight p^i on the object part and Y_j of weight p^j on each
/// morphism part. The differentials
///    d0 f (m, r)      = f(r + p m) - f(r)
///    d1 g (m1, m2, r) = g(m2, r) - g(m1+m2, r) + g(m1, r + p m2)
/// come from the groupoid face maps; they preserve the internal grading
/// because the Witt structural polynomials are weighted-homogeneous, and
/// d1 d0 = 0 is checked degree by degree rather than assumed.

#include "wittlab/gfmatrix.hpp"
#include "wittlab/witt.hpp"

#include <map>

namespace wittlab {

class CechComplex {
  public:
    /// p <= 3 levels n_w <= 3 and degree bound D <= p^2 keep this at desk
    /// scale; coefficient arithmetic is over F_p.
    CechComplex(Int p, unsigned n_w, std::int64_t max_degree);

    const Int& p() const { return p_; }
    unsigned witt_level() const { return n_w_; }
    std::int64_t max_degree() const { return max_degree_; }

    /// Monomial basis of the level-k functions in internal degree d.
    const std::vector<ExpVec>& basis(unsigned level, std::int64_t d) const;
    const GFMatrix& d0(std::int64_t d) const;
    const GFMatrix& d1(std::int64_t d) const;

    bool d_squared_zero(std::int64_t d) const;
    bool d_squared_zero_all() const;

    struct Cohomology {
        std::size_t h0_dim = 0;
        std::size_t h1_dim = 0;
        std::vector<std::vector<std::uint32_t>> h0_basis;
        std::vector<std::vector<std::uint32_t>> h1_reps; // cocycle representatives
    };
    Cohomology cohomology(std::int64_t d) const;

    /// H^0 in degree d is exactly the span of X_0^d.
    bool h0_is_x0_line(std::int64_t d) const;

    /// Is the class a coboundary? (level-1 cocycles only.)
    bool is_coboundary(std::int64_t d, const std::vector<std::uint32_t>& cls) const;

    const RingPtr& level_ring(unsigned level) const;
    Elem to_elem(unsigned level, std::int64_t d, const std::vector<std::uint32_t>& vec) const;

    /// Multiply two level-0 classes (H^0 is closed under multiplication).
    std::vector<std::uint32_t> multiply_h0(std::int64_t d1, const std::vector<std::uint32_t>& a,
                                           std::int64_t d2,
                                           const std::vector<std::uint32_t>& b) const;

    /// Weight of a cohomology class under the endomorphism (u, frob_exp) with
    /// coefficients extended to the univariate quotient ring B: finds the
    /// unique w with pullback(cls) = zeta^w * cls modulo coboundaries.
    /// Throws errc::not_eigenclass when no (or no unique) such w exists.
    unsigned weight_of_class(unsigned level, std::int64_t d,
                             const std::vector<std::uint32_t>& cls, const RingPtr& B,
                             const std::vector<Elem>& u_coords, const Elem& zeta,
                             unsigned frob_exp) const;

  private:
    struct LevelData {
        RingPtr ring;
        std::vector<Elem> xvars, y1vars, y2vars;
        std::vector<long> weights;
    };

    void build_rings();
    std::vector<ExpVec> enumerate_monomials(unsigned level, std::int64_t d) const;
    GFMatrix substitution_matrix(unsigned level_from, std::int64_t d,
                                 const std::vector<Elem>& images_per_var, unsigned level_to,
                                 bool subtract_identity) const;

    Int p_;
    unsigned n_w_;
    std::int64_t max_degree_;
    unsigned pu_;

    LevelData lvl_[3];
    std::vector<Elem> trans1_;  // (r + p m)_i in the level-1 ring
    std::vector<Elem> sum_y_;   // (m1 + m2)_j in the level-2 ring
    std::vector<Elem> trans2_;  // (r + p m2)_i in the level-2 ring

    mutable std::map<std::pair<unsigned, std::int64_t>, std::vector<ExpVec>> basis_cache_;
    mutable std::map<std::int64_t, GFMatrix> d0_cache_, d1_cache_;
};

} // namespace wittlab

#endif
