#ifndef WITTLAB_RIGIDITY_HPP
#define WITTLAB_RIGIDITY_HPP

/// Rigidity computations in divided-power algebras:
///  - the coefficient pin-down for functorial endomorphisms of the divided
///    power envelope, with three independent routes that must agree mod p;
///  - the unique-section solvers for the first conjugate-filtration
///    splitting (steps 1-3: scaling, symmetry, Teichmuller substitution);
///  - the Frobenius difference polynomial F with
///      (a-b)^p + b^p = a^p + p*F~(a^p, b^p)
///    and the kernel computation showing H(a, F(a,b)) = 0 mod a^p forces
///    H = 0 (odd p; the p = 2 anomaly is reported, not asserted).

#include "wittlab/bigint.hpp"
#include "wittlab/pd.hpp"
#include "wittlab/ring.hpp"

namespace wittlab {

struct PinDownResult {
    Int functorial;   // coefficient extracted from the x -> y+z functoriality over Z
    Int closed_form;  // (p^N)! (p^N(p-1))! / (p-1)!
    Int oracle;       // coefficient of gamma_{p^{N+1}} in gamma_p(x^{p^N}): (p^{N+1})!/p!
    unsigned residue; // the common value mod p
    bool full_equation_holds_mod_p;
};

/// Throws errc::inconsistent when the routes disagree mod p.
PinDownResult pin_down_coefficient(const Int& p, unsigned N);

struct FrobeniusDifference {
    Elem f;                           // in F_p[a^{1/p}, b^{1/p}] (scaled to p^{K+1} lattice)
    std::vector<unsigned> c;          // c_i mod p, i = 1..p-1
    bool all_nonzero = false;         // every c_i != 0 mod p
    bool matches_binomial_formula = false; // c_i = (-1)^{p-i} binom(p,i)/p mod p
    bool has_extra_terms = false;     // terms outside sum c_i a^{i/p} b^{(p-i)/p} (p = 2)
    std::string rendered;
};

FrobeniusDifference frobenius_difference_poly(const Int& p, unsigned K = 2);

/// Dimension of {H of degree p, no a^p term, H(a, F(a,b)) = 0 mod a^p} at
/// exponent truncation K. Odd p only; p = 2 raises errc::config_invalid.
unsigned difference_kernel_dimension(const Int& p, unsigned K = 2);

struct SplittingResult {
    int step = 0;
    std::size_t solution_count = 0;   // affine solutions: 0, 1, or 2+ meaning non-unique
    std::size_t kernel_dimension = 0;
    bool matches_expected = false;
    std::string section;              // rendered unique section, when it exists
    std::string expected;
};

/// Solves the functorial-section constraints for one step; K is the
/// fractional-exponent truncation.
SplittingResult splitting_section_solver(const Int& p, int step, unsigned K = 2);

} // namespace wittlab

#endif
