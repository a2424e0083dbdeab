#ifndef WITTLAB_WITT_HPP
#define WITTLAB_WITT_HPP

/// Truncated p-typical Witt vectors W_n(R). Structural polynomials are
/// derived once per (p, n) over Z from the ghost components and cached;
/// evaluation specializes them into any coefficient ring, so characteristic
/// p and mixed characteristic share one integral source.
///
/// Level conventions at finite truncation:
///   frobenius       : W_n -> W_{n-1}   (ghost-exact, w_i(F x) = w_{i+1}(x))
///   frobenius_char_p: W_n -> W_n       (coordinatewise p-th powers, char p only)
///   verschiebung    : W_n -> W_n       ((0, x_0, .., x_{n-2}), top dropped)
///   verschiebung_raise : W_n -> W_{n+1} ((0, x_0, .., x_{n-1}), nothing lost)
/// Multiplication by the integer p is p-fold Witt addition, matching the
/// quasi-ideal map d = (x p).

#include "wittlab/intpoly.hpp"
#include "wittlab/ring.hpp"

#include <memory>

namespace wittlab {

inline constexpr unsigned kMaxWittLevel = 6;
inline constexpr long kMaxWittPrime = 7;

struct WittCache {
    Int p;
    unsigned n = 0;
    // over 2n variables X_0..X_{n-1}, Y_0..Y_{n-1}
    std::vector<IntPoly> sum;      // S_i
    std::vector<IntPoly> product;  // P_i
    // over n variables X_0..X_{n-1}
    std::vector<IntPoly> negation; // I_i
    std::vector<IntPoly> frob;     // F_i, i <= n-2
    std::vector<IntPoly> ghost;    // w_i
    std::vector<IntPoly> p_mul;    // coordinates of p * X (p-fold sum)
};

/// Memoized; enforces p <= 7 and n <= 6.
const WittCache& witt_cache(const Int& p, unsigned n);

class WittContext;
using WittCtxPtr = std::shared_ptr<const WittContext>;

class WittVector {
  public:
    WittVector() = default;
    WittVector(WittCtxPtr ctx, std::vector<Elem> coords);

    unsigned level() const { return static_cast<unsigned>(coords_.size()); }
    const Elem& coord(unsigned i) const { return coords_.at(i); }
    const std::vector<Elem>& coords() const { return coords_; }
    const WittCtxPtr& ctx() const { return ctx_; }

    bool operator==(const WittVector& other) const;
    bool operator!=(const WittVector& other) const { return !(*this == other); }

    std::string str() const;
    nlohmann::json to_json() const;

  private:
    WittCtxPtr ctx_;
    std::vector<Elem> coords_;
};

class WittContext : public std::enable_shared_from_this<WittContext> {
  public:
    static WittCtxPtr make(RingPtr ring, Int p);

    const RingPtr& ring() const { return ring_; }
    const Int& p() const { return p_; }
    unsigned long p_ui() const { return mpz_get_ui(p_.get_mpz_t()); }
    bool char_p() const { return ring_->is_char_p(p_); }

    WittVector zero(unsigned n) const;
    WittVector one(unsigned n) const;
    WittVector from_coords(std::vector<Elem> coords) const;
    WittVector from_int(const Int& k, unsigned n) const; // k * 1 by double-and-add
    WittVector teichmuller(const Elem& a, unsigned n) const;
    WittVector random(std::mt19937_64& rng, unsigned n) const;

    /// Number of vectors at level n when the base ring is finite.
    std::optional<Int> space_size(unsigned n) const;
    WittVector vector_at(const Int& idx, unsigned n) const;

    /// Parse a JSON array of ring-element strings/numbers.
    WittVector from_json(const nlohmann::json& arr) const;

    bool same(const WittContext& other) const;

  private:
    WittContext(RingPtr ring, Int p) : ring_(std::move(ring)), p_(std::move(p)) {}
    RingPtr ring_;
    Int p_;
};

WittVector witt_add(const WittVector& x, const WittVector& y);
WittVector witt_mul(const WittVector& x, const WittVector& y);
WittVector witt_neg(const WittVector& x);
WittVector witt_sub(const WittVector& x, const WittVector& y);

/// p-fold Witt sum of x (the quasi-ideal map d).
WittVector mul_p(const WittVector& x);

WittVector frobenius(const WittVector& x);
WittVector frobenius_char_p(const WittVector& x);
WittVector verschiebung(const WittVector& x);
WittVector verschiebung_raise(const WittVector& x);
WittVector truncate(const WittVector& x, unsigned m);

std::vector<Elem> ghost(const WittVector& x);

/// Inverse of the ghost map over Z (p-torsion-free); the brute-force oracle.
WittVector ghost_solve(const WittCtxPtr& ctx, const std::vector<Elem>& ghosts);

inline WittVector operator+(const WittVector& x, const WittVector& y) { return witt_add(x, y); }
inline WittVector operator*(const WittVector& x, const WittVector& y) { return witt_mul(x, y); }
inline WittVector operator-(const WittVector& x, const WittVector& y) { return witt_sub(x, y); }
inline WittVector operator-(const WittVector& x) { return witt_neg(x); }

} // namespace wittlab

#endif
