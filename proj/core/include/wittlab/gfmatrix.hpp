#ifndef WITTLAB_GFMATRIX_HPP
#define WITTLAB_GFMATRIX_HPP

/// Dense linear algebra over a prime field F_p (p small): reduced row
/// echelon form, rank, kernel bases, solving, and subspace membership.
/// Sizes stay at desk scale, so no effort is spent on packing.

#include <cstdint>
#include <optional>
#include <vector>

namespace wittlab {

class GFMatrix {
  public:
    GFMatrix(unsigned p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), a_(rows, std::vector<std::uint32_t>(cols, 0)) {}

    unsigned p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t at(std::size_t i, std::size_t j) const { return a_[i][j]; }
    void set(std::size_t i, std::size_t j, std::int64_t v) {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        a_[i][j] = static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }

    const std::vector<std::uint32_t>& row(std::size_t i) const { return a_[i]; }

    GFMatrix multiply(const GFMatrix& other) const;

    std::size_t rank() const;
    /// Basis of {x : A x = 0}, as column vectors.
    std::vector<std::vector<std::uint32_t>> kernel_basis() const;
    /// One solution of A x = b, if any.
    std::optional<std::vector<std::uint32_t>> solve(const std::vector<std::uint32_t>& b) const;
    /// b lies in the column span of A.
    bool column_span_contains(const std::vector<std::uint32_t>& b) const;
    /// Basis of the column span, as column vectors.
    std::vector<std::vector<std::uint32_t>> column_space_basis() const;

    bool is_zero() const;

  private:
    std::uint32_t inv_scalar(std::uint32_t a) const;
    // returns pivot columns of the echelonized copy
    static std::vector<std::size_t> echelonize(std::vector<std::vector<std::uint32_t>>& m,
                                               unsigned p);

    unsigned p_;
    std::size_t rows_, cols_;
    std::vector<std::vector<std::uint32_t>> a_;
};

/// Row-reduce the span of the given vectors to a canonical basis.
std::vector<std::vector<std::uint32_t>> span_basis(std::vector<std::vector<std::uint32_t>> vecs,
                                                   unsigned p);
/// v in span(basis)?
bool in_span(const std::vector<std::vector<std::uint32_t>>& vecs,
             const std::vector<std::uint32_t>& v, unsigned p);

} // namespace wittlab

#endif
