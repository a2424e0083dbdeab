#include "wittlab/gfmatrix.hpp"

#include "wittlab/error.hpp"

#include <algorithm>

namespace wittlab {

std::uint32_t GFMatrix::inv_scalar(std::uint32_t a) const {
    for (std::uint32_t x = 1; x < p_; ++x)
        if ((a * x) % p_ == 1) return x;
    raise(errc::not_a_unit, "scalar not invertible mod p");
}

std::vector<std::size_t> GFMatrix::echelonize(std::vector<std::vector<std::uint32_t>>& m,
                                              unsigned p) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    auto inv = [&](std::uint32_t a) {
        for (std::uint32_t x = 1; x < p; ++x)
            if ((a * x) % p == 1) return x;
        return 0u;
    };
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        std::uint32_t f = inv(m[r][c]);
        for (std::size_t j = c; j < cols; ++j) m[r][j] = (m[r][j] * f) % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            std::uint32_t g = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] = (m[i][j] + (p - g) * m[r][j]) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

GFMatrix GFMatrix::multiply(const GFMatrix& other) const {
    if (cols_ != other.rows_) raise(errc::config_invalid, "matrix shape mismatch");
    GFMatrix out(p_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (a_[i][k] == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                out.a_[i][j] = (out.a_[i][j] + a_[i][k] * other.a_[k][j]) % p_;
        }
    return out;
}

std::size_t GFMatrix::rank() const {
    auto m = a_;
    return echelonize(m, p_).size();
}

std::vector<std::vector<std::uint32_t>> GFMatrix::kernel_basis() const {
    auto m = a_;
    auto pivots = echelonize(m, p_);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint32_t>> basis;
    for (std::size_t free_c = 0; free_c < cols_; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<std::uint32_t> v(cols_, 0);
        v[free_c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = (p_ - m[r][free_c] % p_) % p_;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<std::uint32_t>> GFMatrix::solve(
    const std::vector<std::uint32_t>& b) const {
    if (b.size() != rows_) raise(errc::config_invalid, "rhs size mismatch");
    // echelonize [A | b]
    std::vector<std::vector<std::uint32_t>> m(rows_, std::vector<std::uint32_t>(cols_ + 1, 0));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m[i][j] = a_[i][j];
        m[i][cols_] = b[i] % p_;
    }
    auto pivots = echelonize(m, p_);
    std::vector<std::uint32_t> x(cols_, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols_) return std::nullopt; // pivot in the rhs column
        x[pivots[r]] = m[r][cols_];
    }
    return x;
}

bool GFMatrix::column_span_contains(const std::vector<std::uint32_t>& b) const {
    return solve(b).has_value();
}

std::vector<std::vector<std::uint32_t>> GFMatrix::column_space_basis() const {
    std::vector<std::vector<std::uint32_t>> cols(cols_, std::vector<std::uint32_t>(rows_, 0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) cols[j][i] = a_[i][j];
    return span_basis(std::move(cols), p_);
}

bool GFMatrix::is_zero() const {
    for (const auto& row : a_)
        for (auto v : row)
            if (v != 0) return false;
    return true;
}

std::vector<std::vector<std::uint32_t>> span_basis(std::vector<std::vector<std::uint32_t>> vecs,
                                                   unsigned p) {
    if (vecs.empty()) return {};
    std::vector<std::vector<std::uint32_t>> m = std::move(vecs);
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    auto inv = [&](std::uint32_t a) {
        for (std::uint32_t x = 1; x < p; ++x)
            if ((a * x) % p == 1) return x;
        return 0u;
    };
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        std::uint32_t f = inv(m[r][c]);
        for (std::size_t j = c; j < cols; ++j) m[r][j] = (m[r][j] * f) % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            std::uint32_t g = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] = (m[i][j] + (p - g) * m[r][j]) % p;
        }
        ++r;
    }
    m.resize(r);
    return m;
}

bool in_span(const std::vector<std::vector<std::uint32_t>>& vecs,
             const std::vector<std::uint32_t>& v, unsigned p) {
    auto base = span_basis(std::vector<std::vector<std::uint32_t>>(vecs), p);
    auto extended = base;
    extended.push_back(v);
    return span_basis(std::move(extended), p).size() == base.size();
}

} // namespace wittlab
