#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpcc {

// Matrix over GF(2), one machine word per row. Width is capped at 64
// columns, which covers every N*f symbol space we build.
class BitMatrix {
  public:
    BitMatrix() : rows_(0), cols_(1) {}

    BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        check_cols(cols);
        words_.assign(rows, 0);
    }

    // Rows given as bit strings, most significant column first:
    // "1010" sets columns 0 and 2.
    static BitMatrix from_strings(const std::vector<std::string>& rows, std::size_t cols) {
        BitMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols)
                throw std::invalid_argument("bit string length " + std::to_string(rows[r].size()) +
                                            " does not match " + std::to_string(cols) + " columns");
            for (std::size_t c = 0; c < cols; ++c) {
                if (rows[r][c] == '1')
                    m.set(r, c, true);
                else if (rows[r][c] != '0')
                    throw std::invalid_argument(std::string("invalid bit character '") + rows[r][c] + "'");
            }
        }
        return m;
    }

    static BitMatrix from_rows(const std::vector<std::uint64_t>& row_words, std::size_t cols) {
        check_cols(cols);
        BitMatrix m(row_words.size(), cols);
        for (std::size_t r = 0; r < row_words.size(); ++r) {
            if (cols < 64 && (row_words[r] >> cols) != 0)
                throw std::invalid_argument("row word has bits beyond column count");
            m.words_[r] = row_words[r];
        }
        return m;
    }

    static BitMatrix unit_row(std::size_t col, std::size_t cols) {
        check_cols(cols);
        if (col >= cols) throw std::out_of_range("unit column out of range");
        BitMatrix m(1, cols);
        m.words_[0] = std::uint64_t(1) << col;
        return m;
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        bounds(r, c);
        return (words_[r] >> c) & 1;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        bounds(r, c);
        if (v)
            words_[r] |= std::uint64_t(1) << c;
        else
            words_[r] &= ~(std::uint64_t(1) << c);
    }

    std::uint64_t row_word(std::size_t r) const {
        if (r >= rows_) throw std::out_of_range("row out of range");
        return words_[r];
    }

    void set_row_word(std::size_t r, std::uint64_t w) {
        if (r >= rows_) throw std::out_of_range("row out of range");
        if (cols_ < 64 && (w >> cols_) != 0) throw std::invalid_argument("row word too wide");
        words_[r] = w;
    }

    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        out.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::string s(cols_, '0');
            for (std::size_t c = 0; c < cols_; ++c)
                if ((words_[r] >> c) & 1) s[c] = '1';
            out.push_back(std::move(s));
        }
        return out;
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
    }
    friend bool operator!=(const BitMatrix& a, const BitMatrix& b) { return !(a == b); }

    friend bool operator<(const BitMatrix& a, const BitMatrix& b) {
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        return a.words_ < b.words_;
    }

  private:
    static void check_cols(std::size_t cols) {
        if (cols < 1 || cols > 64)
            throw std::invalid_argument("column count must be in [1, 64]");
    }
    void bounds(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint64_t> words_;
};

inline BitMatrix stack(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("stack: column counts differ");
    BitMatrix out(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) out.set_row_word(r, a.row_word(r));
    for (std::size_t r = 0; r < b.rows(); ++r) out.set_row_word(a.rows() + r, b.row_word(r));
    return out;
}

namespace detail {

// Echelon basis of the row space: one word per pivot, pivot = lowest set
// column of each basis word, strictly increasing.
inline std::vector<std::uint64_t> echelon_basis(const BitMatrix& m) {
    std::vector<std::uint64_t> basis;  // basis[i] has pivot at pivot_col[i]
    std::vector<unsigned> pivot_col;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t w = m.row_word(r);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if ((w >> pivot_col[i]) & 1) w ^= basis[i];
        if (w == 0) continue;
        unsigned p = static_cast<unsigned>(__builtin_ctzll(w));
        basis.push_back(w);
        pivot_col.push_back(p);
    }
    // sort by pivot column for canonical back-substitution
    std::vector<std::size_t> order(basis.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return pivot_col[x] < pivot_col[y]; });
    std::vector<std::uint64_t> sorted;
    sorted.reserve(basis.size());
    for (std::size_t i : order) sorted.push_back(basis[i]);
    return sorted;
}

inline bool reduces_to_zero(std::uint64_t w, const std::vector<std::uint64_t>& basis) {
    for (std::uint64_t b : basis) {
        unsigned p = static_cast<unsigned>(__builtin_ctzll(b));
        if ((w >> p) & 1) w ^= b;
    }
    return w == 0;
}

}  // namespace detail

inline std::size_t rank(const BitMatrix& m) {
    return detail::echelon_basis(m).size();
}

// Reduced row-echelon form with zero rows dropped; canonical per row span.
inline BitMatrix rref(const BitMatrix& m) {
    std::vector<std::uint64_t> basis = detail::echelon_basis(m);
    // clear entries above each pivot
    for (std::size_t i = basis.size(); i-- > 0;) {
        unsigned p = static_cast<unsigned>(__builtin_ctzll(basis[i]));
        for (std::size_t j = 0; j < i; ++j)
            if ((basis[j] >> p) & 1) basis[j] ^= basis[i];
    }
    return BitMatrix::from_rows(basis, m.cols());
}

inline bool in_row_span(const BitMatrix& v, const BitMatrix& m) {
    if (v.cols() != m.cols())
        throw std::invalid_argument("in_row_span: column counts differ");
    if (v.rows() != 1)
        throw std::invalid_argument("in_row_span: v must be a single row");
    return detail::reduces_to_zero(v.row_word(0), detail::echelon_basis(m));
}

inline bool in_row_span(std::uint64_t row_bits, const BitMatrix& m) {
    return detail::reduces_to_zero(row_bits, detail::echelon_basis(m));
}

// All dim-dimensional subspaces of GF(2)^cols, one rref representative each.
// Count is the Gaussian binomial coefficient [cols choose dim]_2.
inline std::vector<BitMatrix> enumerate_row_spaces(std::size_t cols, std::size_t dim) {
    if (cols < 1 || cols > 16) throw std::out_of_range("enumerate_row_spaces: cols must be in [1, 16]");
    if (dim > cols) throw std::out_of_range("enumerate_row_spaces: dim exceeds cols");
    std::vector<BitMatrix> out;
    if (dim == 0) {
        out.emplace_back(0, cols);
        return out;
    }
    // choose pivot columns p_0 < ... < p_{dim-1}; free entries sit at
    // non-pivot columns to the right of each row's pivot
    std::vector<std::size_t> pivots(dim);
    for (std::size_t i = 0; i < dim; ++i) pivots[i] = i;
    while (true) {
        std::vector<std::pair<std::size_t, std::size_t>> free_pos;  // (row, col)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t c = pivots[i] + 1; c < cols; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                    free_pos.emplace_back(i, c);
        const std::size_t nfree = free_pos.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << nfree); ++mask) {
            BitMatrix m(dim, cols);
            for (std::size_t i = 0; i < dim; ++i) m.set(i, pivots[i], true);
            for (std::size_t k = 0; k < nfree; ++k)
                if ((mask >> k) & 1) m.set(free_pos[k].first, free_pos[k].second, true);
            out.push_back(std::move(m));
        }
        // next pivot combination, lexicographic
        std::size_t i = dim;
        while (i > 0 && pivots[i - 1] == cols - dim + (i - 1)) --i;
        if (i == 0) return out;
        ++pivots[i - 1];
        for (std::size_t j = i; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
    }
}

}  // namespace dpcc
