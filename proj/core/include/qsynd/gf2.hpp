#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qsynd {

// Packed GF(2) vector. Unused high bits of the last word are kept zero so
// equality, weight and row reduction can operate on whole words.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

    // Parses a string of '0'/'1' characters, e.g. "01101".
    static BitVector from_string(std::string_view bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;
    bool none() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector lhs, const BitVector& rhs) {
        lhs ^= rhs;
        return lhs;
    }
    bool operator==(const BitVector&) const = default;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    std::string to_string() const;

    static std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense GF(2) matrix, bit-packed row-major with a fixed word stride per row.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(BitVector::word_count(cols)),
          words_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n);
    // Parses rows of '0'/'1' strings; all rows must have equal length.
    static BitMatrix from_rows(const std::vector<std::string_view>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        std::uint64_t& w = words_[r * stride_ + (c >> 6)];
        if (v) {
            w |= mask;
        } else {
            w &= ~mask;
        }
    }

    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {words_.data() + r * stride_, stride_};
    }
    std::span<std::uint64_t> row_words(std::size_t r) {
        return {words_.data() + r * stride_, stride_};
    }

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);

    BitMatrix transposed() const;

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> words_;
};

// Sparse GF(2) matrix stored as sorted column supports per row.
class SparseBitMatrix {
public:
    SparseBitMatrix() = default;
    // Supports must be sorted, duplicate-free and within [0, cols).
    SparseBitMatrix(std::size_t rows, std::size_t cols,
                    std::vector<std::vector<std::uint32_t>> row_support);

    static SparseBitMatrix from_dense(const BitMatrix& m);
    BitMatrix to_dense() const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::span<const std::uint32_t> row(std::size_t r) const { return row_support_[r]; }
    std::size_t row_degree(std::size_t r) const { return row_support_[r].size(); }
    std::size_t nnz() const;
    std::vector<std::size_t> column_degrees() const;

    SparseBitMatrix transposed() const;

    bool operator==(const SparseBitMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<std::uint32_t>> row_support_;
};

// y = H * x over GF(2). Throws std::invalid_argument on dimension mismatch.
BitVector mat_vec_mod2(const SparseBitMatrix& h, const BitVector& x);

// C = A * B over GF(2). Throws std::invalid_argument on dimension mismatch.
BitMatrix mat_mul_mod2(const BitMatrix& a, const BitMatrix& b);

// Rank over GF(2); the input is not modified.
std::size_t rank_mod2(const BitMatrix& m);

// Row-echelon basis of the row space of a matrix, cached for repeated
// membership queries.
class RowSpace {
public:
    explicit RowSpace(const BitMatrix& m);

    std::size_t rank() const { return pivot_cols_.size(); }
    std::size_t cols() const { return cols_; }

    // True iff v is a GF(2) combination of the rows. Throws on length mismatch.
    bool contains(const BitVector& v) const;

private:
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> basis_words_;   // one echelon row per pivot
    std::vector<std::uint32_t> pivot_cols_;    // strictly increasing
};

// Convenience wrapper around RowSpace::contains for one-off queries.
bool in_rowspace(const BitMatrix& m, const BitVector& v);

}  // namespace qsynd
