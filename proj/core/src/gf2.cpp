#include "qsynd/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace qsynd {

namespace {

std::uint64_t tail_mask(std::size_t bits) {
    const std::size_t rem = bits & 63;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

}  // namespace

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("BitVector::from_string: expected '0' or '1'");
        }
    }
    return v;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (std::uint64_t word : words_) {
        w += std::popcount(word);
    }
    return w;
}

bool BitVector::none() const {
    for (std::uint64_t word : words_) {
        if (word != 0) {
            return false;
        }
    }
    return true;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (len_ != other.len_) {
        throw std::invalid_argument("BitVector::operator^=: length mismatch");
    }
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string_view>& rows) {
    if (rows.empty()) {
        return {};
    }
    BitMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) {
            throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (rows[r][c] == '1') {
                m.set(r, c, true);
            } else if (rows[r][c] != '0') {
                throw std::invalid_argument("BitMatrix::from_rows: expected '0' or '1'");
            }
        }
    }
    return m;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    std::copy_n(words_.data() + r * stride_, stride_, v.words().data());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("BitMatrix::set_row: length mismatch");
    }
    std::copy_n(v.words().data(), stride_, words_.data() + r * stride_);
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto words = row_words(r);
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint64_t bits = words[w];
            while (bits != 0) {
                const std::size_t c = (w << 6) + std::countr_zero(bits);
                t.set(c, r, true);
                bits &= bits - 1;
            }
        }
    }
    return t;
}

SparseBitMatrix::SparseBitMatrix(std::size_t rows, std::size_t cols,
                                 std::vector<std::vector<std::uint32_t>> row_support)
    : rows_(rows), cols_(cols), row_support_(std::move(row_support)) {
    if (row_support_.size() != rows_) {
        throw std::invalid_argument("SparseBitMatrix: row count mismatch");
    }
    for (const auto& support : row_support_) {
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (support[i] >= cols_) {
                throw std::invalid_argument("SparseBitMatrix: column index out of range");
            }
            if (i > 0 && support[i] <= support[i - 1]) {
                throw std::invalid_argument("SparseBitMatrix: supports must be sorted and unique");
            }
        }
    }
}

SparseBitMatrix SparseBitMatrix::from_dense(const BitMatrix& m) {
    std::vector<std::vector<std::uint32_t>> support(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto words = m.row_words(r);
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint64_t bits = words[w];
            while (bits != 0) {
                support[r].push_back(static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }
    return {m.rows(), m.cols(), std::move(support)};
}

BitMatrix SparseBitMatrix::to_dense() const {
    BitMatrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::uint32_t c : row_support_[r]) {
            m.set(r, c, true);
        }
    }
    return m;
}

std::size_t SparseBitMatrix::nnz() const {
    std::size_t total = 0;
    for (const auto& support : row_support_) {
        total += support.size();
    }
    return total;
}

std::vector<std::size_t> SparseBitMatrix::column_degrees() const {
    std::vector<std::size_t> degrees(cols_, 0);
    for (const auto& support : row_support_) {
        for (std::uint32_t c : support) {
            ++degrees[c];
        }
    }
    return degrees;
}

SparseBitMatrix SparseBitMatrix::transposed() const {
    std::vector<std::vector<std::uint32_t>> support(cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::uint32_t c : row_support_[r]) {
            support[c].push_back(static_cast<std::uint32_t>(r));
        }
    }
    return {cols_, rows_, std::move(support)};
}

BitVector mat_vec_mod2(const SparseBitMatrix& h, const BitVector& x) {
    if (h.cols() != x.size()) {
        throw std::invalid_argument("mat_vec_mod2: dimension mismatch");
    }
    BitVector y(h.rows());
    for (std::size_t r = 0; r < h.rows(); ++r) {
        unsigned parity = 0;
        for (std::uint32_t c : h.row(r)) {
            parity ^= static_cast<unsigned>(x.get(c));
        }
        if (parity != 0) {
            y.set(r, true);
        }
    }
    return y;
}

BitMatrix mat_mul_mod2(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mat_mul_mod2: dimension mismatch");
    }
    BitMatrix c(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto out = c.row_words(r);
        const auto lhs = a.row_words(r);
        for (std::size_t w = 0; w < lhs.size(); ++w) {
            std::uint64_t bits = lhs[w];
            while (bits != 0) {
                const std::size_t k = (w << 6) + std::countr_zero(bits);
                const auto rhs = b.row_words(k);
                for (std::size_t j = 0; j < out.size(); ++j) {
                    out[j] ^= rhs[j];
                }
                bits &= bits - 1;
            }
        }
    }
    return c;
}

RowSpace::RowSpace(const BitMatrix& m)
    : cols_(m.cols()), stride_(BitVector::word_count(m.cols())) {
    // Gaussian elimination over a private copy of the rows. Processed rows
    // with a leading one become basis rows; pivot columns stay increasing.
    std::vector<std::uint64_t> work(m.rows() * stride_);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::copy_n(m.row_words(r).data(), stride_, work.data() + r * stride_);
    }
    const std::uint64_t mask = tail_mask(cols_);
    if (stride_ > 0) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            work[r * stride_ + stride_ - 1] &= mask;
        }
    }

    std::size_t next = 0;  // rows [0, next) hold the echelon basis so far
    for (std::size_t c = 0; c < cols_ && next < m.rows(); ++c) {
        const std::size_t w = c >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        std::size_t pivot = next;
        while (pivot < m.rows() && (work[pivot * stride_ + w] & bit) == 0) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        if (pivot != next) {
            std::swap_ranges(work.begin() + pivot * stride_,
                             work.begin() + (pivot + 1) * stride_,
                             work.begin() + next * stride_);
        }
        for (std::size_t r = next + 1; r < m.rows(); ++r) {
            if (work[r * stride_ + w] & bit) {
                for (std::size_t j = w; j < stride_; ++j) {
                    work[r * stride_ + j] ^= work[next * stride_ + j];
                }
            }
        }
        pivot_cols_.push_back(static_cast<std::uint32_t>(c));
        ++next;
    }

    basis_words_.assign(work.begin(), work.begin() + next * stride_);
}

bool RowSpace::contains(const BitVector& v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("RowSpace::contains: length mismatch");
    }
    std::vector<std::uint64_t> rem(v.words().begin(), v.words().end());
    for (std::size_t k = 0; k < pivot_cols_.size(); ++k) {
        const std::uint32_t c = pivot_cols_[k];
        if (rem[c >> 6] & (std::uint64_t{1} << (c & 63))) {
            const std::uint64_t* basis = basis_words_.data() + k * stride_;
            for (std::size_t j = 0; j < stride_; ++j) {
                rem[j] ^= basis[j];
            }
        }
    }
    for (std::uint64_t word : rem) {
        if (word != 0) {
            return false;
        }
    }
    return true;
}

std::size_t rank_mod2(const BitMatrix& m) {
    return RowSpace(m).rank();
}

bool in_rowspace(const BitMatrix& m, const BitVector& v) {
    return RowSpace(m).contains(v);
}

}  // namespace qsynd
