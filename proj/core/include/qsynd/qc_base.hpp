#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "qsynd/gf2.hpp"

namespace qsynd {

// Base matrix of a quasi-cyclic code. Each entry is either kZeroBlock (an
// all-zero L x L block) or a shift exponent e in [0, L) standing for the
// circulant permutation matrix that maps column j to row (j + e) mod L.
struct QcBaseMatrix {
    static constexpr int kZeroBlock = -1;

    int rows = 0;
    int cols = 0;
    int lift_size = 0;
    std::vector<int> exponents;  // row-major, rows * cols entries

    QcBaseMatrix() = default;
    QcBaseMatrix(int rows, int cols, int lift_size);

    int at(int r, int c) const { return exponents[static_cast<std::size_t>(r) * cols + c]; }
    int& at(int r, int c) { return exponents[static_cast<std::size_t>(r) * cols + c]; }

    // Throws std::invalid_argument if dimensions or exponents are invalid.
    void validate() const;
};

// Conjugate transpose over the circulant ring: transpose of the exponent grid
// with each exponent e replaced by (L - e) mod L. Applied twice it is the
// identity.
QcBaseMatrix conjugate_transpose(const QcBaseMatrix& base);

// Expands a base matrix to its binary (rows*L) x (cols*L) parity-check form.
SparseBitMatrix lift(const QcBaseMatrix& base);

// JSON persistence: {"L": ..., "rows": ..., "cols": ..., "exponents": [[...]]}
// with -1 denoting an all-zero block.
void write_qc_base(const QcBaseMatrix& base, std::ostream& out);
void write_qc_base(const QcBaseMatrix& base, const std::filesystem::path& path);
QcBaseMatrix read_qc_base(std::istream& in);
QcBaseMatrix read_qc_base(const std::filesystem::path& path);

}  // namespace qsynd
