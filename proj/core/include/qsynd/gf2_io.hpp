#pragma once

#include <filesystem>
#include <iosfwd>

#include "qsynd/gf2.hpp"

namespace qsynd {

// Alist-style sparse format:
//   line 1: "<rows> <cols>"
//   line 2: per-row degrees
//   lines 3..rows+2: sorted 1-based column indices of each row
// Writing then reading a matrix reproduces it exactly, and the writer output
// is byte-stable.
void write_alist(const SparseBitMatrix& m, std::ostream& out);
void write_alist(const SparseBitMatrix& m, const std::filesystem::path& path);
SparseBitMatrix read_alist(std::istream& in);
SparseBitMatrix read_alist(const std::filesystem::path& path);

// Dense text format: one line per row of '0'/'1' characters.
void write_dense_grid(const BitMatrix& m, std::ostream& out);
void write_dense_grid(const BitMatrix& m, const std::filesystem::path& path);
BitMatrix read_dense_grid(std::istream& in);
BitMatrix read_dense_grid(const std::filesystem::path& path);

}  // namespace qsynd
