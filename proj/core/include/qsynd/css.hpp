#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsynd/gf2.hpp"
#include "qsynd/qc_base.hpp"

namespace qsynd {

// CSS stabilizer code given by a pair of binary parity-check matrices with
// h_x * h_z^T = 0 over GF(2). X errors are decoded against h_z, Z errors
// against h_x.
struct CssCode {
    std::string name;
    SparseBitMatrix h_x;
    SparseBitMatrix h_z;
    std::size_t n = 0;
    std::size_t k = 0;
    // Claimed minimum distance, carried as a label only; 0 when unknown.
    std::size_t d_label = 0;
};

// Builds a CssCode, computing n and k = n - rank(h_x) - rank(h_z).
// Throws std::invalid_argument if the column counts differ or if the rank
// bound would make k negative. Commutation is not enforced here; use
// css_validate to check it.
CssCode make_css_code(std::string name, SparseBitMatrix h_x, SparseBitMatrix h_z);

struct DegreeProfile {
    std::vector<std::pair<std::size_t, std::size_t>> histogram;  // (degree, count), sorted
};

struct CssValidationReport {
    bool commutes = false;
    std::vector<std::pair<std::size_t, std::size_t>> violations;  // (row of h_x, row of h_z)
    std::size_t n = 0;
    std::size_t k = 0;
    DegreeProfile h_x_rows, h_x_cols, h_z_rows, h_z_cols;

    bool passed() const { return commutes; }
};

// Checks h_x * h_z^T = 0 and reports parameters plus degree profiles.
// A violation yields a failed report, not an exception.
CssValidationReport css_validate(const CssCode& code);

// Lifted product of two quasi-cyclic base matrices over the circulant ring:
//   h_x = [ a (x) I_nb | I_ma (x) b* ]
//   h_z = [ I_na (x) b | a* (x) I_mb ]
// where (x) adds shift exponents and * is the conjugate transpose. Both base
// matrices must share the same lift size. The result has
// n = (na*nb + ma*mb) * L physical qubits.
CssCode lifted_product(const QcBaseMatrix& a, const QcBaseMatrix& b, std::string name = {});

// 3 x 5 base matrix with lift size 31 and exponents 5^r * 2^c mod 31; its
// lift is a [155, 64] classical code and its lifted product with itself is a
// [[1054, 140]] quantum code.
QcBaseMatrix tanner_base();

// 2 x 3 repetition-style base matrix with lift size 1; its lifted product
// with itself is the [[13, 1]] hypergraph-product code used in small tests.
QcBaseMatrix repetition3_base();

}  // namespace qsynd
