#include "qsynd/css.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace qsynd {

namespace {

DegreeProfile profile_of(const std::vector<std::size_t>& degrees) {
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t d : degrees) {
        ++counts[d];
    }
    DegreeProfile profile;
    profile.histogram.assign(counts.begin(), counts.end());
    return profile;
}

DegreeProfile row_profile(const SparseBitMatrix& m) {
    std::vector<std::size_t> degrees(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        degrees[r] = m.row_degree(r);
    }
    return profile_of(degrees);
}

// Kronecker product over the circulant ring: exponents add mod L, a zero
// block on either side stays zero.
QcBaseMatrix qc_kron(const QcBaseMatrix& x, const QcBaseMatrix& y) {
    QcBaseMatrix out(x.rows * y.rows, x.cols * y.cols, x.lift_size);
    for (int xr = 0; xr < x.rows; ++xr) {
        for (int xc = 0; xc < x.cols; ++xc) {
            const int ex = x.at(xr, xc);
            if (ex == QcBaseMatrix::kZeroBlock) {
                continue;
            }
            for (int yr = 0; yr < y.rows; ++yr) {
                for (int yc = 0; yc < y.cols; ++yc) {
                    const int ey = y.at(yr, yc);
                    if (ey == QcBaseMatrix::kZeroBlock) {
                        continue;
                    }
                    out.at(xr * y.rows + yr, xc * y.cols + yc) = (ex + ey) % x.lift_size;
                }
            }
        }
    }
    return out;
}

QcBaseMatrix qc_identity(int n, int lift_size) {
    QcBaseMatrix id(n, n, lift_size);
    for (int i = 0; i < n; ++i) {
        id.at(i, i) = 0;
    }
    return id;
}

QcBaseMatrix qc_hconcat(const QcBaseMatrix& left, const QcBaseMatrix& right) {
    QcBaseMatrix out(left.rows, left.cols + right.cols, left.lift_size);
    for (int r = 0; r < left.rows; ++r) {
        for (int c = 0; c < left.cols; ++c) {
            out.at(r, c) = left.at(r, c);
        }
        for (int c = 0; c < right.cols; ++c) {
            out.at(r, left.cols + c) = right.at(r, c);
        }
    }
    return out;
}

}  // namespace

CssCode make_css_code(std::string name, SparseBitMatrix h_x, SparseBitMatrix h_z) {
    if (h_x.cols() != h_z.cols()) {
        throw std::invalid_argument("make_css_code: column count mismatch");
    }
    CssCode code;
    code.name = std::move(name);
    code.n = h_x.cols();
    const std::size_t rank_sum = rank_mod2(h_x.to_dense()) + rank_mod2(h_z.to_dense());
    if (rank_sum > code.n) {
        throw std::invalid_argument("make_css_code: rank exceeds block length");
    }
    code.k = code.n - rank_sum;
    code.h_x = std::move(h_x);
    code.h_z = std::move(h_z);
    return code;
}

CssValidationReport css_validate(const CssCode& code) {
    CssValidationReport report;
    report.n = code.n;
    report.k = code.k;
    report.h_x_rows = row_profile(code.h_x);
    report.h_x_cols = profile_of(code.h_x.column_degrees());
    report.h_z_rows = row_profile(code.h_z);
    report.h_z_cols = profile_of(code.h_z.column_degrees());

    const BitMatrix product =
        mat_mul_mod2(code.h_x.to_dense(), code.h_z.to_dense().transposed());
    report.commutes = true;
    for (std::size_t r = 0; r < product.rows(); ++r) {
        const auto words = product.row_words(r);
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint64_t bits = words[w];
            while (bits != 0) {
                const std::size_t c = (w << 6) + std::countr_zero(bits);
                report.violations.emplace_back(r, c);
                report.commutes = false;
                bits &= bits - 1;
            }
        }
    }
    return report;
}

CssCode lifted_product(const QcBaseMatrix& a, const QcBaseMatrix& b, std::string name) {
    a.validate();
    b.validate();
    if (a.lift_size != b.lift_size) {
        throw std::invalid_argument("lifted_product: lift sizes differ");
    }
    const int l = a.lift_size;
    const QcBaseMatrix a_ct = conjugate_transpose(a);
    const QcBaseMatrix b_ct = conjugate_transpose(b);

    const QcBaseMatrix base_x = qc_hconcat(qc_kron(a, qc_identity(b.cols, l)),
                                           qc_kron(qc_identity(a.rows, l), b_ct));
    const QcBaseMatrix base_z = qc_hconcat(qc_kron(qc_identity(a.cols, l), b),
                                           qc_kron(a_ct, qc_identity(b.rows, l)));

    if (name.empty()) {
        name = "lp(" + std::to_string(a.rows) + "x" + std::to_string(a.cols) + "," +
               std::to_string(b.rows) + "x" + std::to_string(b.cols) + ",L=" +
               std::to_string(l) + ")";
    }
    return make_css_code(std::move(name), lift(base_x), lift(base_z));
}

QcBaseMatrix tanner_base() {
    QcBaseMatrix base(3, 5, 31);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 5; ++c) {
            int e = 1;
            for (int i = 0; i < r; ++i) {
                e = e * 5 % 31;
            }
            for (int j = 0; j < c; ++j) {
                e = e * 2 % 31;
            }
            base.at(r, c) = e;
        }
    }
    return base;
}

QcBaseMatrix repetition3_base() {
    QcBaseMatrix base(2, 3, 1);
    base.at(0, 0) = 0;
    base.at(0, 1) = 0;
    base.at(1, 1) = 0;
    base.at(1, 2) = 0;
    return base;
}

}  // namespace qsynd
