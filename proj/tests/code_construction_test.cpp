#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <vector>

#include "qsynd/css.hpp"
#include "qsynd/gf2.hpp"
#include "qsynd/noise.hpp"
#include "qsynd/qc_base.hpp"

using namespace qsynd;

namespace {

// Random base matrix with every entry a live block (used where zero blocks
// are irrelevant to the property under test).
QcBaseMatrix random_base(int rows, int cols, int lift_size, Rng& rng) {
    QcBaseMatrix base(rows, cols, lift_size);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            base.at(r, c) = static_cast<int>(rng() % lift_size);
        }
    }
    return base;
}

// Random monomial base: exactly one live block per row and per column, so
// the symbolic product of two of them is again monomial.
QcBaseMatrix random_monomial_base(int n, int lift_size, Rng& rng) {
    QcBaseMatrix base(n, n, lift_size);
    for (auto& e : base.exponents) {
        e = QcBaseMatrix::kZeroBlock;
    }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) {
        perm[i] = i;
    }
    for (int i = n - 1; i > 0; --i) {
        std::swap(perm[i], perm[rng() % (i + 1)]);
    }
    for (int r = 0; r < n; ++r) {
        base.at(r, perm[r]) = static_cast<int>(rng() % lift_size);
    }
    return base;
}

// Symbolic product of monomial bases with exponent addition mod L.
QcBaseMatrix monomial_product(const QcBaseMatrix& a, const QcBaseMatrix& b) {
    REQUIRE(a.cols == b.rows);
    REQUIRE(a.lift_size == b.lift_size);
    QcBaseMatrix c(a.rows, b.cols, a.lift_size);
    for (int r = 0; r < c.rows; ++r) {
        for (int col = 0; col < c.cols; ++col) {
            int value = QcBaseMatrix::kZeroBlock;
            for (int k = 0; k < a.cols; ++k) {
                if (a.at(r, k) != QcBaseMatrix::kZeroBlock &&
                    b.at(k, col) != QcBaseMatrix::kZeroBlock) {
                    REQUIRE(value == QcBaseMatrix::kZeroBlock);
                    value = (a.at(r, k) + b.at(k, col)) % a.lift_size;
                }
            }
            c.at(r, col) = value;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("lift of trivial circulants") {
    QcBaseMatrix zero_shift(1, 1, 3);
    zero_shift.at(0, 0) = 0;
    CHECK(lift(zero_shift).to_dense() == BitMatrix::identity(3));

    QcBaseMatrix one_shift(1, 1, 3);
    one_shift.at(0, 0) = 1;
    const BitMatrix m = lift(one_shift).to_dense();
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(m.get(i, j) == (i == (j + 1) % 3));
        }
    }
}

TEST_CASE("lifted circulant blocks are permutation blocks") {
    Rng rng(5);
    const QcBaseMatrix base = random_base(2, 3, 7, rng);
    const BitMatrix m = lift(base).to_dense();
    REQUIRE(m.rows() == 14);
    REQUIRE(m.cols() == 21);
    for (int br = 0; br < 2; ++br) {
        for (int bc = 0; bc < 3; ++bc) {
            for (int i = 0; i < 7; ++i) {
                std::size_t row_ones = 0;
                std::size_t col_ones = 0;
                for (int j = 0; j < 7; ++j) {
                    row_ones += m.get(br * 7 + i, bc * 7 + j) ? 1 : 0;
                    col_ones += m.get(br * 7 + j, bc * 7 + i) ? 1 : 0;
                }
                CHECK(row_ones == 1);
                CHECK(col_ones == 1);
            }
        }
    }
}

TEST_CASE("conjugate_transpose negates exponents and transposes") {
    QcBaseMatrix fixed(1, 1, 4);
    fixed.at(0, 0) = 0;
    CHECK(conjugate_transpose(fixed).at(0, 0) == 0);

    QcBaseMatrix base(1, 2, 5);
    base.at(0, 0) = 1;
    base.at(0, 1) = QcBaseMatrix::kZeroBlock;
    const QcBaseMatrix ct = conjugate_transpose(base);
    CHECK(ct.rows == 2);
    CHECK(ct.cols == 1);
    CHECK(ct.at(0, 0) == 4);
    CHECK(ct.at(1, 0) == QcBaseMatrix::kZeroBlock);

    Rng rng(7);
    const QcBaseMatrix random = random_base(3, 4, 9, rng);
    const QcBaseMatrix twice = conjugate_transpose(conjugate_transpose(random));
    CHECK(twice.rows == random.rows);
    CHECK(twice.cols == random.cols);
    CHECK(twice.exponents == random.exponents);
}

TEST_CASE("lift of the conjugate transpose is the transposed lift") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const QcBaseMatrix base =
            random_base(1 + rng() % 3, 1 + rng() % 3, 2 + rng() % 8, rng);
        CHECK(lift(conjugate_transpose(base)) == lift(base).transposed());
    }
}

TEST_CASE("lift is a ring homomorphism on monomial bases") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int lift_size = 2 + rng() % 7;
        const QcBaseMatrix a = random_monomial_base(2, lift_size, rng);
        const QcBaseMatrix b = random_monomial_base(2, lift_size, rng);
        const BitMatrix lifted_product_matrix = lift(monomial_product(a, b)).to_dense();
        const BitMatrix product_of_lifts =
            mat_mul_mod2(lift(a).to_dense(), lift(b).to_dense());
        CHECK(lifted_product_matrix == product_of_lifts);
    }
}

TEST_CASE("tanner_base exponent grid") {
    const QcBaseMatrix base = tanner_base();
    CHECK(base.rows == 3);
    CHECK(base.cols == 5);
    CHECK(base.lift_size == 31);
    CHECK(base.at(0, 0) == 1);
    CHECK(base.at(2, 4) == 28);
    const std::vector<int> expected{1,  2,  4, 8,  16,   //
                                    5,  10, 20, 9, 18,   //
                                    25, 19, 7, 14, 28};
    CHECK(base.exponents == expected);
}

TEST_CASE("lifted tanner base is a [155, 64] classical code") {
    const SparseBitMatrix h = lift(tanner_base());
    CHECK(h.rows() == 93);
    CHECK(h.cols() == 155);
    CHECK(h.cols() - rank_mod2(h.to_dense()) == 64);
}

TEST_CASE("lifted product of the tanner base with itself") {
    const CssCode code = lifted_product(tanner_base(), tanner_base());
    CHECK(code.n == 1054);
    CHECK(code.k == 140);
    CHECK(code.h_x.rows() == 465);
    CHECK(code.h_z.rows() == 465);
    CHECK(code.h_x.cols() == 1054);
    CHECK(css_validate(code).passed());
}

TEST_CASE("degenerate and small lifted products") {
    QcBaseMatrix unit(1, 1, 1);
    unit.at(0, 0) = 0;
    const CssCode smallest = lifted_product(unit, unit);
    CHECK(smallest.n == 2);
    CHECK(css_validate(smallest).commutes);

    const CssCode hgp = lifted_product(repetition3_base(), repetition3_base());
    CHECK(hgp.n == 13);
    CHECK(hgp.k == 1);
    CHECK(css_validate(hgp).passed());
}

TEST_CASE("lifted product column count matches the block structure") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int lift_size = 1 + rng() % 6;
        const QcBaseMatrix a =
            random_base(1 + rng() % 3, 1 + rng() % 3, lift_size, rng);
        const QcBaseMatrix b =
            random_base(1 + rng() % 3, 1 + rng() % 3, lift_size, rng);
        const CssCode code = lifted_product(a, b);
        const std::size_t expected =
            static_cast<std::size_t>(a.cols * b.cols + a.rows * b.rows) * lift_size;
        CHECK(code.n == expected);
        CHECK(code.h_x.cols() == expected);
        CHECK(code.h_z.cols() == expected);
        CHECK(css_validate(code).commutes);
    }
}

TEST_CASE("lifted product rejects mismatched lift sizes") {
    QcBaseMatrix a(1, 1, 2);
    a.at(0, 0) = 0;
    QcBaseMatrix b(1, 1, 3);
    b.at(0, 0) = 0;
    CHECK_THROWS_AS((void)lifted_product(a, b), std::invalid_argument);
}

TEST_CASE("css_validate reports violations without throwing") {
    CssCode code = lifted_product(repetition3_base(), repetition3_base());
    const CssValidationReport good = css_validate(code);
    CHECK(good.passed());
    CHECK(good.n == 13);
    CHECK(good.k == 1);
    CHECK(good.violations.empty());

    // Replace h_z with a matrix that anticommutes with h_x somewhere.
    BitMatrix corrupt(1, 13);
    corrupt.set(0, 0, true);
    code.h_z = SparseBitMatrix::from_dense(corrupt);
    const CssValidationReport bad = css_validate(code);
    CHECK_FALSE(bad.passed());
    CHECK_FALSE(bad.violations.empty());
}

TEST_CASE("degree profiles summarize row and column weights") {
    const CssCode code = lifted_product(tanner_base(), tanner_base());
    const CssValidationReport report = css_validate(code);
    REQUIRE(report.h_x_rows.histogram.size() == 1);
    CHECK(report.h_x_rows.histogram[0] == std::pair<std::size_t, std::size_t>{8, 465});
    REQUIRE(report.h_x_cols.histogram.size() == 2);
    CHECK(report.h_x_cols.histogram[0].first == 3);
    CHECK(report.h_x_cols.histogram[1].first == 5);
    CHECK(report.h_x_cols.histogram[0].second + report.h_x_cols.histogram[1].second ==
          1054);
}

TEST_CASE("make_css_code validates shapes") {
    const SparseBitMatrix id4 = SparseBitMatrix::from_dense(BitMatrix::identity(4));
    const SparseBitMatrix wide(1, 5, {{0}});
    CHECK_THROWS_AS((void)make_css_code("bad", id4, wide), std::invalid_argument);
    // rank(h_x) + rank(h_z) > n makes k negative.
    CHECK_THROWS_AS((void)make_css_code("neg", id4, id4), std::invalid_argument);
}

TEST_CASE("qc base json round trip") {
    Rng rng(19);
    QcBaseMatrix base = random_base(2, 4, 6, rng);
    base.at(1, 2) = QcBaseMatrix::kZeroBlock;

    std::ostringstream out;
    write_qc_base(base, out);
    std::istringstream in(out.str());
    const QcBaseMatrix back = read_qc_base(in);
    CHECK(back.rows == base.rows);
    CHECK(back.cols == base.cols);
    CHECK(back.lift_size == base.lift_size);
    CHECK(back.exponents == base.exponents);

    std::istringstream not_json("not json at all");
    CHECK_THROWS_AS((void)read_qc_base(not_json), std::runtime_error);
    std::istringstream exponent_too_big(R"({"L":3,"rows":1,"cols":1,"exponents":[[5]]})");
    CHECK_THROWS_AS((void)read_qc_base(exponent_too_big), std::runtime_error);
    std::istringstream ragged(R"({"L":3,"rows":2,"cols":2,"exponents":[[1,2],[0]]})");
    CHECK_THROWS_AS((void)read_qc_base(ragged), std::runtime_error);
}
