#include "qsynd/qc_base.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qsynd {

QcBaseMatrix::QcBaseMatrix(int rows_, int cols_, int lift_size_)
    : rows(rows_), cols(cols_), lift_size(lift_size_),
      exponents(static_cast<std::size_t>(rows_) * cols_, kZeroBlock) {
    validate();
}

void QcBaseMatrix::validate() const {
    if (rows <= 0 || cols <= 0) {
        throw std::invalid_argument("QcBaseMatrix: dimensions must be positive");
    }
    if (lift_size <= 0) {
        throw std::invalid_argument("QcBaseMatrix: lift size must be positive");
    }
    if (exponents.size() != static_cast<std::size_t>(rows) * cols) {
        throw std::invalid_argument("QcBaseMatrix: exponent grid size mismatch");
    }
    for (int e : exponents) {
        if (e != kZeroBlock && (e < 0 || e >= lift_size)) {
            throw std::invalid_argument("QcBaseMatrix: exponent out of range");
        }
    }
}

QcBaseMatrix conjugate_transpose(const QcBaseMatrix& base) {
    base.validate();
    QcBaseMatrix t(base.cols, base.rows, base.lift_size);
    for (int r = 0; r < base.rows; ++r) {
        for (int c = 0; c < base.cols; ++c) {
            const int e = base.at(r, c);
            t.at(c, r) = e == QcBaseMatrix::kZeroBlock
                             ? QcBaseMatrix::kZeroBlock
                             : (base.lift_size - e) % base.lift_size;
        }
    }
    return t;
}

SparseBitMatrix lift(const QcBaseMatrix& base) {
    base.validate();
    const int l = base.lift_size;
    const std::size_t rows = static_cast<std::size_t>(base.rows) * l;
    const std::size_t cols = static_cast<std::size_t>(base.cols) * l;
    std::vector<std::vector<std::uint32_t>> support(rows);

    // Row (br*L + i) of the lift collects, from each non-zero block br,bc,
    // the single column bc*L + j with (j + e) mod L == i, i.e. j = (i - e) mod L.
    for (int br = 0; br < base.rows; ++br) {
        for (int i = 0; i < l; ++i) {
            auto& row = support[static_cast<std::size_t>(br) * l + i];
            for (int bc = 0; bc < base.cols; ++bc) {
                const int e = base.at(br, bc);
                if (e == QcBaseMatrix::kZeroBlock) {
                    continue;
                }
                const int j = (i - e % l + l) % l;
                row.push_back(static_cast<std::uint32_t>(bc) * l + j);
            }
        }
    }
    return {rows, cols, std::move(support)};
}

void write_qc_base(const QcBaseMatrix& base, std::ostream& out) {
    base.validate();
    nlohmann::json grid = nlohmann::json::array();
    for (int r = 0; r < base.rows; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < base.cols; ++c) {
            row.push_back(base.at(r, c));
        }
        grid.push_back(std::move(row));
    }
    const nlohmann::json j{{"L", base.lift_size},
                           {"rows", base.rows},
                           {"cols", base.cols},
                           {"exponents", std::move(grid)}};
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("QC base write failed");
    }
}

void write_qc_base(const QcBaseMatrix& base, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    write_qc_base(base, out);
}

QcBaseMatrix read_qc_base(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("QC base parse error: ") + e.what());
    }
    QcBaseMatrix base;
    try {
        base.lift_size = j.at("L").get<int>();
        base.rows = j.at("rows").get<int>();
        base.cols = j.at("cols").get<int>();
        const auto& grid = j.at("exponents");
        if (!grid.is_array() || grid.size() != static_cast<std::size_t>(base.rows)) {
            throw std::runtime_error("QC base parse error: exponent row count mismatch");
        }
        base.exponents.reserve(static_cast<std::size_t>(base.rows) * base.cols);
        for (const auto& row : grid) {
            if (!row.is_array() || row.size() != static_cast<std::size_t>(base.cols)) {
                throw std::runtime_error("QC base parse error: exponent column count mismatch");
            }
            for (const auto& entry : row) {
                base.exponents.push_back(entry.get<int>());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("QC base parse error: ") + e.what());
    }
    try {
        base.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("QC base parse error: ") + e.what());
    }
    return base;
}

QcBaseMatrix read_qc_base(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path.string());
    }
    return read_qc_base(in);
}

}  // namespace qsynd
