#include "qsynd/gf2_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qsynd {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path.string());
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    return out;
}

long read_long(std::istream& in, const char* what) {
    long value = 0;
    if (!(in >> value)) {
        throw std::runtime_error(std::string("alist parse error: expected ") + what);
    }
    return value;
}

}  // namespace

void write_alist(const SparseBitMatrix& m, std::ostream& out) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << (r == 0 ? "" : " ") << m.row_degree(r);
    }
    out << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto support = m.row(r);
        for (std::size_t i = 0; i < support.size(); ++i) {
            out << (i == 0 ? "" : " ") << support[i] + 1;
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("alist write failed");
    }
}

void write_alist(const SparseBitMatrix& m, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_alist(m, out);
}

SparseBitMatrix read_alist(std::istream& in) {
    const long rows = read_long(in, "row count");
    const long cols = read_long(in, "column count");
    if (rows < 0 || cols < 0) {
        throw std::runtime_error("alist parse error: negative dimension");
    }
    std::vector<long> degrees(static_cast<std::size_t>(rows));
    for (auto& d : degrees) {
        d = read_long(in, "row degree");
        if (d < 0 || d > cols) {
            throw std::runtime_error("alist parse error: row degree out of range");
        }
    }
    std::vector<std::vector<std::uint32_t>> support(static_cast<std::size_t>(rows));
    for (std::size_t r = 0; r < support.size(); ++r) {
        support[r].reserve(static_cast<std::size_t>(degrees[r]));
        for (long i = 0; i < degrees[r]; ++i) {
            const long idx = read_long(in, "column index");
            if (idx < 1 || idx > cols) {
                throw std::runtime_error("alist parse error: column index out of range");
            }
            support[r].push_back(static_cast<std::uint32_t>(idx - 1));
        }
    }
    try {
        return {static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                std::move(support)};
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("alist parse error: ") + e.what());
    }
}

SparseBitMatrix read_alist(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_alist(in);
}

void write_dense_grid(const BitMatrix& m, std::ostream& out) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << m.row(r).to_string() << '\n';
    }
    if (!out) {
        throw std::runtime_error("dense grid write failed");
    }
}

void write_dense_grid(const BitMatrix& m, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_dense_grid(m, out);
}

BitMatrix read_dense_grid(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        lines.push_back(line);
    }
    if (lines.empty()) {
        throw std::runtime_error("dense grid parse error: no rows");
    }
    BitMatrix m(lines.size(), lines.front().size());
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].size() != m.cols()) {
            throw std::runtime_error("dense grid parse error: ragged rows");
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (lines[r][c] == '1') {
                m.set(r, c, true);
            } else if (lines[r][c] != '0') {
                throw std::runtime_error("dense grid parse error: expected '0' or '1'");
            }
        }
    }
    return m;
}

BitMatrix read_dense_grid(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_dense_grid(in);
}

}  // namespace qsynd
