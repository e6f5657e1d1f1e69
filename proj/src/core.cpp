#include "pq3/core.hpp"

#include <bit>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pq3 {

namespace {

long long popcount_words(std::span<const std::uint64_t> w) {
    long long s = 0;
    for (std::uint64_t x : w) s += std::popcount(x);
    return s;
}

void check_sign(Sign v) {
    if (v != +1 && v != -1) throw std::invalid_argument("sign entries must be +1 or -1");
}

void check_row(const BitMatrix& m, int i, const char* what) {
    if (i < 0 || i >= m.rows()) throw std::out_of_range(std::string(what) + ": row index out of range");
}

}  // namespace

SignMatrix::SignMatrix(int order, Sign fill) : order_(order) {
    if (order < 1) throw std::invalid_argument("SignMatrix order must be >= 1");
    check_sign(fill);
    entries_.assign(static_cast<std::size_t>(order) * order, fill);
}

void SignMatrix::set(int r, int c, Sign v) {
    check_sign(v);
    entries_[static_cast<std::size_t>(r) * order_ + c] = v;
}

SignVector SignMatrix::row(int r) const {
    return SignVector(entries_.begin() + static_cast<std::ptrdiff_t>(r) * order_,
                      entries_.begin() + static_cast<std::ptrdiff_t>(r + 1) * order_);
}

SignVector SignMatrix::column(int c) const {
    SignVector out(order_);
    for (int r = 0; r < order_; ++r) out[r] = (*this)(r, c);
    return out;
}

void SignMatrix::negate_row(int r) {
    for (int c = 0; c < order_; ++c) entries_[static_cast<std::size_t>(r) * order_ + c] *= -1;
}

void SignMatrix::negate_column(int c) {
    for (int r = 0; r < order_; ++r) entries_[static_cast<std::size_t>(r) * order_ + c] *= -1;
}

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("BitMatrix dimensions must be positive");
    wpr_ = (cols + 63) / 64;
    bits_.assign(static_cast<std::size_t>(rows) * wpr_, 0);
}

void BitMatrix::set(int r, int c, bool v) {
    std::uint64_t& w = bits_[static_cast<std::size_t>(r) * wpr_ + (c >> 6)];
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (v)
        w |= mask;
    else
        w &= ~mask;
}

std::string BitMatrix::row_string(int r) const {
    std::string s(static_cast<std::size_t>(cols_), '0');
    for (int c = 0; c < cols_; ++c)
        if (get(r, c)) s[static_cast<std::size_t>(c)] = '1';
    return s;
}

SignMatrix kronecker(const SignMatrix& a, const SignMatrix& b) {
    const int na = a.order(), nb = b.order();
    SignMatrix out(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l)
                    out.set(i * nb + k, j * nb + l, static_cast<Sign>(a(i, j) * b(k, l)));
    return out;
}

SignMatrix kronecker_outer(std::span<const Sign> row, std::span<const Sign> col) {
    if (row.size() != col.size() || row.empty())
        throw std::invalid_argument("kronecker_outer: operands must be nonempty vectors of equal length");
    const int n = static_cast<int>(row.size());
    SignMatrix out(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            out.set(j, k, static_cast<Sign>(row[static_cast<std::size_t>(k)] * col[static_cast<std::size_t>(j)]));
    return out;
}

BitMatrix sign_to_bit(const SignMatrix& m) {
    const int n = m.order();
    BitMatrix out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (m(r, c) == -1) out.set(r, c, true);
    return out;
}

BitMatrix transpose(const BitMatrix& m) {
    BitMatrix out(m.cols(), m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) out.set(c, r, true);
    return out;
}

BitMatrix complement(const BitMatrix& m) {
    BitMatrix out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            out.set(r, c, !m.get(r, c));
    return out;
}

long long row_weight(const BitMatrix& m, int i) {
    check_row(m, i, "row_weight");
    return popcount_words(m.row_words(i));
}

long long pair_intersection(const BitMatrix& m, int i, int j) {
    check_row(m, i, "pair_intersection");
    check_row(m, j, "pair_intersection");
    if (i == j) throw std::invalid_argument("pair_intersection: indices must be distinct");
    auto a = m.row_words(i), b = m.row_words(j);
    long long s = 0;
    for (std::size_t w = 0; w < a.size(); ++w) s += std::popcount(a[w] & b[w]);
    return s;
}

long long triple_intersection(const BitMatrix& m, int i, int j, int k) {
    check_row(m, i, "triple_intersection");
    check_row(m, j, "triple_intersection");
    check_row(m, k, "triple_intersection");
    if (i == j || i == k || j == k) throw std::invalid_argument("triple_intersection: indices must be distinct");
    auto a = m.row_words(i), b = m.row_words(j), c = m.row_words(k);
    long long s = 0;
    for (std::size_t w = 0; w < a.size(); ++w) s += std::popcount(a[w] & b[w] & c[w]);
    return s;
}

namespace {

std::pair<int, int> read_header(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw io_error("matrix file: missing header line");
    std::istringstream hs(line);
    long long rows = 0, cols = 0;
    if (!(hs >> rows >> cols)) throw io_error("matrix file: header must be \"rows cols\"");
    std::string rest;
    if (hs >> rest) throw io_error("matrix file: trailing tokens after header");
    if (rows < 1 || cols < 1 || rows > 1'000'000 || cols > 1'000'000)
        throw io_error("matrix file: dimensions out of range");
    return {static_cast<int>(rows), static_cast<int>(cols)};
}

std::string read_row_line(std::istream& in, int expected_len, int row) {
    std::string line;
    if (!std::getline(in, line))
        throw io_error("matrix file: missing row " + std::to_string(row));
    if (static_cast<int>(line.size()) != expected_len)
        throw io_error("matrix file: row " + std::to_string(row) + " has length " +
                       std::to_string(line.size()) + ", expected " + std::to_string(expected_len));
    return line;
}

void check_trailing(std::istream& in) {
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) throw io_error("matrix file: unexpected content after last row");
}

}  // namespace

BitMatrix read_bit_matrix(std::istream& in) {
    auto [rows, cols] = read_header(in);
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const std::string line = read_row_line(in, cols, r);
        for (int c = 0; c < cols; ++c) {
            if (line[static_cast<std::size_t>(c)] == '1')
                m.set(r, c, true);
            else if (line[static_cast<std::size_t>(c)] != '0')
                throw io_error("matrix file: row " + std::to_string(r) + " contains a character other than 0/1");
        }
    }
    check_trailing(in);
    return m;
}

void write_bit_matrix(std::ostream& out, const BitMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (int r = 0; r < m.rows(); ++r) out << m.row_string(r) << '\n';
}

SignMatrix read_sign_matrix(std::istream& in) {
    auto [rows, cols] = read_header(in);
    if (rows != cols) throw io_error("sign matrix file: must be square");
    SignMatrix m(rows);
    for (int r = 0; r < rows; ++r) {
        const std::string line = read_row_line(in, cols, r);
        for (int c = 0; c < cols; ++c) {
            if (line[static_cast<std::size_t>(c)] == '-')
                m.set(r, c, -1);
            else if (line[static_cast<std::size_t>(c)] != '+')
                throw io_error("sign matrix file: row " + std::to_string(r) +
                               " contains a character other than +/-");
        }
    }
    check_trailing(in);
    return m;
}

void write_sign_matrix(std::ostream& out, const SignMatrix& m) {
    out << m.order() << ' ' << m.order() << '\n';
    for (int r = 0; r < m.order(); ++r) {
        std::string s(static_cast<std::size_t>(m.order()), '+');
        for (int c = 0; c < m.order(); ++c)
            if (m(r, c) == -1) s[static_cast<std::size_t>(c)] = '-';
        out << s << '\n';
    }
}

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open file for reading: " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open file for writing: " + path);
    return f;
}

}  // namespace

BitMatrix load_bit_matrix(const std::string& path) {
    auto f = open_in(path);
    return read_bit_matrix(f);
}

void save_bit_matrix(const std::string& path, const BitMatrix& m) {
    auto f = open_out(path);
    write_bit_matrix(f, m);
}

SignMatrix load_sign_matrix(const std::string& path) {
    auto f = open_in(path);
    return read_sign_matrix(f);
}

void save_sign_matrix(const std::string& path, const SignMatrix& m) {
    auto f = open_out(path);
    write_sign_matrix(f, m);
}

}  // namespace pq3
