#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pq3 {

// Raised when a file or stream cannot be parsed as one of the text formats.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a certification gate fails (a matrix is not what it claims to be).
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Sign = std::int8_t;  // always +1 or -1
using SignVector = std::vector<Sign>;

// Square matrix over {+1,-1}, row-major. Carrier for Hadamard matrices and
// the +-1 Kronecker cells.
class SignMatrix {
public:
    SignMatrix() = default;
    explicit SignMatrix(int order, Sign fill = +1);

    int order() const { return order_; }

    Sign operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r) * order_ + c]; }
    void set(int r, int c, Sign v);

    SignVector row(int r) const;
    SignVector column(int c) const;

    void negate_row(int r);
    void negate_column(int c);

    bool operator==(const SignMatrix&) const = default;

private:
    int order_ = 0;
    std::vector<Sign> entries_;
};

// b x v binary matrix with bit-packed rows. Bit j of row i lives in word
// j/64 at position j%64; pad bits past v are kept zero so word-level
// popcounts are exact.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);  // all-zero

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int words_per_row() const { return wpr_; }

    bool get(int r, int c) const {
        const std::uint64_t w = bits_[static_cast<std::size_t>(r) * wpr_ + (c >> 6)];
        return (w >> (c & 63)) & 1u;
    }
    void set(int r, int c, bool v);

    std::span<const std::uint64_t> row_words(int r) const {
        return {bits_.data() + static_cast<std::size_t>(r) * wpr_, static_cast<std::size_t>(wpr_)};
    }

    std::string row_string(int r) const;  // '0'/'1' characters

    bool operator==(const BitMatrix&) const = default;

private:
    int rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Kronecker product of two square sign matrices; order multiplies.
SignMatrix kronecker(const SignMatrix& a, const SignMatrix& b);

// Row-vector (x) column-vector Kronecker product. Both operands must have
// the same length n; result is the n x n matrix with entry (j,k) = row[k]*col[j].
SignMatrix kronecker_outer(std::span<const Sign> row, std::span<const Sign> col);

// Entrywise +1 -> 0, -1 -> 1. The convention is forced by the construction:
// the cell built from the all-ones row must come out all-zero.
BitMatrix sign_to_bit(const SignMatrix& m);

BitMatrix transpose(const BitMatrix& m);
BitMatrix complement(const BitMatrix& m);

long long row_weight(const BitMatrix& m, int i);
long long pair_intersection(const BitMatrix& m, int i, int j);
long long triple_intersection(const BitMatrix& m, int i, int j, int k);

// Shared text format: first line "rows cols", then one line per row of
// '0'/'1' (BitMatrix) or '+'/'-' (SignMatrix) characters, LF line endings.
BitMatrix read_bit_matrix(std::istream& in);
void write_bit_matrix(std::ostream& out, const BitMatrix& m);
SignMatrix read_sign_matrix(std::istream& in);
void write_sign_matrix(std::ostream& out, const SignMatrix& m);

BitMatrix load_bit_matrix(const std::string& path);
void save_bit_matrix(const std::string& path, const BitMatrix& m);
SignMatrix load_sign_matrix(const std::string& path);
void save_sign_matrix(const std::string& path, const SignMatrix& m);

}  // namespace pq3
