#pragma once

#include <iosfwd>
#include <string>

#include "pq3/core.hpp"

namespace pq3 {

// Outcome of the orthogonality check H*H^T = order*I. On failure the first
// offending row pair is recorded; i == j means a bad self-product.
struct OrthogonalityReport {
    bool ok = true;
    int row_i = -1;
    int row_j = -1;
    long long dot = 0;

    std::string describe() const;
};

OrthogonalityReport is_hadamard(const SignMatrix& m);

// A sign matrix that has passed the orthogonality check. Instances can only
// be made through checked(), so holding one certifies H*H^T = order*I.
class HadamardMatrix {
public:
    static HadamardMatrix checked(SignMatrix m);

    const SignMatrix& matrix() const { return matrix_; }
    int order() const { return matrix_.order(); }
    bool normalised() const { return normalised_; }
    SignVector row(int i) const { return matrix_.row(i); }

private:
    explicit HadamardMatrix(SignMatrix m, bool normalised)
        : matrix_(std::move(m)), normalised_(normalised) {}

    SignMatrix matrix_;
    bool normalised_;
};

// Order 2^exponent by repeated doubling from [[1]]. Always normalised.
HadamardMatrix sylvester(int exponent, int cap = 6);

// Paley type I: order q+1 for a prime q with q = 3 (mod 4), via the
// quadratic-residue (Jacobsthal) matrix, normalised afterwards.
// Prime powers are not supported; that is the one extension point here.
HadamardMatrix paley_i(int q);

// Negate every column whose row-0 entry is -1, then every row whose
// column-0 entry is -1. Column pass first, fixed for reproducibility.
HadamardMatrix normalize(const HadamardMatrix& h);

// [[H, H], [H, -H]]; requires a normalised input and yields a normalised
// matrix of twice the order.
HadamardMatrix double_order(const HadamardMatrix& h);

// Kronecker composition of two Hadamard matrices, normalised afterwards.
HadamardMatrix kronecker_hadamard(const HadamardMatrix& a, const HadamardMatrix& b);

// Reads the '+'/'-' text format and gates it behind is_hadamard.
HadamardMatrix import_hadamard(std::istream& in);
HadamardMatrix import_hadamard_file(const std::string& path);

}  // namespace pq3
