#pragma once

#include <string>
#include <vector>

#include "pq3/designs.hpp"
#include "pq3/hadamard.hpp"

namespace pq3 {

// The 0/1 Kronecker cells cut from an order-2u doubled Hadamard matrix.
// a_cells[i] is the image of h_i (x) h_i^T, s_cells[i] of h_u (x) h_i^T;
// a_cells[u] and s_cells[0] are built but never placed in the assembly.
struct CellSet {
    int u = 0;
    std::vector<BitMatrix> a_cells;  // 2u matrices, each 2u x 2u
    std::vector<BitMatrix> s_cells;
};

CellSet build_cells(const HadamardMatrix& h2u);

// (2u-1) x (2u-1) array over the symbols {0..2u-1} with u omitted; rows are
// left cyclic shifts of the first row, so grid[r][c] = first_row[(c+r) mod side].
struct LatinSquare {
    int u = 0;
    int side = 0;
    std::vector<std::vector<int>> grid;

    int omitted_symbol() const { return u; }
};

LatinSquare build_latin_square(int u);

struct LatinReport {
    bool ok = true;
    std::string message;
};

// Every row and column a permutation of the symbol set, omitted symbol absent.
LatinReport is_latin(const LatinSquare& l);

struct LeeDifferenceReport {
    bool ok = true;
    int row_a = -1;
    int row_b = -1;
    int magnitude_u_count = -1;  // for the first violating pair
};

// For every pair of distinct rows, the position-wise differences must contain
// an entry of magnitude u exactly once.
LeeDifferenceReport lee_difference_check(const LatinSquare& l);

struct PseudoQuasi3Design {
    int u = 0;
    BitMatrix incidence;  // 4u^2 x 4u^2
    long long v = 0, k = 0, lambda = 0;
    long long triple_low = 0, triple_high = 0;  // u^2/2-u and u^2/2-u/2
    int anchor_count = 0;                       // the first 2u blocks
    DesignCertificate certificate;
};

// Lays out the 2u x 2u grid of cells (zero cell, S row, S^T column, Latin
// placement of the A cells) and certifies the result before returning:
// symmetric 2-(4u^2, 2u^2-u, u^2-u) with anchored triple values in
// {u^2/2-u, u^2/2-u/2} for every anchor in the first 2u blocks. Any failure
// throws; a wrong orientation convention cannot be returned silently.
PseudoQuasi3Design assemble_p(const HadamardMatrix& h);

// Labels of the assembled cell grid ("0", "S3", "S3T", "A2"), row-major.
// Depends only on u; used for the construction manifest.
std::vector<std::vector<std::string>> cell_map(int u);

}  // namespace pq3
