#include "pq3/construction.hpp"

#include <algorithm>
#include <sstream>

namespace pq3 {

CellSet build_cells(const HadamardMatrix& h2u) {
    const int n = h2u.order();
    if (n % 2 != 0) throw std::invalid_argument("build_cells: order must be even");
    const int u = n / 2;
    if (!h2u.normalised()) throw std::invalid_argument("build_cells: input must be normalised");

    const SignVector split_row = h2u.row(u);
    for (int c = 0; c < n; ++c) {
        const Sign expected = c < u ? +1 : -1;
        if (split_row[static_cast<std::size_t>(c)] != expected)
            throw std::invalid_argument("build_cells: row u is not u ones followed by u minus-ones");
    }

    CellSet cells;
    cells.u = u;
    cells.a_cells.reserve(static_cast<std::size_t>(n));
    cells.s_cells.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const SignVector hi = h2u.row(i);
        cells.a_cells.push_back(sign_to_bit(kronecker_outer(hi, hi)));
        cells.s_cells.push_back(sign_to_bit(kronecker_outer(split_row, hi)));
    }
    return cells;
}

LatinSquare build_latin_square(int u) {
    if (u < 2) throw std::invalid_argument("build_latin_square: u must be at least 2");
    const int side = 2 * u - 1;

    // 0, 1, ..., u-1, 2u-1, 2u-2, ..., u+1
    std::vector<int> first(static_cast<std::size_t>(side));
    for (int c = 0; c < side; ++c) first[static_cast<std::size_t>(c)] = c < u ? c : 3 * u - 1 - c;

    LatinSquare l;
    l.u = u;
    l.side = side;
    l.grid.assign(static_cast<std::size_t>(side), std::vector<int>(static_cast<std::size_t>(side)));
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c)
            l.grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                first[static_cast<std::size_t>((c + r) % side)];
    return l;
}

LatinReport is_latin(const LatinSquare& l) {
    const int side = l.side;
    if (side != 2 * l.u - 1 || static_cast<int>(l.grid.size()) != side)
        return {false, "grid is not (2u-1) x (2u-1)"};

    std::vector<bool> expected(static_cast<std::size_t>(2 * l.u), true);
    expected[static_cast<std::size_t>(l.u)] = false;

    auto check_line = [&](const std::vector<int>& symbols, const std::string& what) -> LatinReport {
        std::vector<bool> seen(static_cast<std::size_t>(2 * l.u), false);
        for (int s : symbols) {
            if (s < 0 || s >= 2 * l.u || !expected[static_cast<std::size_t>(s)])
                return {false, what + " contains invalid symbol " + std::to_string(s)};
            if (seen[static_cast<std::size_t>(s)])
                return {false, what + " repeats symbol " + std::to_string(s)};
            seen[static_cast<std::size_t>(s)] = true;
        }
        return {};
    };

    for (int r = 0; r < side; ++r) {
        if (static_cast<int>(l.grid[static_cast<std::size_t>(r)].size()) != side)
            return {false, "row " + std::to_string(r) + " has the wrong length"};
        auto rep = check_line(l.grid[static_cast<std::size_t>(r)], "row " + std::to_string(r));
        if (!rep.ok) return rep;
    }
    for (int c = 0; c < side; ++c) {
        std::vector<int> col(static_cast<std::size_t>(side));
        for (int r = 0; r < side; ++r)
            col[static_cast<std::size_t>(r)] = l.grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        auto rep = check_line(col, "column " + std::to_string(c));
        if (!rep.ok) return rep;
    }
    return {};
}

LeeDifferenceReport lee_difference_check(const LatinSquare& l) {
    for (int a = 0; a < l.side; ++a) {
        for (int b = a + 1; b < l.side; ++b) {
            int hits = 0;
            for (int c = 0; c < l.side; ++c) {
                const int diff = l.grid[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] -
                                 l.grid[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
                if (diff == l.u || diff == -l.u) ++hits;
            }
            if (hits != 1) return {false, a, b, hits};
        }
    }
    return {};
}

namespace {

void blit(BitMatrix& dst, const BitMatrix& src, int row_off, int col_off) {
    for (int r = 0; r < src.rows(); ++r)
        for (int c = 0; c < src.cols(); ++c)
            if (src.get(r, c)) dst.set(row_off + r, col_off + c, true);
}

std::string fail(const std::string& what) {
    return "construction certification failed: " + what;
}

}  // namespace

PseudoQuasi3Design assemble_p(const HadamardMatrix& h) {
    const int u = h.order();
    if (u < 2) throw std::invalid_argument("assemble_p: u must be at least 2");
    if (u % 2 != 0) throw std::invalid_argument("assemble_p: u must be even");

    const HadamardMatrix h2u = double_order(h);  // rejects non-normalised input
    const CellSet cells = build_cells(h2u);
    const LatinSquare latin = build_latin_square(u);

    // The Latin square carries the placement schedule; gate its two
    // properties before using it.
    if (auto rep = is_latin(latin); !rep.ok) throw verification_error(fail(rep.message));
    if (auto rep = lee_difference_check(latin); !rep.ok) {
        std::ostringstream os;
        os << "Latin square rows " << rep.row_a << " and " << rep.row_b << " have "
           << rep.magnitude_u_count << " differences of magnitude u";
        throw verification_error(fail(os.str()));
    }

    const int cell = 2 * u;
    const int v = 4 * u * u;
    BitMatrix p(v, v);
    for (int j = 1; j < cell; ++j) blit(p, cells.s_cells[static_cast<std::size_t>(j)], 0, j * cell);
    for (int i = 1; i < cell; ++i) blit(p, transpose(cells.s_cells[static_cast<std::size_t>(i)]), i * cell, 0);
    for (int i = 1; i < cell; ++i)
        for (int j = 1; j < cell; ++j)
            blit(p, cells.a_cells[static_cast<std::size_t>(
                        latin.grid[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)])],
                 i * cell, j * cell);

    PseudoQuasi3Design design;
    design.u = u;
    design.v = v;
    design.k = 2LL * u * u - u;
    design.lambda = 1LL * u * u - u;
    design.triple_low = 1LL * u * u / 2 - u;
    design.triple_high = 1LL * u * u / 2 - u / 2;
    design.anchor_count = cell;

    CertifyOptions opts;
    for (int a = 0; a < cell; ++a) opts.anchors.push_back(a);
    DesignCertificate cert = certify(p, opts);

    if (cert.k != design.k) throw verification_error(fail("block size is not 2u^2-u"));
    if (cert.lambda != design.lambda) throw verification_error(fail("lambda is not u^2-u"));
    if (!cert.symmetric) throw verification_error(fail("result is not symmetric"));
    const BitMatrix columns = transpose(p);
    for (int c = 0; c < v; ++c)
        if (row_weight(columns, c) != design.k) throw verification_error(fail("column sums are not constant"));
    for (int a = 0; a < cell; ++a) {
        const Spectrum& s = cert.triple_spectra.at(a);
        if (s.empty()) throw verification_error(fail("anchored triple spectrum is empty"));
        for (const auto& [value, count] : s) {
            if (value != design.triple_low && value != design.triple_high) {
                std::ostringstream os;
                os << "anchor " << a << " sees triple intersection " << value
                   << ", expected " << design.triple_low << " or " << design.triple_high;
                throw verification_error(fail(os.str()));
            }
        }
    }

    design.incidence = std::move(p);
    design.certificate = std::move(cert);
    return design;
}

std::vector<std::vector<std::string>> cell_map(int u) {
    const LatinSquare latin = build_latin_square(u);
    const int cell = 2 * u;
    std::vector<std::vector<std::string>> map(static_cast<std::size_t>(cell),
                                              std::vector<std::string>(static_cast<std::size_t>(cell)));
    map[0][0] = "0";
    for (int j = 1; j < cell; ++j) map[0][static_cast<std::size_t>(j)] = "S" + std::to_string(j);
    for (int i = 1; i < cell; ++i) map[static_cast<std::size_t>(i)][0] = "S" + std::to_string(i) + "T";
    for (int i = 1; i < cell; ++i)
        for (int j = 1; j < cell; ++j)
            map[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                "A" + std::to_string(latin.grid[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]);
    return map;
}

}  // namespace pq3
