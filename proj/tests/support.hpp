#pragma once

// Shared fixtures and deliberately naive set-based reference implementations.
// Every bit-packed kernel gets cross-checked against these oracles; they are
// slow and obvious on purpose.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pq3/core.hpp"
#include "pq3/designs.hpp"

namespace support {

inline pq3::BitMatrix from_strings(const std::vector<std::string>& rows) {
    pq3::BitMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.at(0).size()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (rows[static_cast<std::size_t>(r)].at(static_cast<std::size_t>(c)) == '1')
                m.set(r, c, true);
    return m;
}

inline pq3::SignMatrix sign_from_strings(const std::vector<std::string>& rows) {
    pq3::SignMatrix m(static_cast<int>(rows.size()));
    for (int r = 0; r < m.order(); ++r)
        for (int c = 0; c < m.order(); ++c)
            m.set(r, c, rows[static_cast<std::size_t>(r)].at(static_cast<std::size_t>(c)) == '+'
                            ? +1
                            : -1);
    return m;
}

inline std::vector<std::set<int>> blocks_of(const pq3::BitMatrix& m) {
    std::vector<std::set<int>> blocks(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) blocks[static_cast<std::size_t>(r)].insert(c);
    return blocks;
}

inline std::set<int> intersect(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.begin()));
    return out;
}

inline pq3::Spectrum pair_spectrum_oracle(const pq3::BitMatrix& m) {
    const auto blocks = blocks_of(m);
    pq3::Spectrum s;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            ++s[static_cast<long long>(intersect(blocks[i], blocks[j]).size())];
    return s;
}

inline pq3::Spectrum anchored_triple_oracle(const pq3::BitMatrix& m, int anchor) {
    const auto blocks = blocks_of(m);
    const auto& a = blocks[static_cast<std::size_t>(anchor)];
    pq3::Spectrum s;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (static_cast<int>(i) == anchor) continue;
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            if (static_cast<int>(j) == anchor) continue;
            ++s[static_cast<long long>(intersect(intersect(a, blocks[i]), blocks[j]).size())];
        }
    }
    return s;
}

inline pq3::Spectrum triple_oracle(const pq3::BitMatrix& m) {
    const auto blocks = blocks_of(m);
    pq3::Spectrum s;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            for (std::size_t k = j + 1; k < blocks.size(); ++k)
                ++s[static_cast<long long>(
                    intersect(intersect(blocks[i], blocks[j]), blocks[k]).size())];
    return s;
}

inline long long hamming_oracle(const std::string& a, const std::string& b) {
    long long d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

// The Fano plane: blocks are the cyclic shifts of {0,1,3} mod 7. A symmetric
// 2-(7,3,1) design whose full triple spectrum is {0,1} (quasi-3).
inline pq3::BitMatrix fano() {
    pq3::BitMatrix m(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int d : {0, 1, 3}) m.set(i, (i + d) % 7, true);
    return m;
}

// Quadratic-residue design on Z_q (q prime, q = 3 mod 4): block i is
// i + {nonzero squares}. For q=19 a symmetric 2-(19,9,4) design whose
// anchored triple spectra are more than two-valued at every anchor.
inline pq3::BitMatrix qr_design(int q) {
    std::set<int> squares;
    for (int a = 1; a < q; ++a) squares.insert(a * a % q);
    pq3::BitMatrix m(q, q);
    for (int i = 0; i < q; ++i)
        for (int s : squares) m.set(i, (i + s) % q, true);
    return m;
}

// All 2-subsets of n points: the complete 2-(n,2,1) design, not symmetric.
inline pq3::BitMatrix complete_pairs_design(int n) {
    pq3::BitMatrix m(n * (n - 1) / 2, n);
    int r = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++r) {
            m.set(r, i, true);
            m.set(r, j, true);
        }
    return m;
}

// Fresh scratch directory under the system temp dir; wiped on (re)use.
inline std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("pq3_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

inline void spill(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
}

}  // namespace support
