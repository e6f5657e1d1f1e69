#include "pq3/codes.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace pq3 {

namespace {

long long hamming(const BitMatrix& words, int i, int j) {
    auto a = words.row_words(i), b = words.row_words(j);
    long long s = 0;
    for (std::size_t w = 0; w < a.size(); ++w) s += std::popcount(a[w] ^ b[w]);
    return s;
}

BitMatrix sort_rows(const BitMatrix& m) {
    std::vector<int> order(static_cast<std::size_t>(m.rows()));
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::string> keys(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) keys[static_cast<std::size_t>(i)] = m.row_string(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)]; });

    BitMatrix out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m.get(order[static_cast<std::size_t>(r)], c)) out.set(r, c, true);
    return out;
}

bool rows_sorted_distinct(const BitMatrix& m, int* dup_row) {
    for (int r = 0; r + 1 < m.rows(); ++r) {
        if (m.row_words(r).size() == m.row_words(r + 1).size() &&
            std::equal(m.row_words(r).begin(), m.row_words(r).end(), m.row_words(r + 1).begin())) {
            if (dup_row) *dup_row = r;
            return false;
        }
    }
    return true;
}

}  // namespace

BinaryCode BinaryCode::from_words(const BitMatrix& words) {
    if (words.rows() < 1) throw std::invalid_argument("BinaryCode: need at least one word");
    BitMatrix sorted = sort_rows(words);
    int dup = -1;
    if (!rows_sorted_distinct(sorted, &dup))
        throw verification_error("BinaryCode: duplicate word " + sorted.row_string(dup));

    // Closed under complement? Look each complement up among the sorted rows.
    const BitMatrix comp = complement(sorted);
    bool closed = true;
    std::vector<std::string> keys(static_cast<std::size_t>(sorted.rows()));
    for (int i = 0; i < sorted.rows(); ++i) keys[static_cast<std::size_t>(i)] = sorted.row_string(i);
    for (int i = 0; i < comp.rows() && closed; ++i)
        closed = std::binary_search(keys.begin(), keys.end(), comp.row_string(i));

    return BinaryCode(std::move(sorted), closed);
}

GreyRankinReport grey_rankin_bound(long long n, long long d) {
    if (d <= 0 || d >= n) throw std::invalid_argument("grey_rankin_bound: need 0 < d < n");
    GreyRankinReport r;
    r.n = n;
    r.d = d;
    r.denominator = n - (n - 2 * d) * (n - 2 * d);
    r.applicable = r.denominator > 0;
    if (r.applicable) {
        r.bound_numerator = 8 * d * (n - d);
        r.bound_denominator = r.denominator;
        const long long g = std::gcd(r.bound_numerator, r.bound_denominator);
        r.bound_numerator /= g;
        r.bound_denominator /= g;
    }
    return r;
}

BinaryCode design_to_code(const BitMatrix& m) {
    verify_2design(m);  // propagate any axiom failure
    const int b = m.rows(), n = m.cols();
    for (int r = 0; r < b; ++r) {
        const long long w = row_weight(m, r);
        if (w == 0 || w == n)
            throw verification_error("design_to_code: block " + std::to_string(r) + " is empty or full");
    }

    BitMatrix words(2 * b + 2, n);
    for (int r = 0; r < b; ++r)
        for (int c = 0; c < n; ++c)
            if (m.get(r, c)) {
                words.set(r, c, true);
            } else {
                words.set(b + r, c, true);
            }
    for (int c = 0; c < n; ++c) words.set(2 * b + 1, c, true);  // row 2b stays all-zero

    return BinaryCode::from_words(words);  // duplicate rows surface here
}

BitMatrix code_to_design(const BinaryCode& c, long long weight) {
    if (!c.self_complementary())
        throw std::invalid_argument("code_to_design: code is not self-complementary");
    std::vector<int> picked;
    for (int i = 0; i < c.words().rows(); ++i)
        if (row_weight(c.words(), i) == weight) picked.push_back(i);
    if (picked.empty())
        throw std::invalid_argument("code_to_design: no words of weight " + std::to_string(weight));

    BitMatrix out(static_cast<int>(picked.size()), c.length());
    for (int r = 0; r < static_cast<int>(picked.size()); ++r)
        for (int col = 0; col < c.length(); ++col)
            if (c.words().get(picked[static_cast<std::size_t>(r)], col)) out.set(r, col, true);
    return out;
}

long long min_distance_full(const BinaryCode& c) {
    if (c.size() < 2) throw std::invalid_argument("min_distance: need at least 2 words");
    long long best = c.length() + 1;
    for (int i = 0; i < c.words().rows(); ++i)
        for (int j = i + 1; j < c.words().rows(); ++j)
            best = std::min(best, hamming(c.words(), i, j));
    return best;
}

long long min_distance(const BinaryCode& c) {
    if (c.size() < 2) throw std::invalid_argument("min_distance: need at least 2 words");
    if (!c.self_complementary()) return min_distance_full(c);

    // Words come in complement pairs {w, ~w}; between two pairs the four
    // distances are {e, n-e, n-e, e}, inside a pair the distance is n.
    const int n = c.length();
    std::vector<int> reps;
    std::vector<std::string> keys(static_cast<std::size_t>(c.words().rows()));
    for (int i = 0; i < c.words().rows(); ++i) keys[static_cast<std::size_t>(i)] = c.words().row_string(i);
    const BitMatrix comp = complement(c.words());
    for (int i = 0; i < c.words().rows(); ++i)
        if (keys[static_cast<std::size_t>(i)] < comp.row_string(i)) reps.push_back(i);

    long long best = n;
    for (std::size_t a = 0; a < reps.size(); ++a) {
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
            const long long e = hamming(c.words(), reps[a], reps[b]);
            best = std::min({best, e, n - e});
        }
    }
    return best;
}

QuasiSymmetryReport quasi_symmetry_check(const BitMatrix& m) {
    const DesignCertificate cert = verify_2design(m);
    QuasiSymmetryReport r;
    r.n = cert.v;
    r.d = cert.k;
    r.lambda = cert.lambda;
    r.n_even = r.n % 2 == 0;
    r.d_even = r.d % 2 == 0;
    r.range_ok = 2 * r.d < r.n && (r.n - 2 * r.d) * (r.n - 2 * r.d) < r.n;
    r.observed_spectrum = pair_spectrum(m);

    // Membership in {d/2, (3d-n)/2} without dividing: 2s = d or 2s = 3d-n.
    r.spectrum_ok = true;
    for (const auto& [value, count] : r.observed_spectrum)
        if (2 * value != r.d && 2 * value != 3 * r.d - r.n) r.spectrum_ok = false;

    const long long denom = r.n - (r.n - 2 * r.d) * (r.n - 2 * r.d);
    r.lambda_ok = denom > 0 && (r.d * (r.d - 1)) % denom == 0 && r.lambda == r.d * (r.d - 1) / denom;
    return r;
}

GreyRankinReport certify_grey_rankin_optimal(const BinaryCode& c) {
    GreyRankinReport r = grey_rankin_bound(c.length(), min_distance(c));
    if (!r.applicable)
        throw std::invalid_argument("certify_grey_rankin_optimal: bound not applicable (denominator <= 0)");
    r.words = c.size();
    r.self_complementary = c.self_complementary();
    r.meets_with_equality = r.words * r.bound_denominator == r.bound_numerator;
    return r;
}

BinaryCode read_code(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw io_error("code file: missing header line");
    std::istringstream hs(line);
    long long n = 0, m = 0;
    if (!(hs >> n >> m)) throw io_error("code file: header must be \"n M\"");
    std::string rest;
    if (hs >> rest) throw io_error("code file: trailing tokens after header");
    if (n < 1 || m < 1 || n > 1'000'000 || m > 1'000'000) throw io_error("code file: dimensions out of range");

    BitMatrix words(static_cast<int>(m), static_cast<int>(n));
    for (int r = 0; r < m; ++r) {
        if (!std::getline(in, line)) throw io_error("code file: missing word " + std::to_string(r));
        if (static_cast<long long>(line.size()) != n)
            throw io_error("code file: word " + std::to_string(r) + " has the wrong length");
        for (int c = 0; c < n; ++c) {
            if (line[static_cast<std::size_t>(c)] == '1')
                words.set(r, c, true);
            else if (line[static_cast<std::size_t>(c)] != '0')
                throw io_error("code file: word " + std::to_string(r) + " contains a character other than 0/1");
        }
    }
    while (std::getline(in, line))
        if (!line.empty()) throw io_error("code file: unexpected content after last word");

    try {
        return BinaryCode::from_words(words);
    } catch (const verification_error& e) {
        throw io_error(std::string("code file: ") + e.what());
    }
}

void write_code(std::ostream& out, const BinaryCode& c) {
    out << c.length() << ' ' << c.size() << '\n';
    for (int r = 0; r < c.words().rows(); ++r) out << c.words().row_string(r) << '\n';
}

BinaryCode load_code(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open file for reading: " + path);
    return read_code(f);
}

void save_code(const std::string& path, const BinaryCode& c) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open file for writing: " + path);
    write_code(f, c);
}

std::string grey_rankin_to_json(const GreyRankinReport& r, int indent) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["d"] = r.d;
    j["denominator"] = r.denominator;
    j["applicable"] = r.applicable;
    j["bound_numerator"] = r.bound_numerator;
    j["bound_denominator"] = r.bound_denominator;
    if (r.words >= 0) {
        j["words"] = r.words;
        j["self_complementary"] = r.self_complementary;
        j["meets_with_equality"] = r.meets_with_equality;
    }
    return j.dump(indent) + "\n";
}

std::string quasi_symmetry_to_json(const QuasiSymmetryReport& r, int indent) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["d"] = r.d;
    j["lambda"] = r.lambda;
    j["n_even"] = r.n_even;
    j["d_even"] = r.d_even;
    j["range_ok"] = r.range_ok;
    j["spectrum_ok"] = r.spectrum_ok;
    j["lambda_ok"] = r.lambda_ok;
    nlohmann::ordered_json spectrum = nlohmann::ordered_json::object();
    for (const auto& [value, count] : r.observed_spectrum) spectrum[std::to_string(value)] = count;
    j["observed_spectrum"] = spectrum;
    j["ok"] = r.ok();
    return j.dump(indent) + "\n";
}

}  // namespace pq3
