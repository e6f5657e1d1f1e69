#pragma once

#include <iosfwd>
#include <string>

#include "pq3/core.hpp"
#include "pq3/designs.hpp"

namespace pq3 {

// A set of distinct binary words of one length, kept in ascending numeric
// order (most significant bit first, i.e. the order of the '0'/'1' strings).
class BinaryCode {
public:
    // Rows of `words` become the word set; duplicates are an error.
    static BinaryCode from_words(const BitMatrix& words);

    int length() const { return words_.cols(); }
    long long size() const { return words_.rows(); }
    bool self_complementary() const { return self_complementary_; }

    // The words as an incidence-style matrix, one word per row, sorted.
    const BitMatrix& words() const { return words_; }

private:
    explicit BinaryCode(BitMatrix sorted_words, bool self_complementary)
        : words_(std::move(sorted_words)), self_complementary_(self_complementary) {}

    BitMatrix words_;
    bool self_complementary_;
};

struct GreyRankinReport {
    long long n = 0;
    long long d = 0;
    long long denominator = 0;  // n - (n-2d)^2
    // 8d(n-d)/denominator as a reduced fraction; exact, never floating point.
    long long bound_numerator = 0;
    long long bound_denominator = 1;
    bool applicable = false;  // denominator > 0

    // Filled when certifying a concrete code.
    long long words = -1;
    bool self_complementary = false;
    bool meets_with_equality = false;
};

// The bound M <= 8d(n-d)/(n-(n-2d)^2) for self-complementary codes,
// evaluated as an exact rational; applicable only when the denominator is
// positive. Requires 0 < d < n.
GreyRankinReport grey_rankin_bound(long long n, long long d);

// Rows, their complements, the all-zero and the all-one word: a
// self-complementary code with M = 2b+2. The input must be a 2-design with
// distinct rows, none of them empty or full; collisions in the union are
// reported as verification errors.
BinaryCode design_to_code(const BitMatrix& m);

// The words of exactly the given weight, stacked in ascending numeric order.
BitMatrix code_to_design(const BinaryCode& c, long long weight);

// Exact minimum Hamming distance. For self-complementary codes the
// complement-pair symmetry d(a, ~b) = n - d(a, b) cuts the scan to
// representative pairs; the result is identical to the full scan.
long long min_distance(const BinaryCode& c);

// The plain all-pairs scan, kept callable so the shortcut can be checked
// against it.
long long min_distance_full(const BinaryCode& c);

struct QuasiSymmetryReport {
    long long n = 0;       // points
    long long d = 0;       // block size
    long long lambda = 0;  // from the design certificate
    bool n_even = false;
    bool d_even = false;
    bool range_ok = false;     // n - sqrt(n) < 2d < n, as (n-2d)^2 < n and 2d < n
    bool spectrum_ok = false;  // pair spectrum inside {d/2, (3d-n)/2}
    bool lambda_ok = false;    // lambda = d(d-1)/(n-(n-2d)^2) exactly
    Spectrum observed_spectrum;

    bool ok() const { return n_even && d_even && range_ok && spectrum_ok && lambda_ok; }
};

// Itemised check of the quasi-symmetric design side of the Grey-Rankin
// equality equivalence. Failures are reported, not thrown.
QuasiSymmetryReport quasi_symmetry_check(const BitMatrix& m);

// Evaluates the bound for the code's own (n, M, d) and reports whether M
// meets it with equality. Throws if the bound is not applicable.
GreyRankinReport certify_grey_rankin_optimal(const BinaryCode& c);

// Code file format: first line "n M", then M lines of '0'/'1' words.
BinaryCode read_code(std::istream& in);
void write_code(std::ostream& out, const BinaryCode& c);
BinaryCode load_code(const std::string& path);
void save_code(const std::string& path, const BinaryCode& c);

std::string grey_rankin_to_json(const GreyRankinReport& r, int indent = 2);
std::string quasi_symmetry_to_json(const QuasiSymmetryReport& r, int indent = 2);

}  // namespace pq3
