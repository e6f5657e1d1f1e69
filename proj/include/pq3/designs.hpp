#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pq3/core.hpp"

namespace pq3 {

using Spectrum = std::map<long long, long long>;  // intersection size -> count

// Verified facts about an incidence matrix. Spectra are value->count maps so
// certificates stay small even when a single anchor contributes ~165k triples.
struct DesignCertificate {
    long long v = 0;       // points
    long long b = 0;       // blocks
    long long k = 0;       // block size
    long long lambda = 0;  // pairs of points per block count
    long long replication = 0;
    bool symmetric = false;

    Spectrum pair_spectrum;
    // Present iff pair_spectrum has exactly two distinct values (x < y).
    std::optional<std::pair<long long, long long>> quasi_symmetric_values;
    // Single-valued pair spectrum, reported separately instead of forcing x == y.
    bool intersection_regular = false;

    std::map<int, Spectrum> triple_spectra;  // anchor -> anchored triple spectrum
    std::vector<int> witnesses;              // anchors with a two-valued (or fewer) spectrum

    std::optional<Spectrum> global_triple_spectrum;  // only from a full-triples scan
    std::optional<bool> quasi3;                      // decided only by a full scan

    // k(k-1) = lambda(v-1) for symmetric certificates; the bk = vr and
    // lambda(v-1) = r(k-1) counting identities otherwise.
    bool arithmetic_consistent() const;
};

// Checks the 2-design axioms: constant row sums (k) and a constant count
// of blocks over every point pair (lambda). Sets symmetric when b = v and
// additionally every pair of distinct blocks meets in exactly lambda points.
// Throws verification_error naming the first violating pair otherwise.
DesignCertificate verify_2design(const BitMatrix& m);

// Multiset of |B_i & B_j| over all unordered block pairs.
Spectrum pair_spectrum(const BitMatrix& m);

// Multiset of |B_anchor & B_i & B_j| over all pairs i < j avoiding the anchor.
Spectrum anchored_triple_spectrum(const BitMatrix& m, int anchor);

// Multiset of |B_i & B_j & B_k| over all C(b,3) block triples. Separate
// opt-in scan; cubic in the block count.
Spectrum triple_spectrum(const BitMatrix& m);

// All blocks whose anchored triple spectrum has at most two distinct values.
// Requires a symmetric 2-design. The design is pseudo quasi-3 iff the result
// is non-empty.
std::vector<int> pseudo_quasi3_witnesses(const BitMatrix& m);

// Quasi-3: every block is a witness and the full triple spectrum has exactly
// two distinct values.
bool is_quasi3(const BitMatrix& m);

// Rows != block restricted to the points inside the block; (v-1) x k.
BitMatrix derived_design(const BitMatrix& m, int block);

// Rows != block restricted to the points outside the block; (v-1) x (v-k).
BitMatrix residual_design(const BitMatrix& m, int block);

// Transpose of a square incidence matrix.
BitMatrix dual_design(const BitMatrix& m);

struct CertifyOptions {
    std::vector<int> anchors;      // anchored triple spectra to record
    bool scan_all_anchors = false;  // witness scan over every block
    bool full_triples = false;      // also compute the global triple spectrum
};

// Full certificate: verify_2design + pair spectrum + the requested triple
// scans. Witnesses are drawn from the anchors actually scanned.
DesignCertificate certify(const BitMatrix& m, const CertifyOptions& opts = {});

// JSON shape: {v,b,k,lambda,symmetric,pair_spectrum:{value:count},
//              triple_spectra:{anchor:{value:count}},witnesses:[...]}
std::string certificate_to_json(const DesignCertificate& cert, int indent = 2);

}  // namespace pq3
