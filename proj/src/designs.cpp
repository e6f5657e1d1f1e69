#include "pq3/designs.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "json.hpp"

namespace pq3 {

namespace {

// AND of the anchor row with every other row, reused across the pair loop.
std::vector<std::uint64_t> anchored_rows(const BitMatrix& m, int anchor) {
    const int wpr = m.words_per_row();
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(m.rows()) * wpr);
    const auto a = m.row_words(anchor);
    for (int i = 0; i < m.rows(); ++i) {
        const auto r = m.row_words(i);
        for (int w = 0; w < wpr; ++w) acc[static_cast<std::size_t>(i) * wpr + w] = a[w] & r[w];
    }
    return acc;
}

}  // namespace

bool DesignCertificate::arithmetic_consistent() const {
    if (symmetric) return k * (k - 1) == lambda * (v - 1);
    return b * k == v * replication && lambda * (v - 1) == replication * (k - 1);
}

DesignCertificate verify_2design(const BitMatrix& m) {
    const int b = m.rows(), v = m.cols();
    if (b < 2 || v < 2) throw std::invalid_argument("verify_2design: need at least 2 blocks and 2 points");

    DesignCertificate cert;
    cert.b = b;
    cert.v = v;

    cert.k = row_weight(m, 0);
    for (int i = 1; i < b; ++i) {
        const long long w = row_weight(m, i);
        if (w != cert.k) {
            std::ostringstream os;
            os << "not a 2-design: block 0 has size " << cert.k << " but block " << i << " has size " << w;
            throw verification_error(os.str());
        }
    }

    const BitMatrix points = transpose(m);
    cert.replication = row_weight(points, 0);
    for (int p = 1; p < v; ++p) {
        if (row_weight(points, p) != cert.replication) {
            std::ostringstream os;
            os << "not a 2-design: points 0 and " << p << " lie on different numbers of blocks";
            throw verification_error(os.str());
        }
    }

    cert.lambda = pair_intersection(points, 0, 1);
    for (int p = 0; p < v; ++p) {
        for (int q = p + 1; q < v; ++q) {
            const long long count = pair_intersection(points, p, q);
            if (count != cert.lambda) {
                std::ostringstream os;
                os << "not a 2-design: point pair (0,1) lies in " << cert.lambda
                   << " blocks but pair (" << p << "," << q << ") lies in " << count;
                throw verification_error(os.str());
            }
        }
    }

    if (b == v) {
        bool all_lambda = true;
        for (int i = 0; i < b && all_lambda; ++i)
            for (int j = i + 1; j < b && all_lambda; ++j)
                if (pair_intersection(m, i, j) != cert.lambda) all_lambda = false;
        cert.symmetric = all_lambda;
    }
    return cert;
}

Spectrum pair_spectrum(const BitMatrix& m) {
    if (m.rows() < 2) throw std::invalid_argument("pair_spectrum: need at least 2 blocks");
    Spectrum s;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.rows(); ++j)
            ++s[pair_intersection(m, i, j)];
    return s;
}

Spectrum anchored_triple_spectrum(const BitMatrix& m, int anchor) {
    if (m.rows() < 3) throw std::invalid_argument("anchored_triple_spectrum: need at least 3 blocks");
    if (anchor < 0 || anchor >= m.rows())
        throw std::out_of_range("anchored_triple_spectrum: anchor out of range");

    const int b = m.rows(), wpr = m.words_per_row();
    const auto acc = anchored_rows(m, anchor);
    Spectrum s;
    for (int i = 0; i < b; ++i) {
        if (i == anchor) continue;
        const std::uint64_t* ai = acc.data() + static_cast<std::size_t>(i) * wpr;
        for (int j = i + 1; j < b; ++j) {
            if (j == anchor) continue;
            const auto rj = m.row_words(j);
            long long inter = 0;
            for (int w = 0; w < wpr; ++w) inter += std::popcount(ai[w] & rj[w]);
            ++s[inter];
        }
    }
    return s;
}

Spectrum triple_spectrum(const BitMatrix& m) {
    if (m.rows() < 3) throw std::invalid_argument("triple_spectrum: need at least 3 blocks");
    const int b = m.rows(), wpr = m.words_per_row();
    Spectrum s;
    std::vector<std::uint64_t> ij(static_cast<std::size_t>(wpr));
    for (int i = 0; i < b; ++i) {
        const auto ri = m.row_words(i);
        for (int j = i + 1; j < b; ++j) {
            const auto rj = m.row_words(j);
            for (int w = 0; w < wpr; ++w) ij[static_cast<std::size_t>(w)] = ri[w] & rj[w];
            for (int k = j + 1; k < b; ++k) {
                const auto rk = m.row_words(k);
                long long inter = 0;
                for (int w = 0; w < wpr; ++w) inter += std::popcount(ij[static_cast<std::size_t>(w)] & rk[w]);
                ++s[inter];
            }
        }
    }
    return s;
}

std::vector<int> pseudo_quasi3_witnesses(const BitMatrix& m) {
    const DesignCertificate cert = verify_2design(m);
    if (!cert.symmetric) throw verification_error("pseudo_quasi3_witnesses: not a symmetric 2-design");

    std::vector<int> witnesses;
    for (int a = 0; a < m.rows(); ++a)
        if (anchored_triple_spectrum(m, a).size() <= 2) witnesses.push_back(a);
    return witnesses;
}

bool is_quasi3(const BitMatrix& m) {
    const auto witnesses = pseudo_quasi3_witnesses(m);
    if (static_cast<int>(witnesses.size()) != m.rows()) return false;
    return triple_spectrum(m).size() == 2;
}

namespace {

void check_symmetric_input(const BitMatrix& m, int block, const char* op) {
    if (block < 0 || block >= m.rows()) throw std::out_of_range(std::string(op) + ": block index out of range");
    const DesignCertificate cert = verify_2design(m);
    if (!cert.symmetric) throw verification_error(std::string(op) + ": input is not a symmetric 2-design");
}

// Restrict all rows except `block` to the columns where the block row has
// value `inside`; column order is preserved.
BitMatrix restrict_to_block(const BitMatrix& m, int block, bool inside) {
    std::vector<int> cols;
    for (int c = 0; c < m.cols(); ++c)
        if (m.get(block, c) == inside) cols.push_back(c);

    BitMatrix out(m.rows() - 1, static_cast<int>(cols.size()));
    int r_out = 0;
    for (int r = 0; r < m.rows(); ++r) {
        if (r == block) continue;
        for (int c_out = 0; c_out < static_cast<int>(cols.size()); ++c_out)
            if (m.get(r, cols[static_cast<std::size_t>(c_out)])) out.set(r_out, c_out, true);
        ++r_out;
    }
    return out;
}

}  // namespace

BitMatrix derived_design(const BitMatrix& m, int block) {
    check_symmetric_input(m, block, "derived_design");
    return restrict_to_block(m, block, true);
}

BitMatrix residual_design(const BitMatrix& m, int block) {
    check_symmetric_input(m, block, "residual_design");
    return restrict_to_block(m, block, false);
}

BitMatrix dual_design(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("dual_design: incidence matrix must be square");
    return transpose(m);
}

DesignCertificate certify(const BitMatrix& m, const CertifyOptions& opts) {
    DesignCertificate cert = verify_2design(m);
    cert.pair_spectrum = pair_spectrum(m);
    if (cert.pair_spectrum.size() == 1) {
        cert.intersection_regular = true;
    } else if (cert.pair_spectrum.size() == 2) {
        const long long x = cert.pair_spectrum.begin()->first;
        const long long y = std::next(cert.pair_spectrum.begin())->first;
        cert.quasi_symmetric_values = {x, y};
    }

    std::vector<int> anchors = opts.anchors;
    if (opts.scan_all_anchors) {
        anchors.resize(static_cast<std::size_t>(m.rows()));
        for (int i = 0; i < m.rows(); ++i) anchors[static_cast<std::size_t>(i)] = i;
    }
    for (int a : anchors) {
        Spectrum s = anchored_triple_spectrum(m, a);
        if (s.size() <= 2) cert.witnesses.push_back(a);
        cert.triple_spectra[a] = std::move(s);
    }
    std::sort(cert.witnesses.begin(), cert.witnesses.end());
    cert.witnesses.erase(std::unique(cert.witnesses.begin(), cert.witnesses.end()), cert.witnesses.end());

    if (opts.full_triples) {
        cert.global_triple_spectrum = triple_spectrum(m);
        cert.quasi3 = static_cast<int>(cert.witnesses.size()) == m.rows() &&
                      opts.scan_all_anchors && cert.global_triple_spectrum->size() == 2;
    }
    return cert;
}

namespace {

nlohmann::ordered_json spectrum_json(const Spectrum& s) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [value, count] : s) j[std::to_string(value)] = count;
    return j;
}

}  // namespace

std::string certificate_to_json(const DesignCertificate& cert, int indent) {
    nlohmann::ordered_json j;
    j["v"] = cert.v;
    j["b"] = cert.b;
    j["k"] = cert.k;
    j["lambda"] = cert.lambda;
    j["symmetric"] = cert.symmetric;
    j["pair_spectrum"] = spectrum_json(cert.pair_spectrum);
    if (cert.quasi_symmetric_values)
        j["quasi_symmetric_values"] = {cert.quasi_symmetric_values->first, cert.quasi_symmetric_values->second};
    else
        j["quasi_symmetric_values"] = nullptr;
    j["intersection_regular"] = cert.intersection_regular;
    nlohmann::ordered_json triples = nlohmann::ordered_json::object();
    for (const auto& [anchor, spectrum] : cert.triple_spectra)
        triples[std::to_string(anchor)] = spectrum_json(spectrum);
    j["triple_spectra"] = triples;
    j["witnesses"] = cert.witnesses;
    if (cert.global_triple_spectrum) j["global_triple_spectrum"] = spectrum_json(*cert.global_triple_spectrum);
    if (cert.quasi3) j["quasi3"] = *cert.quasi3;
    return j.dump(indent) + "\n";
}

}  // namespace pq3
