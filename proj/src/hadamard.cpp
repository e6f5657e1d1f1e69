#include "pq3/hadamard.hpp"

#include <istream>
#include <sstream>

namespace pq3 {

std::string OrthogonalityReport::describe() const {
    if (ok) return "orthogonal";
    std::ostringstream os;
    if (row_i == row_j)
        os << "row " << row_i << " has self dot product " << dot << " instead of the order";
    else
        os << "rows " << row_i << " and " << row_j << " have dot product " << dot;
    return os.str();
}

OrthogonalityReport is_hadamard(const SignMatrix& m) {
    const int n = m.order();
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            long long dot = 0;
            for (int c = 0; c < n; ++c) dot += static_cast<long long>(m(i, c)) * m(j, c);
            const long long expected = (i == j) ? n : 0;
            if (dot != expected) return {false, i, j, dot};
        }
    }
    return {};
}

namespace {

bool scan_normalised(const SignMatrix& m) {
    for (int c = 0; c < m.order(); ++c)
        if (m(0, c) != +1) return false;
    for (int r = 0; r < m.order(); ++r)
        if (m(r, 0) != +1) return false;
    return true;
}

}  // namespace

HadamardMatrix HadamardMatrix::checked(SignMatrix m) {
    const auto report = is_hadamard(m);
    if (!report.ok) throw verification_error("not a Hadamard matrix: " + report.describe());
    const bool normalised = scan_normalised(m);
    return HadamardMatrix(std::move(m), normalised);
}

HadamardMatrix sylvester(int exponent, int cap) {
    if (exponent < 0) throw std::invalid_argument("sylvester: exponent must be non-negative");
    if (exponent > cap)
        throw std::invalid_argument("sylvester: exponent " + std::to_string(exponent) +
                                    " exceeds cap " + std::to_string(cap));
    HadamardMatrix h = HadamardMatrix::checked(SignMatrix(1));
    for (int i = 0; i < exponent; ++i) h = double_order(h);
    return h;
}

HadamardMatrix paley_i(int q) {
    if (q < 3) throw std::invalid_argument("paley_i: q must be at least 3");
    if (q % 4 != 3)
        throw std::invalid_argument("paley_i: q = " + std::to_string(q) + " is not 3 mod 4");
    for (int d = 2; static_cast<long long>(d) * d <= q; ++d)
        if (q % d == 0)
            throw std::invalid_argument("paley_i: q = " + std::to_string(q) +
                                        " is not prime (prime powers are unsupported)");

    // quadratic character on Z_q: chi[0] = 0, chi[x] = +1 for squares
    std::vector<int> chi(static_cast<std::size_t>(q), -1);
    chi[0] = 0;
    for (int a = 1; a < q; ++a) chi[static_cast<std::size_t>((static_cast<long long>(a) * a) % q)] = +1;

    // H = I + S with skew S: zero diagonal replaced by +1 from the identity,
    // all-ones first row, all-minus-ones first column, Jacobsthal core.
    const int n = q + 1;
    SignMatrix m(n, +1);
    for (int i = 1; i < n; ++i) m.set(i, 0, -1);
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
            if (i == j) continue;
            const int diff = ((j - i) % q + q) % q;
            m.set(i, j, static_cast<Sign>(chi[static_cast<std::size_t>(diff)]));
        }
    }
    return normalize(HadamardMatrix::checked(std::move(m)));
}

HadamardMatrix normalize(const HadamardMatrix& h) {
    SignMatrix m = h.matrix();
    for (int c = 0; c < m.order(); ++c)
        if (m(0, c) == -1) m.negate_column(c);
    for (int r = 0; r < m.order(); ++r)
        if (m(r, 0) == -1) m.negate_row(r);
    return HadamardMatrix::checked(std::move(m));
}

HadamardMatrix double_order(const HadamardMatrix& h) {
    if (!h.normalised()) throw std::invalid_argument("double_order: input must be normalised");
    const int n = h.order();
    SignMatrix m(2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const Sign v = h.matrix()(r, c);
            m.set(r, c, v);
            m.set(r, c + n, v);
            m.set(r + n, c, v);
            m.set(r + n, c + n, static_cast<Sign>(-v));
        }
    }
    return HadamardMatrix::checked(std::move(m));
}

HadamardMatrix kronecker_hadamard(const HadamardMatrix& a, const HadamardMatrix& b) {
    return normalize(HadamardMatrix::checked(kronecker(a.matrix(), b.matrix())));
}

HadamardMatrix import_hadamard(std::istream& in) {
    return HadamardMatrix::checked(read_sign_matrix(in));
}

HadamardMatrix import_hadamard_file(const std::string& path) {
    return HadamardMatrix::checked(load_sign_matrix(path));
}

}  // namespace pq3
