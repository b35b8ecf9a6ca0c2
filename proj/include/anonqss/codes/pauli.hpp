// Copyright 2026 The anonqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONQSS_CODES_PAULI_HPP
#define ANONQSS_CODES_PAULI_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "anonqss/core/linalg.hpp"

namespace anonqss {

/// Pauli string in binary symplectic form. Bit q of `x`/`z` refers to qubit q
/// (qubit 0 is the leftmost character and the most significant amplitude bit).
struct PauliString {
    std::size_t n = 0;
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    bool negative = false;

    static PauliString parse(std::string_view text) {
        PauliString p;
        if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
            p.negative = text[0] == '-';
            text.remove_prefix(1);
        }
        if (text.size() > 64) {
            throw std::invalid_argument("Pauli string longer than 64 qubits");
        }
        p.n = text.size();
        for (std::size_t q = 0; q < text.size(); q++) {
            switch (text[q]) {
                case 'I':
                case '_':
                    break;
                case 'X':
                    p.x |= std::uint64_t{1} << q;
                    break;
                case 'Y':
                    p.x |= std::uint64_t{1} << q;
                    p.z |= std::uint64_t{1} << q;
                    break;
                case 'Z':
                    p.z |= std::uint64_t{1} << q;
                    break;
                default:
                    throw std::invalid_argument("bad Pauli character '" + std::string(1, text[q]) + "'");
            }
        }
        return p;
    }

    std::string str() const {
        std::string s = negative ? "-" : "";
        for (std::size_t q = 0; q < n; q++) {
            bool bx = (x >> q) & 1, bz = (z >> q) & 1;
            s += bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
        }
        return s;
    }

    std::uint64_t support() const { return x | z; }
    std::size_t weight() const { return static_cast<std::size_t>(std::popcount(support())); }

    /// Product up to phase (phase bits are not needed for counting).
    PauliString times(const PauliString &o) const {
        PauliString p;
        p.n = n;
        p.x = x ^ o.x;
        p.z = z ^ o.z;
        return p;
    }

    bool operator==(const PauliString &o) const { return n == o.n && x == o.x && z == o.z; }
};

/// Symplectic product: 0 if the strings commute, 1 otherwise.
inline int symplectic_product(const PauliString &a, const PauliString &b) {
    return std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1;
}

/// Applies P (including its sign) to a 2^n amplitude vector.
inline ComplexVector apply_pauli(const PauliString &p, const ComplexVector &v) {
    std::size_t n = p.n;
    // Map qubit bits to amplitude-index bits (big-endian).
    std::uint64_t xm = 0, zm = 0;
    int ny = 0;
    for (std::size_t q = 0; q < n; q++) {
        std::uint64_t b = std::uint64_t{1} << (n - 1 - q);
        if ((p.x >> q) & 1) xm |= b;
        if ((p.z >> q) & 1) zm |= b;
        if (((p.x >> q) & 1) && ((p.z >> q) & 1)) ny++;
    }
    // Y = i X Z, so P = i^ny X^x Z^z.
    static const cplx kIPow[4] = {1, cplx(0, 1), -1, cplx(0, -1)};
    cplx global = kIPow[ny % 4] * (p.negative ? -1.0 : 1.0);
    ComplexVector out(v.size());
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(v.size()); i++) {
        double s = (std::popcount(i & zm) & 1) ? -1.0 : 1.0;
        out[static_cast<Eigen::Index>(i ^ xm)] = global * s * v[static_cast<Eigen::Index>(i)];
    }
    return out;
}

/// Dense 2^t x 2^t matrix of the Pauli labeled by base-4 digits of `index`
/// (digit 0 = I, 1 = X, 2 = Y, 3 = Z; most significant digit is qubit 0).
inline ComplexMatrix pauli_matrix_by_index(std::size_t t, std::size_t index) {
    ComplexMatrix m = ComplexMatrix::Identity(1, 1);
    std::vector<int> digits(t);
    for (std::size_t q = t; q-- > 0;) {
        digits[q] = static_cast<int>(index % 4);
        index /= 4;
    }
    for (int d : digits) {
        ComplexMatrix f = d == 0   ? pauli_matrices::I()
                          : d == 1 ? pauli_matrices::X()
                          : d == 2 ? pauli_matrices::Y()
                                   : pauli_matrices::Z();
        m = kron(m, f);
    }
    return m;
}

/// Gaussian elimination over GF(2). Each column of the system is a bit mask
/// of length <= 64. Returns coefficients c with XOR_j c_j cols[j] == rhs, if any.
inline std::optional<std::vector<int>> solve_gf2(const std::vector<std::uint64_t> &cols, std::uint64_t rhs) {
    // Reduce using an echelon basis that tracks which original columns compose it.
    struct Row {
        std::uint64_t vec;
        std::vector<std::uint64_t> combo;  // bitset over columns
    };
    std::size_t words = (cols.size() + 63) / 64 + 1;
    std::vector<Row> basis;
    for (std::size_t j = 0; j < cols.size(); j++) {
        Row r{cols[j], std::vector<std::uint64_t>(words, 0)};
        r.combo[j / 64] |= std::uint64_t{1} << (j % 64);
        for (const Row &b : basis) {
            if (r.vec & (std::uint64_t{1} << (63 - std::countl_zero(b.vec)))) {
                r.vec ^= b.vec;
                for (std::size_t w = 0; w < words; w++) r.combo[w] ^= b.combo[w];
            }
        }
        if (r.vec != 0) {
            basis.push_back(std::move(r));
            // Keep basis sorted by leading bit, highest first.
            std::sort(basis.begin(), basis.end(), [](const Row &a, const Row &b) { return a.vec > b.vec; });
        }
    }
    std::vector<std::uint64_t> combo(words, 0);
    std::uint64_t v = rhs;
    for (const Row &b : basis) {
        if (v & (std::uint64_t{1} << (63 - std::countl_zero(b.vec)))) {
            v ^= b.vec;
            for (std::size_t w = 0; w < words; w++) combo[w] ^= b.combo[w];
        }
    }
    if (v != 0) {
        return std::nullopt;
    }
    std::vector<int> c(cols.size());
    for (std::size_t j = 0; j < cols.size(); j++) {
        c[j] = static_cast<int>((combo[j / 64] >> (j % 64)) & 1);
    }
    return c;
}

/// Rank over GF(2).
inline std::size_t rank_gf2(std::vector<std::uint64_t> rows) {
    std::size_t rank = 0;
    for (int bit = 63; bit >= 0; bit--) {
        std::uint64_t mask = std::uint64_t{1} << bit;
        auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                               [&](std::uint64_t r) { return r & mask; });
        if (it == rows.end()) {
            continue;
        }
        std::swap(*it, rows[rank]);
        for (std::size_t i = 0; i < rows.size(); i++) {
            if (i != rank && (rows[i] & mask)) {
                rows[i] ^= rows[rank];
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace anonqss

#endif
