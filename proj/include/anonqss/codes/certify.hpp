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

#ifndef ANONQSS_CODES_CERTIFY_HPP
#define ANONQSS_CODES_CERTIFY_HPP

#include <vector>

#include "anonqss/codes/code_spec.hpp"

namespace anonqss {

inline constexpr double kKnillLaflammeTol = 1e-8;

struct ErasurePattern {
    std::vector<std::size_t> erased;

    void validate(std::size_t n) const {
        for (std::size_t q : erased) {
            if (q >= n) {
                throw std::invalid_argument("erasure index " + std::to_string(q) + " out of range");
            }
        }
    }

    /// The last `count` of n qubits, the canonical pattern for PI codes.
    static ErasurePattern last(std::size_t n, std::size_t count) {
        ErasurePattern e;
        for (std::size_t q = n - count; q < n; q++) e.erased.push_back(q);
        return e;
    }

    std::uint64_t mask() const {
        std::uint64_t m = 0;
        for (std::size_t q : erased) m |= std::uint64_t{1} << q;
        return m;
    }
};

struct CertifyReport {
    bool pass = true;
    double worst_deviation = 0;
    std::vector<std::size_t> worst_set;
    /// α_ab = <0̄|E_a† E_b|0̄> on the worst set, Paulis indexed in base 4
    /// (I,X,Y,Z). Only filled for t <= 3.
    ComplexMatrix alpha;
};

namespace detail {

/// Rows = basis states of `subset` (in the given order), columns = the rest.
inline ComplexMatrix bipartition_amplitudes(const ComplexVector &psi, std::size_t n,
                                            const std::vector<std::size_t> &subset) {
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; q++) {
        if (std::find(subset.begin(), subset.end(), q) == subset.end()) rest.push_back(q);
    }
    std::size_t t = subset.size();
    ComplexMatrix a(Eigen::Index{1} << t, Eigen::Index{1} << rest.size());
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); i++) {
        std::uint64_t r = 0, c = 0;
        for (std::size_t k = 0; k < t; k++) {
            r = (r << 1) | ((i >> (n - 1 - subset[k])) & 1);
        }
        for (std::size_t k = 0; k < rest.size(); k++) {
            c = (c << 1) | ((i >> (n - 1 - rest[k])) & 1);
        }
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = psi[static_cast<Eigen::Index>(i)];
    }
    return a;
}

/// max_P |Tr(P m)| over Pauli strings P on log2(dim) qubits.
inline double max_pauli_component(const ComplexMatrix &m) {
    std::size_t t = 0;
    while ((Eigen::Index{1} << t) < m.rows()) t++;
    double worst = 0;
    for (std::size_t idx = 0; idx < (std::size_t{1} << (2 * t)); idx++) {
        worst = std::max(worst, std::abs((pauli_matrix_by_index(t, idx) * m).trace()));
    }
    return worst;
}

inline double trace_norm(const ComplexMatrix &m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

template <typename F>
void for_each_subset(std::size_t n, std::size_t t, F &&f) {
    std::vector<std::size_t> s(t);
    for (std::size_t i = 0; i < t; i++) s[i] = i;
    while (true) {
        f(s);
        std::size_t i = t;
        while (i > 0 && s[i - 1] == n - t + i - 1) i--;
        if (i == 0) return;
        s[i - 1]++;
        for (std::size_t j = i; j < t; j++) s[j] = s[j - 1] + 1;
    }
}

}  // namespace detail

/// Checks the Knill-Laflamme conditions <i|E_a†E_b|j> = δ_ij α_ab for every
/// erasure set of size t, with E ranging over Pauli strings on that set.
/// Since {E_a†E_b} spans every operator on the set, the check is done on the
/// reduced cross operators Tr_rest|i><j|. For t > 5 the deviation is the
/// trace norm of the violating operators instead of a per-Pauli maximum.
inline CertifyReport certify_erasure(const CodeSpec &code, std::size_t t) {
    std::size_t n = code_n(code);
    if (t > n) {
        throw std::invalid_argument("certify_erasure: t exceeds n");
    }
    CertifyReport rep;
    if (t == 0) {
        rep.alpha = ComplexMatrix::Ones(1, 1);
        return rep;
    }
    auto [c0, c1] = full_codewords(code);
    detail::for_each_subset(n, t, [&](const std::vector<std::size_t> &set) {
        ComplexMatrix a0 = detail::bipartition_amplitudes(c0, n, set);
        ComplexMatrix a1 = detail::bipartition_amplitudes(c1, n, set);
        // Tr_rest |i><j| = A_i A_j†; <j|P|i> = Tr(P A_i A_j†).
        ComplexMatrix off = a1 * a0.adjoint();
        ComplexMatrix diff = a0 * a0.adjoint() - a1 * a1.adjoint();
        double dev = t <= 5 ? std::max(detail::max_pauli_component(off), detail::max_pauli_component(diff))
                            : std::max(detail::trace_norm(off), detail::trace_norm(diff));
        if (dev > rep.worst_deviation || rep.worst_set.empty()) {
            rep.worst_deviation = std::max(rep.worst_deviation, dev);
            rep.worst_set = set;
        }
    });
    rep.pass = rep.worst_deviation <= kKnillLaflammeTol;
    if (t <= 3) {
        ComplexMatrix a0 = detail::bipartition_amplitudes(c0, n, rep.worst_set);
        ComplexMatrix rho00 = a0 * a0.adjoint();
        std::size_t np = std::size_t{1} << (2 * t);
        std::vector<ComplexMatrix> paulis;
        for (std::size_t i = 0; i < np; i++) paulis.push_back(pauli_matrix_by_index(t, i));
        rep.alpha.resize(static_cast<Eigen::Index>(np), static_cast<Eigen::Index>(np));
        for (std::size_t a = 0; a < np; a++) {
            for (std::size_t b = 0; b < np; b++) {
                rep.alpha(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    (paulis[a].adjoint() * paulis[b] * rho00).trace();
            }
        }
    }
    return rep;
}

}  // namespace anonqss

#endif
