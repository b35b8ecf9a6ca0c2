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

#ifndef ANONQSS_CODES_ENCODE_HPP
#define ANONQSS_CODES_ENCODE_HPP

#include <string>
#include <vector>

#include "anonqss/codes/code_spec.hpp"
#include "anonqss/core/state.hpp"

namespace anonqss {

/// (n+1) x 2 isometry |b> -> logical b in the weight basis.
inline ComplexMatrix dicke_encoder(const PICodeSpec &code) {
    ComplexMatrix v(static_cast<Eigen::Index>(code.n + 1), 2);
    v.col(0) = code.logical0.coeffs();
    v.col(1) = code.logical1.coeffs();
    return v;
}

/// 2^n x 2 isometry |b> -> logical b in the computational basis.
inline ComplexMatrix full_encoder(const CodeSpec &code) {
    auto [c0, c1] = full_codewords(code);
    ComplexMatrix v(c0.size(), 2);
    v.col(0) = c0;
    v.col(1) = c1;
    return v;
}

namespace detail {
inline void check_logical(const DensityOperator &logical) {
    if (logical.dim() != 2) {
        throw std::invalid_argument("encode: logical state must be a single qubit");
    }
    logical.validate();
}
}  // namespace detail

/// Encodes into the symmetric subspace; the result lives on one (n+1)-level system.
inline DensityOperator encode_dicke(const PICodeSpec &code, const DensityOperator &logical) {
    detail::check_logical(logical);
    ComplexMatrix v = dicke_encoder(code);
    return DensityOperator({code.n + 1}, v * logical.matrix() * v.adjoint());
}

/// Encodes into the full n-qubit space.
inline DensityOperator encode_full(const CodeSpec &code, const DensityOperator &logical) {
    detail::check_logical(logical);
    ComplexMatrix v = full_encoder(code);
    return DensityOperator(std::vector<std::size_t>(code_n(code), 2), v * logical.matrix() * v.adjoint());
}

inline std::string share_label(std::size_t q) { return "q" + std::to_string(q); }

/// Single-qubit state of classical bit `b` in the given logical basis.
inline ComplexVector logical_basis_state(LogicalBasis basis, int b) {
    ComplexVector v = ComplexVector::Zero(2);
    if (basis == LogicalBasis::Z) {
        v[b ? 1 : 0] = 1;
    } else {
        v[0] = 1.0 / std::sqrt(2.0);
        v[1] = cplx(0, b ? -1.0 : 1.0) / std::sqrt(2.0);
    }
    return v;
}

/// Encodes a logical pure state onto registers `prefix`0..`prefix`(n-1).
inline StateVector encode_state(const CodeSpec &code, const ComplexVector &logical, const std::string &prefix = "q") {
    ComplexVector psi = full_encoder(code) * logical;
    std::vector<std::string> labels;
    for (std::size_t q = 0; q < code_n(code); q++) labels.push_back(prefix + std::to_string(q));
    return StateVector(std::move(labels), psi / psi.norm());
}

/// (|0>_R |0̄> + |1>_R |1̄>)/√2 with registers R, q0..q(n-1).
inline StateVector reference_coupled(const CodeSpec &code, const std::string &ref = "R",
                                     const std::string &prefix = "q") {
    auto [c0, c1] = full_codewords(code);
    ComplexVector psi(2 * c0.size());
    psi << c0, c1;
    psi /= std::sqrt(2.0);
    std::vector<std::string> labels{ref};
    for (std::size_t q = 0; q < code_n(code); q++) labels.push_back(prefix + std::to_string(q));
    return StateVector(std::move(labels), psi);
}

}  // namespace anonqss

#endif
