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

#ifndef ANONQSS_CODES_CLEANING_HPP
#define ANONQSS_CODES_CLEANING_HPP

#include "anonqss/codes/certify.hpp"
#include "anonqss/codes/code_spec.hpp"

namespace anonqss {

namespace detail {
inline std::uint64_t restricted_bits(const PauliString &p, std::uint64_t keep, std::size_t n) {
    return (p.x & keep) | ((p.z & keep) << n);
}
}  // namespace detail

/// Representative of the logical class X̄^a Z̄^b (a, b bit masks over the k logical qubits).
inline PauliString logical_representative(const StabilizerCodeSpec &code, std::uint64_t a, std::uint64_t b) {
    PauliString p;
    p.n = code.n;
    for (std::size_t i = 0; i < code.k; i++) {
        if ((a >> i) & 1) p = p.times(code.logical_x[i]);
        if ((b >> i) & 1) p = p.times(code.logical_z[i]);
    }
    return p;
}

/// Number of logical Pauli classes (out of 4^k) having a representative
/// supported entirely on the erased qubits. Generator signs play no role.
inline std::size_t count_cleaned_logicals(const StabilizerCodeSpec &code, const ErasurePattern &e) {
    e.validate(code.n);
    if (code.n > 32) {
        throw std::invalid_argument("count_cleaned_logicals supports at most 32 qubits");
    }
    std::uint64_t all = code.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << code.n) - 1;
    std::uint64_t keep = all & ~e.mask();
    std::vector<std::uint64_t> cols;
    for (const auto &g : code.generators) {
        cols.push_back(detail::restricted_bits(g, keep, code.n));
    }
    std::size_t count = 0;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << code.k); a++) {
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << code.k); b++) {
            PauliString rep = logical_representative(code, a, b);
            if (solve_gf2(cols, detail::restricted_bits(rep, keep, code.n))) {
                count++;
            }
        }
    }
    return count;
}

}  // namespace anonqss

#endif
