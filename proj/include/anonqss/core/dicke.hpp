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

#ifndef ANONQSS_CORE_DICKE_HPP
#define ANONQSS_CORE_DICKE_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "anonqss/core/linalg.hpp"

namespace anonqss {

inline double binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    double r = 1;
    for (std::size_t i = 1; i <= k; i++) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

/// |D^n_w> as a 2^n amplitude vector.
inline ComplexVector dicke_state(std::size_t n, std::size_t w) {
    if (w > n || n > 20) {
        throw std::invalid_argument("dicke_state: weight out of range");
    }
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n);
    double a = 1.0 / std::sqrt(binomial(n, w));
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); i++) {
        if (static_cast<std::size_t>(std::popcount(i)) == w) {
            v[static_cast<Eigen::Index>(i)] = a;
        }
    }
    return v;
}

/// 2^n x (n+1) isometry whose column w is |D^n_w>.
inline ComplexMatrix dicke_isometry(std::size_t n) {
    ComplexMatrix m(Eigen::Index{1} << n, static_cast<Eigen::Index>(n + 1));
    for (std::size_t w = 0; w <= n; w++) {
        m.col(static_cast<Eigen::Index>(w)) = dicke_state(n, w);
    }
    return m;
}

/// A state in the symmetric subspace of n qubits, Σ_w c_w |D^n_w>.
class DickeVector {
   public:
    DickeVector() = default;

    DickeVector(std::size_t n, ComplexVector coeffs) : n_(n), coeffs_(std::move(coeffs)) {
        if (static_cast<std::size_t>(coeffs_.size()) != n_ + 1) {
            throw InvariantError("Dicke vector needs n+1 coefficients");
        }
        if (std::abs(coeffs_.norm() - 1.0) > kStateTol) {
            throw InvariantError("Dicke vector is not normalized (norm " + std::to_string(coeffs_.norm()) +
                                 ")");
        }
    }

    std::size_t n() const { return n_; }
    const ComplexVector &coeffs() const { return coeffs_; }
    cplx operator[](std::size_t w) const { return coeffs_[static_cast<Eigen::Index>(w)]; }

    cplx inner(const DickeVector &other) const { return coeffs_.dot(other.coeffs_); }

    ComplexVector to_full() const { return dicke_isometry(n_) * coeffs_; }

    /// Image under X on every qubit (weight w -> n-w).
    DickeVector flipped() const { return DickeVector(n_, coeffs_.reverse()); }

   private:
    std::size_t n_ = 0;
    ComplexVector coeffs_;
};

/// Schmidt-style coefficient √(C(m,l) C(n-m,w-l) / C(n,w)) linking |D^n_w> to
/// |D^m_l>⊗|D^{n-m}_{w-l}> (first m qubits, then the rest).
inline double split_coefficient(std::size_t n, std::size_t m, std::size_t w, std::size_t l) {
    if (l > m || l > w || w - l > n - m) {
        return 0;
    }
    return std::sqrt(binomial(m, l) * binomial(n - m, w - l) / binomial(n, w));
}

/// Re-expresses v over the bipartition (first m qubits | last n-m qubits).
/// Entry (l, r) is the amplitude on |D^m_l>⊗|D^{n-m}_r>.
inline ComplexMatrix dicke_split(const DickeVector &v, std::size_t m) {
    std::size_t n = v.n();
    if (m > n) {
        throw std::invalid_argument("dicke_split: m exceeds n");
    }
    ComplexMatrix t = ComplexMatrix::Zero(static_cast<Eigen::Index>(m + 1), static_cast<Eigen::Index>(n - m + 1));
    for (std::size_t w = 0; w <= n; w++) {
        if (v[w] == cplx(0)) {
            continue;
        }
        for (std::size_t l = 0; l <= std::min(m, w); l++) {
            if (w - l > n - m) {
                continue;
            }
            t(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(w - l)) = v[w] * split_coefficient(n, m, w, l);
        }
    }
    return t;
}

/// Expands a split table back to 2^n amplitudes (first m qubits most significant).
inline ComplexVector expand_split(const ComplexMatrix &table) {
    std::size_t m = static_cast<std::size_t>(table.rows()) - 1;
    std::size_t r = static_cast<std::size_t>(table.cols()) - 1;
    ComplexMatrix left = dicke_isometry(m);
    ComplexMatrix right = dicke_isometry(r);
    ComplexMatrix amps = left * table * right.transpose();  // (2^m) x (2^r)
    ComplexVector out(amps.size());
    for (Eigen::Index i = 0; i < amps.rows(); i++) {
        for (Eigen::Index j = 0; j < amps.cols(); j++) {
            out[i * amps.cols() + j] = amps(i, j);
        }
    }
    return out;
}

}  // namespace anonqss

#endif
