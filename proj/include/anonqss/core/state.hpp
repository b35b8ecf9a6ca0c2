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

#ifndef ANONQSS_CORE_STATE_HPP
#define ANONQSS_CORE_STATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anonqss/core/linalg.hpp"

// Qubit ordering is big-endian everywhere: subsystem 0 is the most
// significant digit of a basis index.

namespace anonqss {

/// Density operator over an ordered list of subsystems.
class DensityOperator {
   public:
    DensityOperator() = default;

    DensityOperator(std::vector<std::size_t> dims, ComplexMatrix matrix)
        : dims_(std::move(dims)), matrix_(std::move(matrix)) {
        std::size_t d = product(dims_);
        if (static_cast<std::size_t>(matrix_.rows()) != d || matrix_.rows() != matrix_.cols()) {
            throw InvariantError("density operator size does not match subsystem dims");
        }
        if (!all_finite(matrix_)) {
            throw InvariantError("density operator has non-finite entries");
        }
    }

    /// Builds a qubit-register operator (all dims 2).
    static DensityOperator qubits(ComplexMatrix matrix) {
        std::size_t n = 0;
        while ((std::size_t{1} << n) < static_cast<std::size_t>(matrix.rows())) {
            n++;
        }
        return DensityOperator(std::vector<std::size_t>(n, 2), std::move(matrix));
    }

    static DensityOperator pure(std::vector<std::size_t> dims, const ComplexVector &psi) {
        return DensityOperator(std::move(dims), psi * psi.adjoint());
    }

    static DensityOperator maximally_mixed(std::vector<std::size_t> dims) {
        std::size_t d = product(dims);
        ComplexMatrix m = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
        return DensityOperator(std::move(dims), std::move(m));
    }

    const std::vector<std::size_t> &dims() const { return dims_; }
    const ComplexMatrix &matrix() const { return matrix_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

    cplx trace() const { return matrix_.trace(); }

    /// Throws InvariantError unless Hermitian, PSD and unit trace within `tol`.
    void validate(double tol = kStateTol) const {
        if (hermitian_deviation(matrix_) > tol) {
            throw InvariantError("density operator is not Hermitian");
        }
        if (std::abs(trace() - cplx(1, 0)) > tol) {
            throw InvariantError("density operator trace is " + std::to_string(trace().real()));
        }
        psd_eigenvalues(matrix_);
    }

    bool is_valid(double tol = kStateTol) const {
        try {
            validate(tol);
            return true;
        } catch (const InvariantError &) {
            return false;
        }
    }

   private:
    std::vector<std::size_t> dims_;
    ComplexMatrix matrix_;
};

/// Pure state over labeled qubit registers.
class StateVector {
   public:
    StateVector() : amps_(ComplexVector::Ones(1)) {}

    StateVector(std::vector<std::string> labels, ComplexVector amplitudes)
        : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
        if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << labels_.size())) {
            throw InvariantError("statevector length must be 2^(register count)");
        }
        if (std::abs(amps_.norm() - 1.0) > kStateTol) {
            throw InvariantError("statevector is not normalized");
        }
    }

    static StateVector basis(std::vector<std::string> labels, std::uint64_t index) {
        ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << labels.size());
        v[static_cast<Eigen::Index>(index)] = 1;
        return StateVector(std::move(labels), std::move(v));
    }

    const std::vector<std::string> &labels() const { return labels_; }
    const ComplexVector &amplitudes() const { return amps_; }
    std::size_t num_qubits() const { return labels_.size(); }

    std::size_t position(const std::string &label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw std::invalid_argument("unknown register '" + label + "'");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    bool has(const std::string &label) const {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    /// Appends `other`'s registers after this state's registers.
    StateVector tensor(const StateVector &other) const {
        std::vector<std::string> labels = labels_;
        for (const auto &l : other.labels_) {
            if (has(l)) {
                throw std::invalid_argument("duplicate register '" + l + "'");
            }
            labels.push_back(l);
        }
        return StateVector(std::move(labels), kron(amps_, other.amps_));
    }

    void apply(const std::string &label, const ComplexMatrix &gate) {
        std::size_t stride = bit_of(position(label));
        for (std::size_t base = 0; base < static_cast<std::size_t>(amps_.size()); base++) {
            if (base & stride) {
                continue;
            }
            cplx a0 = amps_[base];
            cplx a1 = amps_[base | stride];
            amps_[base] = gate(0, 0) * a0 + gate(0, 1) * a1;
            amps_[base | stride] = gate(1, 0) * a0 + gate(1, 1) * a1;
        }
    }

    void apply_cnot(const std::string &control, const std::string &target) {
        std::size_t c = bit_of(position(control));
        std::size_t t = bit_of(position(target));
        for (std::size_t i = 0; i < static_cast<std::size_t>(amps_.size()); i++) {
            if ((i & c) && !(i & t)) {
                std::swap(amps_[i], amps_[i | t]);
            }
        }
    }

    /// Probability of reading `outcome` on `label` in the computational basis.
    double probability(const std::string &label, int outcome) const {
        std::size_t b = bit_of(position(label));
        double p = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(amps_.size()); i++) {
            if (((i & b) != 0) == (outcome != 0)) {
                p += std::norm(amps_[i]);
            }
        }
        return p;
    }

    /// Projects `label` onto |outcome>, renormalizes and removes the register.
    /// Returns the outcome probability.
    double measure_and_discard(const std::string &label, int outcome) {
        std::size_t pos = position(label);
        std::size_t b = bit_of(pos);
        double p = probability(label, outcome);
        if (p <= 0) {
            throw std::invalid_argument("measurement outcome has zero probability");
        }
        ComplexVector out(amps_.size() / 2);
        std::size_t k = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(amps_.size()); i++) {
            if (((i & b) != 0) == (outcome != 0)) {
                out[static_cast<Eigen::Index>(k++)] = amps_[i] / std::sqrt(p);
            }
        }
        amps_ = std::move(out);
        labels_.erase(labels_.begin() + static_cast<std::ptrdiff_t>(pos));
        return p;
    }

    void relabel(const std::string &from, const std::string &to) {
        if (from != to && has(to)) {
            throw std::invalid_argument("duplicate register '" + to + "'");
        }
        labels_[position(from)] = to;
    }

    /// Moves registers into the given order (a permutation of labels()).
    StateVector reordered(const std::vector<std::string> &order) const {
        if (order.size() != labels_.size()) {
            throw std::invalid_argument("reorder must list every register");
        }
        std::vector<std::size_t> src_bits;
        for (const auto &l : order) {
            src_bits.push_back(bit_of(position(l)));
        }
        std::size_t n = order.size();
        ComplexVector out(amps_.size());
        for (std::size_t j = 0; j < static_cast<std::size_t>(amps_.size()); j++) {
            std::size_t i = 0;
            for (std::size_t p = 0; p < n; p++) {
                if (j & (std::size_t{1} << (n - 1 - p))) {
                    i |= src_bits[p];
                }
            }
            out[static_cast<Eigen::Index>(j)] = amps_[static_cast<Eigen::Index>(i)];
        }
        return StateVector(order, std::move(out));
    }

    /// Amplitudes reshaped to a (2^|keep|) x (rest) matrix, kept registers in the given order.
    ComplexMatrix amplitude_matrix(const std::vector<std::string> &keep) const {
        std::vector<std::string> order = keep;
        for (const auto &l : labels_) {
            if (std::find(keep.begin(), keep.end(), l) == keep.end()) {
                order.push_back(l);
            }
        }
        StateVector r = reordered(order);
        Eigen::Index dk = Eigen::Index{1} << keep.size();
        Eigen::Index dr = r.amps_.size() / dk;
        // Row-major reshape: amplitude index = kept * dr + rest.
        Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
            r.amps_.data(), dk, dr);
        return a;
    }

    /// Reduced density operator of `keep` (in that order).
    DensityOperator reduced(const std::vector<std::string> &keep) const {
        ComplexMatrix a = amplitude_matrix(keep);
        ComplexMatrix rho = a * a.adjoint();
        return DensityOperator(std::vector<std::size_t>(keep.size(), 2), std::move(rho));
    }

    /// Overlap |<this|other>|^2 after aligning register order.
    double fidelity_with(const StateVector &other) const {
        StateVector o = other.reordered(labels_);
        return std::norm(amps_.dot(o.amps_));
    }

   private:
    std::size_t bit_of(std::size_t pos) const { return std::size_t{1} << (labels_.size() - 1 - pos); }

    std::vector<std::string> labels_;
    ComplexVector amps_;
};

/// Kronecker product of density operators; dims concatenate (a then b).
inline DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityOperator(std::move(dims), kron(a.matrix(), b.matrix()));
}

inline StateVector tensor(const StateVector &a, const StateVector &b) { return a.tensor(b); }

/// Traces out every subsystem not listed in `keep`. Result subsystems follow
/// the ascending order of `keep`. An empty `keep` yields the 1x1 operator [Tr rho].
inline DensityOperator partial_trace(const DensityOperator &rho, std::vector<std::size_t> keep) {
    const auto &dims = rho.dims();
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (std::size_t k : keep) {
        if (k >= dims.size()) {
            throw std::invalid_argument("partial_trace: subsystem index out of range");
        }
    }
    std::vector<std::size_t> traced;
    for (std::size_t i = 0; i < dims.size(); i++) {
        if (!std::binary_search(keep.begin(), keep.end(), i)) {
            traced.push_back(i);
        }
    }
    std::vector<std::size_t> kdims, tdims;
    for (std::size_t k : keep) kdims.push_back(dims[k]);
    for (std::size_t t : traced) tdims.push_back(dims[t]);
    std::size_t dk = product(kdims), dt = product(tdims);

    // strides of each subsystem in the full index
    std::vector<std::size_t> stride(dims.size());
    std::size_t s = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
        stride[i] = s;
        s *= dims[i];
    }
    auto offsets = [&](const std::vector<std::size_t> &subs, const std::vector<std::size_t> &sd) {
        std::vector<std::size_t> off(product(sd));
        for (std::size_t idx = 0; idx < off.size(); idx++) {
            std::size_t rem = idx, o = 0;
            for (std::size_t j = subs.size(); j-- > 0;) {
                o += (rem % sd[j]) * stride[subs[j]];
                rem /= sd[j];
            }
            off[idx] = o;
        }
        return off;
    };
    auto koff = offsets(keep, kdims);
    auto toff = offsets(traced, tdims);

    const ComplexMatrix &m = rho.matrix();
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (std::size_t i = 0; i < dk; i++) {
        for (std::size_t j = 0; j < dk; j++) {
            cplx acc = 0;
            for (std::size_t t = 0; t < dt; t++) {
                acc += m(koff[i] + toff[t], koff[j] + toff[t]);
            }
            out(i, j) = acc;
        }
    }
    if (kdims.empty()) {
        return DensityOperator({1}, std::move(out));
    }
    return DensityOperator(std::move(kdims), std::move(out));
}

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityOperator &rho) {
    RealVector ev = psd_eigenvalues(rho.matrix());
    double s = 0;
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        if (ev[i] > kEntropyCutoff) {
            s -= ev[i] * std::log2(ev[i]);
        }
    }
    return s;
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
inline double fidelity(const DensityOperator &rho, const DensityOperator &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    // Rounding noise at the 1e-16 level would otherwise enter through sqrt as 1e-8.
    constexpr double kFloor = 1e-14;
    ComplexMatrix sr = hermitian_function(rho.matrix(), [](double v) { return v > kFloor ? std::sqrt(v) : 0.0; });
    ComplexMatrix inner = sr * sigma.matrix() * sr;
    HermitianEigen eig(inner);
    double t = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); i++) {
        if (eig.values[i] > kFloor) t += std::sqrt(eig.values[i]);
    }
    return std::clamp(t * t, 0.0, 1.0);
}

/// <psi|sigma|psi>, the fidelity when one argument is pure.
inline double fidelity_pure(const ComplexVector &psi, const DensityOperator &sigma) {
    return std::max(0.0, (psi.adjoint() * sigma.matrix() * psi)(0, 0).real());
}

/// (|00> + |11>)/sqrt(2).
inline ComplexVector bell_phi_plus() {
    ComplexVector v = ComplexVector::Zero(4);
    v[0] = v[3] = 1.0 / std::sqrt(2.0);
    return v;
}

}  // namespace anonqss

#endif
