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

#ifndef ANONQSS_PROTOCOLS_GHZ_HPP
#define ANONQSS_PROTOCOLS_GHZ_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "anonqss/core/state.hpp"

namespace anonqss {

/// alpha|0...0> + beta|1...1> over the qubits of `live` owners. Every
/// operation the anonymous sub-protocols perform keeps the state in this
/// two-dimensional family, so two amplitudes suffice.
class GhzResource {
   public:
    explicit GhzResource(std::size_t n) : n_(n), alpha_(1 / std::sqrt(2.0)), beta_(1 / std::sqrt(2.0)) {
        for (std::size_t i = 0; i < n; i++) live_.push_back(static_cast<int>(i));
    }

    std::size_t n() const { return n_; }
    cplx alpha() const { return alpha_; }
    cplx beta() const { return beta_; }
    const std::vector<int> &live() const { return live_; }
    bool is_live(int owner) const { return std::find(live_.begin(), live_.end(), owner) != live_.end(); }

    void apply_z(int owner) {
        require_live(owner);
        beta_ = -beta_;
    }

    /// The outcome of an X-basis measurement of the last live qubit when it is
    /// deterministic, otherwise nullopt.
    std::optional<int> forced_outcome(int owner) const {
        require_live(owner);
        if (live_.size() != 1) {
            return std::nullopt;
        }
        if (std::abs(alpha_ - beta_) < 1e-12) return 0;
        if (std::abs(alpha_ + beta_) < 1e-12) return 1;
        return std::nullopt;
    }

    /// Hadamard then computational measurement of `owner`'s qubit. `bit` is
    /// the outcome unless it is forced.
    int measure_h(int owner, int bit) {
        require_live(owner);
        int out = forced_outcome(owner).value_or(bit);
        if (live_.size() == 1 && !forced_outcome(owner)) {
            throw InvariantError("last GHZ qubit is not in an X eigenstate");
        }
        if (out) beta_ = -beta_;
        live_.erase(std::find(live_.begin(), live_.end(), owner));
        if (live_.empty()) {
            alpha_ = 1;
            beta_ = 0;
        }
        check();
        return out;
    }

    /// The remaining two qubits as a statevector on (label_a, label_b).
    StateVector pair(int a, int b, const std::string &label_a, const std::string &label_b) const {
        if (live_.size() != 2 || !is_live(a) || !is_live(b) || a == b) {
            throw std::logic_error("GHZ pair needs exactly the two live owners");
        }
        ComplexVector v = ComplexVector::Zero(4);
        v[0] = alpha_;
        v[3] = beta_;
        return StateVector({label_a, label_b}, v);
    }

   private:
    void require_live(int owner) const {
        if (!is_live(owner)) {
            throw std::invalid_argument("GHZ qubit of party " + std::to_string(owner) + " already measured");
        }
    }

    void check() const {
        if (std::abs(std::norm(alpha_) + std::norm(beta_) - 1.0) > 1e-12) {
            throw InvariantError("GHZ amplitudes are not normalized");
        }
    }

    std::size_t n_;
    cplx alpha_, beta_;
    std::vector<int> live_;
};

/// The same interface over an explicit 2^n statevector; used as an oracle.
class GhzStatevector {
   public:
    explicit GhzStatevector(std::size_t n) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; i++) labels.push_back(label(static_cast<int>(i)));
        ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n);
        v[0] = 1 / std::sqrt(2.0);
        v[v.size() - 1] = 1 / std::sqrt(2.0);
        psi_ = StateVector(labels, v);
    }

    const StateVector &state() const { return psi_; }
    bool is_live(int owner) const { return psi_.has(label(owner)); }

    void apply_z(int owner) { psi_.apply(label(owner), pauli_matrices::Z()); }

    std::optional<int> forced_outcome(int owner) const {
        StateVector t = psi_;
        t.apply(label(owner), pauli_matrices::H());
        double p1 = t.probability(label(owner), 1);
        if (p1 < 1e-12) return 0;
        if (p1 > 1 - 1e-12) return 1;
        return std::nullopt;
    }

    int measure_h(int owner, int bit) {
        int out = forced_outcome(owner).value_or(bit);
        psi_.apply(label(owner), pauli_matrices::H());
        psi_.measure_and_discard(label(owner), out);
        return out;
    }

    StateVector pair(int a, int b, const std::string &label_a, const std::string &label_b) const {
        if (psi_.num_qubits() != 2) {
            throw std::logic_error("GHZ pair needs exactly the two live owners");
        }
        StateVector p = psi_.reordered({label(a), label(b)});
        p.relabel(label(a), label_a);
        p.relabel(label(b), label_b);
        return p;
    }

   private:
    static std::string label(int owner) { return "g" + std::to_string(owner); }

    StateVector psi_;
};

}  // namespace anonqss

#endif
