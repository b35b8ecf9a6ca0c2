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

#ifndef ANONQSS_LEAKAGE_JOINT_STATE_HPP
#define ANONQSS_LEAKAGE_JOINT_STATE_HPP

#include <string>
#include <vector>

#include "anonqss/codes/certify.hpp"
#include "anonqss/codes/encode.hpp"
#include "anonqss/core/dicke.hpp"
#include "anonqss/core/state.hpp"

namespace anonqss {

/// One direct-sum component of ρ_RE: a subnormalized operator on R ⊗ E_b,
/// indexed r * e_dim + e.
struct JointBlock {
    ComplexMatrix rho;
    std::size_t e_dim = 0;
};

/// Reference ⊗ experimental state after encoding and erasure. E may be split
/// into orthogonal sectors (E = ⊕_b E_b with ρ block diagonal on E), which is
/// how hybrid states stay small.
class JointState {
   public:
    std::size_t ref_dim = 2;
    std::string exp_basis = "full";  // "full" | "dicke-reduced"
    std::string code;
    std::size_t n_p = 0;
    std::vector<JointBlock> blocks;

    static JointState single(ComplexMatrix rho, std::size_t ref_dim, std::string exp_basis, std::string code,
                             std::size_t n_p) {
        JointState js;
        js.ref_dim = ref_dim;
        js.exp_basis = std::move(exp_basis);
        js.code = std::move(code);
        js.n_p = n_p;
        std::size_t e = static_cast<std::size_t>(rho.rows()) / ref_dim;
        js.blocks.push_back({std::move(rho), e});
        js.validate();
        return js;
    }

    std::size_t e_dim() const {
        std::size_t d = 0;
        for (const auto &b : blocks) d += b.e_dim;
        return d;
    }

    /// The whole operator with E sectors concatenated in order.
    DensityOperator rho() const {
        std::size_t m = e_dim();
        auto km = static_cast<Eigen::Index>(ref_dim * m);
        ComplexMatrix out = ComplexMatrix::Zero(km, km);
        std::size_t off = 0;
        for (const auto &b : blocks) {
            auto eb = static_cast<Eigen::Index>(b.e_dim);
            for (std::size_t r = 0; r < ref_dim; r++) {
                for (std::size_t s = 0; s < ref_dim; s++) {
                    out.block(static_cast<Eigen::Index>(r * m + off), static_cast<Eigen::Index>(s * m + off), eb, eb) =
                        b.rho.block(static_cast<Eigen::Index>(r) * eb, static_cast<Eigen::Index>(s) * eb, eb, eb);
                }
            }
            off += b.e_dim;
        }
        return DensityOperator({ref_dim, m}, std::move(out));
    }

    /// Tr_E ρ.
    ComplexMatrix ref_marginal() const {
        auto k = static_cast<Eigen::Index>(ref_dim);
        ComplexMatrix out = ComplexMatrix::Zero(k, k);
        for (const auto &b : blocks) {
            auto eb = static_cast<Eigen::Index>(b.e_dim);
            for (Eigen::Index r = 0; r < k; r++)
                for (Eigen::Index s = 0; s < k; s++) out(r, s) += b.rho.block(r * eb, s * eb, eb, eb).trace();
        }
        return out;
    }

    void validate(double tol = kStateTol) const {
        double tr = 0;
        for (const auto &b : blocks) {
            if (static_cast<std::size_t>(b.rho.rows()) != ref_dim * b.e_dim || b.rho.rows() != b.rho.cols()) {
                throw InvariantError("joint state block has wrong shape");
            }
            if (hermitian_deviation(b.rho) > tol) {
                throw InvariantError("joint state block is not Hermitian");
            }
            psd_eigenvalues(b.rho);
            tr += b.rho.trace().real();
        }
        if (std::abs(tr - 1.0) > tol) {
            throw InvariantError("joint state trace is " + std::to_string(tr));
        }
    }
};

/// ρ_RE of a PI code in the weight basis of the n_p surviving qubits
/// (the last n - n_p qubits are erased).
inline JointState build_joint_state_dicke(const PICodeSpec &code, std::size_t n_p) {
    if (n_p > code.n) {
        throw std::invalid_argument("n_p exceeds n");
    }
    std::size_t n = code.n;
    auto d = static_cast<Eigen::Index>(n_p + 1);
    ComplexMatrix rho = ComplexMatrix::Zero(2 * d, 2 * d);
    const DickeVector *logical[2] = {&code.logical0, &code.logical1};
    for (std::size_t e = 0; e <= n - n_p; e++) {
        ComplexVector v = ComplexVector::Zero(2 * d);
        for (Eigen::Index i = 0; i < 2; i++) {
            for (std::size_t l = 0; l <= n_p; l++) {
                cplx c = (*logical[i])[l + e];
                if (c != cplx(0)) {
                    v[i * d + static_cast<Eigen::Index>(l)] += c * split_coefficient(n, n_p, l + e, l) / std::sqrt(2.0);
                }
            }
        }
        rho += v * v.adjoint();
    }
    return JointState::single(std::move(rho), 2, "dicke-reduced", code.name, n_p);
}

/// ρ_RE in the full computational basis of the surviving qubits.
inline JointState build_joint_state_full(const CodeSpec &code, const ErasurePattern &erased) {
    std::size_t n = code_n(code);
    erased.validate(n);
    StateVector phi = reference_coupled(code);
    std::vector<std::string> keep{"R"};
    for (std::size_t q = 0; q < n; q++) {
        if (std::find(erased.erased.begin(), erased.erased.end(), q) == erased.erased.end()) {
            keep.push_back(share_label(q));
        }
    }
    DensityOperator red = phi.reduced(keep);
    return JointState::single(red.matrix(), 2, "full", code_name(code), keep.size() - 1);
}

/// PI codes go through the weight basis, stabilizer codes through the full
/// basis; in both cases the last n - n_p qubits are erased.
inline JointState build_joint_state(const CodeSpec &code, std::size_t n_p) {
    std::size_t n = code_n(code);
    if (n_p > n) {
        throw std::invalid_argument("n_p exceeds n");
    }
    if (const auto *pi = std::get_if<PICodeSpec>(&code)) {
        return build_joint_state_dicke(*pi, n_p);
    }
    return build_joint_state_full(code, ErasurePattern::last(n, n - n_p));
}

/// Wraps an operator on (R, E...) with R of dimension dims[0].
inline JointState joint_state_from_density(const DensityOperator &rho, std::string code, std::size_t n_p) {
    return JointState::single(rho.matrix(), rho.dims().at(0), "full", std::move(code), n_p);
}

}  // namespace anonqss

#endif
