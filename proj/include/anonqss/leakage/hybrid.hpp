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

#ifndef ANONQSS_LEAKAGE_HYBRID_HPP
#define ANONQSS_LEAKAGE_HYBRID_HPP

#include <random>
#include <vector>

#include "anonqss/leakage/joint_state.hpp"

namespace anonqss {

/// Reduced state of `logical` (a logical qubit vector) on the first n_p qubits
/// of `code`. PI codes stay in the weight basis, other codes use the full basis.
inline ComplexMatrix reduced_logical_state(const CodeSpec &code, const ComplexVector &logical, std::size_t n_p) {
    std::size_t n = code_n(code);
    if (const auto *pi = std::get_if<PICodeSpec>(&code)) {
        ComplexVector c = logical[0] * pi->logical0.coeffs() + logical[1] * pi->logical1.coeffs();
        auto d = static_cast<Eigen::Index>(n_p + 1);
        ComplexMatrix rho = ComplexMatrix::Zero(d, d);
        for (std::size_t e = 0; e <= n - n_p; e++) {
            ComplexVector v = ComplexVector::Zero(d);
            for (std::size_t l = 0; l <= n_p; l++) {
                v[static_cast<Eigen::Index>(l)] = c[static_cast<Eigen::Index>(l + e)] * split_coefficient(n, n_p, l + e, l);
            }
            rho += v * v.adjoint();
        }
        return rho;
    }
    StateVector psi = encode_state(code, logical);
    std::vector<std::string> keep;
    for (std::size_t q = 0; q < n_p; q++) keep.push_back(share_label(q));
    if (keep.empty()) {
        return ComplexMatrix::Ones(1, 1);
    }
    return psi.reduced(keep).matrix();
}

namespace detail {

/// Splits C^d into orthogonal subspaces invariant under every operator in
/// `ops` (Hermitian), restricted to the joint support. Returns isometries.
inline std::vector<ComplexMatrix> invariant_sectors(const std::vector<ComplexMatrix> &ops) {
    ComplexMatrix sum = ComplexMatrix::Zero(ops[0].rows(), ops[0].cols());
    for (const auto &o : ops) sum += o;
    ComplexMatrix support = support_basis(sum, 1e-12);
    Eigen::Index d = support.cols();
    if (d <= 1) {
        return d == 1 ? std::vector<ComplexMatrix>{support} : std::vector<ComplexMatrix>{};
    }
    std::vector<ComplexMatrix> local;
    for (const auto &o : ops) local.push_back(support.adjoint() * o * support);

    // Commutant {H : [A, H] = 0 for all A} as the null space of Σ L_A† L_A.
    ComplexMatrix gram = ComplexMatrix::Zero(d * d, d * d);
    ComplexMatrix eye = ComplexMatrix::Identity(d, d);
    for (const auto &a : local) {
        ComplexMatrix l = kron(eye, a) - kron(ComplexMatrix(a.transpose()), eye);
        gram += l.adjoint() * l;
    }
    HermitianEigen ge(gram);
    double scale = std::max(1.0, ge.values.cwiseAbs().maxCoeff());
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> gauss;
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < ge.values.size(); i++) {
        if (ge.values[i] > 1e-10 * scale) continue;
        Eigen::Map<const ComplexMatrix> basis_elem(ge.vectors.col(i).data(), d, d);
        h += gauss(rng) * basis_elem;
    }
    HermitianEigen he(0.5 * (h + h.adjoint()));

    std::vector<ComplexMatrix> sectors;
    Eigen::Index start = 0;
    double spread = std::max(1e-300, he.values.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 1; i <= d; i++) {
        if (i == d || he.values[i] - he.values[i - 1] > 1e-7 * spread) {
            sectors.push_back(support * he.vectors.middleCols(start, i - start));
            start = i;
        }
    }
    // Verify invariance; fall back to the whole support if it fails numerically.
    for (const auto &a : ops) {
        for (std::size_t s = 0; s < sectors.size(); s++) {
            for (std::size_t t = 0; t < sectors.size(); t++) {
                if (s != t && (sectors[s].adjoint() * a * sectors[t]).cwiseAbs().maxCoeff() > 1e-9) {
                    return {support};
                }
            }
        }
    }
    return sectors;
}

}  // namespace detail

/// (X^a Z^b)^T, the reference-side image of the logical twirl X^a Z^b.
inline ComplexMatrix reference_twirl(int a, int b) {
    ComplexMatrix p = ComplexMatrix::Identity(2, 2);
    if (a) p = p * pauli_matrices::X();
    if (b) p = p * pauli_matrices::Z();
    return p.transpose();
}

/// State held by R and n_p shareholders when the quantum secret is twirled by
/// X^a Z^b and a, b are themselves shared with `ccode_a`, `ccode_b`:
///   (1/4) Σ_ab τ_ab ⊗ ρ^a_A ⊗ ρ^b_B,  τ_ab = twirled ρ_RE of `qcode`.
/// E is split into sectors on which all four classical states act blockwise.
inline JointState build_hybrid_state(const CodeSpec &qcode, const CodeSpec &ccode_a, const CodeSpec &ccode_b,
                                     std::size_t n_p) {
    std::size_t n = code_n(qcode);
    if (code_n(ccode_a) != n || code_n(ccode_b) != n) {
        throw std::invalid_argument("hybrid scheme needs codes of equal length");
    }
    if (n_p > n) {
        throw std::invalid_argument("n_p exceeds n");
    }
    JointState base = build_joint_state(qcode, n_p);
    const ComplexMatrix &tau = base.blocks.at(0).rho;
    auto mq = static_cast<Eigen::Index>(base.blocks[0].e_dim);

    ComplexMatrix twirled[2][2];
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            ComplexMatrix u = kron(reference_twirl(a, b), ComplexMatrix::Identity(mq, mq));
            twirled[a][b] = u * tau * u.adjoint();
        }
    }
    std::vector<ComplexMatrix> alpha, beta;
    for (int bit = 0; bit < 2; bit++) {
        alpha.push_back(reduced_logical_state(ccode_a, logical_basis_state(code_classical_basis(ccode_a), bit), n_p));
        beta.push_back(reduced_logical_state(ccode_b, logical_basis_state(code_classical_basis(ccode_b), bit), n_p));
    }
    auto sa = detail::invariant_sectors(alpha);
    auto sb = detail::invariant_sectors(beta);

    JointState js;
    js.ref_dim = 2;
    js.exp_basis = base.exp_basis;
    js.code = code_name(qcode) + "-H";
    js.n_p = n_p;
    for (const auto &va : sa) {
        for (const auto &vb : sb) {
            ComplexMatrix block;
            for (int a = 0; a < 2; a++) {
                for (int b = 0; b < 2; b++) {
                    ComplexMatrix term = 0.25 * kron(kron(twirled[a][b], ComplexMatrix(va.adjoint() * alpha[a] * va)),
                                                     ComplexMatrix(vb.adjoint() * beta[b] * vb));
                    block = block.size() ? ComplexMatrix(block + term) : term;
                }
            }
            std::size_t e = static_cast<std::size_t>(mq * va.cols() * vb.cols());
            js.blocks.push_back({0.5 * (block + block.adjoint()), e});
        }
    }
    js.validate(1e-9);
    return js;
}

}  // namespace anonqss

#endif
