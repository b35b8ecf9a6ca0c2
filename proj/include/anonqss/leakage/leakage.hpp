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

#ifndef ANONQSS_LEAKAGE_LEAKAGE_HPP
#define ANONQSS_LEAKAGE_LEAKAGE_HPP

#include <cmath>
#include <optional>
#include <string>

#include "anonqss/codes/cleaning.hpp"
#include "anonqss/leakage/joint_state.hpp"
#include "anonqss/leakage/sdp.hpp"

namespace anonqss {

struct LeakageResult {
    std::size_t n_p = 0;
    double q_corr = 0;
    double f_max = 0;
    double h_min = 0;
    double gap = 0;
    std::string method;

    static LeakageResult from_q(std::size_t n_p, double q, std::size_t ref_dim, double gap, std::string method) {
        LeakageResult r;
        r.n_p = n_p;
        r.q_corr = q;
        r.f_max = q / static_cast<double>(ref_dim);
        r.h_min = -std::log2(q);
        r.gap = gap;
        r.method = std::move(method);
        return r;
    }
};

/// Recovery map E -> R' in Choi form, J on (E_in, R_out) with Λ(ω) = Tr_in[(ω^T ⊗ I) J].
class RecoveryChannel {
   public:
    RecoveryChannel() = default;
    RecoveryChannel(ComplexMatrix choi, std::size_t in_dim, std::size_t out_dim)
        : choi_(std::move(choi)), in_(in_dim), out_(out_dim) {
        if (static_cast<std::size_t>(choi_.rows()) != in_ * out_) {
            throw InvariantError("Choi operator has wrong size");
        }
    }

    const ComplexMatrix &choi() const { return choi_; }
    std::size_t in_dim() const { return in_; }
    std::size_t out_dim() const { return out_; }

    /// Tr_out J (identity for a trace-preserving map).
    ComplexMatrix input_marginal() const {
        auto di = static_cast<Eigen::Index>(in_), d_o = static_cast<Eigen::Index>(out_);
        ComplexMatrix t = ComplexMatrix::Zero(di, di);
        for (Eigen::Index i = 0; i < di; i++)
            for (Eigen::Index j = 0; j < di; j++) t(i, j) = choi_.block(i * d_o, j * d_o, d_o, d_o).trace();
        return t;
    }

    void validate() const {
        HermitianEigen eig(choi_);
        if (eig.values.minCoeff() < -1e-9) {
            throw InvariantError("Choi operator is not PSD");
        }
        auto di = static_cast<Eigen::Index>(in_);
        if ((input_marginal() - ComplexMatrix::Identity(di, di)).cwiseAbs().maxCoeff() > 1e-8) {
            throw InvariantError("recovery channel is not trace preserving");
        }
    }

    ComplexMatrix apply(const ComplexMatrix &omega) const {
        auto di = static_cast<Eigen::Index>(in_), d_o = static_cast<Eigen::Index>(out_);
        ComplexMatrix out = ComplexMatrix::Zero(d_o, d_o);
        for (Eigen::Index i = 0; i < di; i++)
            for (Eigen::Index j = 0; j < di; j++) out += omega(i, j) * choi_.block(i * d_o, j * d_o, d_o, d_o);
        return out;
    }

    /// (I_R ⊗ Λ) on an operator over (R, E_in) with R of dimension `ref_dim`.
    ComplexMatrix apply_with_reference(const ComplexMatrix &rho, std::size_t ref_dim) const {
        auto k = static_cast<Eigen::Index>(ref_dim), di = static_cast<Eigen::Index>(in_),
             d_o = static_cast<Eigen::Index>(out_);
        ComplexMatrix out(k * d_o, k * d_o);
        for (Eigen::Index r = 0; r < k; r++)
            for (Eigen::Index s = 0; s < k; s++) out.block(r * d_o, s * d_o, d_o, d_o) = apply(rho.block(r * di, s * di, di, di));
        return out;
    }

   private:
    ComplexMatrix choi_;
    std::size_t in_ = 0, out_ = 0;
};

/// J = SWAP · X^T for the primal point X on (R, E).
inline RecoveryChannel channel_from_primal(const ComplexMatrix &x, std::size_t ref_dim) {
    auto k = static_cast<Eigen::Index>(ref_dim);
    Eigen::Index m = x.rows() / k;
    ComplexMatrix xt = x.transpose();
    ComplexMatrix j(m * k, m * k);
    for (Eigen::Index r = 0; r < k; r++)
        for (Eigen::Index e = 0; e < m; e++)
            for (Eigen::Index s = 0; s < k; s++)
                for (Eigen::Index f = 0; f < m; f++) j(e * k + r, f * k + s) = xt(r * m + e, s * m + f);
    return RecoveryChannel(0.5 * (j + j.adjoint()), static_cast<std::size_t>(m), ref_dim);
}

struct SdpLeakage {
    LeakageResult result;
    std::optional<RecoveryChannel> channel;  // only for single-block states
};

/// q_corr = min Tr σ s.t. I ⊗ σ ⪰ ρ_RE; sectors of E are solved independently
/// and their optima added.
inline SdpLeakage q_corr_sdp_with_channel(const JointState &js, const SdpOptions &opt = {}) {
    double q = 0, gap = 0;
    SdpLeakage out;
    for (const auto &b : js.blocks) {
        SdpSolution s = solve_operator_dominance(b.rho, js.ref_dim, opt);
        q += s.dual;
        gap += s.gap;
        if (js.blocks.size() == 1) {
            out.channel = channel_from_primal(s.X, js.ref_dim);
        }
    }
    std::string method = js.exp_basis == "dicke-reduced" ? "sdp-dicke" : "sdp-full";
    out.result = LeakageResult::from_q(js.n_p, q, js.ref_dim, gap, method);
    return out;
}

inline LeakageResult q_corr_sdp(const JointState &js, const SdpOptions &opt = {}) {
    return q_corr_sdp_with_channel(js, opt).result;
}

/// The primal-optimal recovery map of a single-sector joint state.
inline RecoveryChannel extract_recovery(const JointState &js, const SdpOptions &opt = {}) {
    if (js.blocks.size() != 1) {
        throw std::invalid_argument("extract_recovery needs a single-sector joint state");
    }
    return *q_corr_sdp_with_channel(js, opt).channel;
}

/// Entanglement fidelity achieved by `ch` on `js`: <Φ+|(I ⊗ Λ)(ρ_RE)|Φ+>.
inline double recovery_fidelity(const JointState &js, const RecoveryChannel &ch) {
    ComplexMatrix out = ch.apply_with_reference(js.rho().matrix(), js.ref_dim);
    auto k = static_cast<Eigen::Index>(js.ref_dim);
    cplx f = 0;
    for (Eigen::Index r = 0; r < k; r++)
        for (Eigen::Index s = 0; s < k; s++) f += out(r * k + r, s * k + s);
    return f.real() / static_cast<double>(k);
}

/// Closed form from the cleaning lemma: F = 1/|G|, H_min = log2|G| - k.
inline LeakageResult h_min_stabilizer(const StabilizerCodeSpec &code, const ErasurePattern &e) {
    std::size_t g = count_cleaned_logicals(code, e);
    double kd = std::pow(2.0, static_cast<double>(code.k));
    LeakageResult r;
    r.n_p = code.n - e.erased.size();
    r.f_max = 1.0 / static_cast<double>(g);
    r.q_corr = kd * r.f_max;
    r.h_min = std::log2(static_cast<double>(g)) - static_cast<double>(code.k);
    r.gap = 0;
    r.method = "stabilizer-closed-form";
    return r;
}

namespace detail {
inline double shannon_bits(const RealVector &ev) {
    double s = 0;
    for (Eigen::Index i = 0; i < ev.size(); i++)
        if (ev[i] > kEntropyCutoff) s -= ev[i] * std::log2(ev[i]);
    return s;
}
inline double entropy_of(const ComplexMatrix &m) { return shannon_bits(psd_eigenvalues(m)); }

struct JointEntropies {
    double s_re = 0, s_e = 0, s_r = 0;
};

inline JointEntropies entropies(const JointState &js) {
    JointEntropies h;
    auto k = static_cast<Eigen::Index>(js.ref_dim);
    for (const auto &b : js.blocks) {
        h.s_re += entropy_of(b.rho);
        h.s_e += entropy_of(sdp_detail::trace_ref(b.rho, k, static_cast<Eigen::Index>(b.e_dim)));
    }
    h.s_r = entropy_of(js.ref_marginal());
    return h;
}
}  // namespace detail

/// I(E:R) = S(E) + S(R) - S(RE).
inline double quantum_mutual_information(const JointState &js) {
    auto h = detail::entropies(js);
    return h.s_e + h.s_r - h.s_re;
}

/// I_post - I_pre; zero exactly when the erasure is perfectly correctable.
inline double mutual_information(const JointState &js_pre, const JointState &js_post) {
    return quantum_mutual_information(js_post) - quantum_mutual_information(js_pre);
}

/// S(E) - S(RE).
inline double coherent_information(const JointState &js) {
    auto h = detail::entropies(js);
    return h.s_e - h.s_re;
}

/// Completely depolarizes one qubit subsystem: (1/4) Σ_K K ρ K†.
inline DensityOperator depolarize(const DensityOperator &rho, std::size_t qubit) {
    const auto &dims = rho.dims();
    if (qubit >= dims.size() || dims[qubit] != 2) {
        throw std::invalid_argument("depolarize: subsystem is not a qubit");
    }
    std::size_t left = 1, right = 1;
    for (std::size_t i = 0; i < qubit; i++) left *= dims[i];
    for (std::size_t i = qubit + 1; i < dims.size(); i++) right *= dims[i];
    ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const ComplexMatrix &p : {pauli_matrices::I(), pauli_matrices::X(), pauli_matrices::Y(), pauli_matrices::Z()}) {
        ComplexMatrix op = kron(kron(ComplexMatrix::Identity(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(left)), p),
                                ComplexMatrix::Identity(static_cast<Eigen::Index>(right), static_cast<Eigen::Index>(right)));
        out += 0.25 * op * rho.matrix() * op.adjoint();
    }
    return DensityOperator(dims, std::move(out));
}

}  // namespace anonqss

#endif
