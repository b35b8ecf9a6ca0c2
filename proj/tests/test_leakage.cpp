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

#include <gtest/gtest.h>

#include <random>

#include "anonqss/codes/registry.hpp"
#include "anonqss/leakage/hybrid.hpp"
#include "anonqss/leakage/leakage.hpp"

namespace anonqss {
namespace {

const Registry &registry() {
    static const Registry reg = load_registry(default_registry_path());
    return reg;
}

const PICodeSpec &pi(const std::string &name) { return std::get<PICodeSpec>(registry().at(name)); }

ComplexVector random_vector(std::mt19937_64 &rng, Eigen::Index d) {
    std::normal_distribution<double> g;
    ComplexVector v(d);
    for (Eigen::Index i = 0; i < d; i++) v[i] = cplx(g(rng), g(rng));
    return v.normalized();
}

// Pure ρ_RE: 2^{-H_min} = (Σ_i √λ_i)^2 over the Schmidt spectrum.
double pure_state_q(const ComplexVector &psi, Eigen::Index k) {
    Eigen::Index m = psi.size() / k;
    ComplexMatrix a(k, m);
    for (Eigen::Index r = 0; r < k; r++)
        for (Eigen::Index e = 0; e < m; e++) a(r, e) = psi[r * m + e];
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    double s = svd.singularValues().sum();
    return s * s;
}

// Classical R: 2^{-H_min} is the Helstrom guessing probability.
double helstrom_q(double p, const ComplexMatrix &s0, const ComplexMatrix &s1) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p * s0 - (1 - p) * s1);
    return 0.5 * (1 + es.eigenvalues().cwiseAbs().sum());
}

TEST(Sdp, PerfectCorrelation) {
    ComplexVector phi = bell_phi_plus();
    auto js = JointState::single(phi * phi.adjoint(), 2, "full", "bell", 1);
    auto r = q_corr_sdp(js);
    EXPECT_NEAR(r.q_corr, 2.0, 1e-7);
    EXPECT_NEAR(r.h_min, -1.0, 1e-7);
    EXPECT_NEAR(r.f_max, 1.0, 1e-7);
    EXPECT_LE(r.gap, 1e-7);
}

TEST(Sdp, MaximallyMixed) {
    auto js = JointState::single(ComplexMatrix::Identity(4, 4) / 4.0, 2, "full", "mixed", 1);
    auto r = q_corr_sdp(js);
    EXPECT_NEAR(r.q_corr, 0.5, 1e-7);
    EXPECT_NEAR(r.h_min, 1.0, 1e-7);
    EXPECT_NEAR(r.f_max, 0.25, 1e-7);
}

TEST(Sdp, RandomPureStatesMatchSchmidtFormula) {
    std::mt19937_64 rng(11);
    for (Eigen::Index m : {2, 3, 5, 8}) {
        ComplexVector psi = random_vector(rng, 2 * m);
        auto js = JointState::single(psi * psi.adjoint(), 2, "full", "rand", 0);
        auto r = q_corr_sdp(js);
        EXPECT_NEAR(r.q_corr, pure_state_q(psi, 2), 1e-6) << m;
        EXPECT_LE(r.gap, 1e-7);
    }
}

TEST(Sdp, ClassicalQuantumStatesMatchHelstrom) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 4; trial++) {
        Eigen::Index m = 3 + trial;
        ComplexMatrix s[2];
        for (auto &si : s) {
            ComplexMatrix g = ComplexMatrix::Zero(m, m);
            for (int j = 0; j < 2; j++) {
                ComplexVector v = random_vector(rng, m);
                g += v * v.adjoint();
            }
            si = g / g.trace().real();
        }
        double p = 0.3 + 0.1 * trial;
        ComplexMatrix rho = ComplexMatrix::Zero(2 * m, 2 * m);
        rho.topLeftCorner(m, m) = p * s[0];
        rho.bottomRightCorner(m, m) = (1 - p) * s[1];
        auto r = q_corr_sdp(JointState::single(rho, 2, "full", "cq", 0));
        EXPECT_NEAR(r.q_corr, helstrom_q(p, s[0], s[1]), 1e-6);
    }
}

TEST(JointStateBuild, NoErasureIsPureMaximallyEntangled) {
    auto js = build_joint_state(registry().at("AAB4"), 4);
    ComplexMatrix rho = js.rho().matrix();
    EXPECT_NEAR((rho * rho).trace().real(), 1.0, 1e-12);
    EXPECT_LT((js.ref_marginal() - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-12);
}

TEST(JointStateBuild, EverythingErasedLeavesReferenceMixed) {
    for (const auto &c : registry().codes()) {
        auto js = build_joint_state(c, 0);
        EXPECT_EQ(js.e_dim(), 1u);
        EXPECT_LT((js.rho().matrix() - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-12) << code_name(c);
    }
}

TEST(JointStateBuild, DickeEmbeddingMatchesFullPath) {
    const auto &c = pi("PR7");
    auto dk = build_joint_state_dicke(c, 4);
    EXPECT_LE(dk.rho().dim(), 10u);
    ComplexMatrix iso = kron(ComplexMatrix::Identity(2, 2), dicke_isometry(4));
    ComplexMatrix lifted = iso * dk.rho().matrix() * iso.adjoint();
    auto full = build_joint_state_full(registry().at("PR7"), ErasurePattern::last(7, 3));
    EXPECT_LT((lifted - full.rho().matrix()).norm(), 1e-12);
}

TEST(Leakage, R9FiveShares) {
    auto r = q_corr_sdp(build_joint_state(registry().at("R9"), 5));
    EXPECT_NEAR(r.h_min, -0.33, 0.01);
    EXPECT_NEAR(r.f_max, 0.63, 0.01);
    EXPECT_EQ(r.method, "sdp-dicke");
}

TEST(Leakage, Kt13Plateau) {
    for (std::size_t n_p : {5u, 6u}) {
        EXPECT_NEAR(q_corr_sdp(build_joint_state(registry().at("KT13"), n_p)).h_min, 0.04, 0.01) << n_p;
    }
}

TEST(Leakage, StabilizerClosedFormExamples) {
    const auto &c = std::get<StabilizerCodeSpec>(registry().at("LNCY4"));
    EXPECT_NEAR(h_min_stabilizer(c, ErasurePattern{{0, 1}}).h_min, 0.0, 1e-12);
    auto one = h_min_stabilizer(c, ErasurePattern{{0}});
    EXPECT_NEAR(one.h_min, -1.0, 1e-12);
    EXPECT_NEAR(one.f_max, 1.0, 1e-12);
    auto three = h_min_stabilizer(c, ErasurePattern{{0, 1, 2}});
    EXPECT_NEAR(three.h_min, 1.0, 1e-12);
    EXPECT_NEAR(three.f_max, 0.25, 1e-12);
}

TEST(Leakage, StabilizerClosedFormMatchesSdpOnEveryPattern) {
    const CodeSpec &code = registry().at("LNCY4");
    const auto &c = std::get<StabilizerCodeSpec>(code);
    for (std::uint64_t mask = 0; mask < 16; mask++) {
        ErasurePattern e;
        for (std::size_t q = 0; q < 4; q++)
            if (mask & (std::uint64_t{1} << q)) e.erased.push_back(q);
        auto sdp = q_corr_sdp(build_joint_state_full(code, e));
        EXPECT_NEAR(sdp.h_min, h_min_stabilizer(c, e).h_min, 1e-6) << mask;
    }
}

TEST(Leakage, DickeAgreesWithFullForSmallCodes) {
    for (const char *name : {"AAB4", "HN4", "PR7", "AAB7"}) {
        const CodeSpec &c = registry().at(name);
        std::size_t n = code_n(c);
        for (std::size_t n_p = 0; n_p <= n; n_p++) {
            double dk = q_corr_sdp(build_joint_state(c, n_p)).h_min;
            double full = q_corr_sdp(build_joint_state_full(c, ErasurePattern::last(n, n - n_p))).h_min;
            EXPECT_NEAR(dk, full, 1e-6) << name << " n_p=" << n_p;
        }
    }
}

TEST(Leakage, PatternIndependenceForPiCodes) {
    const CodeSpec &c = registry().at("PR7");
    double ref = q_corr_sdp(build_joint_state(c, 4)).h_min;
    for (const auto &e : {ErasurePattern{{0, 1, 2}}, ErasurePattern{{0, 3, 6}}, ErasurePattern{{1, 4, 5}}}) {
        EXPECT_NEAR(q_corr_sdp(build_joint_state_full(c, e)).h_min, ref, 1e-6);
    }
}

TEST(Leakage, RangeMonotonicityAndEndpoints) {
    for (const auto &c : registry().codes()) {
        std::size_t n = code_n(c), d = code_distance(c);
        double prev = 2;
        for (std::size_t n_p = 0; n_p <= n; n_p++) {
            auto r = q_corr_sdp(build_joint_state(c, n_p));
            EXPECT_GE(r.h_min, -1 - 1e-6);
            EXPECT_LE(r.h_min, 1 + 1e-6);
            EXPECT_LE(r.h_min, prev + 1e-6) << code_name(c) << " n_p=" << n_p;
            EXPECT_LE(r.gap, 1e-7);
            prev = r.h_min;
            if (n_p + d >= n + 1) EXPECT_NEAR(r.f_max, 1.0, 1e-6) << code_name(c) << " n_p=" << n_p;
            if (n_p + 1 <= d) EXPECT_NEAR(r.f_max, 0.25, 1e-6) << code_name(c) << " n_p=" << n_p;
        }
    }
}

TEST(Leakage, FourQubitTableRows) {
    const double expected[5] = {1.0, 1.0, 0.0, -1.0, -1.0};
    for (const char *name : {"AAB4", "HN4", "LNCY4"}) {
        for (std::size_t n_p = 0; n_p <= 4; n_p++) {
            EXPECT_NEAR(q_corr_sdp(build_joint_state(registry().at(name), n_p)).h_min, expected[n_p], 0.01)
                << name << " n_p=" << n_p;
        }
    }
}

TEST(Information, MutualInformationDifferences) {
    const CodeSpec &c = registry().at("AAB4");
    auto pre = build_joint_state(c, 4);
    EXPECT_NEAR(mutual_information(pre, pre), 0.0, 1e-10);
    EXPECT_NEAR(mutual_information(pre, build_joint_state(c, 3)), 0.0, 1e-9);
    auto lost = build_joint_state(c, 1);
    EXPECT_NEAR(quantum_mutual_information(lost), 0.0, 1e-9);
    EXPECT_NEAR(mutual_information(pre, lost), -2.0, 1e-9);
}

TEST(Information, CoherentInformation) {
    const CodeSpec &c = registry().at("AAB4");
    EXPECT_NEAR(coherent_information(build_joint_state(c, 4)), 1.0, 1e-9);
    EXPECT_NEAR(coherent_information(build_joint_state(c, 3)), 1.0, 1e-9);
    EXPECT_NEAR(coherent_information(build_joint_state(c, 1)), -1.0, 1e-9);
}

TEST(Depolarize, SingleQubitExamples) {
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    zero(0, 0) = 1;
    EXPECT_LT((depolarize(DensityOperator({2}, zero), 0).matrix() - ComplexMatrix::Identity(2, 2) / 2.0).norm(),
              1e-12);
    ComplexVector phi = bell_phi_plus();
    auto out = depolarize(DensityOperator::pure({2, 2}, phi), 0);
    EXPECT_LT((out.matrix() - ComplexMatrix::Identity(4, 4) / 4.0).norm(), 1e-12);
}

TEST(Depolarize, MatchesTraceOutErasure) {
    const CodeSpec &c = registry().at("AAB4");
    StateVector phi = reference_coupled(c);
    for (std::size_t n_p = 0; n_p <= 4; n_p++) {
        DensityOperator rho = DensityOperator::pure(std::vector<std::size_t>(5, 2), phi.amplitudes());
        for (std::size_t q = n_p; q < 4; q++) rho = depolarize(rho, q + 1);
        double in_place = q_corr_sdp(joint_state_from_density(rho, "AAB4", n_p)).h_min;
        double traced = q_corr_sdp(build_joint_state_full(c, ErasurePattern::last(4, 4 - n_p))).h_min;
        EXPECT_NEAR(in_place, traced, 1e-6) << n_p;
    }
}

TEST(Fidelity, PureShortcutMatchesUhlmann) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; trial++) {
        ComplexVector psi = random_vector(rng, 4);
        ComplexMatrix s = ComplexMatrix::Zero(4, 4);
        for (int j = 0; j < 3; j++) {
            ComplexVector v = random_vector(rng, 4);
            s += v * v.adjoint();
        }
        DensityOperator sigma({2, 2}, s / s.trace().real());
        EXPECT_NEAR(fidelity_pure(psi, sigma), fidelity(DensityOperator::pure({2, 2}, psi), sigma), 1e-9);
    }
}

TEST(Recovery, PerfectForCorrectableErasure) {
    auto js = build_joint_state(registry().at("AAB4"), 3);
    auto ch = extract_recovery(js);
    EXPECT_NO_THROW(ch.validate());
    EXPECT_NEAR(recovery_fidelity(js, ch), 1.0, 1e-6);
}

TEST(Recovery, NothingLeftGivesQuarter) {
    for (const char *name : {"AAB4", "PR7"}) {
        auto js = build_joint_state(registry().at(name), 0);
        EXPECT_NEAR(recovery_fidelity(js, extract_recovery(js)), 0.25, 1e-6);
    }
}

TEST(Recovery, R9SixShares) {
    auto js = build_joint_state(registry().at("R9"), 6);
    auto ch = extract_recovery(js);
    EXPECT_NO_THROW(ch.validate());
    double f = recovery_fidelity(js, ch);
    EXPECT_NEAR(f, 0.85, 0.01);
    EXPECT_NEAR(f, q_corr_sdp(js).f_max, 1e-6);
}

TEST(Recovery, ChannelFidelityTracksOptimumEverywhere) {
    const CodeSpec &c = registry().at("AAB7");
    for (std::size_t n_p = 0; n_p <= 7; n_p++) {
        auto js = build_joint_state(c, n_p);
        auto ch = extract_recovery(js);
        EXPECT_NEAR(recovery_fidelity(js, ch), q_corr_sdp(js).f_max, 1e-6) << n_p;
    }
}

TEST(Hybrid, Aab4Examples) {
    const CodeSpec &c = registry().at("AAB4");
    EXPECT_NEAR(q_corr_sdp(build_hybrid_state(c, c, c, 2)).h_min, 1.0, 1e-6);
    EXPECT_NEAR(q_corr_sdp(build_hybrid_state(c, c, c, 2)).f_max, 0.25, 1e-6);
    EXPECT_NEAR(q_corr_sdp(build_hybrid_state(c, c, c, 3)).h_min, -1.0, 1e-6);
    EXPECT_NEAR(q_corr_sdp(build_hybrid_state(c, c, c, 0)).h_min, 1.0, 1e-6);
}

TEST(Hybrid, ReferenceMarginalIsMaximallyMixed) {
    const CodeSpec &c = registry().at("AAB4");
    for (std::size_t n_p = 0; n_p <= 4; n_p++) {
        EXPECT_LT((build_hybrid_state(c, c, c, n_p).ref_marginal() - ComplexMatrix::Identity(2, 2) / 2.0).norm(),
                  1e-9);
    }
}

TEST(Hybrid, SectorDecompositionMatchesDenseSdp) {
    const CodeSpec &c = registry().at("AAB4");
    for (std::size_t n_p = 1; n_p <= 2; n_p++) {
        auto js = build_hybrid_state(c, c, c, n_p);
        auto dense = JointState::single(js.rho().matrix(), 2, "full", "dense", n_p);
        EXPECT_NEAR(q_corr_sdp(js).q_corr, q_corr_sdp(dense).q_corr, 1e-6) << n_p;
    }
}

TEST(Hybrid, RejectsMismatchedLengths) {
    EXPECT_THROW(build_hybrid_state(registry().at("PR7"), registry().at("AAB4"), registry().at("AAB4"), 2),
                 std::invalid_argument);
}

TEST(Hybrid, TwirlIsTransposedPauli) {
    ComplexMatrix xz = pauli_matrices::X() * pauli_matrices::Z();
    EXPECT_LT((reference_twirl(1, 1) - xz.transpose()).norm(), 1e-15);
    EXPECT_LT((reference_twirl(0, 0) - ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
}

}  // namespace
}  // namespace anonqss
