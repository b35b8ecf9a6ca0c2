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

#include <bit>
#include <set>

#include "anonqss/codes/cleaning.hpp"
#include "anonqss/codes/encode.hpp"
#include "anonqss/codes/registry.hpp"

namespace anonqss {
namespace {

const Registry &registry() {
    static const Registry reg = load_registry(default_registry_path());
    return reg;
}

const StabilizerCodeSpec &lncy4() { return std::get<StabilizerCodeSpec>(registry().at("LNCY4")); }

ErasurePattern erased(std::vector<std::size_t> q) { return ErasurePattern{std::move(q)}; }

// Full 2^n matrix of a Pauli string, built from 2x2 factors.
ComplexMatrix pauli_full(std::size_t n, const std::vector<std::size_t> &set, std::size_t index) {
    std::vector<ComplexMatrix> f(n, pauli_matrices::I());
    const ComplexMatrix table[4] = {pauli_matrices::I(), pauli_matrices::X(), pauli_matrices::Y(), pauli_matrices::Z()};
    for (std::size_t i = set.size(); i-- > 0;) {
        f[set[i]] = table[index % 4];
        index /= 4;
    }
    ComplexMatrix m = f[0];
    for (std::size_t q = 1; q < n; q++) m = kron(m, f[q]);
    return m;
}

// Largest Knill-Laflamme violation over every t-subset and every Pauli on it.
double oracle_kl_deviation(const CodeSpec &code, std::size_t t) {
    std::size_t n = code_n(code);
    auto [c0, c1] = full_codewords(code);
    double worst = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); mask++) {
        if (static_cast<std::size_t>(std::popcount(mask)) != t) continue;
        std::vector<std::size_t> set;
        for (std::size_t q = 0; q < n; q++)
            if (mask & (std::uint64_t{1} << q)) set.push_back(q);
        for (std::size_t p = 0; p < (std::size_t{1} << (2 * t)); p++) {
            ComplexMatrix pm = pauli_full(n, set, p);
            cplx off = c0.dot(pm * c1);
            cplx diff = c0.dot(pm * c0) - c1.dot(pm * c1);
            worst = std::max({worst, std::abs(off), std::abs(diff)});
        }
    }
    return worst;
}

// Counts logical classes with a representative supported on `e` by
// enumerating every Pauli string on e.
std::size_t oracle_cleaned(const StabilizerCodeSpec &code, const std::vector<std::size_t> &e) {
    std::set<std::pair<int, int>> classes;
    std::size_t t = e.size();
    for (std::uint64_t xs = 0; xs < (std::uint64_t{1} << t); xs++) {
        for (std::uint64_t zs = 0; zs < (std::uint64_t{1} << t); zs++) {
            PauliString p;
            p.n = code.n;
            for (std::size_t i = 0; i < t; i++) {
                if (xs & (std::uint64_t{1} << i)) p.x |= std::uint64_t{1} << e[i];
                if (zs & (std::uint64_t{1} << i)) p.z |= std::uint64_t{1} << e[i];
            }
            bool normalizer = true;
            for (const auto &g : code.generators) normalizer = normalizer && symplectic_product(p, g) == 0;
            if (!normalizer) continue;
            // Class label: which logical X / Z it anticommutes with.
            classes.insert({symplectic_product(p, code.logical_z[0]), symplectic_product(p, code.logical_x[0])});
        }
    }
    return classes.size();
}

TEST(Registry, ContainsRequiredCodes) {
    for (const char *name : {"AAB4", "HN4", "LNCY4", "PR7", "AAB7", "R9", "KT11", "O11", "AAB11", "KT13", "O13"}) {
        EXPECT_NE(registry().find(name), nullptr) << name;
    }
}

TEST(Registry, Lncy4Structure) {
    const auto &c = lncy4();
    EXPECT_EQ(c.n, 4u);
    EXPECT_EQ(c.k, 1u);
    ASSERT_EQ(c.generators.size(), 3u);
    EXPECT_EQ(c.generators[0].str(), "XXXX");
    EXPECT_EQ(c.logical_x[0].str(), "XXII");
    EXPECT_EQ(c.logical_z[0].str(), "ZIZI");
}

TEST(Registry, Hn4Coefficients) {
    const auto &c = std::get<PICodeSpec>(registry().at("HN4"));
    EXPECT_NEAR(c.logical0[0].real(), std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(c.logical0[4].real(), std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(c.logical1[2].real(), 1.0, 1e-12);
    EXPECT_TRUE(certify_erasure(registry().at("HN4"), 1).pass);
    EXPECT_EQ(c.classical_basis, LogicalBasis::Y);
}

std::string pi_entry(const std::string &l0, const std::string &l1, const std::string &extra = "") {
    return R"({"codes": [{"name": "T", "family": "pi", "n": 4, "k_or_K": 2, "d": 2, "logical0": )" + l0 +
           R"(, "logical1": )" + l1 + extra + "}]}";
}

TEST(Registry, AcceptsValidEntry) {
    std::string l0 = R"([{"w": 0, "re": 0.7071067811865476, "im": 0}, {"w": 4, "re": 0.7071067811865476, "im": 0}])";
    std::string l1 = R"([{"w": 2, "re": 1, "im": 0}])";
    EXPECT_EQ(parse_registry(pi_entry(l0, l1)).codes().size(), 1u);
}

TEST(Registry, RejectsNonOrthogonalCodewords) {
    std::string l0 = R"([{"w": 0, "re": 0.7071067811865476, "im": 0}, {"w": 4, "re": 0.7071067811865476, "im": 0}])";
    std::string l1 = R"([{"w": 0, "re": 1, "im": 0}])";
    EXPECT_ANY_THROW(parse_registry(pi_entry(l0, l1)));
}

TEST(Registry, RejectsUnknownFields) {
    std::string l0 = R"([{"w": 0, "re": 0.7071067811865476, "im": 0}, {"w": 4, "re": 0.7071067811865476, "im": 0}])";
    std::string l1 = R"([{"w": 2, "re": 1, "im": 0}])";
    EXPECT_THROW(parse_registry(pi_entry(l0, l1, R"(, "colour": "red")")), RegistryError);
}

TEST(Registry, RejectsOverclaimedDistance) {
    // HN4 codewords do not correct two erasures.
    std::string text = R"({"codes": [{"name": "T", "family": "pi", "n": 4, "k_or_K": 2, "d": 3,
        "logical0": [{"w": 0, "re": 0.7071067811865476, "im": 0}, {"w": 4, "re": 0.7071067811865476, "im": 0}],
        "logical1": [{"w": 2, "re": 1, "im": 0}]}]})";
    EXPECT_ANY_THROW(parse_registry(text));
}

TEST(Registry, RejectsAnticommutingGenerators) {
    std::string text = R"({"codes": [{"name": "T", "family": "stabilizer", "n": 4, "k_or_K": 1, "d": 2,
        "generators": ["XXXX", "ZIII", "IIZZ"], "logical_x": ["XXII"], "logical_z": ["ZIZI"]}]})";
    EXPECT_ANY_THROW(parse_registry(text));
}

TEST(Registry, RejectsMalformedJson) { EXPECT_ANY_THROW(parse_registry("{\"codes\": [")); }

TEST(Certify, Aab4Examples) {
    const CodeSpec &c = registry().at("AAB4");
    EXPECT_TRUE(certify_erasure(c, 0).pass);
    EXPECT_TRUE(certify_erasure(c, 1).pass);
    EXPECT_FALSE(certify_erasure(c, 2).pass);
}

TEST(Certify, ZeroErasuresHasIdentityAlpha) {
    for (const auto &c : registry().codes()) {
        auto r = certify_erasure(c, 0);
        EXPECT_TRUE(r.pass);
        EXPECT_EQ(r.alpha.size(), 1);
    }
}

TEST(Certify, EveryCodeIsTightAtItsDistance) {
    for (const auto &c : registry().codes()) {
        std::size_t d = code_distance(c);
        EXPECT_TRUE(certify_erasure(c, d - 1).pass) << code_name(c);
        EXPECT_FALSE(certify_erasure(c, d).pass) << code_name(c);
    }
}

TEST(Certify, DeviationMatchesExplicitPauliOracle) {
    for (const char *name : {"AAB4", "HN4", "LNCY4", "PR7", "AAB7"}) {
        const CodeSpec &c = registry().at(name);
        for (std::size_t t = 1; t <= 3; t++) {
            EXPECT_NEAR(certify_erasure(c, t).worst_deviation, oracle_kl_deviation(c, t), 1e-10) << name << " t=" << t;
        }
    }
}

TEST(Certify, AlphaIsHermitianWithUnitIdentityEntry) {
    auto r = certify_erasure(registry().at("PR7"), 2);
    ASSERT_EQ(r.alpha.rows(), 16);
    EXPECT_NEAR(r.alpha(0, 0).real(), 1.0, 1e-12);
    EXPECT_LT((r.alpha - r.alpha.adjoint()).norm(), 1e-12);
}

TEST(Gnu, ParametricCodewordsMatchRegistry) {
    for (const char *name : {"R9", "O11", "O13"}) {
        const auto &c = std::get<PICodeSpec>(registry().at(name));
        ASSERT_TRUE(c.construction_meta.has_value()) << name;
        auto [g0, g1] = gnu_codewords(c.n, *c.construction_meta);
        EXPECT_LT((g0.coeffs() - c.logical0.coeffs()).norm(), 1e-10) << name;
        EXPECT_LT((g1.coeffs() - c.logical1.coeffs()).norm(), 1e-10) << name;
    }
}

TEST(Gnu, R9IsTheThreeThreeOneCode) {
    const auto &c = std::get<PICodeSpec>(registry().at("R9"));
    EXPECT_EQ(c.construction_meta->g, 3u);
    EXPECT_EQ(c.construction_meta->u, 1u);
    EXPECT_EQ(c.construction_meta->delta, 0u);
    EXPECT_NEAR(c.logical0[0].real(), 0.5, 1e-12);
    EXPECT_NEAR(c.logical0[6].real(), std::sqrt(3.0) / 2, 1e-12);
}

TEST(Cleaning, Lncy4Examples) {
    EXPECT_EQ(count_cleaned_logicals(lncy4(), erased({0, 1})), 2u);
    EXPECT_EQ(count_cleaned_logicals(lncy4(), erased({1, 3})), 2u);
    EXPECT_EQ(count_cleaned_logicals(lncy4(), erased({})), 1u);
    EXPECT_EQ(count_cleaned_logicals(lncy4(), erased({0, 1, 2})), 4u);
    EXPECT_EQ(count_cleaned_logicals(lncy4(), erased({0, 1, 2, 3})), 4u);
}

TEST(Cleaning, MatchesEnumerationOracleAndIsMonotone) {
    const auto &c = lncy4();
    std::vector<std::size_t> counts(16);
    for (std::uint64_t mask = 0; mask < 16; mask++) {
        std::vector<std::size_t> e;
        for (std::size_t q = 0; q < 4; q++)
            if (mask & (std::uint64_t{1} << q)) e.push_back(q);
        counts[mask] = count_cleaned_logicals(c, erased(e));
        EXPECT_EQ(counts[mask], oracle_cleaned(c, e)) << mask;
        EXPECT_GE(counts[mask], 1u);
        EXPECT_LE(counts[mask], 4u);
    }
    for (std::uint64_t a = 0; a < 16; a++)
        for (std::uint64_t b = 0; b < 16; b++)
            if ((a & b) == a) EXPECT_LE(counts[a], counts[b]);
}

TEST(Pauli, ParseRoundTripAndCommutation) {
    auto p = PauliString::parse("XYZI");
    EXPECT_EQ(p.str(), "XYZI");
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(symplectic_product(PauliString::parse("XX"), PauliString::parse("ZZ")), 0);
    EXPECT_EQ(symplectic_product(PauliString::parse("XI"), PauliString::parse("ZI")), 1);
    EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
}

TEST(Pauli, ApplyMatchesExplicitMatrix) {
    ComplexVector v(8);
    for (Eigen::Index i = 0; i < 8; i++) v[i] = cplx(static_cast<double>(i) + 1, 0.5 * static_cast<double>(i));
    v.normalize();
    for (const char *s : {"XYZ", "IYI", "ZZX", "YYY"}) {
        auto p = PauliString::parse(s);
        std::size_t idx = 0;
        for (char ch : std::string(s)) idx = idx * 4 + std::string("IXYZ").find(ch);
        EXPECT_LT((apply_pauli(p, v) - pauli_full(3, {0, 1, 2}, idx) * v).norm(), 1e-12) << s;
    }
}

TEST(Encode, BasisStateStaysPure) {
    const auto &c = std::get<PICodeSpec>(registry().at("AAB4"));
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    zero(0, 0) = 1;
    auto enc = encode_dicke(c, DensityOperator({2}, zero));
    EXPECT_NEAR(enc.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR((enc.matrix() * enc.matrix()).trace().real(), 1.0, 1e-12);
    EXPECT_LT((enc.matrix() - c.logical0.coeffs() * c.logical0.coeffs().adjoint()).norm(), 1e-12);
}

TEST(Encode, MaximallyMixedHasTwoHalfEigenvalues) {
    const auto &c = std::get<PICodeSpec>(registry().at("R9"));
    auto enc = encode_dicke(c, DensityOperator::maximally_mixed({2}));
    RealVector ev = psd_eigenvalues(enc.matrix());
    EXPECT_NEAR(ev[ev.size() - 1], 0.5, 1e-12);
    EXPECT_NEAR(ev[ev.size() - 2], 0.5, 1e-12);
    EXPECT_NEAR(ev.head(ev.size() - 2).cwiseAbs().sum(), 0.0, 1e-12);
}

TEST(Encode, ReferenceMarginalIsMaximallyMixed) {
    StateVector phi = reference_coupled(registry().at("PR7"));
    auto r = phi.reduced({"R"});
    EXPECT_LT((r.matrix() - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-12);
}

TEST(Encode, PreservesInnerProducts) {
    ComplexVector a(2), b(2);
    a << cplx(0.6, 0.1), cplx(0.2, -0.7);
    b << cplx(-0.3, 0.4), cplx(0.5, 0.2);
    a.normalize();
    b.normalize();
    for (const auto &c : registry().codes()) {
        if (code_n(c) > 11) continue;
        StateVector ea = encode_state(c, a), eb = encode_state(c, b);
        EXPECT_LT(std::abs(ea.amplitudes().dot(eb.amplitudes()) - a.dot(b)), 1e-10) << code_name(c);
    }
}

TEST(Encode, FullAndDickePathsAgree) {
    const auto &c = std::get<PICodeSpec>(registry().at("AAB7"));
    auto mixed = DensityOperator::maximally_mixed({2});
    ComplexMatrix iso = dicke_isometry(c.n);
    ComplexMatrix lifted = iso * encode_dicke(c, mixed).matrix() * iso.adjoint();
    EXPECT_LT((lifted - encode_full(registry().at("AAB7"), mixed).matrix()).norm(), 1e-12);
}

}  // namespace
}  // namespace anonqss
