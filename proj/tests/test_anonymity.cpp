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

#include "anonqss/protocols/anonymity.hpp"

namespace anonqss {
namespace {

using anonymity_detail::distribution;
using anonymity_detail::total_variation;

double tv(AnonProtocol p, std::size_t n, std::set<int> corrupted, bool traceless) {
    return anonymity_check(p, n, {std::move(corrupted)}, traceless).max_tv;
}

TEST(Anonymity, AnonFourPlayersOneCorrupt) {
    EXPECT_LE(tv(AnonProtocol::anon, 4, {2}, false), 1e-12);
    EXPECT_LE(tv(AnonProtocol::anon, 4, {2}, true), 1e-12);
    auto cand = sender_candidates(AnonProtocol::anon, 4, {2});
    EXPECT_EQ(cand, (std::vector<int>{0, 1, 3}));
}

TEST(Anonymity, AnonBranchCount) {
    // Four players, one forced outcome: 2^3 free bits.
    EXPECT_EQ(enumerate_branches(AnonProtocol::anon, 4, 0, -1, 1).size(), 8u);
}

TEST(Anonymity, AeFivePlayers) {
    EXPECT_LE(tv(AnonProtocol::ae, 5, {3}, false), 1e-12);
    EXPECT_LE(tv(AnonProtocol::ae, 5, {3}, true), 1e-12);
    EXPECT_EQ(sender_candidates(AnonProtocol::ae, 5, {3}), (std::vector<int>{0, 1, 2}));
}

TEST(Anonymity, MaximalCorruption) {
    for (AnonProtocol p : {AnonProtocol::anon, AnonProtocol::ae, AnonProtocol::anonq}) {
        for (bool traceless : {false, true}) {
            EXPECT_LE(tv(p, 5, {2, 3, 4}, traceless), 1e-12) << to_string(p);
        }
    }
}

TEST(Anonymity, EveryAdmissibleSetUpToFive) {
    for (std::size_t n : {4u, 5u}) {
        auto sets = admissible_corrupted_sets(n);
        for (AnonProtocol p : {AnonProtocol::anon, AnonProtocol::ae, AnonProtocol::anonq}) {
            auto reps = anonymity_check(p, n, sets, std::vector<bool>{false, true});
            for (const auto &r : reps) {
                EXPECT_LE(r.max_tv, 1e-12) << to_string(p) << " n=" << n << " traceless=" << r.traceless;
                EXPECT_TRUE(r.exact);
                EXPECT_GT(r.configurations, 0u);
            }
        }
    }
}

TEST(Anonymity, AdmissibleSetsAreBounded) {
    auto sets = admissible_corrupted_sets(5);
    // Subsets of size 0..3 of five players.
    EXPECT_EQ(sets.size(), 1u + 5u + 10u + 10u);
    for (const auto &s : sets) EXPECT_LE(s.size(), 3u);
}

TEST(Anonymity, StatevectorBackendAgrees) {
    auto sets = admissible_corrupted_sets(4);
    for (AnonProtocol p : {AnonProtocol::anon, AnonProtocol::ae, AnonProtocol::anonq}) {
        EXPECT_LE(anonymity_check<GhzStatevector>(p, 4, sets, true).max_tv, 1e-12) << to_string(p);
        auto a = enumerate_branches<GhzResource>(p, 4, 0, 3, 1);
        auto b = enumerate_branches<GhzStatevector>(p, 4, 0, 3, 1);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); i++) {
            EXPECT_EQ(a[i].transcript, b[i].transcript);
            EXPECT_EQ(a[i].tapes, b[i].tapes);
            EXPECT_DOUBLE_EQ(a[i].weight, b[i].weight);
        }
    }
}

TEST(Anonymity, BranchWeightsSumToOne) {
    for (AnonProtocol p : {AnonProtocol::anon, AnonProtocol::ae, AnonProtocol::anonq}) {
        double w = 0;
        for (const auto &b : enumerate_branches(p, 5, 1, 4, 0)) w += b.weight;
        EXPECT_NEAR(w, 1.0, 1e-12) << to_string(p);
    }
}

// Negative controls: the view must be able to separate runs that differ.
TEST(Anonymity, MessageIsVisibleInTranscript) {
    std::vector<bool> none(4, false);
    auto d0 = distribution(enumerate_branches(AnonProtocol::anon, 4, 0, -1, 0), none, false);
    auto d1 = distribution(enumerate_branches(AnonProtocol::anon, 4, 0, -1, 1), none, false);
    EXPECT_NEAR(total_variation(d0, d1), 1.0, 1e-12);
}

TEST(Anonymity, CorruptSenderRegisterIsVisible) {
    std::vector<bool> corrupt{true, false, false, false, false};
    auto d0 = distribution(enumerate_branches(AnonProtocol::ae, 5, 0, 4, 0), corrupt, false);
    auto d1 = distribution(enumerate_branches(AnonProtocol::ae, 5, 1, 4, 0), corrupt, false);
    EXPECT_NEAR(total_variation(d0, d1), 1.0, 1e-12);
}

TEST(Anonymity, RejectsOversizedInputs) {
    EXPECT_THROW(anonymity_check(AnonProtocol::anon, 7, {{}}, false), std::invalid_argument);
    EXPECT_THROW(anonymity_check(AnonProtocol::anon, 4, {{0, 1, 2}}, false), std::invalid_argument);
}

TEST(Anonymity, MonteCarloStaysNearNoiseFloor) {
    auto r = anonymity_monte_carlo(AnonProtocol::anon, 8, {1, 2}, false, 4000, 3);
    EXPECT_FALSE(r.exact);
    EXPECT_EQ(r.samples, 4000u);
    EXPECT_GT(r.noise_floor, 0.0);
    // Max over 15 sender pairs versus a single-pair floor.
    EXPECT_LE(r.max_tv, 2 * r.noise_floor + 0.05);
}

TEST(Anonymity, ParseProtocolNames) {
    EXPECT_EQ(parse_anon_protocol("ae"), AnonProtocol::ae);
    EXPECT_EQ(parse_anon_protocol("anonq"), AnonProtocol::anonq);
    EXPECT_STREQ(to_string(AnonProtocol::anon), "anon");
    EXPECT_THROW(parse_anon_protocol("qass"), std::invalid_argument);
}

}  // namespace
}  // namespace anonqss
