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

#ifndef ANONQSS_PROTOCOLS_ANONYMITY_HPP
#define ANONQSS_PROTOCOLS_ANONYMITY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "anonqss/protocols/anon.hpp"

namespace anonqss {

enum class AnonProtocol { ae, anon, anonq };

inline AnonProtocol parse_anon_protocol(const std::string &s) {
    if (s == "ae") return AnonProtocol::ae;
    if (s == "anon") return AnonProtocol::anon;
    if (s == "anonq") return AnonProtocol::anonq;
    throw std::invalid_argument("unknown protocol '" + s + "' (expected ae, anon or anonq)");
}

inline const char *to_string(AnonProtocol p) {
    switch (p) {
        case AnonProtocol::ae: return "ae";
        case AnonProtocol::anon: return "anon";
        case AnonProtocol::anonq: return "anonq";
    }
    return "?";
}

inline constexpr std::size_t kEnumerationCap = 6;

/// Everything an adversary could see in one run, reduced to hashes.
struct BranchView {
    double weight = 1;
    std::uint64_t transcript = 0;                // public bits, packed
    std::vector<std::uint64_t> tapes;            // per-party hash of (label, bit) log
    std::vector<int> register_owner;             // owner of each final register
    std::vector<std::uint64_t> register_hashes;  // indexed by register subset mask
};

namespace anonymity_detail {

inline std::uint64_t quantized_hash(const ComplexMatrix &m) {
    std::uint64_t h = hash_combine(0, static_cast<std::uint64_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.size(); i++) {
        h = hash_combine(h, static_cast<std::uint64_t>(std::llround(m.data()[i].real() * 1e8)));
        h = hash_combine(h, static_cast<std::uint64_t>(std::llround(m.data()[i].imag() * 1e8)));
    }
    return h;
}

/// Fixed single-qubit payload for ANONQ.
inline ComplexVector anonq_payload() {
    ComplexVector v(2);
    v << std::cos(0.3), std::polar(std::sin(0.3), 0.7);
    return v;
}

template <class Ghz>
BranchView run_branch(AnonProtocol proto, std::size_t n, int sender, int receiver, int message, BitScript *script,
                      std::uint64_t seed = 0) {
    Network net = Network::make(n, seed, -1, script);
    StateVector final_state;
    std::vector<int> owners;
    switch (proto) {
        case AnonProtocol::anon:
            protocol_anon<Ghz>(net, sender, message);
            break;
        case AnonProtocol::ae:
            final_state = protocol_ae<Ghz>(net, sender, receiver);
            owners = {sender, receiver};
            break;
        case AnonProtocol::anonq: {
            StateVector global({"share"}, anonq_payload());
            protocol_anonq<Ghz>(net, global, "share", sender, receiver, "bob");
            final_state = global;
            owners = {receiver};
            break;
        }
    }
    BranchView v;
    v.weight = script ? script->weight : 1.0;
    auto bits = net.transcript.public_bits();
    if (bits.size() > 63) {
        throw std::length_error("transcript too long to pack");
    }
    v.transcript = std::uint64_t{1} << bits.size();
    for (std::size_t i = 0; i < bits.size(); i++) v.transcript |= static_cast<std::uint64_t>(bits[i]) << i;
    for (const auto &p : net.parties) {
        std::uint64_t h = 0;
        for (const auto &[label, bit] : p.tape.draws()) h = hash_combine(fnv1a(label, h), static_cast<std::uint64_t>(bit));
        v.tapes.push_back(h);
    }
    v.register_owner = owners;
    const auto &labels = final_state.labels();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << labels.size()); mask++) {
        std::vector<std::string> keep;
        for (std::size_t i = 0; i < labels.size(); i++)
            if (mask & (std::uint64_t{1} << i)) keep.push_back(labels[i]);
        v.register_hashes.push_back(keep.empty() ? 0 : quantized_hash(final_state.reduced(keep).matrix()));
    }
    return v;
}

using ViewKey = std::array<std::uint64_t, 3>;
using Distribution = std::vector<std::pair<ViewKey, double>>;

inline ViewKey view_key(const BranchView &b, const std::vector<bool> &corrupt, bool traceless) {
    ViewKey k{b.transcript, 0, 0};
    for (std::size_t p = 0; p < b.tapes.size(); p++)
        if (traceless || corrupt[p]) k[1] = hash_combine(k[1] ^ p, b.tapes[p]);
    std::uint64_t mask = 0;
    for (std::size_t r = 0; r < b.register_owner.size(); r++)
        if (corrupt[static_cast<std::size_t>(b.register_owner[r])]) mask |= std::uint64_t{1} << r;
    k[2] = b.register_hashes.empty() ? 0 : b.register_hashes[mask];
    return k;
}

inline Distribution distribution(const std::vector<BranchView> &branches, const std::vector<bool> &corrupt,
                                 bool traceless) {
    Distribution d;
    d.reserve(branches.size());
    for (const auto &b : branches) d.emplace_back(view_key(b, corrupt, traceless), b.weight);
    std::sort(d.begin(), d.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    Distribution merged;
    for (const auto &e : d) {
        if (!merged.empty() && merged.back().first == e.first) {
            merged.back().second += e.second;
        } else {
            merged.push_back(e);
        }
    }
    return merged;
}

inline double total_variation(const Distribution &p, const Distribution &q) {
    double tv = 0;
    std::size_t i = 0, j = 0;
    while (i < p.size() || j < q.size()) {
        if (j == q.size() || (i < p.size() && p[i].first < q[j].first)) {
            tv += std::abs(p[i++].second);
        } else if (i == p.size() || q[j].first < p[i].first) {
            tv += std::abs(q[j++].second);
        } else {
            tv += std::abs(p[i++].second - q[j++].second);
        }
    }
    return 0.5 * tv;
}

}  // namespace anonymity_detail

/// Every branch of one protocol for a fixed sender, in enumeration order.
template <class Ghz = GhzResource>
std::vector<BranchView> enumerate_branches(AnonProtocol proto, std::size_t n, int sender, int receiver, int message) {
    if (n > kEnumerationCap) {
        throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the exact enumeration cap of " +
                                    std::to_string(kEnumerationCap) + "; use Monte-Carlo mode");
    }
    BitScript probe;
    anonymity_detail::run_branch<Ghz>(proto, n, sender, receiver, message, &probe);
    int free_bits = probe.cursor;
    std::vector<BranchView> out;
    out.reserve(std::size_t{1} << free_bits);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_bits); bits++) {
        BitScript s{bits, 0, 1.0};
        out.push_back(anonymity_detail::run_branch<Ghz>(proto, n, sender, receiver, message, &s));
        if (s.cursor != free_bits) {
            throw InvariantError("branch consumed a different number of random choices");
        }
    }
    return out;
}

struct AnonymityReport {
    AnonProtocol protocol = AnonProtocol::anon;
    std::size_t n = 0;
    bool traceless = false;
    bool exact = true;
    double max_tv = 0;
    std::size_t configurations = 0;  // (corrupted set, message) pairs checked
    std::size_t branches = 0;        // per sender and message
    std::size_t samples = 0;         // Monte-Carlo only
    double noise_floor = 0;          // Monte-Carlo only: TV between two samples of one sender
};

/// Receiver used for AE and ANONQ.
inline int default_receiver(std::size_t n) { return static_cast<int>(n) - 1; }

/// Senders the adversary must not distinguish: honest players other than the receiver.
inline std::vector<int> sender_candidates(AnonProtocol proto, std::size_t n, const std::set<int> &corrupted) {
    std::vector<int> c;
    for (int p = 0; p < static_cast<int>(n); p++) {
        if (corrupted.count(p)) continue;
        if (proto != AnonProtocol::anon && p == default_receiver(n)) continue;
        c.push_back(p);
    }
    return c;
}

/// All corrupted sets of size <= n-2.
inline std::vector<std::set<int>> admissible_corrupted_sets(std::size_t n) {
    std::vector<std::set<int>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); mask++) {
        std::set<int> s;
        for (std::size_t p = 0; p < n; p++)
            if (mask & (std::uint64_t{1} << p)) s.insert(static_cast<int>(p));
        if (s.size() + 2 <= n) out.push_back(s);
    }
    return out;
}

/// Exact maximum pairwise TV distance between the adversary's views for
/// different honest senders, over the given corrupted sets (and both
/// messages for ANON). One report per entry of `traceless_modes`; the
/// branches are enumerated once.
template <class Ghz = GhzResource>
std::vector<AnonymityReport> anonymity_check(AnonProtocol proto, std::size_t n,
                                             const std::vector<std::set<int>> &corrupted_sets,
                                             const std::vector<bool> &traceless_modes) {
    using namespace anonymity_detail;
    if (n < 3) {
        throw std::invalid_argument("anonymity needs at least 3 players");
    }
    std::vector<AnonymityReport> reps(traceless_modes.size());
    for (std::size_t m = 0; m < reps.size(); m++) {
        reps[m].protocol = proto;
        reps[m].n = n;
        reps[m].traceless = traceless_modes[m];
    }
    int receiver = proto == AnonProtocol::anon ? -1 : default_receiver(n);
    std::vector<int> messages = proto == AnonProtocol::anon ? std::vector<int>{0, 1} : std::vector<int>{0};
    for (int msg : messages) {
        std::vector<std::vector<BranchView>> by_sender(n);
        for (int s = 0; s < static_cast<int>(n); s++) {
            if (s == receiver) continue;
            by_sender[static_cast<std::size_t>(s)] = enumerate_branches<Ghz>(proto, n, s, receiver, msg);
            for (auto &r : reps) r.branches = by_sender[static_cast<std::size_t>(s)].size();
        }
        for (const auto &c : corrupted_sets) {
            if (c.size() + 2 > n) {
                throw std::invalid_argument("corrupted set larger than n-2");
            }
            std::vector<bool> corrupt(n, false);
            for (int p : c) corrupt.at(static_cast<std::size_t>(p)) = true;
            auto cand = sender_candidates(proto, n, c);
            for (auto &rep : reps) {
                std::vector<Distribution> dists;
                for (int s : cand)
                    dists.push_back(distribution(by_sender[static_cast<std::size_t>(s)], corrupt, rep.traceless));
                for (std::size_t i = 0; i < dists.size(); i++)
                    for (std::size_t j = i + 1; j < dists.size(); j++)
                        rep.max_tv = std::max(rep.max_tv, total_variation(dists[i], dists[j]));
                rep.configurations++;
            }
        }
    }
    return reps;
}

template <class Ghz = GhzResource>
AnonymityReport anonymity_check(AnonProtocol proto, std::size_t n, const std::vector<std::set<int>> &corrupted_sets,
                                bool traceless) {
    return anonymity_check<Ghz>(proto, n, corrupted_sets, std::vector<bool>{traceless}).front();
}

/// Sampling estimate for sizes beyond the enumeration cap. The noise floor is
/// the TV between two independent sample sets of the same sender; estimates
/// at or below it carry no evidence of a leak.
inline AnonymityReport anonymity_monte_carlo(AnonProtocol proto, std::size_t n, const std::set<int> &corrupted,
                                             bool traceless, std::size_t samples, std::uint64_t seed) {
    using namespace anonymity_detail;
    if (corrupted.size() + 2 > n) {
        throw std::invalid_argument("corrupted set larger than n-2");
    }
    AnonymityReport rep;
    rep.protocol = proto;
    rep.n = n;
    rep.traceless = traceless;
    rep.exact = false;
    rep.samples = samples;
    rep.configurations = 1;
    int receiver = proto == AnonProtocol::anon ? -1 : default_receiver(n);
    std::vector<bool> corrupt(n, false);
    for (int p : corrupted) corrupt.at(static_cast<std::size_t>(p)) = true;
    auto cand = sender_candidates(proto, n, corrupted);
    auto sample_dist = [&](int sender, std::uint64_t stream) {
        std::vector<BranchView> v;
        for (std::size_t i = 0; i < samples; i++) {
            BranchView b = run_branch<GhzResource>(proto, n, sender, receiver, 0, nullptr,
                                                   hash_combine(hash_combine(seed, stream), i));
            b.weight = 1.0 / static_cast<double>(samples);
            v.push_back(std::move(b));
        }
        return distribution(v, corrupt, traceless);
    };
    std::vector<Distribution> dists;
    for (int s : cand) dists.push_back(sample_dist(s, static_cast<std::uint64_t>(s)));
    for (std::size_t i = 0; i < dists.size(); i++)
        for (std::size_t j = i + 1; j < dists.size(); j++) rep.max_tv = std::max(rep.max_tv, total_variation(dists[i], dists[j]));
    if (!cand.empty()) {
        rep.noise_floor = total_variation(dists[0], sample_dist(cand[0], 0x5a5a5a5aull));
    }
    return rep;
}

}  // namespace anonqss

#endif
