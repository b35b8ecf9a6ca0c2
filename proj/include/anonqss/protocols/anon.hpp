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

#ifndef ANONQSS_PROTOCOLS_ANON_HPP
#define ANONQSS_PROTOCOLS_ANON_HPP

#include <set>
#include <string>
#include <vector>

#include "anonqss/protocols/ghz.hpp"
#include "anonqss/protocols/tape.hpp"
#include "anonqss/protocols/transcript.hpp"

namespace anonqss {

enum class PartyRole { shareholder, decoder };

struct Party {
    int id = 0;
    PartyRole role = PartyRole::shareholder;
    RandomTape tape;
};

/// The players of one run, the public transcript, and the stream that
/// supplies outcomes of measurements whose result is not a party's choice.
struct Network {
    std::vector<Party> parties;
    Transcript transcript;
    RandomTape measurement;

    /// n players with ids 0..n-1; `decoder` (if >= 0) gets the decoder role.
    static Network make(std::size_t n, std::uint64_t seed, int decoder = -1, BitScript *script = nullptr) {
        Network net;
        for (std::size_t i = 0; i < n; i++) {
            Party p;
            p.id = static_cast<int>(i);
            p.role = static_cast<int>(i) == decoder ? PartyRole::decoder : PartyRole::shareholder;
            p.tape = RandomTape(party_seed(seed, i), script);
            net.parties.push_back(std::move(p));
        }
        net.measurement = RandomTape(hash_combine(seed, 0x6d656173ull), script);
        net.validate();
        return net;
    }

    std::size_t size() const { return parties.size(); }

    void validate() const {
        std::set<int> ids;
        int decoders = 0;
        for (const auto &p : parties) {
            if (p.id < 0 || static_cast<std::size_t>(p.id) >= parties.size() || !ids.insert(p.id).second) {
                throw std::invalid_argument("party ids must be unique in 0..n-1");
            }
            decoders += p.role == PartyRole::decoder;
        }
        if (decoders > 1) {
            throw std::invalid_argument("at most one decoder per run");
        }
    }

    RandomTape &tape(int id) { return parties.at(static_cast<std::size_t>(id)).tape; }
};

inline std::string draw_label(const std::string &tag, const char *step) {
    return tag.empty() ? std::string(step) : tag + "/" + step;
}

inline int parity(const std::vector<int> &bits) {
    int p = 0;
    for (int b : bits) p ^= b;
    return p;
}

/// Hadamard-and-measure of `owner`'s GHZ qubit. The owner's tape supplies the
/// outcome unless it is forced (last live qubit), in which case nothing is drawn.
template <class Ghz>
int ghz_measure_h(Ghz &g, int owner, RandomTape &tape, const std::string &label) {
    if (auto forced = g.forced_outcome(owner)) {
        return g.measure_h(owner, *forced);
    }
    return g.measure_h(owner, tape.draw(label));
}

/// Anonymous entanglement between alice and bob. Every player broadcasts one
/// bit: measuring players their outcome, alice her random b, bob a random
/// cover bit. Returns the pair on (label_a, label_b), equal to Φ+.
template <class Ghz = GhzResource>
StateVector protocol_ae(Network &net, int alice, int bob, const std::string &tag = "",
                        const std::string &label_a = "ae.a", const std::string &label_b = "ae.b") {
    std::size_t n = net.size();
    if (alice == bob || alice < 0 || bob < 0 || static_cast<std::size_t>(alice) >= n ||
        static_cast<std::size_t>(bob) >= n) {
        throw std::invalid_argument("AE needs distinct alice and bob among the players");
    }
    if (n < 2) {
        throw std::invalid_argument("AE needs at least two players");
    }
    Ghz g(n);
    net.transcript.consume_ghz("ae");
    std::size_t round = net.transcript.next_round();
    std::string label = draw_label(tag, "ae");
    int b = 0;
    int others = 0;
    for (int p = 0; p < static_cast<int>(n); p++) {
        int bit;
        if (p == alice) {
            bit = b = net.tape(p).draw(label);
        } else if (p == bob) {
            bit = net.tape(p).draw(label);
        } else {
            bit = g.measure_h(p, net.tape(p).draw(label));
        }
        if (p != bob) others ^= bit;
        net.transcript.broadcast(round, "ae", p, {bit});
    }
    if (b) g.apply_z(alice);
    if (others) g.apply_z(bob);
    return g.pair(alice, bob, label_a, label_b);
}

/// Anonymous broadcast of bit d by `sender`; returns the parity of all
/// broadcast outcomes.
template <class Ghz = GhzResource>
int protocol_anon(Network &net, int sender, int d, const std::string &tag = "") {
    std::size_t n = net.size();
    if (sender < 0 || static_cast<std::size_t>(sender) >= n) {
        throw std::invalid_argument("ANON sender is not a player");
    }
    Ghz g(n);
    net.transcript.consume_ghz("anon");
    if (d) g.apply_z(sender);
    std::size_t round = net.transcript.next_round();
    std::string label = draw_label(tag, "anon");
    std::vector<int> bits;
    for (int p = 0; p < static_cast<int>(n); p++) {
        int out = ghz_measure_h(g, p, net.tape(p), label);
        bits.push_back(out);
        net.transcript.broadcast(round, "anon", p, {out});
    }
    return parity(bits);
}

/// Teleports register `share` (held by alice inside `global`) to bob through
/// an anonymous EPR pair. Afterwards `global` holds the same state with
/// `share` renamed to `bob_label`. Uses 3 GHZ states.
template <class Ghz = GhzResource>
void protocol_anonq(Network &net, StateVector &global, const std::string &share, int alice, int bob,
                    const std::string &bob_label, const std::string &tag = "") {
    const std::string half_a = "anonq.a";
    StateVector pair = protocol_ae<Ghz>(net, alice, bob, tag, half_a, bob_label);
    global = global.tensor(pair);

    global.apply_cnot(share, half_a);
    global.apply(share, pauli_matrices::H());
    std::string mlabel = draw_label(tag, "bell");
    int m0 = net.measurement.sample(mlabel, global.probability(share, 1));
    global.measure_and_discard(share, m0);
    int m1 = net.measurement.sample(mlabel, global.probability(half_a, 1));
    global.measure_and_discard(half_a, m1);

    int r0 = protocol_anon<Ghz>(net, alice, m0, draw_label(tag, "m0"));
    int r1 = protocol_anon<Ghz>(net, alice, m1, draw_label(tag, "m1"));
    if (r1) global.apply(bob_label, pauli_matrices::X());
    if (r0) global.apply(bob_label, pauli_matrices::Z());
}

/// Stand-in for the collision-detection sub-protocol: exact honest-case
/// answer, charged ⌈log2 n⌉ + 1 GHZ states.
inline std::size_t collision_cost(std::size_t n) {
    std::size_t c = 0;
    while ((std::size_t{1} << c) < n) c++;
    return c + 1;
}

inline bool collision_round(Network &net, const std::set<int> &requesters, std::size_t n_cost) {
    net.transcript.consume_ghz("collision", collision_cost(n_cost));
    bool collision = requesters.size() >= 2;
    net.transcript.broadcast(net.transcript.next_round(), "collision", -1, {collision ? 1 : 0});
    return collision;
}

inline bool collision_round(Network &net, const std::set<int> &requesters) {
    return collision_round(net, requesters, net.size());
}

}  // namespace anonqss

#endif
