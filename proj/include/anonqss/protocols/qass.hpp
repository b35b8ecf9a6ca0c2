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

#ifndef ANONQSS_PROTOCOLS_QASS_HPP
#define ANONQSS_PROTOCOLS_QASS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anonqss/leakage/hybrid.hpp"
#include "anonqss/leakage/leakage.hpp"
#include "anonqss/protocols/anon.hpp"

namespace anonqss {

enum class SlotPolicy {
    reservation,   // slot j belongs to the j-th participant in id order
    random_slots,  // every pending participant requests with a fresh tape bit
};

struct QassOptions {
    SlotPolicy policy = SlotPolicy::reservation;
    std::size_t retry_cap = 8;
    std::optional<std::pair<int, int>> twirl;  // HQASS only: overrides the dealer's (a, b)
};

struct ClassicalDecode {
    bool ok = false;
    int bit = -1;
    double confidence = 0;  // probability of the reported outcome
};

struct QassResult {
    bool aborted = false;
    std::string abort_reason;
    ComplexMatrix output;  // Bob's output qubit with the reference, on (R, out)
    double fidelity = 0;   // <Φ+|output|Φ+>
    double pre_correction_fidelity = 0;
    std::vector<int> send_order;
    std::size_t retries = 0;
    int twirl_a = 0, twirl_b = 0;
    ClassicalDecode decoded_a, decoded_b;
    Network network;
};

inline double phi_plus_fidelity(const ComplexMatrix &rho) {
    ComplexVector phi = bell_phi_plus();
    return (phi.adjoint() * rho * phi)(0, 0).real();
}

namespace qass_detail {

inline std::string slot_tag(std::size_t slot, const char *stream) {
    return "s" + std::to_string(slot) + "/" + stream;
}

/// Bob's recovery for the shares in `held` (share indices, ascending).
/// PI codes key the channel on the count alone and work in the weight basis.
inline RecoveryChannel bob_channel(const CodeSpec &code, const std::vector<std::size_t> &held) {
    if (const auto *pi = std::get_if<PICodeSpec>(&code)) {
        return extract_recovery(build_joint_state_dicke(*pi, held.size()));
    }
    ErasurePattern e;
    for (std::size_t q = 0; q < code_n(code); q++) {
        if (std::find(held.begin(), held.end(), q) == held.end()) e.erased.push_back(q);
    }
    return extract_recovery(build_joint_state_full(code, e));
}

/// Bob's registers (with `prefix` registers kept in front) as the channel input.
/// `labels` lists Bob's registers in ascending share-index order.
inline ComplexMatrix bob_input(const CodeSpec &code, const StateVector &global, const std::vector<std::string> &front,
                               const std::vector<std::string> &labels) {
    std::vector<std::string> keep = front;
    keep.insert(keep.end(), labels.begin(), labels.end());
    if (!std::holds_alternative<PICodeSpec>(code)) {
        return global.reduced(keep).matrix();
    }
    auto f = Eigen::Index{1} << front.size();
    ComplexMatrix proj = kron(ComplexMatrix::Identity(f, f), dicke_isometry(labels.size()));
    ComplexMatrix b = proj.adjoint() * global.amplitude_matrix(keep);
    ComplexMatrix omega = b * b.adjoint();
    if (std::abs(omega.trace().real() - 1.0) > 1e-9) {
        throw InvariantError("received shares left the symmetric subspace");
    }
    return omega;
}

/// Runs the slot schedule. Calls send(slot, participant) once per participant.
template <class Send>
bool run_slots(Network &net, const std::vector<int> &participants, std::size_t n_code, const QassOptions &opt,
               QassResult &res, Send &&send) {
    std::vector<int> pending = participants;
    std::sort(pending.begin(), pending.end());
    for (std::size_t slot = 0; slot < participants.size(); slot++) {
        int sender = -1;
        for (std::size_t attempt = 0; attempt < opt.retry_cap && sender < 0; attempt++) {
            std::set<int> req;
            if (opt.policy == SlotPolicy::reservation) {
                req.insert(pending.front());
            } else {
                std::string label = slot_tag(slot, "request");
                for (int p : pending)
                    if (net.tape(p).draw(label)) req.insert(p);
            }
            bool collision = collision_round(net, req, n_code);
            if (!collision && req.size() == 1) {
                sender = *req.begin();
            } else {
                res.retries++;
            }
        }
        if (sender < 0) {
            res.aborted = true;
            res.abort_reason = "collision retries exhausted in slot " + std::to_string(slot);
            return false;
        }
        pending.erase(std::find(pending.begin(), pending.end(), sender));
        res.send_order.push_back(sender);
        send(slot, sender);
    }
    return true;
}

inline void check_participants(const std::vector<int> &participants, std::size_t n) {
    std::set<int> s(participants.begin(), participants.end());
    if (s.size() != participants.size()) {
        throw std::invalid_argument("participants must be distinct");
    }
    for (int p : participants) {
        if (p < 0 || static_cast<std::size_t>(p) >= n) {
            throw std::invalid_argument("participant is not a shareholder");
        }
    }
}

/// Registers Bob received for one stream, sorted by the share index they carry.
struct Received {
    std::vector<std::size_t> shares;
    std::vector<std::string> labels;

    void add(std::size_t share, std::string label) {
        auto it = std::lower_bound(shares.begin(), shares.end(), share);
        labels.insert(labels.begin() + (it - shares.begin()), std::move(label));
        shares.insert(it, share);
    }
};

inline ComplexMatrix decode_reference(const CodeSpec &code, const StateVector &global, const Received &got) {
    RecoveryChannel ch = bob_channel(code, got.shares);
    return ch.apply_with_reference(bob_input(code, global, {"R"}, got.labels), 2);
}

inline ClassicalDecode decode_classical(const CodeSpec &code, const StateVector &global, const Received &got) {
    RecoveryChannel ch = bob_channel(code, got.shares);
    ComplexMatrix out = ch.apply(bob_input(code, global, {}, got.labels));
    ClassicalDecode d;
    LogicalBasis basis = code_classical_basis(code);
    for (int b = 0; b < 2; b++) {
        ComplexVector v = logical_basis_state(basis, b);
        double p = (v.adjoint() * out * v)(0, 0).real();
        if (p > d.confidence) {
            d.confidence = p;
            d.bit = b;
        }
    }
    d.ok = d.confidence >= 1 - 1e-6;
    if (!d.ok) d.bit = -1;
    return d;
}

/// Mean of (I ⊗ P) ρ (I ⊗ P)† over the four Paulis X^a Z^b on the output.
inline ComplexMatrix twirl_average(const ComplexMatrix &rho) {
    ComplexMatrix avg = ComplexMatrix::Zero(4, 4);
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            ComplexMatrix p = ComplexMatrix::Identity(2, 2);
            if (a) p = pauli_matrices::X() * p;
            if (b) p = pauli_matrices::Z() * p;
            ComplexMatrix u = kron(ComplexMatrix::Identity(2, 2), p);
            avg += 0.25 * u * rho * u.adjoint();
        }
    }
    return avg;
}

}  // namespace qass_detail

/// Shares of (|0>_R|0̄> + |1>_R|1̄>)/√2 are held by shareholders 0..n-1;
/// each participant anonymously teleports its share to Bob (player n), who
/// applies the optimal recovery for the shares received.
template <class Ghz = GhzResource>
QassResult protocol_qass(const CodeSpec &code, const std::vector<int> &participants, std::uint64_t seed,
                         const QassOptions &opt = {}) {
    using namespace qass_detail;
    std::size_t n = code_n(code);
    check_participants(participants, n);
    int bob = static_cast<int>(n);
    QassResult res;
    res.network = Network::make(n + 1, seed, bob);
    Network &net = res.network;
    StateVector global = reference_coupled(code);
    Received got;
    bool done = run_slots(net, participants, n, opt, res, [&](std::size_t slot, int p) {
        std::string label = "bob.q" + std::to_string(slot);
        protocol_anonq<Ghz>(net, global, share_label(static_cast<std::size_t>(p)), p, bob, label, slot_tag(slot, "q"));
        got.add(static_cast<std::size_t>(p), label);
    });
    if (!done) return res;
    res.output = decode_reference(code, global, got);
    res.fidelity = phi_plus_fidelity(res.output);
    res.pre_correction_fidelity = res.fidelity;
    return res;
}

/// Hybrid variant: the dealer twirls the quantum secret by X^a Z^b and shares
/// a and b with the classical codes. Every participant sends three shares.
template <class Ghz = GhzResource>
QassResult protocol_hqass(const CodeSpec &qcode, const CodeSpec &ccode_a, const CodeSpec &ccode_b,
                          const std::vector<int> &participants, std::uint64_t seed, const QassOptions &opt = {}) {
    using namespace qass_detail;
    std::size_t n = code_n(qcode);
    if (code_n(ccode_a) != n || code_n(ccode_b) != n) {
        throw std::invalid_argument("hybrid scheme needs codes of equal length");
    }
    check_participants(participants, n);
    int bob = static_cast<int>(n);
    QassResult res;
    res.network = Network::make(n + 1, seed, bob);
    Network &net = res.network;

    if (opt.twirl) {
        res.twirl_a = opt.twirl->first;
        res.twirl_b = opt.twirl->second;
    } else {
        RandomTape dealer(hash_combine(seed, 0x6465616cull));
        res.twirl_a = dealer.draw("twirl.a");
        res.twirl_b = dealer.draw("twirl.b");
    }
    StateVector gq = reference_coupled(qcode);
    if (res.twirl_a || res.twirl_b) {
        gq.apply("R", reference_twirl(res.twirl_a, res.twirl_b));
    }
    StateVector ga = encode_state(ccode_a, logical_basis_state(code_classical_basis(ccode_a), res.twirl_a), "a");
    StateVector gb = encode_state(ccode_b, logical_basis_state(code_classical_basis(ccode_b), res.twirl_b), "b");

    Received got_q, got_a, got_b;
    bool done = run_slots(net, participants, n, opt, res, [&](std::size_t slot, int p) {
        auto sp = static_cast<std::size_t>(p);
        std::string s = std::to_string(slot);
        protocol_anonq<Ghz>(net, gq, share_label(sp), p, bob, "bob.q" + s, slot_tag(slot, "q"));
        protocol_anonq<Ghz>(net, ga, "a" + std::to_string(p), p, bob, "bob.a" + s, slot_tag(slot, "a"));
        protocol_anonq<Ghz>(net, gb, "b" + std::to_string(p), p, bob, "bob.b" + s, slot_tag(slot, "b"));
        got_q.add(sp, "bob.q" + s);
        got_a.add(sp, "bob.a" + s);
        got_b.add(sp, "bob.b" + s);
    });
    if (!done) return res;

    res.decoded_a = decode_classical(ccode_a, ga, got_a);
    res.decoded_b = decode_classical(ccode_b, gb, got_b);
    ComplexMatrix raw = decode_reference(qcode, gq, got_q);
    res.pre_correction_fidelity = phi_plus_fidelity(twirl_average(raw));
    res.output = raw;
    if (res.decoded_a.ok && res.decoded_b.ok) {
        ComplexMatrix c = ComplexMatrix::Identity(2, 2);
        if (res.decoded_a.bit) c = pauli_matrices::X() * c;
        if (res.decoded_b.bit) c = pauli_matrices::Z() * c;
        // Undo X^a Z^b: apply X^a first, then Z^b.
        if (res.decoded_a.bit || res.decoded_b.bit) {
            ComplexMatrix u = kron(ComplexMatrix::Identity(2, 2), c);
            res.output = u * raw * u.adjoint();
        }
    }
    res.fidelity = phi_plus_fidelity(res.output);
    return res;
}

}  // namespace anonqss

#endif
