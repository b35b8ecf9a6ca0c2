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

#ifndef ANONQSS_PROTOCOLS_TRANSCRIPT_HPP
#define ANONQSS_PROTOCOLS_TRANSCRIPT_HPP

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace anonqss {

/// One public event. `party` is -1 for events with no broadcaster (for
/// example the outcome of a collision round).
struct TranscriptRecord {
    std::size_t round = 0;
    std::string kind;
    int party = -1;
    std::vector<int> bits;

    bool operator==(const TranscriptRecord &) const = default;
};

// JSON lines export, one object per line:
//   {"round": <int>, "kind": <string>, "party": <int>, "bits": [<0|1>...]}
// followed by one summary line
//   {"kind": "ledger", "ghz": {<purpose>: <count>...}, "total": <int>}
// Kinds: "ae", "anon", "collision", "slot".
class Transcript {
   public:
    const std::vector<TranscriptRecord> &records() const { return records_; }
    const std::map<std::string, std::size_t> &ledger() const { return ledger_; }

    std::size_t next_round() { return round_++; }
    std::size_t rounds() const { return round_; }

    void broadcast(std::size_t round, std::string kind, int party, std::vector<int> bits) {
        records_.push_back({round, std::move(kind), party, std::move(bits)});
    }

    void consume_ghz(const std::string &purpose, std::size_t count = 1) { ledger_[purpose] += count; }

    std::size_t ghz_total() const {
        std::size_t t = 0;
        for (const auto &[k, v] : ledger_) t += v;
        return t;
    }

    /// Public bits of every record in order.
    std::vector<int> public_bits() const {
        std::vector<int> out;
        for (const auto &r : records_) out.insert(out.end(), r.bits.begin(), r.bits.end());
        return out;
    }

    void write_jsonl(std::ostream &os) const {
        for (const auto &r : records_) {
            nlohmann::ordered_json j;
            j["round"] = r.round;
            j["kind"] = r.kind;
            j["party"] = r.party;
            j["bits"] = r.bits;
            os << j.dump() << '\n';
        }
        nlohmann::ordered_json s;
        s["kind"] = "ledger";
        s["ghz"] = ledger_;
        s["total"] = ghz_total();
        os << s.dump() << '\n';
    }

    bool operator==(const Transcript &) const = default;

   private:
    std::vector<TranscriptRecord> records_;
    std::map<std::string, std::size_t> ledger_;
    std::size_t round_ = 0;
};

}  // namespace anonqss

#endif
