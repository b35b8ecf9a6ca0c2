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

#ifndef ANONQSS_PROTOCOLS_TAPE_HPP
#define ANONQSS_PROTOCOLS_TAPE_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace anonqss {

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

/// A fixed assignment of every random choice in one protocol run, used to
/// enumerate branches exhaustively. Choices are consumed in request order.
struct BitScript {
    std::uint64_t bits = 0;
    int cursor = 0;
    double weight = 1.0;

    int next(double p_one = 0.5) {
        if (cursor >= 64) {
            throw std::length_error("bit script exhausted");
        }
        int b = static_cast<int>((bits >> cursor) & 1);
        cursor++;
        weight *= b ? p_one : 1.0 - p_one;
        return b;
    }
};

/// A party's private randomness. Each draw is a pure function of
/// (seed, label, occurrence of that label), so interleaving draws under
/// different labels never shifts the values seen under another label.
class RandomTape {
   public:
    RandomTape() = default;
    explicit RandomTape(std::uint64_t seed, BitScript *script = nullptr) : seed_(seed), script_(script) {}

    std::uint64_t seed() const { return seed_; }
    const std::vector<std::pair<std::string, int>> &draws() const { return draws_; }

    int draw(const std::string &label) {
        std::size_t occurrence = counts_[label]++;
        int bit = script_ ? script_->next() : static_cast<int>(keyed_engine(label, occurrence)() & 1);
        draws_.emplace_back(label, bit);
        return bit;
    }

    /// Samples 1 with probability p_one (not logged; used for physical
    /// measurement outcomes owned by nobody).
    int sample(const std::string &label, double p_one) {
        std::size_t occurrence = counts_[label]++;
        if (script_) {
            return script_->next(p_one);
        }
        std::uniform_real_distribution<double> u(0.0, 1.0);
        auto eng = keyed_engine(label, occurrence);
        return u(eng) < p_one ? 1 : 0;
    }

    /// True iff replaying the seed regenerates the logged draws.
    bool replays() const {
        if (script_) {
            return true;
        }
        std::map<std::string, std::size_t> counts;
        for (const auto &[label, bit] : draws_) {
            std::size_t occ = counts[label]++;
            if (static_cast<int>(keyed_engine(label, occ)() & 1) != bit) {
                return false;
            }
        }
        return true;
    }

   private:
    std::mt19937_64 keyed_engine(const std::string &label, std::size_t occurrence) const {
        std::uint64_t h = fnv1a(label);
        std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                          static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                          static_cast<std::uint32_t>(occurrence)};
        return std::mt19937_64(seq);
    }

    std::uint64_t seed_ = 0;
    BitScript *script_ = nullptr;
    std::vector<std::pair<std::string, int>> draws_;
    std::map<std::string, std::size_t> counts_;
};

/// Seed for party `id` derived from a run seed.
inline std::uint64_t party_seed(std::uint64_t run_seed, std::uint64_t id) {
    return splitmix64(hash_combine(run_seed, id + 1));
}

}  // namespace anonqss

#endif
