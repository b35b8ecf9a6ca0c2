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

#ifndef ANONQSS_CODES_REGISTRY_HPP
#define ANONQSS_CODES_REGISTRY_HPP

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "anonqss/codes/certify.hpp"
#include "anonqss/codes/code_spec.hpp"

#ifndef ANONQSS_DATA_DIR
#define ANONQSS_DATA_DIR "data"
#endif

// Registry file format
// --------------------
//   { "codes": [ entry, ... ] }
//
// entry (family "pi"):
//   name, family, n, k_or_K (=2), d,
//   logical0, logical1: [ {"w": weight, "re": x, "im": y}, ... ]   (omitted weights are 0)
//   optional: construction {"g", "u", "delta"}, classical_basis "Z"|"Y", source
// entry (family "stabilizer"):
//   name, family, n, k_or_K (= k), d,
//   generators, logical_x, logical_z: arrays of strings over {I,X,Y,Z}, optional sign prefix
//   optional: classical_basis, source
//
// Any other key is rejected.

namespace anonqss {

struct RegistryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Registry {
   public:
    Registry() = default;
    explicit Registry(std::vector<CodeSpec> codes) : codes_(std::move(codes)) {}

    const std::vector<CodeSpec> &codes() const { return codes_; }

    const CodeSpec *find(const std::string &name) const {
        for (const auto &c : codes_) {
            if (code_name(c) == name) return &c;
        }
        return nullptr;
    }

    const CodeSpec &at(const std::string &name) const {
        const CodeSpec *c = find(name);
        if (!c) {
            throw RegistryError("unknown code '" + name + "'");
        }
        return *c;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto &c : codes_) out.push_back(code_name(c));
        return out;
    }

   private:
    std::vector<CodeSpec> codes_;
};

namespace detail {

inline void reject_unknown(const nlohmann::json &obj, const std::set<std::string> &allowed, const std::string &where) {
    for (const auto &[key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw RegistryError(where + ": unknown field '" + key + "'");
        }
    }
}

inline DickeVector parse_dicke(const nlohmann::json &arr, std::size_t n, const std::string &where) {
    if (!arr.is_array()) {
        throw RegistryError(where + ": expected an array of {w, re, im}");
    }
    ComplexVector c = ComplexVector::Zero(static_cast<Eigen::Index>(n + 1));
    for (const auto &term : arr) {
        reject_unknown(term, {"w", "re", "im"}, where);
        auto w = term.at("w").get<std::size_t>();
        if (w > n) {
            throw RegistryError(where + ": weight " + std::to_string(w) + " exceeds n");
        }
        c[static_cast<Eigen::Index>(w)] += cplx(term.value("re", 0.0), term.value("im", 0.0));
    }
    try {
        return DickeVector(n, c);
    } catch (const InvariantError &e) {
        throw RegistryError(where + ": " + e.what());
    }
}

inline std::vector<PauliString> parse_paulis(const nlohmann::json &arr) {
    std::vector<PauliString> out;
    for (const auto &s : arr) out.push_back(PauliString::parse(s.get<std::string>()));
    return out;
}

inline LogicalBasis parse_basis(const nlohmann::json &e) {
    std::string b = e.value("classical_basis", std::string("Z"));
    if (b == "Z") return LogicalBasis::Z;
    if (b == "Y") return LogicalBasis::Y;
    throw RegistryError("classical_basis must be \"Z\" or \"Y\"");
}

}  // namespace detail

/// Parses one registry entry and checks its structural invariants
/// (no erasure certification).
inline CodeSpec parse_code_entry(const nlohmann::json &e) {
    std::string name = e.value("name", std::string("<unnamed>"));
    try {
        std::string family = e.at("family").get<std::string>();
        if (family == "pi") {
            detail::reject_unknown(e, {"name", "family", "n", "k_or_K", "d", "logical0", "logical1", "construction",
                                       "classical_basis", "source"},
                                   name);
            PICodeSpec c;
            c.name = name;
            c.n = e.at("n").get<std::size_t>();
            c.K = e.at("k_or_K").get<std::size_t>();
            c.d = e.at("d").get<std::size_t>();
            c.logical0 = detail::parse_dicke(e.at("logical0"), c.n, name + ".logical0");
            c.logical1 = detail::parse_dicke(e.at("logical1"), c.n, name + ".logical1");
            if (e.contains("construction")) {
                const auto &g = e.at("construction");
                detail::reject_unknown(g, {"g", "u", "delta"}, name + ".construction");
                c.construction_meta =
                    GnuParams{g.at("g").get<std::size_t>(), g.at("u").get<std::size_t>(), g.at("delta").get<std::size_t>()};
            }
            c.classical_basis = detail::parse_basis(e);
            c.source = e.value("source", std::string());
            validate_structure(c);
            return c;
        }
        if (family == "stabilizer") {
            detail::reject_unknown(e, {"name", "family", "n", "k_or_K", "d", "generators", "logical_x", "logical_z",
                                       "classical_basis", "source"},
                                   name);
            StabilizerCodeSpec c;
            c.name = name;
            c.n = e.at("n").get<std::size_t>();
            c.k = e.at("k_or_K").get<std::size_t>();
            c.d = e.at("d").get<std::size_t>();
            c.generators = detail::parse_paulis(e.at("generators"));
            c.logical_x = detail::parse_paulis(e.at("logical_x"));
            c.logical_z = detail::parse_paulis(e.at("logical_z"));
            c.classical_basis = detail::parse_basis(e);
            c.source = e.value("source", std::string());
            validate_structure(c);
            return c;
        }
        throw RegistryError(name + ": family must be \"pi\" or \"stabilizer\"");
    } catch (const InvariantError &err) {
        throw RegistryError(std::string("invariant violated: ") + err.what());
    } catch (const nlohmann::json::exception &err) {
        throw RegistryError(name + ": " + err.what());
    } catch (const std::invalid_argument &err) {
        throw RegistryError(name + ": " + err.what());
    }
}

/// Parses a registry document and certifies every code at its claimed distance.
inline Registry parse_registry(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw RegistryError(std::string("registry parse failure: ") + e.what());
    }
    if (!doc.is_object()) {
        throw RegistryError("registry root must be an object");
    }
    detail::reject_unknown(doc, {"codes"}, "registry");
    std::vector<CodeSpec> codes;
    for (const auto &entry : doc.at("codes")) {
        CodeSpec c = parse_code_entry(entry);
        if (code_distance(c) == 0 || code_distance(c) > code_n(c)) {
            throw RegistryError(code_name(c) + ": distance out of range");
        }
        CertifyReport rep = certify_erasure(c, code_distance(c) - 1);
        if (!rep.pass) {
            std::ostringstream msg;
            msg << "invariant violated: " << code_name(c) << " fails erasure certification at t=" << code_distance(c) - 1
                << " (deviation " << rep.worst_deviation << ")";
            throw RegistryError(msg.str());
        }
        for (const auto &prev : codes) {
            if (code_name(prev) == code_name(c)) {
                throw RegistryError("duplicate code name '" + code_name(c) + "'");
            }
        }
        codes.push_back(std::move(c));
    }
    return Registry(std::move(codes));
}

inline Registry load_registry(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw RegistryError("cannot open registry file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_registry(buf.str());
}

/// $ANONQSS_REGISTRY if set, else the bundled data/registry.json.
inline std::string default_registry_path() {
    if (const char *env = std::getenv("ANONQSS_REGISTRY"); env && *env) {
        return env;
    }
    return std::string(ANONQSS_DATA_DIR) + "/registry.json";
}

}  // namespace anonqss

#endif
