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

#ifndef ANONQSS_CLI_COMMANDS_HPP
#define ANONQSS_CLI_COMMANDS_HPP

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "anonqss/codes/registry.hpp"
#include "anonqss/leakage/hybrid.hpp"
#include "anonqss/leakage/leakage.hpp"
#include "anonqss/protocols/anonymity.hpp"
#include "anonqss/protocols/qass.hpp"

namespace anonqss::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0) v = 0;  // drop the sign of -0
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline nlohmann::json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    return v == 0 ? 0.0 : v;
}

inline std::string expected_dir() { return std::string(ANONQSS_DATA_DIR) + "/expected"; }

// ---------------------------------------------------------------- leakage

enum class Method { automatic, sdp_full, stabilizer };

inline Method parse_method(const std::string &s) {
    if (s == "auto" || s == "sdp") return Method::automatic;
    if (s == "sdp-full") return Method::sdp_full;
    if (s == "stabilizer") return Method::stabilizer;
    throw UsageError("unknown method '" + s + "' (expected sdp, sdp-full or stabilizer)");
}

struct LeakageRow {
    std::string code;
    std::size_t n_p = 0;
    double h_min = NAN;
    double f_max = NAN;
    std::string method;
    double gap = NAN;
};

/// Names ending in "-H" that are not themselves registry entries denote the
/// hybrid scheme of the base code (twirl keys shared with the same code).
inline bool is_hybrid_name(const Registry &reg, const std::string &name) {
    return !reg.find(name) && name.size() > 2 && name.substr(name.size() - 2) == "-H";
}

inline std::size_t code_length(const Registry &reg, const std::string &name) {
    if (is_hybrid_name(reg, name)) return code_n(reg.at(name.substr(0, name.size() - 2)));
    return code_n(reg.at(name));
}

inline LeakageRow leakage_row(const Registry &reg, const std::string &name, std::size_t n_p, Method method,
                              const SdpOptions &opt = {}) {
    LeakageRow row;
    row.code = name;
    row.n_p = n_p;
    if (n_p > code_length(reg, name)) {
        throw UsageError("n_p = " + std::to_string(n_p) + " exceeds the length of " + name);
    }
    LeakageResult r;
    try {
        if (is_hybrid_name(reg, name)) {
            if (method != Method::automatic) {
                throw UsageError("hybrid schemes support only the sdp method");
            }
            const CodeSpec &base = reg.at(name.substr(0, name.size() - 2));
            r = q_corr_sdp(build_hybrid_state(base, base, base, n_p), opt);
        } else {
            const CodeSpec &code = reg.at(name);
            std::size_t n = code_n(code);
            if (method == Method::stabilizer) {
                const auto *stab = std::get_if<StabilizerCodeSpec>(&code);
                if (!stab) {
                    throw UsageError(name + " is not a stabilizer code");
                }
                r = h_min_stabilizer(*stab, ErasurePattern::last(n, n - n_p));
            } else if (method == Method::sdp_full) {
                r = q_corr_sdp(build_joint_state_full(code, ErasurePattern::last(n, n - n_p)), opt);
            } else {
                r = q_corr_sdp(build_joint_state(code, n_p), opt);
            }
        }
    } catch (const SolverError &e) {
        row.method = "failed";
        row.gap = e.upper - e.lower;
        return row;
    }
    row.h_min = r.h_min;
    row.f_max = r.f_max;
    row.method = r.method;
    row.gap = r.gap;
    return row;
}

/// One row per (code, n_p): codes by name, n_p descending.
inline std::vector<LeakageRow> cmd_leakage(const Registry &reg, std::vector<std::string> codes,
                                           std::optional<std::size_t> shares, Method method) {
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    std::vector<LeakageRow> rows;
    for (const auto &name : codes) {
        std::size_t n = code_length(reg, name);
        if (shares) {
            rows.push_back(leakage_row(reg, name, *shares, method));
            continue;
        }
        for (std::size_t np = n + 1; np-- > 0;) rows.push_back(leakage_row(reg, name, np, method));
    }
    return rows;
}

inline void write_rows_csv(std::ostream &os, const std::vector<LeakageRow> &rows) {
    os << "code,n_p,h_min,f_max,method,gap\n";
    for (const auto &r : rows) {
        os << r.code << ',' << r.n_p << ',' << format_number(r.h_min) << ',' << format_number(r.f_max) << ','
           << r.method << ',' << format_number(r.gap) << '\n';
    }
}

inline void write_rows_json(std::ostream &os, const std::vector<LeakageRow> &rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
        nlohmann::ordered_json j;
        j["code"] = r.code;
        j["n_p"] = r.n_p;
        j["h_min"] = json_number(r.h_min);
        j["f_max"] = json_number(r.f_max);
        j["method"] = r.method;
        j["gap"] = json_number(r.gap);
        arr.push_back(j);
    }
    os << arr.dump(2) << '\n';
}

inline void write_rows(std::ostream &os, const std::vector<LeakageRow> &rows, const std::string &format) {
    if (format == "csv") {
        write_rows_csv(os, rows);
    } else if (format == "json") {
        write_rows_json(os, rows);
    } else {
        throw UsageError("unknown format '" + format + "' (expected csv or json)");
    }
}

// -------------------------------------------------------------- reproduce

struct ExpectedCell {
    std::string code;
    std::size_t n_p;
    double h_min, f_max;
};

/// Reads `code,n_p,h_min,f_max` rows (header line first).
inline std::vector<ExpectedCell> load_expected(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open expected values '" + path + "'");
    }
    std::vector<ExpectedCell> cells;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string code, np, h, f;
        std::getline(ss, code, ',');
        std::getline(ss, np, ',');
        std::getline(ss, h, ',');
        std::getline(ss, f, ',');
        cells.push_back({code, std::stoul(np), std::stod(h), std::stod(f)});
    }
    return cells;
}

struct ReproduceReport {
    std::string target;
    std::vector<LeakageRow> rows;
    std::vector<std::string> lines;  // per-cell or per-check report
    std::size_t failures = 0;
    bool pass() const { return failures == 0; }
};

inline const std::vector<std::string> &table_codes(const std::string &target) {
    static const std::vector<std::string> t1{"AAB4", "HN4", "LNCY4", "AAB4-H"};
    static const std::vector<std::string> t2{"PR7", "AAB7", "R9", "KT11", "O11", "AAB11", "KT13", "O13"};
    static const std::vector<std::string> f3{"AAB4", "HN4", "LNCY4"};
    if (target == "table1") return t1;
    if (target == "table2" || target == "fig4") return t2;
    if (target == "fig3") return f3;
    throw UsageError("unknown target '" + target + "' (expected table1, table2, fig3 or fig4)");
}

inline std::vector<LeakageRow> table_rows(const Registry &reg, const std::vector<std::string> &codes) {
    std::vector<LeakageRow> rows;
    for (const auto &name : codes) {
        for (std::size_t np = code_length(reg, name) + 1; np-- > 0;) {
            rows.push_back(leakage_row(reg, name, np, Method::automatic));
        }
    }
    return rows;
}

/// Checks that the h_min and f_max series of `a` and `b` agree within tol.
inline void compare_series(const std::vector<LeakageRow> &rows, const std::string &a, const std::string &b, double tol,
                           ReproduceReport &rep) {
    double worst = 0;
    for (const auto &ra : rows) {
        if (ra.code != a) continue;
        for (const auto &rb : rows) {
            if (rb.code == b && rb.n_p == ra.n_p) {
                worst = std::max({worst, std::abs(ra.h_min - rb.h_min), std::abs(ra.f_max - rb.f_max)});
                if (std::isnan(ra.h_min) || std::isnan(rb.h_min)) worst = INFINITY;
            }
        }
    }
    bool ok = worst <= tol;
    rep.failures += ok ? 0 : 1;
    rep.lines.push_back((ok ? "PASS " : "FAIL ") + a + " == " + b + " max|diff| = " + format_number(worst));
}

inline ReproduceReport cmd_reproduce(const Registry &reg, const std::string &target, const std::string &exp_dir) {
    ReproduceReport rep;
    rep.target = target;
    rep.rows = table_rows(reg, table_codes(target));
    if (target == "table1" || target == "table2") {
        for (const auto &cell : load_expected(exp_dir + "/" + target + ".csv")) {
            const LeakageRow *row = nullptr;
            for (const auto &r : rep.rows)
                if (r.code == cell.code && r.n_p == cell.n_p) row = &r;
            if (!row) {
                rep.failures++;
                rep.lines.push_back("FAIL " + cell.code + " n_p=" + std::to_string(cell.n_p) + " missing");
                continue;
            }
            double dh = std::abs(row->h_min - cell.h_min);
            double df = std::abs(row->f_max - cell.f_max);
            bool ok = dh <= 0.01 + 1e-9 && df <= 0.01 + 1e-9;
            rep.failures += ok ? 0 : 1;
            std::ostringstream s;
            s << (ok ? "PASS " : "FAIL ") << cell.code << " n_p=" << cell.n_p << " h_min " << format_number(row->h_min)
              << " vs " << format_number(cell.h_min) << " f_max " << format_number(row->f_max) << " vs "
              << format_number(cell.f_max);
            rep.lines.push_back(s.str());
        }
        if (target == "table2") compare_series(rep.rows, "PR7", "AAB7", 1e-6, rep);
    } else if (target == "fig3") {
        compare_series(rep.rows, "AAB4", "HN4", 1e-6, rep);
        compare_series(rep.rows, "AAB4", "LNCY4", 1e-6, rep);
    } else {
        compare_series(rep.rows, "PR7", "AAB7", 1e-6, rep);
    }
    return rep;
}

/// Two-decimal table: one line per n_p (descending), h_min and F per code.
inline void write_table(std::ostream &os, const std::vector<LeakageRow> &rows, const std::vector<std::string> &codes) {
    std::size_t max_n = 0;
    for (const auto &r : rows) max_n = std::max(max_n, r.n_p);
    os << "n_p";
    for (const auto &c : codes) os << ',' << c << ":h_min," << c << ":F";
    os << '\n';
    char buf[32];
    for (std::size_t np = max_n + 1; np-- > 0;) {
        os << np;
        for (const auto &c : codes) {
            const LeakageRow *row = nullptr;
            for (const auto &r : rows)
                if (r.code == c && r.n_p == np) row = &r;
            if (!row) {
                os << ",--,--";
                continue;
            }
            std::snprintf(buf, sizeof buf, ",%.2f", row->h_min == 0 ? 0.0 : row->h_min);
            os << buf;
            std::snprintf(buf, sizeof buf, ",%.2f", row->f_max);
            os << buf;
        }
        os << '\n';
    }
}

// --------------------------------------------------------------- protocol

struct ProtocolConfig {
    std::string protocol = "qass";  // qass | hqass
    std::string code;
    std::size_t k = 0;
    std::vector<int> participants;  // empty: shareholders 0..k-1
    std::uint64_t seed = 0;
    QassOptions options;
};

inline QassResult cmd_protocol(const Registry &reg, const ProtocolConfig &cfg) {
    std::string name = cfg.code;
    if (is_hybrid_name(reg, name)) name = name.substr(0, name.size() - 2);
    const CodeSpec &code = reg.at(name);
    std::vector<int> parts = cfg.participants;
    if (parts.empty()) {
        if (cfg.k > code_n(code)) {
            throw UsageError("k exceeds the number of shareholders");
        }
        for (std::size_t i = 0; i < cfg.k; i++) parts.push_back(static_cast<int>(i));
    } else if (parts.size() != cfg.k) {
        throw UsageError("participant list does not have k entries");
    }
    if (cfg.protocol == "qass") return protocol_qass(code, parts, cfg.seed, cfg.options);
    if (cfg.protocol == "hqass") return protocol_hqass(code, code, code, parts, cfg.seed, cfg.options);
    throw UsageError("unknown protocol '" + cfg.protocol + "' (expected qass or hqass)");
}

inline nlohmann::ordered_json protocol_summary(const ProtocolConfig &cfg, const QassResult &r) {
    nlohmann::ordered_json j;
    j["protocol"] = cfg.protocol;
    j["code"] = cfg.code;
    j["k"] = cfg.k;
    j["seed"] = cfg.seed;
    j["aborted"] = r.aborted;
    if (r.aborted) j["abort_reason"] = r.abort_reason;
    j["send_order"] = r.send_order;
    j["retries"] = r.retries;
    if (!r.aborted) {
        j["fidelity"] = json_number(r.fidelity);
        j["pre_correction_fidelity"] = json_number(r.pre_correction_fidelity);
    }
    if (cfg.protocol == "hqass") {
        j["twirl"] = {r.twirl_a, r.twirl_b};
        auto dec = [](const ClassicalDecode &d) {
            nlohmann::ordered_json o;
            o["ok"] = d.ok;
            o["bit"] = d.bit;
            o["confidence"] = json_number(d.confidence);
            return o;
        };
        j["decoded_a"] = dec(r.decoded_a);
        j["decoded_b"] = dec(r.decoded_b);
    }
    j["ghz"] = r.network.transcript.ledger();
    j["ghz_total"] = r.network.transcript.ghz_total();
    return j;
}

// -------------------------------------------------------------- anonymity

struct AnonymityConfig {
    std::string protocol = "anon";
    std::size_t n = 4;
    std::optional<std::set<int>> corrupted;  // unset: every admissible set (exact mode)
    bool exact = true;
    bool traceless = false;
    std::size_t samples = 2000;
    std::uint64_t seed = 0;
};

inline AnonymityReport cmd_anonymity(const AnonymityConfig &cfg) {
    AnonProtocol proto = parse_anon_protocol(cfg.protocol);
    if (cfg.corrupted) {
        for (int p : *cfg.corrupted) {
            if (p < 0 || static_cast<std::size_t>(p) >= cfg.n) {
                throw UsageError("corrupted party " + std::to_string(p) + " is not a player");
            }
        }
    }
    if (cfg.exact) {
        if (cfg.n > kEnumerationCap) {
            throw UsageError("n = " + std::to_string(cfg.n) + " exceeds the exact enumeration cap of " +
                             std::to_string(kEnumerationCap) + "; drop --exact to sample");
        }
        auto sets = cfg.corrupted ? std::vector<std::set<int>>{*cfg.corrupted} : admissible_corrupted_sets(cfg.n);
        return anonymity_check(proto, cfg.n, sets, cfg.traceless);
    }
    return anonymity_monte_carlo(proto, cfg.n, cfg.corrupted.value_or(std::set<int>{}), cfg.traceless, cfg.samples,
                                 cfg.seed);
}

inline nlohmann::ordered_json anonymity_summary(const AnonymityReport &r) {
    nlohmann::ordered_json j;
    j["protocol"] = to_string(r.protocol);
    j["n"] = r.n;
    j["mode"] = r.exact ? "exact" : "monte-carlo";
    j["traceless"] = r.traceless;
    j["max_tv"] = json_number(r.max_tv);
    j["configurations"] = r.configurations;
    if (r.exact) {
        j["branches"] = r.branches;
    } else {
        j["samples"] = r.samples;
        j["noise_floor"] = json_number(r.noise_floor);
    }
    return j;
}

}  // namespace anonqss::cli

#endif
