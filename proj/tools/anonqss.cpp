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

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "anonqss/cli/commands.hpp"

namespace fs = std::filesystem;
using namespace anonqss;
using namespace anonqss::cli;

namespace {

/// Writes to `path`, or to stdout when path is empty or "-".
template <class F>
void emit(const std::string &path, F &&write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    write(out);
}

std::vector<int> parse_id_list(const std::vector<std::string> &items) {
    std::vector<int> out;
    for (const auto &item : items) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) out.push_back(std::stoi(tok));
        }
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Leakage analysis and anonymous protocol simulation for quantum secret sharing"};
    app.require_subcommand(1);
    std::string registry_path;
    app.add_option("--registry", registry_path, "Code registry JSON (default: $ANONQSS_REGISTRY or bundled)");

    // registry
    auto *reg_cmd = app.add_subcommand("registry", "List the codes in the registry (loading certifies them)");

    // leakage
    auto *leak_cmd = app.add_subcommand("leakage", "H_min and maximum fidelity per number of shares");
    std::vector<std::string> leak_codes;
    std::string leak_method = "sdp", leak_format = "csv", leak_out;
    std::optional<std::size_t> leak_shares;
    leak_cmd->add_option("--code", leak_codes, "Code name; repeatable; NAME-H selects the hybrid scheme")->required();
    leak_cmd->add_option("--method", leak_method, "sdp | sdp-full | stabilizer");
    leak_cmd->add_option("--shares", leak_shares, "Single n_p (default: all n_p)");
    leak_cmd->add_option("--format", leak_format, "csv | json");
    leak_cmd->add_option("--output,-o", leak_out, "Output file (default stdout)");

    // reproduce
    auto *repro_cmd = app.add_subcommand("reproduce", "Recompute a published table or figure series and diff it");
    std::string repro_target, repro_dir = ".", repro_expected = expected_dir();
    repro_cmd->add_option("target", repro_target, "table1 | table2 | fig3 | fig4")->required();
    repro_cmd->add_option("--out-dir", repro_dir, "Directory for the emitted CSV files");
    repro_cmd->add_option("--expected-dir", repro_expected, "Directory holding table1.csv / table2.csv");

    // protocol
    auto *proto_cmd = app.add_subcommand("protocol", "Run QASS or HQASS");
    ProtocolConfig pcfg;
    std::vector<std::string> proto_parts;
    std::string proto_policy = "reservation", proto_transcript, proto_format = "json", proto_out;
    proto_cmd->add_option("protocol", pcfg.protocol, "qass | hqass")->required();
    proto_cmd->add_option("--code", pcfg.code, "Code name")->required();
    proto_cmd->add_option("--k", pcfg.k, "Number of participating shareholders")->required();
    proto_cmd->add_option("--participants", proto_parts, "Shareholder ids (default 0..k-1)");
    proto_cmd->add_option("--seed", pcfg.seed, "Run seed");
    proto_cmd->add_option("--policy", proto_policy, "reservation | random");
    proto_cmd->add_option("--retry-cap", pcfg.options.retry_cap, "Collision rounds allowed per slot");
    proto_cmd->add_option("--transcript", proto_transcript, "Write the transcript as JSON lines");
    proto_cmd->add_option("--format", proto_format, "json | text");
    proto_cmd->add_option("--output,-o", proto_out, "Summary file (default stdout)");

    // anonymity
    auto *anon_cmd = app.add_subcommand("anonymity", "Sender anonymity / tracelessness check");
    AnonymityConfig acfg;
    std::vector<std::string> anon_corrupt;
    std::string anon_out;
    bool anon_exact = false;
    anon_cmd->add_option("--protocol", acfg.protocol, "ae | anon | anonq")->required();
    anon_cmd->add_option("--n", acfg.n, "Number of players")->required();
    anon_cmd->add_option("--corrupt", anon_corrupt, "Corrupted party ids (default: every admissible set)");
    anon_cmd->add_flag("--exact", anon_exact, "Exhaustive enumeration (n <= 6)");
    anon_cmd->add_flag("--traceless", acfg.traceless, "Reveal every tape to the adversary");
    anon_cmd->add_option("--samples", acfg.samples, "Monte-Carlo samples per sender");
    anon_cmd->add_option("--seed", acfg.seed, "Monte-Carlo seed");
    anon_cmd->add_option("--output,-o", anon_out, "Report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }

    try {
        auto registry = [&] { return load_registry(registry_path.empty() ? default_registry_path() : registry_path); };

        if (*reg_cmd) {
            Registry reg = registry();
            std::cout << "name,family,n,d,source\n";
            for (const auto &c : reg.codes()) {
                bool pi = std::holds_alternative<PICodeSpec>(c);
                std::string source = pi ? std::get<PICodeSpec>(c).source : std::get<StabilizerCodeSpec>(c).source;
                std::cout << code_name(c) << ',' << (pi ? "pi" : "stabilizer") << ',' << code_n(c) << ','
                          << code_distance(c) << ",\"" << source << "\"\n";
            }
            return kExitPass;
        }

        if (*leak_cmd) {
            Registry reg = registry();
            auto rows = cmd_leakage(reg, leak_codes, leak_shares, parse_method(leak_method));
            emit(leak_out, [&](std::ostream &os) { write_rows(os, rows, leak_format); });
            return kExitPass;
        }

        if (*repro_cmd) {
            Registry reg = registry();
            ReproduceReport rep = cmd_reproduce(reg, repro_target, repro_expected);
            fs::create_directories(repro_dir);
            fs::path base = fs::path(repro_dir) / repro_target;
            emit(base.string() + ".csv", [&](std::ostream &os) { write_rows_csv(os, rep.rows); });
            if (repro_target == "table1" || repro_target == "table2") {
                emit(base.string() + "_table.csv", [&](std::ostream &os) {
                    write_table(os, rep.rows, table_codes(repro_target));
                });
            }
            emit(base.string() + "_diff.txt", [&](std::ostream &os) {
                for (const auto &l : rep.lines) os << l << '\n';
            });
            for (const auto &l : rep.lines)
                if (l.rfind("FAIL", 0) == 0) std::cout << l << '\n';
            std::cout << repro_target << ": " << (rep.pass() ? "PASS" : "FAIL") << " (" << rep.lines.size()
                      << " checks, " << rep.failures << " failed); wrote " << base.string() << ".csv\n";
            return rep.pass() ? kExitPass : kExitMismatch;
        }

        if (*proto_cmd) {
            Registry reg = registry();
            pcfg.participants = parse_id_list(proto_parts);
            if (proto_policy == "reservation") {
                pcfg.options.policy = SlotPolicy::reservation;
            } else if (proto_policy == "random") {
                pcfg.options.policy = SlotPolicy::random_slots;
            } else {
                throw UsageError("unknown policy '" + proto_policy + "'");
            }
            QassResult r = cmd_protocol(reg, pcfg);
            if (!proto_transcript.empty()) {
                emit(proto_transcript, [&](std::ostream &os) { r.network.transcript.write_jsonl(os); });
            }
            auto summary = protocol_summary(pcfg, r);
            emit(proto_out, [&](std::ostream &os) {
                if (proto_format == "json") {
                    os << summary.dump(2) << '\n';
                } else {
                    for (const auto &[k, v] : summary.items()) os << k << '=' << v.dump() << '\n';
                }
            });
            if (r.aborted) {
                std::cerr << "aborted: " << r.abort_reason << '\n';
                return kExitError;
            }
            return kExitPass;
        }

        if (*anon_cmd) {
            acfg.exact = anon_exact;
            if (!anon_corrupt.empty()) {
                auto ids = parse_id_list(anon_corrupt);
                acfg.corrupted = std::set<int>(ids.begin(), ids.end());
            }
            AnonymityReport rep = cmd_anonymity(acfg);
            emit(anon_out, [&](std::ostream &os) { os << anonymity_summary(rep).dump(2) << '\n'; });
            return kExitPass;
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
