// Copyright 2026 The transvect Authors
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

// transvect command-line front end.
//
// Exit codes: 0 ok, 2 parse/config/unsupported, 3 validation failure,
// 4 capacity limit, 5 internal invariant.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "transvect/oracle.hpp"
#include "transvect/transvect.hpp"

using namespace transvect;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kInvalid = 3, kCapacity = 4, kInternal = 5 };

struct CodeSource {
    std::string builtin;
    std::string path;
    std::vector<std::string> lp;      // two circulant files
    std::vector<std::string> checks;  // two sparse check files (H_X, H_Z)

    void attach(CLI::App *app) {
        auto *g = app->add_option_group("code source", "Exactly one code source");
        g->add_option("--builtin", builtin, "Built-in code name (833)");
        g->add_option("--code", path, "Code file");
        g->add_option("--lp", lp, "Lifted-product code from two circulant matrix files A B")->expected(2);
        g->add_option("--checks", checks, "CSS code from sparse check files HX HZ")->expected(2);
        g->require_option(0, 1);
    }

    bool given() const {
        return !builtin.empty() || !path.empty() || !lp.empty() || !checks.empty();
    }

    StabilizerCode load(bool check = true) const {
        if (!builtin.empty()) {
            if (builtin == "833" || builtin == "8,3,3" || builtin == "[[8,3,3]]") {
                return builtin_833();
            }
            throw ParseError("unknown builtin code '" + builtin + "' (available: 833)", 0);
        }
        if (!path.empty()) {
            return load_code(path, check);
        }
        if (!lp.empty()) {
            return lifted_product(parse_circulant(read_text_file(lp[0])), parse_circulant(read_text_file(lp[1])),
                                  "LP");
        }
        if (!checks.empty()) {
            return css_code_from_checks(load_sparse_checks(checks[0]), load_sparse_checks(checks[1]), "CSS");
        }
        throw ParseError("no code given (use --builtin, --code, --lp or --checks)", 0);
    }
};

// Physical rotation axis: either a lifted logical Pauli or an explicit physical one.
struct AxisSource {
    std::string logical;
    std::string physical;
    std::size_t qubits = 0;
    std::string theta_text = "pi/2";
    std::string reduce;

    void attach(CLI::App *app, bool with_theta = true) {
        app->add_option("--logical", logical, "Logical Pauli on k qubits, e.g. \"X1 Z2 X3\" or XZX");
        app->add_option("--physical", physical, "Physical rotation axis (instead of --logical)");
        app->add_option("--qubits", qubits, "Width of --physical when no code is given");
        if (with_theta) {
            app->add_option("--theta", theta_text, "Rotation angle in radians or a multiple of pi (default pi/2)");
        }
        app->add_option("--reduce", reduce, "Weight reduction: exhaustive | greedy");
    }

    double theta() const {
        double t = parse_angle(theta_text);
        if (!std::isfinite(t)) {
            throw ParseError("theta must be finite", 0);
        }
        return t;
    }

    std::optional<ReduceStrategy> strategy() const {
        if (reduce.empty()) {
            return std::nullopt;
        }
        return parse_reduce_strategy(reduce);
    }

    bool has_logical() const {
        return !logical.empty();
    }

    /// Physical axis before any weight reduction.
    PhasedPauli raw_axis(const std::optional<StabilizerCode> &code) const {
        if (logical.empty() == physical.empty()) {
            throw ParseError("give exactly one of --logical and --physical", 0);
        }
        if (!logical.empty()) {
            if (!code) {
                throw ParseError("--logical needs a code", 0);
            }
            return lift(*code, parse_pauli(logical, code->k));
        }
        std::size_t n = code ? code->n : qubits;
        if (n == 0) {
            // Dense form: count the Pauli letters.
            for (char c : physical) {
                n += (c == 'I' || c == 'X' || c == 'Y' || c == 'Z') ? 1 : 0;
            }
        }
        return parse_pauli(physical, n);
    }

    PhasedPauli axis(const std::optional<StabilizerCode> &code) const {
        PhasedPauli p = raw_axis(code);
        if (auto s = strategy()) {
            if (!code) {
                throw ParseError("--reduce needs a code", 0);
            }
            p = reduce_weight(p, *code, *s);
        }
        return p;
    }
};

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

std::string describe_code(const StabilizerCode &code) {
    std::ostringstream out;
    out << "name: " << (code.name.empty() ? "(unnamed)" : code.name) << "\n";
    out << "n: " << code.n << "\nk: " << code.k << "\nd: ";
    if (code.distance) {
        out << *code.distance << "\n";
    } else {
        out << "unknown\n";
    }
    out << "stabilizers:\n";
    for (std::size_t j = 0; j < code.stabilizers.size(); ++j) {
        out << "  S" << j + 1 << "  " << format_pauli(code.stabilizers[j]) << "\n";
    }
    out << "logical operators:\n";
    for (std::size_t i = 0; i < code.k; ++i) {
        out << "  X" << i + 1 << "  " << format_pauli(code.logical_x[i]) << "\n";
        out << "  Z" << i + 1 << "  " << format_pauli(code.logical_z[i]) << "\n";
    }
    return out.str();
}

int report_validation(const StabilizerCode &code) {
    auto violations = validate(code);
    if (violations.empty()) {
        std::cout << "validation: ok\n";
        return kOk;
    }
    std::cout << "validation: " << violations.size() << " violation(s)\n" << format_violations(violations);
    return kInvalid;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_code(const std::string &action, const CodeSource &src, const std::string &out_path) {
    StabilizerCode code = src.load(false);
    if (action == "info") {
        std::cout << describe_code(code);
        return report_validation(code);
    }
    if (action == "validate") {
        return report_validation(code);
    }
    // save
    if (!validate(code).empty()) {
        return report_validation(code);
    }
    write_text(out_path, format_code(code));
    return kOk;
}

int cmd_synth(const CodeSource &src, const AxisSource &axis, bool json, const std::string &out_path,
              const std::string &json_path) {
    std::optional<StabilizerCode> code;
    if (src.given()) {
        code = src.load();
    }
    PhasedPauli p = axis.axis(code);
    double theta = axis.theta();
    Circuit c = synthesize_trotter(p, theta);
    nlohmann::json j = circuit_to_json(c);
    j["axis"] = format_pauli(p.hermitian_part());
    j["theta"] = theta;
    j["theta_text"] = format_angle(theta);
    j["depth"] = depth(c);
    if (!json_path.empty()) {
        write_text(json_path, j.dump(2) + "\n");
    }
    if (json) {
        write_text(out_path, j.dump(2) + "\n");
        return kOk;
    }
    std::ostringstream text;
    text << "# axis " << format_pauli(p.hermitian_part()) << " theta " << format_angle(theta) << " depth " << depth(c)
         << " gates " << c.gates.size() << "\n";
    text << format_circuit(c);
    write_text(out_path, text.str());
    return kOk;
}

int cmd_reduce(const CodeSource &src, const AxisSource &axis, bool json) {
    StabilizerCode code = src.load();
    PhasedPauli raw = axis.raw_axis(code);
    ReduceStrategy strategy = axis.strategy().value_or(ReduceStrategy::Exhaustive);
    WeightReduction r = reduce_weight_detailed(raw, code, strategy);
    std::vector<std::size_t> gens;
    for (auto g : r.generators.ones()) {
        gens.push_back(g + 1);
    }
    if (json) {
        nlohmann::json j{{"input", format_pauli(raw)},
                         {"input_weight", r.original_weight},
                         {"result", format_pauli(r.result)},
                         {"result_weight", r.result.weight()},
                         {"generators", gens},
                         {"strategy", strategy == ReduceStrategy::Exhaustive ? "exhaustive" : "greedy"}};
        std::cout << j.dump(2) << "\n";
        return kOk;
    }
    std::cout << "input:      " << format_sparse(raw) << "  (weight " << r.original_weight << ")\n";
    std::cout << "reduced:    " << format_sparse(r.result) << "  (weight " << r.result.weight() << ")\n";
    std::cout << "generators:";
    if (gens.empty()) {
        std::cout << " none";
    }
    for (auto g : gens) {
        std::cout << " S" << g;
    }
    std::cout << "\n";
    return kOk;
}

void print_report(const VerificationReport &r) {
    std::cout << r.kind << " axis " << r.axis << " theta " << format_angle(r.theta) << "\n";
    for (const auto &c : r.checks) {
        std::cout << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << "  " << format_sparse(c.input) << " -> "
                  << format_sum(c.actual);
        if (!c.pass) {
            std::cout << "  expected " << format_sum(c.expected);
            if (!c.message.empty()) {
                std::cout << " (" << c.message << ")";
            }
        }
        std::cout << "\n";
    }
}

int cmd_verify(const CodeSource &src, const AxisSource &axis, bool json) {
    StabilizerCode code = src.load();
    double theta = axis.theta();
    PhasedPauli phys = axis.axis(code);
    std::vector<VerificationReport> reports;
    if (axis.has_logical()) {
        PhasedPauli logical = parse_pauli(axis.logical, code.k);
        reports.push_back(verify_logical_action(code, logical, theta, synthesize_trotter(phys, theta)));
    }
    reports.push_back(verify_stabilizer_centralization(code, phys, theta));
    bool ok = true;
    nlohmann::json j = nlohmann::json::array();
    for (const auto &r : reports) {
        ok = ok && r.all_pass();
        j.push_back(r.to_json());
    }
    if (json) {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto &r : reports) {
            print_report(r);
        }
        std::cout << (ok ? "verification: all constraints satisfied\n" : "verification: FAILED\n");
    }
    return ok ? kOk : kInvalid;
}

int cmd_oracle(const CodeSource &src, const AxisSource &axis, std::size_t samples, std::uint64_t seed) {
    std::optional<StabilizerCode> code;
    if (src.given()) {
        code = src.load();
    }
    PhasedPauli p = axis.axis(code);
    const std::size_t n = p.num_qubits();
    oracle::check_capacity(n);
    double theta = axis.theta();
    Circuit c = synthesize_trotter(p, theta);
    auto u = oracle::dense_circuit(c);
    int failures = 0;
    auto line = [&](bool pass, const std::string &what, const std::string &detail = {}) {
        std::cout << (pass ? "ok   " : "FAIL ") << what << (detail.empty() ? "" : "  " + detail) << "\n";
        failures += pass ? 0 : 1;
    };

    line(oracle::equal_up_to_global_phase(u, oracle::dense_trotter(p, theta)),
         "circuit equals exp(-i theta/2 P) up to global phase");

    // Conjugation engine against the matrices, on code operators or the axis' neighbours.
    std::vector<std::pair<std::string, PhasedPauli>> probes;
    if (code) {
        for (std::size_t j = 0; j < code->stabilizers.size(); ++j) {
            probes.emplace_back("S" + std::to_string(j + 1), code->stabilizers[j]);
        }
        for (std::size_t i = 0; i < code->k; ++i) {
            probes.emplace_back("X" + std::to_string(i + 1) + " (lifted)", code->logical_x[i]);
            probes.emplace_back("Z" + std::to_string(i + 1) + " (lifted)", code->logical_z[i]);
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        for (char b : {'X', 'Z'}) {
            probes.emplace_back(std::string(1, b) + std::to_string(q + 1), PhasedPauli::single(n, q, b));
        }
    }
    for (const auto &[name, q] : probes) {
        auto lhs = oracle::dense_sum(conjugate_circuit(q, c), n);
        auto rhs = oracle::conjugate(u, oracle::dense_pauli(q));
        line(oracle::approx_equal(lhs, rhs), "conjugation " + name);
    }

    // Double-angle identity q (U q U^dag) = cos(theta) I + i sin(theta) P for anticommuting q.
    std::mt19937_64 rng(seed);
    std::size_t tested = 0, attempts = 0;
    PhasedPauli herm = p.hermitian_part();
    int double_angle_failures = 0;
    while (tested < samples && attempts < 100 * samples + 100) {
        ++attempts;
        PhasedPauli q(n);
        for (std::size_t k = 0; k < n; ++k) {
            q.set(k, "IXYZ"[rng() % 4]);
        }
        if (commutes(q, herm)) {
            continue;
        }
        ++tested;
        auto Q = oracle::dense_pauli(q);
        oracle::DenseOperator lhs = Q * oracle::conjugate(u, Q);
        if (!oracle::approx_equal(lhs, oracle::dense_sum(double_angle_product(q, herm, theta), n)) ||
            !oracle::approx_equal(lhs, oracle::dense_trotter(herm, -2 * theta))) {
            ++double_angle_failures;
        }
    }
    if (samples > 0) {
        line(double_angle_failures == 0 && tested > 0,
             "double-angle identity on " + std::to_string(tested) + " anticommuting Paulis");
    }
    std::cout << (failures == 0 ? "oracle: all checks passed\n" : "oracle: " + std::to_string(failures) + " failure(s)\n");
    return failures == 0 ? kOk : kInvalid;
}

std::vector<double> parse_p_list(const std::string &text) {
    // "a:b:logN" or a comma-separated list.
    auto number = [&](const std::string &s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != s.size() || s.empty() || !std::isfinite(v)) {
            throw ParseError("bad probability '" + s + "' in --p", 0);
        }
        return v;
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        auto c1 = text.find(':');
        auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos || text.compare(c2 + 1, 3, "log") != 0) {
            throw ParseError("--p range must look like a:b:logN", c1);
        }
        std::string count = text.substr(c2 + 4);
        if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError("--p range must look like a:b:logN", c2);
        }
        return log_range(number(text.substr(0, c1)), number(text.substr(c1 + 1, c2 - c1 - 1)), std::stoul(count));
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(number(item));
    }
    if (out.empty()) {
        throw ParseError("--p is empty", 0);
    }
    return out;
}

FailureScope parse_failure(const std::string &text, std::size_t k) {
    if (text == "any" || text == "any_logical") {
        return FailureScope::any_logical();
    }
    for (const std::string prefix : {"target:", "targeted:"}) {
        if (text.rfind(prefix, 0) == 0) {
            std::string idx = text.substr(prefix.size());
            if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos) {
                break;
            }
            std::size_t i = std::stoul(idx);
            if (i < 1 || i > k) {
                throw std::invalid_argument("--failure target " + idx + " out of range 1.." + std::to_string(k));
            }
            return FailureScope::target(i - 1);
        }
    }
    throw ParseError("bad --failure '" + text + "' (any | target:i)", 0);
}

struct SimulateFlags {
    std::string circuit_path;
    std::string p_text = "1e-3:1e-2:log8";
    std::uint64_t shots = 10000;
    std::string decoder = "lookup";
    std::uint64_t seed = 1;
    std::string failure = "any";
    unsigned threads = 0;
    bool single_qubit_noise = false;
    bool no_idle_noise = false;
    std::string out_path;
};

int cmd_simulate(const CodeSource &src, const AxisSource &axis, const SimulateFlags &f) {
    StabilizerCode code = src.load();
    Circuit c = f.circuit_path.empty() ? synthesize_trotter(axis.axis(code), axis.theta())
                                       : parse_circuit(read_text_file(f.circuit_path));
    SimOptions opt;
    opt.shots = f.shots;
    opt.seed = f.seed;
    opt.threads = f.threads;
    opt.decoder.kind = parse_decoder_kind(f.decoder);
    opt.scope = parse_failure(f.failure, code.k);
    NoiseModel noise;
    noise.single_qubit_gate_noise = f.single_qubit_noise;
    noise.idle_noise = !f.no_idle_noise;
    auto rows = sweep(code, c, parse_p_list(f.p_text), noise, opt);
    write_text(f.out_path, to_csv(rows));
    if (auto pt = pseudothreshold(rows)) {
        std::cerr << "pseudothreshold: " << *pt << "\n";
    } else {
        std::cerr << "pseudothreshold: no crossing with rate = p in the swept range\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"transvect: compile and verify logical Trotter circuits on stabilizer codes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "transvect 1.0.0");

    // code
    CodeSource code_src;
    std::string code_out;
    std::string code_action;
    auto *code_cmd = app.add_subcommand("code", "Inspect, validate or save a stabilizer code");
    code_cmd->require_subcommand(1);
    for (const char *action : {"info", "validate", "save"}) {
        auto *sub = code_cmd->add_subcommand(action, std::string(action) == "info"       ? "Print parameters and generators"
                                                     : std::string(action) == "validate" ? "Check all code invariants"
                                                                                         : "Write the code file format");
        code_src.attach(sub);
        if (std::string(action) == "save") {
            sub->add_option("--out", code_out, "Output path (default stdout)");
        }
        sub->callback([&code_action, action] { code_action = action; });
    }

    // synth
    CodeSource synth_src;
    AxisSource synth_axis;
    bool synth_json = false;
    std::string synth_out, synth_json_out;
    auto *synth_cmd = app.add_subcommand("synth", "Synthesize the Trotter circuit exp(-i theta/2 P)");
    synth_src.attach(synth_cmd);
    synth_axis.attach(synth_cmd);
    synth_cmd->add_flag("--json", synth_json, "Print the JSON circuit instead of text");
    synth_cmd->add_option("--out", synth_out, "Output path (default stdout)");
    synth_cmd->add_option("--json-out", synth_json_out, "Also write the JSON circuit here");

    // reduce
    CodeSource reduce_src;
    AxisSource reduce_axis;
    bool reduce_json = false;
    auto *reduce_cmd = app.add_subcommand("reduce", "Minimize the axis weight over its stabilizer coset");
    reduce_src.attach(reduce_cmd);
    reduce_axis.attach(reduce_cmd, false);
    reduce_cmd->add_flag("--json", reduce_json, "JSON output");

    // verify
    CodeSource verify_src;
    AxisSource verify_axis;
    bool verify_json = false;
    auto *verify_cmd = app.add_subcommand("verify", "Check logical action and stabilizer centralization");
    verify_src.attach(verify_cmd);
    verify_axis.attach(verify_cmd);
    verify_cmd->add_flag("--json", verify_json, "JSON output");

    // oracle
    CodeSource oracle_src;
    AxisSource oracle_axis;
    std::size_t oracle_samples = 50;
    std::uint64_t oracle_seed = 1;
    auto *oracle_cmd = app.add_subcommand("oracle", "Certify against dense matrices (at most 10 qubits)");
    oracle_src.attach(oracle_cmd);
    oracle_axis.attach(oracle_cmd);
    oracle_cmd->add_option("--samples", oracle_samples, "Random Paulis for the double-angle identity");
    oracle_cmd->add_option("--seed", oracle_seed, "Seed for the random Paulis");

    // simulate
    CodeSource sim_src;
    AxisSource sim_axis;
    SimulateFlags sim;
    auto *sim_cmd = app.add_subcommand("simulate", "Monte Carlo logical failure rate sweep (CSV)");
    sim_src.attach(sim_cmd);
    sim_axis.attach(sim_cmd);
    sim_cmd->add_option("--circuit", sim.circuit_path, "Clifford circuit file (instead of --logical/--physical)");
    sim_cmd->add_option("--p", sim.p_text, "Physical error rates: a,b,c or a:b:logN");
    sim_cmd->add_option("--shots", sim.shots, "Shots per p");
    sim_cmd->add_option("--decoder", sim.decoder, "lookup | bp_osd");
    sim_cmd->add_option("--seed", sim.seed, "Master seed");
    sim_cmd->add_option("--failure", sim.failure, "any | target:i (1-based logical qubit)");
    sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
    sim_cmd->add_flag("--single-qubit-noise", sim.single_qubit_noise, "Depolarize after single-qubit gates");
    sim_cmd->add_flag("--no-idle-noise", sim.no_idle_noise, "Disable idle depolarizing noise");
    sim_cmd->add_option("--out", sim.out_path, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (code_cmd->parsed()) {
            return cmd_code(code_action, code_src, code_out);
        }
        if (synth_cmd->parsed()) {
            return cmd_synth(synth_src, synth_axis, synth_json, synth_out, synth_json_out);
        }
        if (reduce_cmd->parsed()) {
            return cmd_reduce(reduce_src, reduce_axis, reduce_json);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(verify_src, verify_axis, verify_json);
        }
        if (oracle_cmd->parsed()) {
            return cmd_oracle(oracle_src, oracle_axis, oracle_samples, oracle_seed);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim_src, sim_axis, sim);
        }
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const ValidationError &e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return kInvalid;
    } catch (const CapacityError &e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kCapacity;
    } catch (const UnsupportedError &e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kConfig;
    } catch (const InternalError &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::runtime_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    std::cerr << "error: no subcommand\n";
    return kConfig;
}
