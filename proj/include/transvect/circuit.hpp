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

#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "transvect/code.hpp"
#include "transvect/errors.hpp"
#include "transvect/f2.hpp"
#include "transvect/pauli.hpp"

namespace transvect {

// ---------------------------------------------------------------------------
// Angles

inline constexpr double kAngleTolerance = 1e-12;

/// theta / (pi/2) mod 4 when theta is within kAngleTolerance of a multiple of pi/2.
inline std::optional<int> quarter_turns(double theta) {
    if (!std::isfinite(theta)) {
        return std::nullopt;
    }
    double q = theta / (std::numbers::pi / 2);
    double r = std::round(q);
    if (std::abs(theta - r * (std::numbers::pi / 2)) > kAngleTolerance) {
        return std::nullopt;
    }
    return static_cast<int>(((static_cast<long long>(r) % 4) + 4) % 4);
}

/// Multiples of pi/4 are written as e.g. "pi/2", "-3pi/4", "pi", "0"; other angles
/// in the shortest decimal form that parses back to the same double.
inline std::string format_angle(double theta) {
    double q = theta / (std::numbers::pi / 4);
    double r = std::round(q);
    if (std::abs(r) < 1e6 && r * (std::numbers::pi / 4) == theta) {
        long long m = static_cast<long long>(r);
        if (m == 0) {
            return "0";
        }
        std::string sign = m < 0 ? "-" : "";
        long long a = m < 0 ? -m : m;
        long long num = a, den = 4;
        while (num % 2 == 0 && den > 1) {
            num /= 2, den /= 2;
        }
        std::string out = sign + (num == 1 ? "" : std::to_string(num)) + "pi";
        if (den != 1) {
            out += "/" + std::to_string(den);
        }
        return out;
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, theta);
    return std::string(buf, res.ptr);
}

/// Parses a decimal number or a symbolic multiple of pi: "pi", "-pi/2", "3pi/4",
/// "3*pi/4", "0.25pi". The symbolic forms produce exactly k*pi/d in double precision.
inline double parse_angle(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }), s.end());
    auto fail = [&](std::size_t pos) { return ParseError("bad angle '" + std::string(text) + "'", pos); };
    if (s.empty()) {
        throw fail(0);
    }
    auto pi_at = s.find("pi");
    if (pi_at == std::string::npos) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            throw fail(0);
        }
        if (used != s.size() || !std::isfinite(v)) {
            throw fail(used);
        }
        return v;
    }
    std::string head = s.substr(0, pi_at);
    std::string tail = s.substr(pi_at + 2);
    if (!head.empty() && head.back() == '*') {
        head.pop_back();
    }
    double mult = 1;
    if (head == "-" || head == "+" || head.empty()) {
        mult = head == "-" ? -1 : 1;
    } else {
        std::size_t used = 0;
        try {
            mult = std::stod(head, &used);
        } catch (const std::exception &) {
            throw fail(0);
        }
        if (used != head.size()) {
            throw fail(used);
        }
    }
    double den = 1;
    if (!tail.empty()) {
        if (tail[0] != '/') {
            throw fail(pi_at + 2);
        }
        std::size_t used = 0;
        try {
            den = std::stod(tail.substr(1), &used);
        } catch (const std::exception &) {
            throw fail(pi_at + 3);
        }
        if (used + 1 != tail.size() || den == 0) {
            throw fail(pi_at + 3);
        }
    }
    double v = mult * std::numbers::pi / den;
    if (!std::isfinite(v)) {
        throw fail(0);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Gates and circuits

enum class GateKind { H, Hy, CNOT, Phase, Rz };

/// One gate. Qubits are 0-based; `q1` is the CNOT target and unused otherwise.
struct Gate {
    GateKind kind = GateKind::H;
    std::size_t q0 = 0;
    std::size_t q1 = 0;
    double angle = 0;  // Rz only

    static Gate h(std::size_t q) {
        return {GateKind::H, q, 0, 0};
    }
    static Gate hy(std::size_t q) {
        return {GateKind::Hy, q, 0, 0};
    }
    static Gate cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, control, target, 0};
    }
    static Gate phase(std::size_t q) {
        return {GateKind::Phase, q, 0, 0};
    }
    static Gate rz(std::size_t q, double theta) {
        return {GateKind::Rz, q, 0, theta};
    }

    bool two_qubit() const noexcept {
        return kind == GateKind::CNOT;
    }
    std::vector<std::size_t> qubits() const {
        if (two_qubit()) {
            return {q0, q1};
        }
        return {q0};
    }
    /// Phase, H, Hy, CNOT, and Rz by a multiple of pi/2.
    bool is_clifford() const {
        return kind != GateKind::Rz || quarter_turns(angle).has_value();
    }

    bool operator==(const Gate &other) const {
        if (kind != other.kind || q0 != other.q0) {
            return false;
        }
        if (kind == GateKind::CNOT) {
            return q1 == other.q1;
        }
        if (kind == GateKind::Rz) {
            return angle == other.angle;
        }
        return true;
    }
};

inline const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::Hy: return "HY";
        case GateKind::CNOT: return "CNOT";
        case GateKind::Phase: return "P";
        case GateKind::Rz: return "RZ";
    }
    throw InternalError("gate_name: unknown gate kind");
}

inline GateKind gate_kind_from_name(const std::string &name, std::size_t position) {
    if (name == "H") return GateKind::H;
    if (name == "HY") return GateKind::Hy;
    if (name == "CNOT" || name == "CX") return GateKind::CNOT;
    if (name == "P" || name == "S") return GateKind::Phase;
    if (name == "RZ") return GateKind::Rz;
    throw ParseError("unknown gate '" + name + "'", position);
}

struct Circuit {
    std::size_t n = 0;
    std::vector<Gate> gates;

    /// Throws std::out_of_range / std::invalid_argument on a malformed gate.
    void check() const {
        for (std::size_t i = 0; i < gates.size(); ++i) {
            const Gate &g = gates[i];
            for (auto q : g.qubits()) {
                if (q >= n) {
                    throw std::out_of_range("gate " + std::to_string(i) + " (" + gate_name(g.kind) + ") uses qubit " +
                                            std::to_string(q) + " >= n=" + std::to_string(n));
                }
            }
            if (g.kind == GateKind::CNOT && g.q0 == g.q1) {
                throw std::invalid_argument("gate " + std::to_string(i) + ": CNOT control equals target");
            }
            if (g.kind == GateKind::Rz && !std::isfinite(g.angle)) {
                throw std::invalid_argument("gate " + std::to_string(i) + ": non-finite angle");
            }
        }
    }

    bool is_clifford() const {
        return std::all_of(gates.begin(), gates.end(), [](const Gate &g) { return g.is_clifford(); });
    }

    std::size_t count(GateKind kind) const {
        return static_cast<std::size_t>(
            std::count_if(gates.begin(), gates.end(), [&](const Gate &g) { return g.kind == kind; }));
    }

    void append(const Circuit &other) {
        if (other.n != n) {
            throw std::invalid_argument("Circuit::append: qubit counts differ");
        }
        gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    }

    bool operator==(const Circuit &other) const = default;
};

/// Greedy as-soon-as-possible layering: each gate goes one layer after the
/// latest layer touching any of its qubits. Returns gate indices per layer.
inline std::vector<std::vector<std::size_t>> asap_layers(const Circuit &c) {
    std::vector<std::size_t> ready(c.n, 0);
    std::vector<std::vector<std::size_t>> layers;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        std::size_t layer = 0;
        for (auto q : c.gates[i].qubits()) {
            layer = std::max(layer, ready[q]);
        }
        if (layer == layers.size()) {
            layers.emplace_back();
        }
        layers[layer].push_back(i);
        for (auto q : c.gates[i].qubits()) {
            ready[q] = layer + 1;
        }
    }
    return layers;
}

inline std::size_t depth(const Circuit &c) {
    return asap_layers(c).size();
}

// ---------------------------------------------------------------------------
// Serialization
//
// Text, one gate per line with 0-based qubits, after a `qubits <n>` header:
//   H 3 / HY 5 / CNOT 2 8 / P 8 / RZ 8 0.7

inline std::string format_circuit(const Circuit &c) {
    std::ostringstream out;
    out << "qubits " << c.n << "\n";
    for (const auto &g : c.gates) {
        out << gate_name(g.kind) << " " << g.q0;
        if (g.kind == GateKind::CNOT) {
            out << " " << g.q1;
        } else if (g.kind == GateKind::Rz) {
            out << " " << format_angle(g.angle);
        }
        out << "\n";
    }
    return out.str();
}

inline Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_header = false;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string &why) { return ParseError("line " + std::to_string(line_no) + ": " + why, line_no); };
    auto to_index = [&](const std::string &w) -> std::size_t {
        if (w.empty() || !std::all_of(w.begin(), w.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            throw fail("bad qubit index '" + w + "'");
        }
        return std::stoul(w);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream tokens(line);
        std::vector<std::string> words;
        for (std::string w; tokens >> w;) {
            words.push_back(w);
        }
        if (words.empty()) {
            continue;
        }
        if (!have_header) {
            if (words.size() != 2 || words[0] != "qubits") {
                throw fail("expected 'qubits <n>' header");
            }
            c.n = to_index(words[1]);
            have_header = true;
            continue;
        }
        GateKind kind;
        try {
            kind = gate_kind_from_name(words[0], line_no);
        } catch (const ParseError &e) {
            throw fail(e.what());
        }
        std::size_t want = kind == GateKind::CNOT || kind == GateKind::Rz ? 3 : 2;
        if (words.size() != want) {
            throw fail(std::string(gate_name(kind)) + " takes " + std::to_string(want - 1) + " arguments");
        }
        Gate g{kind, to_index(words[1]), 0, 0};
        if (kind == GateKind::CNOT) {
            g.q1 = to_index(words[2]);
        } else if (kind == GateKind::Rz) {
            try {
                g.angle = parse_angle(words[2]);
            } catch (const ParseError &e) {
                throw fail(e.what());
            }
        }
        c.gates.push_back(g);
    }
    if (!have_header) {
        throw ParseError("missing 'qubits <n>' header", line_no);
    }
    try {
        c.check();
    } catch (const std::logic_error &e) {
        throw ParseError(e.what(), line_no);
    }
    return c;
}

/// {"qubits": n, "gates": [{"gate": "CNOT", "qubits": [2, 8]}, {"gate": "RZ", "qubits": [8], "angle": 0.7}]}
inline nlohmann::json circuit_to_json(const Circuit &c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : c.gates) {
        nlohmann::json j{{"gate", gate_name(g.kind)}, {"qubits", g.qubits()}};
        if (g.kind == GateKind::Rz) {
            j["angle"] = g.angle;
        }
        gates.push_back(std::move(j));
    }
    return nlohmann::json{{"qubits", c.n}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const nlohmann::json &j) {
    try {
        Circuit c;
        c.n = j.at("qubits").get<std::size_t>();
        for (const auto &jg : j.at("gates")) {
            GateKind kind = gate_kind_from_name(jg.at("gate").get<std::string>(), 0);
            auto qs = jg.at("qubits").get<std::vector<std::size_t>>();
            std::size_t want = kind == GateKind::CNOT ? 2 : 1;
            if (qs.size() != want) {
                throw ParseError(std::string(gate_name(kind)) + " needs " + std::to_string(want) + " qubits", 0);
            }
            Gate g{kind, qs[0], want == 2 ? qs[1] : 0, 0};
            if (kind == GateKind::Rz) {
                g.angle = jg.at("angle").get<double>();
            }
            c.gates.push_back(g);
        }
        c.check();
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("bad circuit object: ") + e.what(), 0);
    } catch (const std::logic_error &e) {
        throw ParseError(std::string("bad circuit object: ") + e.what(), 0);
    }
}

// ---------------------------------------------------------------------------
// Transvections from index partitions

/// Partition of the k logical qubits into Hadamard-type (X), Hy-type (Y) and
/// untouched (Z) factors. Indices are 0-based.
struct TrotterPartition {
    std::size_t k = 0;
    std::vector<std::size_t> h;
    std::vector<std::size_t> hy;
    std::vector<std::size_t> e;

    /// Per-qubit label: 'X' for h, 'Y' for hy, 'Z' for e. Throws on overlap or gaps.
    std::string labels() const {
        std::string out(k, '?');
        auto mark = [&](const std::vector<std::size_t> &set, char c) {
            for (auto q : set) {
                if (q >= k) {
                    throw std::invalid_argument("partition index " + std::to_string(q) + " >= k=" + std::to_string(k));
                }
                if (out[q] != '?') {
                    throw std::invalid_argument("partition sets overlap at index " + std::to_string(q));
                }
                out[q] = c;
            }
        };
        mark(h, 'X');
        mark(hy, 'Y');
        mark(e, 'Z');
        if (auto gap = out.find('?'); gap != std::string::npos) {
            throw std::invalid_argument("partition does not cover index " + std::to_string(gap));
        }
        return out;
    }

    /// The i-th of the 3^k partitions, reading i in base 3 (digit 0 -> h, 1 -> hy, 2 -> e).
    static TrotterPartition from_index(std::size_t k, std::uint64_t index) {
        TrotterPartition p;
        p.k = k;
        for (std::size_t q = 0; q < k; ++q) {
            switch (index % 3) {
                case 0: p.h.push_back(q); break;
                case 1: p.hy.push_back(q); break;
                default: p.e.push_back(q); break;
            }
            index /= 3;
        }
        return p;
    }
};

/// i * prod_{I_h} X * prod_{I_hy} Y * prod_{I_e} Z, with the leading i in kappa.
inline PhasedPauli transvection_from_sets(const TrotterPartition &part) {
    std::string labels = part.labels();
    PhasedPauli p(part.k);
    for (std::size_t q = 0; q < part.k; ++q) {
        p.set(q, labels[q]);
    }
    p.set_kappa(1);
    return p;
}

inline PhasedPauli transvection_from_sets(std::size_t k, std::vector<std::size_t> h, std::vector<std::size_t> hy,
                                          std::vector<std::size_t> e) {
    return transvection_from_sets(TrotterPartition{k, std::move(h), std::move(hy), std::move(e)});
}

// ---------------------------------------------------------------------------
// Trotter synthesis

/// Circuit for exp(-i theta/2 P):
///   basis changes (H for X, HY for Y) on the support, ascending;
///   CNOT(q -> t) for support qubits q != t ascending, t the highest support qubit;
///   the rotation on t (P when the angle is exactly pi/2, else RZ);
///   then the CNOTs and basis changes mirrored.
/// A negative Hermitian sign on P negates the angle; an odd kappa is ignored.
inline Circuit synthesize_trotter(const PhasedPauli &P, double theta) {
    if (P.is_identity()) {
        throw std::invalid_argument("synthesize_trotter: identity Pauli has no rotation axis");
    }
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("synthesize_trotter: non-finite angle");
    }
    Circuit c;
    c.n = P.num_qubits();
    auto support = P.support();
    std::size_t t = support.back();
    double angle = P.hermitian_sign() < 0 ? -theta : theta;

    std::vector<Gate> basis;
    for (auto q : support) {
        char local = P.at(q);
        if (local == 'X') {
            basis.push_back(Gate::h(q));
        } else if (local == 'Y') {
            basis.push_back(Gate::hy(q));
        }
    }
    std::vector<Gate> fan_in;
    for (auto q : support) {
        if (q != t) {
            fan_in.push_back(Gate::cnot(q, t));
        }
    }
    c.gates = basis;
    c.gates.insert(c.gates.end(), fan_in.begin(), fan_in.end());
    if (angle == std::numbers::pi / 2) {
        c.gates.push_back(Gate::phase(t));
    } else {
        c.gates.push_back(Gate::rz(t, angle));
    }
    c.gates.insert(c.gates.end(), fan_in.rbegin(), fan_in.rend());
    c.gates.insert(c.gates.end(), basis.rbegin(), basis.rend());
    return c;
}

// ---------------------------------------------------------------------------
// Stabilizer-coset weight reduction

enum class ReduceStrategy { Exhaustive, Greedy };

inline constexpr std::size_t kMaxExhaustiveGenerators = 24;

struct WeightReduction {
    PhasedPauli result;   // h * S*, exact phase
    BitVec generators;    // generators multiplied into h, ascending
    std::size_t original_weight = 0;
};

namespace detail {

inline std::size_t or_weight(const BitVec &x, const BitVec &z) {
    std::size_t total = 0;
    auto wx = x.words();
    auto wz = z.words();
    for (std::size_t w = 0; w < wx.size(); ++w) {
        total += static_cast<std::size_t>(std::popcount(wx[w] | wz[w]));
    }
    return total;
}

}  // namespace detail

/// Multiplies h by a stabilizer-group element to lower its weight.
///
/// Exhaustive: minimum weight over all 2^{n-k} coset elements, ties broken by
/// `qubit_major_less`; needs at most 24 generators.
/// Greedy: repeatedly applies the generator with the largest weight decrease
/// (lowest index on ties) until no generator helps.
inline WeightReduction reduce_weight_detailed(const PhasedPauli &h, const StabilizerCode &code,
                                              ReduceStrategy strategy) {
    if (h.num_qubits() != code.n) {
        throw std::invalid_argument("reduce_weight: Pauli has " + std::to_string(h.num_qubits()) +
                                    " qubits, code has n=" + std::to_string(code.n));
    }
    const auto &S = code.stabilizers;
    const std::size_t m = S.size();
    BitVec chosen(m);

    if (strategy == ReduceStrategy::Exhaustive) {
        if (m > kMaxExhaustiveGenerators) {
            throw CapacityError("exhaustive weight reduction needs at most " +
                                std::to_string(kMaxExhaustiveGenerators) + " stabilizer generators, code has " +
                                std::to_string(m));
        }
        BitVec x = h.x(), z = h.z();
        BitVec best_x = x, best_z = z;
        std::size_t best_w = detail::or_weight(x, z);
        std::uint64_t best_mask = 0, gray = 0;
        const std::uint64_t total = std::uint64_t{1} << m;
        for (std::uint64_t step = 1; step < total; ++step) {
            std::size_t flip = static_cast<std::size_t>(std::countr_zero(step));
            gray ^= std::uint64_t{1} << flip;
            x ^= S[flip].x();
            z ^= S[flip].z();
            std::size_t w = detail::or_weight(x, z);
            if (w < best_w || (w == best_w && qubit_major_less(x, z, best_x, best_z))) {
                best_w = w, best_x = x, best_z = z, best_mask = gray;
            }
        }
        chosen = BitVec::from_u64(best_mask, m);
    } else {
        BitVec x = h.x(), z = h.z();
        std::size_t w = detail::or_weight(x, z);
        while (true) {
            std::size_t best_i = m, best_w = w;
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t wi = detail::or_weight(x ^ S[i].x(), z ^ S[i].z());
                if (wi < best_w) {
                    best_w = wi, best_i = i;
                }
            }
            if (best_i == m) {
                break;
            }
            x ^= S[best_i].x();
            z ^= S[best_i].z();
            chosen.flip(best_i);
            w = best_w;
        }
    }

    PhasedPauli out = h;
    for (auto i : chosen.ones()) {
        out *= S[i];
    }
    return WeightReduction{std::move(out), std::move(chosen), h.weight()};
}

inline PhasedPauli reduce_weight(const PhasedPauli &h, const StabilizerCode &code, ReduceStrategy strategy) {
    return reduce_weight_detailed(h, code, strategy).result;
}

inline ReduceStrategy parse_reduce_strategy(const std::string &name) {
    if (name == "exhaustive") {
        return ReduceStrategy::Exhaustive;
    }
    if (name == "greedy") {
        return ReduceStrategy::Greedy;
    }
    throw ParseError("unknown reduce strategy '" + name + "' (expected exhaustive or greedy)", 0);
}

// ---------------------------------------------------------------------------
// First-order product formula

struct HamiltonianTerm {
    double alpha = 0;
    PhasedPauli pauli;
};

struct TrotterKernel {
    PhasedPauli pauli;
    double theta = 0;
};

/// T repetitions of the term list, each term with theta = 2 alpha t / T.
inline std::vector<TrotterKernel> trotterize(const std::vector<HamiltonianTerm> &terms, double t, std::size_t steps) {
    if (steps < 1) {
        throw std::invalid_argument("trotterize: need at least one Trotter step");
    }
    std::vector<TrotterKernel> out;
    out.reserve(terms.size() * steps);
    for (std::size_t s = 0; s < steps; ++s) {
        for (const auto &term : terms) {
            out.push_back(TrotterKernel{term.pauli, 2 * term.alpha * t / static_cast<double>(steps)});
        }
    }
    return out;
}

/// Concatenates the synthesized kernels; identity terms (global phases) are skipped.
inline Circuit compile_product_formula(const std::vector<TrotterKernel> &kernels, std::size_t n) {
    Circuit c;
    c.n = n;
    for (const auto &k : kernels) {
        if (k.pauli.num_qubits() != n) {
            throw std::invalid_argument("compile_product_formula: term on " + std::to_string(k.pauli.num_qubits()) +
                                        " qubits, expected " + std::to_string(n));
        }
        if (k.pauli.is_identity()) {
            continue;
        }
        c.append(synthesize_trotter(k.pauli, k.theta));
    }
    return c;
}

}  // namespace transvect
