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

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "transvect/errors.hpp"
#include "transvect/f2.hpp"
#include "transvect/pauli.hpp"

namespace transvect {

/// [[n, k, d]] stabilizer code: n - k generators plus k logical X/Z pairs.
/// Nothing is enforced on construction; run `validate` (load_code does).
struct StabilizerCode {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<PhasedPauli> stabilizers;
    std::vector<PhasedPauli> logical_x;
    std::vector<PhasedPauli> logical_z;
    std::string name;
    std::optional<std::size_t> distance;

    /// Stabilizer generators as rows [x | z].
    BitMatrix stabilizer_matrix() const {
        BitMatrix m(0, 2 * n);
        for (const auto &s : stabilizers) {
            m.push_row(s.symplectic());
        }
        return m;
    }

    bool operator==(const StabilizerCode &other) const = default;
};

enum class ViolationKind {
    Arity,
    QubitCount,
    NonHermitian,
    StabilizersAnticommute,
    StabilizerRank,
    LogicalAnticommutesStabilizer,
    LogicalPairing,
    LogicalXAnticommute,
    LogicalZAnticommute,
    LogicalInStabilizerGroup,
};

struct Violation {
    ViolationKind kind;
    std::vector<std::size_t> indices;  // 0-based generator indices involved
    std::string message;
};

/// Checks every structural invariant of a stabilizer code. An empty list means valid.
inline std::vector<Violation> validate(const StabilizerCode &code) {
    std::vector<Violation> out;
    auto add = [&](ViolationKind kind, std::vector<std::size_t> idx, std::string msg) {
        out.push_back(Violation{kind, std::move(idx), std::move(msg)});
    };
    const std::size_t n = code.n, k = code.k;
    if (k > n) {
        add(ViolationKind::Arity, {}, "k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
        return out;
    }
    if (code.stabilizers.size() != n - k) {
        add(ViolationKind::Arity, {},
            "expected " + std::to_string(n - k) + " stabilizer generators, got " +
                std::to_string(code.stabilizers.size()));
    }
    if (code.logical_x.size() != k || code.logical_z.size() != k) {
        add(ViolationKind::Arity, {},
            "expected " + std::to_string(k) + " logical X and Z operators, got " +
                std::to_string(code.logical_x.size()) + " X and " + std::to_string(code.logical_z.size()) + " Z");
    }
    auto check_size = [&](const std::vector<PhasedPauli> &ops, const char *tag) {
        bool ok = true;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (ops[i].num_qubits() != n) {
                add(ViolationKind::QubitCount, {i},
                    std::string(tag) + std::to_string(i + 1) + " acts on " + std::to_string(ops[i].num_qubits()) +
                        " qubits, expected " + std::to_string(n));
                ok = false;
            } else if (!ops[i].is_hermitian()) {
                add(ViolationKind::NonHermitian, {i},
                    std::string(tag) + std::to_string(i + 1) + " has an imaginary phase");
            }
        }
        return ok;
    };
    bool sizes_ok = check_size(code.stabilizers, "S");
    sizes_ok = check_size(code.logical_x, "X") && sizes_ok;
    sizes_ok = check_size(code.logical_z, "Z") && sizes_ok;
    if (!sizes_ok) {
        return out;
    }

    const auto &S = code.stabilizers;
    for (std::size_t i = 0; i < S.size(); ++i) {
        for (std::size_t j = i + 1; j < S.size(); ++j) {
            if (anticommutes(S[i], S[j])) {
                add(ViolationKind::StabilizersAnticommute, {i, j},
                    "stabilizers S" + std::to_string(i + 1) + " and S" + std::to_string(j + 1) + " anticommute");
            }
        }
    }
    RowSpace span(2 * n);
    for (const auto &s : S) {
        span.insert(s.symplectic());
    }
    if (span.rank() != S.size() || S.size() != n - k) {
        add(ViolationKind::StabilizerRank, {},
            "stabilizer rows have rank " + std::to_string(span.rank()) + ", expected " + std::to_string(n - k));
    }

    auto check_logicals = [&](const std::vector<PhasedPauli> &ops, const char *tag) {
        for (std::size_t i = 0; i < ops.size(); ++i) {
            for (std::size_t j = 0; j < S.size(); ++j) {
                if (anticommutes(ops[i], S[j])) {
                    add(ViolationKind::LogicalAnticommutesStabilizer, {i, j},
                        std::string(tag) + std::to_string(i + 1) + " anticommutes with S" + std::to_string(j + 1));
                }
            }
            if (span.contains(ops[i].symplectic())) {
                add(ViolationKind::LogicalInStabilizerGroup, {i},
                    std::string(tag) + std::to_string(i + 1) + " lies in the stabilizer group");
            }
        }
    };
    check_logicals(code.logical_x, "X");
    check_logicals(code.logical_z, "Z");

    const auto &LX = code.logical_x;
    const auto &LZ = code.logical_z;
    if (LX.size() != k || LZ.size() != k) {
        return out;  // pairing is meaningless once the arity is off
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            bool expect = i == j;
            if (anticommutes(LX[i], LZ[j]) != expect) {
                add(ViolationKind::LogicalPairing, {i, j},
                    "<X" + std::to_string(i + 1) + ", Z" + std::to_string(j + 1) + ">_s should be " +
                        (expect ? "1" : "0"));
            }
            if (j > i && anticommutes(LX[i], LX[j])) {
                add(ViolationKind::LogicalXAnticommute, {i, j},
                    "logical X" + std::to_string(i + 1) + " and X" + std::to_string(j + 1) + " anticommute");
            }
            if (j > i && anticommutes(LZ[i], LZ[j])) {
                add(ViolationKind::LogicalZAnticommute, {i, j},
                    "logical Z" + std::to_string(i + 1) + " and Z" + std::to_string(j + 1) + " anticommute");
            }
        }
    }
    return out;
}

inline std::string format_violations(const std::vector<Violation> &violations) {
    std::string out;
    for (const auto &v : violations) {
        out += "  - " + v.message + "\n";
    }
    return out;
}

/// The non-CSS [[8,3,3]] code with its standard generator table.
inline StabilizerCode builtin_833() {
    StabilizerCode code;
    code.n = 8;
    code.k = 3;
    code.distance = 3;
    code.name = "[[8,3,3]]";
    for (const char *s : {"X1 X2 X3 X4 X5 X6 X7 X8", "Z1 Z2 Z3 Z4 Z5 Z6 Z7 Z8", "Z3 Y4 X5 Z6 Y7 X8",
                          "Z2 X3 X5 Y6 Z7 Y8", "X2 Z4 Z5 X6 Y7 Y8"}) {
        code.stabilizers.push_back(parse_pauli(s, 8));
    }
    for (const char *s : {"X4 X5 X7 X8", "X3 Z4 Z5 X6", "Z1 Z2 X6 X7"}) {
        code.logical_x.push_back(parse_pauli(s, 8));
    }
    for (const char *s : {"Z2 X3 Z5 X8", "Z1 Z5 Z6 Z7", "Z1 Z2 Z4 Z7"}) {
        code.logical_z.push_back(parse_pauli(s, 8));
    }
    return code;
}

/// Physical representative of a logical Pauli i^kappa E(a, b):
///
///   i^kappa * i^{a.b} * (prod_{i ascending, a_i} Xbar_i) * (prod_{i ascending, b_i} Zbar_i)
///
/// The i^{a.b} factor mirrors E(a, b) = i^{a.b} X^a Z^b, so logical Y lifts to
/// a Hermitian operator and lift is a phase-exact homomorphism.
inline PhasedPauli lift(const StabilizerCode &code, const PhasedPauli &logical) {
    if (logical.num_qubits() != code.k) {
        throw std::invalid_argument("lift: logical Pauli has " + std::to_string(logical.num_qubits()) +
                                    " qubits, code has k=" + std::to_string(code.k));
    }
    PhasedPauli out = PhasedPauli::identity(code.n);
    for (std::size_t i : logical.x().ones()) {
        out *= code.logical_x[i];
    }
    for (std::size_t i : logical.z().ones()) {
        out *= code.logical_z[i];
    }
    out.add_kappa(static_cast<int>(logical.kappa() + and_popcount(logical.x(), logical.z())));
    return out;
}

/// Bit i is set when e anticommutes with stabilizer generator i.
inline BitVec syndrome(const StabilizerCode &code, const PhasedPauli &e) {
    if (e.num_qubits() != code.n) {
        throw std::invalid_argument("syndrome: error acts on " + std::to_string(e.num_qubits()) +
                                    " qubits, code has n=" + std::to_string(code.n));
    }
    BitVec s(code.stabilizers.size());
    for (std::size_t i = 0; i < code.stabilizers.size(); ++i) {
        s.set(i, anticommutes(e, code.stabilizers[i]));
    }
    return s;
}

/// A stabilizer-group element together with the generators that produce it.
struct StabilizerElement {
    BitVec generators;    // which generators were multiplied (ascending order)
    PhasedPauli product;  // their exact product
};

struct LogicalEffect {
    enum class Kind { Trivial, Logical, Detectable };
    Kind kind = Kind::Trivial;
    /// Logical class L on k qubits, phase chosen so that lift(L) * S == e exactly
    /// for the stabilizer element S in `stabilizer`. Unset when Detectable.
    PhasedPauli logical;
    StabilizerElement stabilizer;
    BitVec syndrome;

    bool has_logical_x(std::size_t i) const {
        return kind == Kind::Logical && logical.x().get(i);
    }
    bool has_any_logical_x() const {
        return kind == Kind::Logical && logical.x().any();
    }
};

/// Precomputed row spaces of a code for repeated membership and decomposition queries.
class CodeBasis {
   public:
    explicit CodeBasis(const StabilizerCode &code)
        : code_(&code), stabilizer_span_(2 * code.n), full_span_(2 * code.n) {
        for (const auto &s : code.stabilizers) {
            stabilizer_span_.insert(s.symplectic());
            full_span_.insert(s.symplectic());
        }
        for (const auto &x : code.logical_x) {
            full_span_.insert(x.symplectic());
        }
        for (const auto &z : code.logical_z) {
            full_span_.insert(z.symplectic());
        }
    }

    const StabilizerCode &code() const noexcept {
        return *code_;
    }

    StabilizerElement stabilizer_product(const BitVec &generators) const {
        PhasedPauli p = PhasedPauli::identity(code_->n);
        for (std::size_t i : generators.ones()) {
            p *= code_->stabilizers[i];
        }
        return StabilizerElement{generators, std::move(p)};
    }

    /// If `op`'s binary part is in the stabilizer row space, the matching group
    /// element (whose phase may differ from op's).
    std::optional<StabilizerElement> stabilizer_witness(const PhasedPauli &op) const {
        auto c = stabilizer_span_.solve(op.symplectic());
        if (!c) {
            return std::nullopt;
        }
        return stabilizer_product(*c);
    }

    /// True iff op is exactly (phase included) an element of the stabilizer group.
    bool in_stabilizer_group(const PhasedPauli &op) const {
        auto w = stabilizer_witness(op);
        return w && w->product == op;
    }

    LogicalEffect logical_effect(const PhasedPauli &e) const {
        LogicalEffect out;
        out.syndrome = syndrome(*code_, e);
        if (out.syndrome.any()) {
            out.kind = LogicalEffect::Kind::Detectable;
            return out;
        }
        auto coeffs = full_span_.solve(e.symplectic());
        if (!coeffs) {
            throw InternalError("logical_effect: zero-syndrome operator outside the span of stabilizers and logicals");
        }
        const std::size_t m = code_->stabilizers.size(), k = code_->k;
        BitVec gens(m), lx(k), lz(k);
        for (std::size_t i : coeffs->ones()) {
            if (i < m) {
                gens.set(i, true);
            } else if (i < m + k) {
                lx.set(i - m, true);
            } else {
                lz.set(i - m - k, true);
            }
        }
        out.stabilizer = stabilizer_product(gens);
        PhasedPauli logical(lx, lz, 0);
        PhasedPauli rebuilt = lift(*code_, logical) * out.stabilizer.product;
        if (!rebuilt.same_binary(e)) {
            throw InternalError("logical_effect: decomposition does not reproduce the operator");
        }
        logical.set_kappa(static_cast<int>(e.kappa()) - static_cast<int>(rebuilt.kappa()));
        out.kind = logical.is_identity() ? LogicalEffect::Kind::Trivial : LogicalEffect::Kind::Logical;
        out.logical = std::move(logical);
        return out;
    }

   private:
    const StabilizerCode *code_;
    RowSpace stabilizer_span_;
    RowSpace full_span_;
};

inline LogicalEffect logical_effect(const StabilizerCode &code, const PhasedPauli &e) {
    if (e.num_qubits() != code.n) {
        throw std::invalid_argument("logical_effect: size mismatch");
    }
    return CodeBasis(code).logical_effect(e);
}

// ---------------------------------------------------------------------------
// Text format
//
//   # comment
//   code n=8 k=3 d=3 name=[[8,3,3]]
//   S XXXXXXXX          (n - k lines)
//   X IIIXXIXX          (k lines)
//   Z Z2 X3 Z5 X8       (k lines, dense or sparse Pauli grammar)

inline std::string format_code(const StabilizerCode &code) {
    std::ostringstream out;
    out << "code n=" << code.n << " k=" << code.k;
    if (code.distance) {
        out << " d=" << *code.distance;
    }
    if (!code.name.empty()) {
        out << " name=" << code.name;
    }
    out << "\n";
    for (const auto &s : code.stabilizers) {
        out << "S " << format_pauli(s) << "\n";
    }
    for (const auto &x : code.logical_x) {
        out << "X " << format_pauli(x) << "\n";
    }
    for (const auto &z : code.logical_z) {
        out << "Z " << format_pauli(z) << "\n";
    }
    return out.str();
}

/// Parses the code text format. When `check` is true, validation failures throw
/// ValidationError listing every violation.
inline StabilizerCode parse_code(std::string_view text, bool check = true) {
    StabilizerCode code;
    bool have_header = false;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    auto fail = [&](const std::string &why) {
        return ParseError("line " + std::to_string(line_no) + ": " + why, line_no);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream tokens(line);
        std::string tag;
        if (!(tokens >> tag)) {
            continue;
        }
        if (tag == "code") {
            if (have_header) {
                throw fail("duplicate 'code' header");
            }
            have_header = true;
            bool have_n = false, have_k = false;
            std::string kv;
            while (tokens >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw fail("expected key=value, got '" + kv + "'");
                }
                std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
                auto to_count = [&](const std::string &v) -> std::size_t {
                    try {
                        std::size_t used = 0;
                        auto r = std::stoull(v, &used);
                        if (used != v.size()) {
                            throw std::invalid_argument(v);
                        }
                        return static_cast<std::size_t>(r);
                    } catch (const std::exception &) {
                        throw fail("bad integer '" + v + "' for " + key);
                    }
                };
                if (key == "n") {
                    code.n = to_count(value), have_n = true;
                } else if (key == "k") {
                    code.k = to_count(value), have_k = true;
                } else if (key == "d") {
                    code.distance = to_count(value);
                } else if (key == "name") {
                    code.name = value;
                } else {
                    throw fail("unknown header key '" + key + "'");
                }
            }
            if (!have_n || !have_k) {
                throw fail("header needs n= and k=");
            }
            continue;
        }
        if (!have_header) {
            throw fail("expected 'code n=.. k=..' header before generators");
        }
        std::string rest;
        std::getline(tokens, rest);
        PhasedPauli p;
        try {
            p = parse_pauli(rest, code.n);
        } catch (const ParseError &e) {
            throw fail(e.what());
        }
        if (tag == "S") {
            code.stabilizers.push_back(std::move(p));
        } else if (tag == "X") {
            code.logical_x.push_back(std::move(p));
        } else if (tag == "Z") {
            code.logical_z.push_back(std::move(p));
        } else {
            throw fail("unknown line tag '" + tag + "' (expected S, X or Z)");
        }
    }
    if (!have_header) {
        throw ParseError("missing 'code' header", line_no);
    }
    if (check) {
        auto violations = validate(code);
        if (!violations.empty()) {
            throw ValidationError("invalid stabilizer code:\n" + format_violations(violations));
        }
    }
    return code;
}

inline StabilizerCode load_code(const std::string &path, bool check = true) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open code file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_code(buf.str(), check);
}

inline void save_code(const StabilizerCode &code, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write code file '" + path + "'");
    }
    out << format_code(code);
}

}  // namespace transvect
