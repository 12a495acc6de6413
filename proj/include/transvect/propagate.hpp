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

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "transvect/circuit.hpp"
#include "transvect/code.hpp"
#include "transvect/errors.hpp"
#include "transvect/pauli.hpp"

namespace transvect {

// ---------------------------------------------------------------------------
// Symbolic coefficients

enum class Trig { One, Cos, Sin };

/// i^phase * f(theta) with f in {1, cos, sin}. Angles are kept non-negative:
/// sin(-t) is stored as i^2 sin(t).
struct Coefficient {
    int phase = 0;
    Trig trig = Trig::One;
    double theta = 0;

    static Coefficient one(int phase = 0) {
        return Coefficient{wrap(phase), Trig::One, 0};
    }
    static Coefficient cos(double theta, int phase = 0) {
        return Coefficient{wrap(phase), Trig::Cos, std::abs(theta)};
    }
    static Coefficient sin(double theta, int phase = 0) {
        return Coefficient{wrap(phase + (theta < 0 ? 2 : 0)), Trig::Sin, std::abs(theta)};
    }

    std::complex<double> value() const {
        static const std::complex<double> powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        double f = trig == Trig::One ? 1.0 : trig == Trig::Cos ? std::cos(theta) : std::sin(theta);
        return powers[phase & 3] * f;
    }

    Coefficient times_i_power(int k) const {
        Coefficient c = *this;
        c.phase = wrap(c.phase + k);
        return c;
    }

    bool operator==(const Coefficient &other) const {
        return phase == other.phase && trig == other.trig && (trig == Trig::One || theta == other.theta);
    }

   private:
    static int wrap(int k) {
        return ((k % 4) + 4) % 4;
    }
};

/// coefficient * pauli, with the Pauli's own kappa kept at 0 (folded into the coefficient).
struct Term {
    Coefficient coeff;
    PhasedPauli pauli;

    static Term make(Coefficient c, PhasedPauli p) {
        c = c.times_i_power(p.kappa());
        p.set_kappa(0);
        return Term{c, std::move(p)};
    }
    /// The Pauli with the coefficient's i-power moved back into kappa.
    PhasedPauli phased() const {
        PhasedPauli p = pauli;
        p.set_kappa(coeff.phase);
        return p;
    }

    bool operator==(const Term &other) const = default;
};

struct PauliSum {
    std::vector<Term> terms;

    static PauliSum single(const PhasedPauli &p) {
        return PauliSum{{Term::make(Coefficient::one(), p)}};
    }
    std::size_t size() const noexcept {
        return terms.size();
    }
    /// Sum of |coefficient|^2, which is 1 for images of a single Pauli under a unitary.
    double norm2() const {
        double total = 0;
        for (const auto &t : terms) {
            total += std::norm(t.coeff.value());
        }
        return total;
    }
    bool operator==(const PauliSum &other) const = default;
};

inline std::string format_coefficient(const Coefficient &c) {
    static constexpr const char *prefixes[4] = {"+", "+i*", "-", "-i*"};
    std::string out = prefixes[c.phase & 3];
    if (c.trig == Trig::One) {
        return out + "1";
    }
    out += c.trig == Trig::Cos ? "cos(" : "sin(";
    out += format_angle(c.theta) + ")";
    return out;
}

/// e.g. "+sin(0.7) X3 X4 X5 Y6 Z7 +cos(0.7) Z2 X3 Z5 X8".
inline std::string format_sum(const PauliSum &s) {
    std::string out;
    for (const auto &t : s.terms) {
        if (!out.empty()) {
            out += " ";
        }
        out += format_coefficient(t.coeff) + " " + format_sparse(t.pauli);
    }
    return out.empty() ? "0" : out;
}

inline nlohmann::json term_to_json(const Term &t) {
    static constexpr const char *trig_names[3] = {"one", "cos", "sin"};
    return nlohmann::json{{"i_power", t.coeff.phase},
                          {"trig", trig_names[static_cast<int>(t.coeff.trig)]},
                          {"theta", t.coeff.theta},
                          {"pauli", format_pauli(t.pauli)}};
}

inline nlohmann::json sum_to_json(const PauliSum &s) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &t : s.terms) {
        arr.push_back(term_to_json(t));
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Clifford conjugation rules, p -> g p g^dagger, exact phase

/// Conjugates p in place by a Clifford gate. Generic Rz throws UnsupportedError.
inline void apply_clifford(PhasedPauli &p, const Gate &g) {
    auto flip_sign = [&] { p.add_kappa(2); };
    auto &x = p.x();
    auto &z = p.z();
    switch (g.kind) {
        case GateKind::H: {
            bool xb = x.get(g.q0), zb = z.get(g.q0);
            if (xb && zb) {
                flip_sign();
            }
            x.set(g.q0, zb);
            z.set(g.q0, xb);
            return;
        }
        case GateKind::Hy: {
            // X -> -X, Y -> Z, Z -> Y
            bool xb = x.get(g.q0), zb = z.get(g.q0);
            if (xb && !zb) {
                flip_sign();
            }
            x.set(g.q0, xb != zb);
            return;
        }
        case GateKind::Phase: {
            // X -> Y, Y -> -X
            bool xb = x.get(g.q0), zb = z.get(g.q0);
            if (xb && zb) {
                flip_sign();
            }
            z.set(g.q0, zb != xb);
            return;
        }
        case GateKind::CNOT: {
            std::size_t c = g.q0, t = g.q1;
            bool xc = x.get(c), zc = z.get(c), xt = x.get(t), zt = z.get(t);
            if (xc && zt && (xt == zc)) {
                flip_sign();
            }
            x.set(t, xt != xc);
            z.set(c, zc != zt);
            return;
        }
        case GateKind::Rz: {
            auto turns = quarter_turns(g.angle);
            if (!turns) {
                throw UnsupportedError("apply_clifford: RZ(" + format_angle(g.angle) + ") is not Clifford");
            }
            Gate s = Gate::phase(g.q0);
            for (int i = 0; i < *turns; ++i) {
                apply_clifford(p, s);
            }
            return;
        }
    }
    throw InternalError("apply_clifford: unknown gate kind");
}

namespace detail {

inline void check_gate_fits(const Gate &g, std::size_t n) {
    for (auto q : g.qubits()) {
        if (q >= n) {
            throw std::out_of_range(std::string("gate ") + gate_name(g.kind) + " uses qubit " + std::to_string(q) +
                                    " on a " + std::to_string(n) + "-qubit Pauli");
        }
    }
    if (g.kind == GateKind::CNOT && g.q0 == g.q1) {
        throw std::invalid_argument("CNOT control equals target");
    }
}

/// Appends the image of one term under g to `out`.
inline void conjugate_term(const Term &t, const Gate &g, std::vector<Term> &out) {
    if (g.kind != GateKind::Rz || quarter_turns(g.angle)) {
        PhasedPauli p = t.phased();
        apply_clifford(p, g);
        out.push_back(Term::make(Coefficient{0, t.coeff.trig, t.coeff.theta}, std::move(p)));
        return;
    }
    if (!t.pauli.x().get(g.q0)) {
        out.push_back(t);  // local I or Z: Rz acts trivially
        return;
    }
    if (t.coeff.trig != Trig::One) {
        throw UnsupportedError("conjugation needs a second generic rotation split (RZ(" + format_angle(g.angle) +
                               ") on qubit " + std::to_string(g.q0) + "); only Trotter-shaped circuits are supported");
    }
    // Rz(a) Q Rz(a)^dagger = cos(a) Q + sin(a) (i Q Z_q) for Q anticommuting with Z_q.
    PhasedPauli q = t.phased();
    PhasedPauli rotated = q * PhasedPauli::single(q.num_qubits(), g.q0, 'Z');
    rotated.add_kappa(1);
    out.push_back(Term::make(Coefficient::cos(g.angle), q));
    out.push_back(Term::make(Coefficient::sin(g.angle), std::move(rotated)));
}

}  // namespace detail

inline PauliSum conjugate_gate(const PhasedPauli &p, const Gate &g) {
    detail::check_gate_fits(g, p.num_qubits());
    PauliSum out;
    detail::conjugate_term(Term::make(Coefficient::one(), p), g, out.terms);
    return out;
}

/// Image of a PauliSum under one gate.
inline PauliSum conjugate_gate(const PauliSum &s, const Gate &g) {
    PauliSum out;
    for (const auto &t : s.terms) {
        detail::check_gate_fits(g, t.pauli.num_qubits());
        detail::conjugate_term(t, g, out.terms);
    }
    return out;
}

/// U p U^dagger for U = g_m ... g_1, gates applied in list order.
inline PauliSum conjugate_circuit(const PhasedPauli &p, const Circuit &c) {
    if (p.num_qubits() != c.n) {
        throw std::invalid_argument("conjugate_circuit: Pauli has " + std::to_string(p.num_qubits()) +
                                    " qubits, circuit has " + std::to_string(c.n));
    }
    PauliSum s = PauliSum::single(p);
    for (const auto &g : c.gates) {
        s = conjugate_gate(s, g);
    }
    return s;
}

/// U q U^dagger for U = exp(-i theta/2 P), P the Hermitian part of p:
///   q if [q, P] = 0, else cos(theta) q + sin(theta) (i q P).
/// Multiples of pi/2 collapse to a single term.
inline PauliSum conjugate_trotter(const PhasedPauli &q, const PhasedPauli &p, double theta) {
    check_same_qubits(q, p);
    if (commutes(q, p)) {
        return PauliSum::single(q);
    }
    PhasedPauli P = p.hermitian_part();
    PhasedPauli iqp = q * P;
    iqp.add_kappa(1);
    if (auto turns = quarter_turns(theta)) {
        switch (*turns) {
            case 0: return PauliSum::single(q);
            case 1: return PauliSum::single(iqp);
            case 2: return PauliSum::single(-q);
            default: return PauliSum::single(-iqp);
        }
    }
    PauliSum out;
    out.terms.push_back(Term::make(Coefficient::cos(theta), q));
    out.terms.push_back(Term::make(Coefficient::sin(theta), std::move(iqp)));
    return out;
}

/// q * (U q U^dagger), which equals cos(theta) I + i sin(theta) P = U_P(-2 theta).
inline PauliSum double_angle_product(const PhasedPauli &q, const PhasedPauli &p, double theta) {
    check_same_qubits(q, p);
    if (commutes(q, p)) {
        throw std::invalid_argument("double_angle_product: q commutes with p (trivial constraint)");
    }
    PauliSum image = conjugate_trotter(q, p, theta);
    PauliSum out;
    for (const auto &t : image.terms) {
        out.terms.push_back(Term::make(Coefficient{0, t.coeff.trig, t.coeff.theta}, q * t.phased()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form logical images of the Clifford Trotter circuit on a partition

/// Image of Xbar_i (basis 'X') or Zbar_i (basis 'Z') under the logical Clifford
/// Trotter circuit whose basis changes are H on I_h and Hy on I_hy (i 0-based).
inline PhasedPauli lemma1_image(const TrotterPartition &part, std::size_t i, char basis) {
    std::string labels = part.labels();
    if (i >= part.k) {
        throw std::invalid_argument("lemma1_image: index " + std::to_string(i) + " >= k=" + std::to_string(part.k));
    }
    if (basis != 'X' && basis != 'Z') {
        throw std::invalid_argument("lemma1_image: basis must be 'X' or 'Z'");
    }
    // Product of X on `xs`, Y on `ys`, Z on `zs`, where each set is a relabelling of the partition.
    auto build = [&](char on_h, char on_hy, char on_e, char on_i, int sign) {
        PhasedPauli out(part.k);
        for (std::size_t j = 0; j < part.k; ++j) {
            char c = labels[j] == 'X' ? on_h : labels[j] == 'Y' ? on_hy : on_e;
            out.set(j, j == i ? on_i : c);
        }
        out.set_kappa(sign < 0 ? 2 : 0);
        return out;
    };
    PhasedPauli input = PhasedPauli::single(part.k, i, basis);
    switch (labels[i]) {
        case 'Z':  // i in I_e
            if (basis == 'X') {
                return build('X', 'Y', 'Z', 'Y', +1);
            }
            return input;
        case 'X':  // i in I_h
            if (basis == 'X') {
                return input;
            }
            return build('X', 'Y', 'Z', 'Y', -1);
        default:  // i in I_hy
            if (basis == 'X') {
                return build('X', 'Y', 'Z', 'Z', -1);
            }
            return build('X', 'Y', 'Z', 'X', +1);
    }
}

// ---------------------------------------------------------------------------
// Residual errors

struct ResidualReport {
    enum class Kind { Unchanged, NeedsTrotterCorrection };
    Kind kind = Kind::Unchanged;
    double correction_angle = 0;  // -2 theta, rotation axis = physP
    bool clifford_correction = false;
    bool pauli_correction = false;

    nlohmann::json to_json() const {
        nlohmann::json j{{"kind", kind == Kind::Unchanged ? "unchanged" : "needs_trotter_correction"}};
        if (kind == Kind::NeedsTrotterCorrection) {
            j["correction_angle"] = correction_angle;
            j["correction_angle_text"] = format_angle(correction_angle);
            j["clifford"] = clifford_correction;
            j["pauli"] = pauli_correction;
        }
        return j;
    }
};

/// A Pauli error e present before the Trotter circuit for physP leaves it
/// unchanged when it commutes with physP; otherwise it exits as e times
/// U_physP(-2 theta), which has to be undone by that rotation's inverse.
inline ResidualReport residual_error_analysis(const PhasedPauli &e, const PhasedPauli &physP, double theta) {
    check_same_qubits(e, physP);
    ResidualReport r;
    if (commutes(e, physP)) {
        return r;
    }
    r.kind = ResidualReport::Kind::NeedsTrotterCorrection;
    r.correction_angle = -2 * theta;
    auto turns = quarter_turns(r.correction_angle);
    r.clifford_correction = turns.has_value();
    r.pauli_correction = turns && (*turns % 2 == 0);
    return r;
}

// ---------------------------------------------------------------------------
// Verification suites

struct ConstraintCheck {
    std::string name;        // "X1", "Z3", "S2", ...
    PhasedPauli input;       // physical input
    PauliSum expected;       // lifted logical image (or the stabilizer itself)
    PauliSum actual;         // conjugation through the physical circuit
    bool pass = false;
    std::vector<std::vector<std::size_t>> witnesses;  // stabilizer generators per term (0-based)
    std::string message;

    nlohmann::json to_json() const {
        nlohmann::json j{{"constraint", name},
                         {"input", format_pauli(input)},
                         {"pass", pass},
                         {"expected", sum_to_json(expected)},
                         {"actual", sum_to_json(actual)},
                         {"stabilizer_witness", witnesses}};
        if (!message.empty()) {
            j["message"] = message;
        }
        return j;
    }
};

struct VerificationReport {
    std::string kind;
    std::string axis;  // physical rotation axis
    double theta = 0;
    std::vector<ConstraintCheck> checks;

    bool all_pass() const {
        for (const auto &c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return !checks.empty();
    }
    std::size_t failures() const {
        std::size_t f = 0;
        for (const auto &c : checks) {
            f += c.pass ? 0 : 1;
        }
        return f;
    }
    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &c : checks) {
            arr.push_back(c.to_json());
        }
        return nlohmann::json{{"report", kind},
                              {"axis", axis},
                              {"theta", theta},
                              {"theta_text", format_angle(theta)},
                              {"pass", all_pass()},
                              {"checks", std::move(arr)}};
    }
};

namespace detail {

/// Matches `actual` against `expected` term by term: equal trig tags and angles,
/// and actual = expected * S for S exactly in the stabilizer group.
inline void compare_up_to_stabilizers(const CodeBasis &basis, ConstraintCheck &check) {
    const auto &exp = check.expected.terms;
    const auto &act = check.actual.terms;
    if (exp.size() != act.size()) {
        check.pass = false;
        check.message = "expected " + std::to_string(exp.size()) + " terms, got " + std::to_string(act.size());
        return;
    }
    std::vector<bool> used(act.size(), false);
    check.witnesses.assign(exp.size(), {});
    for (std::size_t e = 0; e < exp.size(); ++e) {
        bool matched = false;
        for (std::size_t a = 0; a < act.size() && !matched; ++a) {
            if (used[a] || act[a].coeff.trig != exp[e].coeff.trig ||
                (exp[e].coeff.trig != Trig::One && act[a].coeff.theta != exp[e].coeff.theta)) {
                continue;
            }
            PhasedPauli ratio = exp[e].phased().inverse() * act[a].phased();
            auto w = basis.stabilizer_witness(ratio);
            if (w && w->product == ratio) {
                used[a] = true;
                matched = true;
                check.witnesses[e] = w->generators.ones();
            }
        }
        if (!matched) {
            check.pass = false;
            check.message = "no actual term matches expected term " + format_coefficient(exp[e].coeff) + " " +
                            format_sparse(exp[e].pauli) + " up to a +1 stabilizer";
            return;
        }
    }
    check.pass = true;
}

inline PauliSum lift_sum(const StabilizerCode &code, const PauliSum &logical) {
    PauliSum out;
    for (const auto &t : logical.terms) {
        out.terms.push_back(Term::make(t.coeff, lift(code, t.pauli)));
    }
    return out;
}

}  // namespace detail

/// Checks that `circuit` realizes exp(-i theta/2 P) for the logical P: for each
/// logical generator G, the circuit image of lift(G) must equal the lift of the
/// logical image term by term, up to stabilizer-group elements with phase +1.
inline VerificationReport verify_logical_action(const StabilizerCode &code, const PhasedPauli &logicalP,
                                                double theta, const Circuit &circuit) {
    if (logicalP.num_qubits() != code.k) {
        throw std::invalid_argument("verify_logical_action: logical Pauli has " +
                                    std::to_string(logicalP.num_qubits()) + " qubits, code has k=" +
                                    std::to_string(code.k));
    }
    if (circuit.n != code.n) {
        throw std::invalid_argument("verify_logical_action: circuit width differs from code n");
    }
    CodeBasis basis(code);
    VerificationReport report;
    report.kind = "logical_action";
    report.axis = format_pauli(lift(code, logicalP).hermitian_part());
    report.theta = theta;
    for (char which : {'X', 'Z'}) {
        for (std::size_t i = 0; i < code.k; ++i) {
            ConstraintCheck check;
            check.name = std::string(1, which) + std::to_string(i + 1);
            PhasedPauli g = PhasedPauli::single(code.k, i, which);
            check.input = which == 'X' ? code.logical_x[i] : code.logical_z[i];
            check.expected = detail::lift_sum(code, conjugate_trotter(g, logicalP, theta));
            try {
                check.actual = conjugate_circuit(check.input, circuit);
            } catch (const UnsupportedError &e) {
                check.pass = false;
                check.message = e.what();
                report.checks.push_back(std::move(check));
                continue;
            }
            detail::compare_up_to_stabilizers(basis, check);
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

/// Synthesizes the circuit from lift(logicalP), optionally weight-reduced, and verifies it.
inline VerificationReport verify_logical_action(const StabilizerCode &code, const PhasedPauli &logicalP, double theta,
                                                std::optional<ReduceStrategy> reduce = std::nullopt) {
    PhasedPauli phys = lift(code, logicalP);
    if (reduce) {
        phys = reduce_weight(phys, code, *reduce);
    }
    VerificationReport r = verify_logical_action(code, logicalP, theta, synthesize_trotter(phys, theta));
    r.axis = format_pauli(phys.hermitian_part());
    return r;
}

/// Every stabilizer generator must come back as exactly itself (one term,
/// coefficient +1) through the Trotter circuit for physP.
inline VerificationReport verify_stabilizer_centralization(const StabilizerCode &code, const PhasedPauli &physP,
                                                           double theta) {
    if (physP.num_qubits() != code.n) {
        throw std::invalid_argument("verify_stabilizer_centralization: Pauli width differs from code n");
    }
    Circuit circuit = synthesize_trotter(physP, theta);
    VerificationReport report;
    report.kind = "stabilizer_centralization";
    report.axis = format_pauli(physP.hermitian_part());
    report.theta = theta;
    for (std::size_t j = 0; j < code.stabilizers.size(); ++j) {
        ConstraintCheck check;
        check.name = "S" + std::to_string(j + 1);
        check.input = code.stabilizers[j];
        check.expected = PauliSum::single(check.input);
        try {
            check.actual = conjugate_circuit(check.input, circuit);
            check.pass = check.actual == check.expected;
            if (!check.pass) {
                check.message = "stabilizer not preserved: " + format_sum(check.actual);
            }
        } catch (const UnsupportedError &e) {
            check.message = e.what();
        }
        report.checks.push_back(std::move(check));
    }
    return report;
}

}  // namespace transvect
