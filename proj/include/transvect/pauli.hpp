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

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "transvect/errors.hpp"
#include "transvect/f2.hpp"

namespace transvect {

/// i^kappa * E(x, z), where E(x, z) = i^{x.z} X^x Z^z is the Hermitian tensor
/// product of I/X/Y/Z with Y wherever both bits are set.
///
/// So kappa is exactly the phase in front of the printed Pauli string:
/// kappa = 2 is "-XZX", kappa = 1 is "+iXZX".
class PhasedPauli {
   public:
    PhasedPauli() = default;
    explicit PhasedPauli(std::size_t num_qubits) : x_(num_qubits), z_(num_qubits) {
    }
    PhasedPauli(BitVec x, BitVec z, int kappa = 0) : x_(std::move(x)), z_(std::move(z)), kappa_(wrap(kappa)) {
        if (x_.size() != z_.size()) {
            throw std::invalid_argument("PhasedPauli: x and z parts differ in length");
        }
    }

    static PhasedPauli identity(std::size_t num_qubits) {
        return PhasedPauli(num_qubits);
    }
    static PhasedPauli single(std::size_t num_qubits, std::size_t qubit, char pauli) {
        PhasedPauli p(num_qubits);
        p.set(qubit, pauli);
        return p;
    }
    /// From a length-2n vector [x | z].
    static PhasedPauli from_symplectic(const BitVec &h, int kappa = 0) {
        if (h.size() % 2 != 0) {
            throw std::invalid_argument("PhasedPauli::from_symplectic: odd length");
        }
        std::size_t n = h.size() / 2;
        return PhasedPauli(h.slice(0, n), h.slice(n, n), kappa);
    }

    std::size_t num_qubits() const noexcept {
        return x_.size();
    }
    const BitVec &x() const noexcept {
        return x_;
    }
    const BitVec &z() const noexcept {
        return z_;
    }
    BitVec &x() noexcept {
        return x_;
    }
    BitVec &z() noexcept {
        return z_;
    }
    std::uint8_t kappa() const noexcept {
        return kappa_;
    }
    void set_kappa(int kappa) noexcept {
        kappa_ = wrap(kappa);
    }
    void add_kappa(int delta) noexcept {
        kappa_ = wrap(kappa_ + delta);
    }

    /// 'I', 'X', 'Y' or 'Z' at `qubit`.
    char at(std::size_t qubit) const {
        bool xb = x_.get(qubit), zb = z_.get(qubit);
        return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    void set(std::size_t qubit, char pauli) {
        if (qubit >= num_qubits()) {
            throw std::out_of_range("PhasedPauli::set: qubit " + std::to_string(qubit) + " out of range");
        }
        switch (pauli) {
            case 'I': x_.set(qubit, false), z_.set(qubit, false); break;
            case 'X': x_.set(qubit, true), z_.set(qubit, false); break;
            case 'Y': x_.set(qubit, true), z_.set(qubit, true); break;
            case 'Z': x_.set(qubit, false), z_.set(qubit, true); break;
            default: throw std::invalid_argument(std::string("PhasedPauli::set: bad Pauli '") + pauli + "'");
        }
    }

    BitVec symplectic() const {
        return BitVec::concat(x_, z_);
    }
    std::size_t weight() const {
        return (x_ | z_).popcount();
    }
    std::vector<std::size_t> support() const {
        return (x_ | z_).ones();
    }
    bool is_identity() const {
        return x_.none() && z_.none();
    }
    bool is_hermitian() const noexcept {
        return (kappa_ & 1U) == 0;
    }

    /// Sign of the Hermitian operator this Pauli stands for when used as a
    /// rotation axis: -1 for kappa in {2, 3}, else +1. An odd kappa (a leading
    /// +-i, as produced by multiplying an anticommuting pair) is dropped.
    int hermitian_sign() const noexcept {
        return kappa_ >= 2 ? -1 : 1;
    }
    /// Same binary part with kappa 0 or 2 according to `hermitian_sign`.
    PhasedPauli hermitian_part() const {
        PhasedPauli out(x_, z_, kappa_ >= 2 ? 2 : 0);
        return out;
    }

    /// Equality of the binary parts, ignoring phase.
    bool same_binary(const PhasedPauli &other) const {
        return x_ == other.x_ && z_ == other.z_;
    }

    /// Inverse; each E(x, z) squares to I so only the phase changes.
    PhasedPauli inverse() const {
        return PhasedPauli(x_, z_, -static_cast<int>(kappa_));
    }

    PhasedPauli operator-() const {
        return PhasedPauli(x_, z_, kappa_ + 2);
    }

    PhasedPauli &operator*=(const PhasedPauli &rhs);
    friend PhasedPauli operator*(PhasedPauli lhs, const PhasedPauli &rhs) {
        return lhs *= rhs;
    }

    bool operator==(const PhasedPauli &other) const = default;

   private:
    static std::uint8_t wrap(int k) noexcept {
        return static_cast<std::uint8_t>(((k % 4) + 4) % 4);
    }

    BitVec x_;
    BitVec z_;
    std::uint8_t kappa_ = 0;
};

inline void check_same_qubits(const PhasedPauli &a, const PhasedPauli &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("Pauli size mismatch: " + std::to_string(a.num_qubits()) + " vs " +
                                    std::to_string(b.num_qubits()));
    }
}

inline PhasedPauli &PhasedPauli::operator*=(const PhasedPauli &rhs) {
    check_same_qubits(*this, rhs);
    // E(a1,b1) E(a2,b2) = i^{a1.b1 + a2.b2 + 2 b1.a2 - a3.b3} E(a3,b3), integer dot products.
    std::size_t k = kappa_ + rhs.kappa_;
    k += and_popcount(x_, z_) + and_popcount(rhs.x_, rhs.z_) + 2 * and_popcount(z_, rhs.x_);
    x_ ^= rhs.x_;
    z_ ^= rhs.z_;
    std::size_t overlap = and_popcount(x_, z_);
    kappa_ = wrap(static_cast<int>((k + 4 - (overlap & 3U)) & 3U));
    return *this;
}

/// Operator product p * q with exact phase.
inline PhasedPauli pauli_mul(const PhasedPauli &p, const PhasedPauli &q) {
    return p * q;
}

/// Symplectic inner product of the binary parts, without building 2n vectors.
inline bool anticommutes(const PhasedPauli &p, const PhasedPauli &q) {
    check_same_qubits(p, q);
    return ((and_popcount(p.x(), q.z()) + and_popcount(p.z(), q.x())) & 1U) != 0;
}

inline bool commutes(const PhasedPauli &p, const PhasedPauli &q) {
    return !anticommutes(p, q);
}

/// Canonical tie-break order on binary Pauli parts: the interleaved vector
/// (x_0, z_0, x_1, z_1, ...) compared lexicographically, position 0 first.
/// Per qubit this ranks I < Z < X < Y.
inline bool qubit_major_less(const BitVec &x1, const BitVec &z1, const BitVec &x2, const BitVec &z2) {
    auto a = x1.words(), b = z1.words(), c = x2.words(), d = z2.words();
    for (std::size_t w = 0; w < a.size(); ++w) {
        std::uint64_t diff = (a[w] ^ c[w]) | (b[w] ^ d[w]);
        if (diff != 0) {
            std::uint64_t lowest = diff & (~diff + 1);
            if ((a[w] ^ c[w]) & lowest) {
                return (a[w] & lowest) == 0;
            }
            return (b[w] & lowest) == 0;
        }
    }
    return false;
}

inline bool qubit_major_less(const PhasedPauli &p, const PhasedPauli &q) {
    check_same_qubits(p, q);
    return qubit_major_less(p.x(), p.z(), q.x(), q.z());
}

namespace detail {

inline const char *phase_prefix(std::uint8_t kappa) {
    static constexpr const char *prefixes[4] = {"", "+i", "-", "-i"};
    return prefixes[kappa & 3U];
}

}  // namespace detail

/// Dense form, e.g. "-iXIZY". The phase prefix is omitted for kappa = 0.
inline std::string format_pauli(const PhasedPauli &p) {
    std::string out = detail::phase_prefix(p.kappa());
    for (std::size_t q = 0; q < p.num_qubits(); ++q) {
        out.push_back(p.at(q));
    }
    return out;
}

/// Sparse form with 1-based indices, e.g. "-Z2 X4 Y5". Identity prints densely.
inline std::string format_sparse(const PhasedPauli &p) {
    if (p.is_identity()) {
        return format_pauli(p);
    }
    std::string out = detail::phase_prefix(p.kappa());
    bool first = true;
    for (std::size_t q : p.support()) {
        if (!first) {
            out.push_back(' ');
        }
        first = false;
        out.push_back(p.at(q));
        out += std::to_string(q + 1);
    }
    return out;
}

/// Parses a Pauli on `num_qubits` qubits.
///
/// Grammar:
///   pauli  := [phase] (dense | sparse)
///   phase  := "+" | "-" | "+i" | "-i" | "i"      (may be followed by spaces)
///   dense  := exactly num_qubits characters from I X Y Z
///   sparse := term (" "+ term)*,  term := [IXYZ] index,  index 1-based
///
/// A string containing any digit is read as sparse. Errors carry the
/// 0-based character offset where parsing failed.
inline PhasedPauli parse_pauli(std::string_view text, std::size_t num_qubits) {
    auto fail = [&](const std::string &why, std::size_t pos) -> ParseError {
        return ParseError("bad Pauli string \"" + std::string(text) + "\" at offset " + std::to_string(pos) + ": " +
                              why,
                          pos);
    };
    std::size_t pos = 0;
    auto skip_spaces = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    skip_spaces();
    int kappa = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        kappa = text[pos] == '-' ? 2 : 0;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        kappa += 1;
        ++pos;
    }
    skip_spaces();
    std::size_t body = pos;
    if (body == text.size()) {
        throw fail("empty Pauli string", pos);
    }

    PhasedPauli p(num_qubits);
    bool sparse = false;
    for (std::size_t i = body; i < text.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            sparse = true;
        }
    }

    auto is_letter = [](char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; };

    if (!sparse) {
        std::size_t q = 0;
        for (; pos < text.size(); ++pos) {
            char c = text[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                std::size_t rest = pos;
                while (rest < text.size() && std::isspace(static_cast<unsigned char>(text[rest]))) {
                    ++rest;
                }
                if (rest != text.size()) {
                    throw fail("spaces are only allowed in the sparse form", pos);
                }
                break;
            }
            if (!is_letter(c)) {
                throw fail(std::string("unexpected character '") + c + "'", pos);
            }
            if (q >= num_qubits) {
                throw fail("dense string longer than " + std::to_string(num_qubits) + " qubits", pos);
            }
            p.set(q++, c);
        }
        if (q != num_qubits) {
            throw fail("dense string has " + std::to_string(q) + " qubits, expected " + std::to_string(num_qubits),
                       pos);
        }
    } else {
        std::vector<bool> seen(num_qubits, false);
        while (true) {
            skip_spaces();
            if (pos == text.size()) {
                break;
            }
            std::size_t term_start = pos;
            char c = text[pos];
            if (!is_letter(c)) {
                throw fail(std::string("expected one of IXYZ, got '") + c + "'", pos);
            }
            ++pos;
            std::size_t digits_start = pos;
            std::size_t index = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                index = index * 10 + static_cast<std::size_t>(text[pos] - '0');
                if (index > (std::size_t{1} << 40)) {
                    throw fail("qubit index too large", digits_start);
                }
                ++pos;
            }
            if (pos == digits_start) {
                throw fail("missing qubit index after '" + std::string(1, c) + "'", pos);
            }
            if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
                throw fail(std::string("unexpected character '") + text[pos] + "'", pos);
            }
            if (index < 1 || index > num_qubits) {
                throw fail("qubit index " + std::to_string(index) + " outside 1.." + std::to_string(num_qubits),
                           digits_start);
            }
            if (seen[index - 1]) {
                throw fail("duplicate qubit index " + std::to_string(index), term_start);
            }
            seen[index - 1] = true;
            p.set(index - 1, c);
        }
    }
    p.set_kappa(kappa);
    return p;
}

}  // namespace transvect
