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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace transvect {

/// Packed vector over F2.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `size()` in
/// the last word are always zero, so word-level XOR/AND/popcount need no masking.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(std::size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    /// Parses a string of '0'/'1' characters; '|' and spaces are ignored so
    /// symplectic vectors can be written as "101|010".
    static BitVec from_string(std::string_view text) {
        std::size_t n = 0;
        for (char c : text) {
            if (c == '0' || c == '1') {
                ++n;
            } else if (c != '|' && c != ' ') {
                throw std::invalid_argument("BitVec::from_string: unexpected character '" + std::string(1, c) + "'");
            }
        }
        BitVec v(n);
        std::size_t i = 0;
        for (char c : text) {
            if (c == '0' || c == '1') {
                v.set(i++, c == '1');
            }
        }
        return v;
    }

    static BitVec concat(const BitVec &a, const BitVec &b) {
        BitVec out(a.size() + b.size());
        for (std::size_t w = 0; w < a.words_.size(); ++w) {
            out.words_[w] = a.words_[w];
        }
        for (std::size_t i : b.ones()) {
            out.set(a.size() + i, true);
        }
        return out;
    }

    std::size_t size() const noexcept {
        return num_bits_;
    }
    bool empty() const noexcept {
        return num_bits_ == 0;
    }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1U;
    }
    bool operator[](std::size_t i) const {
        return get(i);
    }
    void set(std::size_t i, bool value) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) {
        words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }
    void clear() {
        for (auto &w : words_) {
            w = 0;
        }
    }

    /// Grows or shrinks, keeping the low bits and zeroing anything past the new size.
    void resize(std::size_t num_bits) {
        num_bits_ = num_bits;
        words_.resize((num_bits + 63) / 64, 0);
        mask_tail();
    }

    std::span<const std::uint64_t> words() const noexcept {
        return words_;
    }

    BitVec &operator^=(const BitVec &other) {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    BitVec &operator&=(const BitVec &other) {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] &= other.words_[w];
        }
        return *this;
    }
    BitVec &operator|=(const BitVec &other) {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] |= other.words_[w];
        }
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec &b) {
        return a ^= b;
    }
    friend BitVec operator&(BitVec a, const BitVec &b) {
        return a &= b;
    }
    friend BitVec operator|(BitVec a, const BitVec &b) {
        return a |= b;
    }

    bool operator==(const BitVec &other) const = default;

    std::size_t popcount() const noexcept {
        std::size_t total = 0;
        for (auto w : words_) {
            total += static_cast<std::size_t>(std::popcount(w));
        }
        return total;
    }
    bool any() const noexcept {
        for (auto w : words_) {
            if (w != 0) {
                return true;
            }
        }
        return false;
    }
    bool none() const noexcept {
        return !any();
    }

    /// Index of the first set bit at or after `from`.
    std::optional<std::size_t> first_set(std::size_t from = 0) const {
        if (from >= num_bits_) {
            return std::nullopt;
        }
        std::size_t w = from >> 6;
        std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (word != 0) {
                return (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
            }
            if (++w == words_.size()) {
                return std::nullopt;
            }
            word = words_[w];
        }
    }

    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word != 0) {
                out.push_back((w << 6) + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
        return out;
    }

    BitVec slice(std::size_t begin, std::size_t length) const {
        if (begin + length > num_bits_) {
            throw std::invalid_argument("BitVec::slice out of range");
        }
        BitVec out(length);
        std::size_t shift = begin & 63;
        std::size_t base = begin >> 6;
        for (std::size_t w = 0; w < out.words_.size(); ++w) {
            std::uint64_t lo = words_[base + w] >> shift;
            std::uint64_t hi = 0;
            if (shift != 0 && base + w + 1 < words_.size()) {
                hi = words_[base + w + 1] << (64 - shift);
            }
            out.words_[w] = lo | hi;
        }
        out.mask_tail();
        return out;
    }

    /// Bit-string order: position 0 is compared first and 0 < 1.
    bool lex_less(const BitVec &other) const {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t diff = words_[w] ^ other.words_[w];
            if (diff != 0) {
                std::uint64_t lowest = diff & (~diff + 1);
                return (words_[w] & lowest) == 0;
            }
        }
        return false;
    }

    std::string to_string() const {
        std::string s(num_bits_, '0');
        for (std::size_t i = 0; i < num_bits_; ++i) {
            if (get(i)) {
                s[i] = '1';
            }
        }
        return s;
    }

    /// Packs the first (at most 64) bits into an integer, bit i -> 2^i.
    std::uint64_t to_u64() const {
        if (num_bits_ > 64) {
            throw std::invalid_argument("BitVec::to_u64 needs at most 64 bits");
        }
        return words_.empty() ? 0 : words_[0];
    }
    static BitVec from_u64(std::uint64_t value, std::size_t num_bits) {
        BitVec v(num_bits);
        if (!v.words_.empty()) {
            v.words_[0] = value;
            v.mask_tail();
        }
        return v;
    }

   private:
    void check_same_size(const BitVec &other) const {
        if (num_bits_ != other.num_bits_) {
            throw std::invalid_argument("BitVec length mismatch: " + std::to_string(num_bits_) + " vs " +
                                        std::to_string(other.num_bits_));
        }
    }
    void mask_tail() {
        if ((num_bits_ & 63) != 0 && !words_.empty()) {
            words_.back() &= (std::uint64_t{1} << (num_bits_ & 63)) - 1;
        }
    }

    std::size_t num_bits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Integer dot product |a & b|.
inline std::size_t and_popcount(const BitVec &a, const BitVec &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("and_popcount: length mismatch");
    }
    auto wa = a.words();
    auto wb = b.words();
    std::size_t total = 0;
    for (std::size_t w = 0; w < wa.size(); ++w) {
        total += static_cast<std::size_t>(std::popcount(wa[w] & wb[w]));
    }
    return total;
}

/// Dot product over F2.
inline bool dot(const BitVec &a, const BitVec &b) {
    return (and_popcount(a, b) & 1U) != 0;
}

/// Row-stored matrix over F2.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {
    }

    static BitMatrix from_rows(std::vector<BitVec> rows, std::size_t cols) {
        BitMatrix m;
        m.cols_ = cols;
        for (const auto &r : rows) {
            if (r.size() != cols) {
                throw std::invalid_argument("BitMatrix::from_rows: row length != cols");
            }
        }
        m.rows_ = std::move(rows);
        return m;
    }
    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.set(i, i, true);
        }
        return m;
    }

    std::size_t rows() const noexcept {
        return rows_.size();
    }
    std::size_t cols() const noexcept {
        return cols_;
    }

    const BitVec &row(std::size_t r) const {
        return rows_[r];
    }
    BitVec &row(std::size_t r) {
        return rows_[r];
    }
    const std::vector<BitVec> &row_list() const noexcept {
        return rows_;
    }

    bool get(std::size_t r, std::size_t c) const {
        return rows_[r].get(c);
    }
    void set(std::size_t r, std::size_t c, bool v) {
        rows_[r].set(c, v);
    }

    void push_row(BitVec r) {
        if (r.size() != cols_) {
            throw std::invalid_argument("BitMatrix::push_row: row length != cols");
        }
        rows_.push_back(std::move(r));
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            for (std::size_t c : rows_[r].ones()) {
                t.set(c, r, true);
            }
        }
        return t;
    }

    /// M * v^T, one output bit per row.
    BitVec mul_vec(const BitVec &v) const {
        if (v.size() != cols_) {
            throw std::invalid_argument("BitMatrix::mul_vec: dimension mismatch");
        }
        BitVec out(rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            out.set(r, dot(rows_[r], v));
        }
        return out;
    }

    /// v * M, the XOR of the rows selected by v.
    BitVec vec_mul(const BitVec &v) const {
        if (v.size() != rows_.size()) {
            throw std::invalid_argument("BitMatrix::vec_mul: dimension mismatch");
        }
        BitVec out(cols_);
        for (std::size_t r : v.ones()) {
            out ^= rows_[r];
        }
        return out;
    }

    BitMatrix operator*(const BitMatrix &other) const {
        if (cols_ != other.rows()) {
            throw std::invalid_argument("BitMatrix product: dimension mismatch");
        }
        BitMatrix out(rows_.size(), other.cols());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            out.rows_[r] = other.vec_mul(rows_[r]);
        }
        return out;
    }

    bool operator==(const BitMatrix &other) const = default;

   private:
    std::size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

/// Incrementally built row space in reduced row-echelon form.
///
/// Every basis row remembers which inserted rows XOR to it, so `solve`
/// returns coefficients over the rows in insertion order. Pivots are the
/// leftmost surviving bit of each new row.
class RowSpace {
   public:
    explicit RowSpace(std::size_t cols) : cols_(cols) {
    }
    explicit RowSpace(const BitMatrix &m) : cols_(m.cols()) {
        for (const auto &r : m.row_list()) {
            insert(r);
        }
    }

    std::size_t cols() const noexcept {
        return cols_;
    }
    std::size_t rank() const noexcept {
        return basis_.size();
    }
    std::size_t inserted() const noexcept {
        return inserted_;
    }
    const std::vector<std::size_t> &pivots() const noexcept {
        return pivots_;
    }

    /// Adds a row. Returns true if it increased the rank.
    bool insert(const BitVec &row) {
        check_cols(row);
        std::size_t index = inserted_++;
        for (auto &c : combos_) {
            c.resize(inserted_);
        }
        BitVec v = row;
        BitVec combo(inserted_);
        combo.set(index, true);
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            if (v.get(pivots_[b])) {
                v ^= basis_[b];
                combo ^= combos_[b];
            }
        }
        auto pivot = v.first_set();
        if (!pivot) {
            return false;
        }
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            if (basis_[b].get(*pivot)) {
                basis_[b] ^= v;
                combos_[b] ^= combo;
            }
        }
        basis_.push_back(std::move(v));
        combos_.push_back(std::move(combo));
        pivots_.push_back(*pivot);
        return true;
    }

    /// Remainder of v after elimination against the basis (zero iff v is in the span).
    BitVec reduce(const BitVec &v) const {
        check_cols(v);
        BitVec r = v;
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            if (r.get(pivots_[b])) {
                r ^= basis_[b];
            }
        }
        return r;
    }

    bool contains(const BitVec &v) const {
        return reduce(v).none();
    }

    /// Coefficients c over inserted rows with c * rows == v, if v is in the span.
    std::optional<BitVec> solve(const BitVec &v) const {
        check_cols(v);
        BitVec r = v;
        BitVec c(inserted_);
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            if (r.get(pivots_[b])) {
                r ^= basis_[b];
                c ^= combos_[b];
            }
        }
        if (r.any()) {
            return std::nullopt;
        }
        return c;
    }

    const std::vector<BitVec> &basis() const noexcept {
        return basis_;
    }

   private:
    void check_cols(const BitVec &v) const {
        if (v.size() != cols_) {
            throw std::invalid_argument("RowSpace: vector length " + std::to_string(v.size()) + " != " +
                                        std::to_string(cols_));
        }
    }

    std::size_t cols_;
    std::size_t inserted_ = 0;
    std::vector<BitVec> basis_;
    std::vector<BitVec> combos_;
    std::vector<std::size_t> pivots_;
};

/// Coefficients c with c * M == v, or nullopt when v is outside the row space of M.
inline std::optional<BitVec> solve_membership(const BitMatrix &m, const BitVec &v) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument("solve_membership: vector length != matrix cols");
    }
    return RowSpace(m).solve(v);
}

inline std::size_t rank(const BitMatrix &m) {
    return RowSpace(m).rank();
}

/// Basis of {v : M v^T = 0}, one vector per free column.
inline BitMatrix nullspace(const BitMatrix &m) {
    RowSpace space(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : space.pivots()) {
        is_pivot[p] = true;
    }
    BitMatrix out(0, m.cols());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        BitVec v(m.cols());
        v.set(f, true);
        for (std::size_t b = 0; b < space.rank(); ++b) {
            if (space.basis()[b].get(f)) {
                v.set(space.pivots()[b], true);
            }
        }
        out.push_row(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Symplectic structure on F2^{2n}, vectors laid out as [x | z].

inline void check_symplectic_pair(const BitVec &a, const BitVec &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("symplectic vectors have different lengths");
    }
    if (a.size() % 2 != 0) {
        throw std::invalid_argument("symplectic vector has odd length " + std::to_string(a.size()));
    }
}

/// <x, y>_s = x_a . y_b + x_b . y_a (mod 2).
inline bool symplectic_inner(const BitVec &x, const BitVec &y) {
    check_symplectic_pair(x, y);
    std::size_t n = x.size() / 2;
    BitVec xa = x.slice(0, n), xb = x.slice(n, n);
    BitVec ya = y.slice(0, n), yb = y.slice(n, n);
    return ((and_popcount(xa, yb) + and_popcount(xb, ya)) & 1U) != 0;
}

/// Omega: swaps the two halves of a symplectic vector.
inline BitVec omega(const BitVec &x) {
    if (x.size() % 2 != 0) {
        throw std::invalid_argument("omega: odd length");
    }
    std::size_t n = x.size() / 2;
    return BitVec::concat(x.slice(n, n), x.slice(0, n));
}

/// Z_h(x) = x + <x, h>_s h.
inline BitVec transvection_apply(const BitVec &h, const BitVec &x) {
    check_symplectic_pair(h, x);
    if (symplectic_inner(x, h)) {
        return x ^ h;
    }
    return x;
}

/// F_h = I + Omega h^T h, acting on row vectors (x -> x F_h).
inline BitMatrix transvection_matrix(const BitVec &h) {
    if (h.size() % 2 != 0) {
        throw std::invalid_argument("transvection_matrix: odd length");
    }
    BitMatrix f = BitMatrix::identity(h.size());
    BitVec omega_h = omega(h);
    for (std::size_t r : omega_h.ones()) {
        f.row(r) ^= h;
    }
    return f;
}

}  // namespace transvect
