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
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "transvect/code.hpp"
#include "transvect/errors.hpp"
#include "transvect/f2.hpp"

namespace transvect {

/// Matrix over F2[x] / (x^L - 1). Each entry is the set of exponents with
/// coefficient 1, kept sorted and reduced mod L.
struct CirculantMatrix {
    std::size_t lift = 1;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::size_t>> entries;  // rows * cols, row major

    CirculantMatrix() = default;
    CirculantMatrix(std::size_t lift_size, std::size_t r, std::size_t c)
        : lift(lift_size), rows(r), cols(c), entries(r * c) {
        if (lift_size == 0) {
            throw std::invalid_argument("CirculantMatrix: lift size must be positive");
        }
    }

    const std::vector<std::size_t> &at(std::size_t r, std::size_t c) const {
        return entries[r * cols + c];
    }
    void set(std::size_t r, std::size_t c, std::vector<std::size_t> exponents) {
        // x^e + x^e = 0, so exponents cancel in pairs.
        std::vector<std::size_t> reduced;
        for (auto e : exponents) {
            reduced.push_back(e % lift);
        }
        std::sort(reduced.begin(), reduced.end());
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < reduced.size();) {
            std::size_t j = i;
            while (j < reduced.size() && reduced[j] == reduced[i]) {
                ++j;
            }
            if ((j - i) % 2 == 1) {
                out.push_back(reduced[i]);
            }
            i = j;
        }
        entries[r * cols + c] = std::move(out);
    }

    /// Transpose with x -> x^{-1} on every entry.
    CirculantMatrix conjugate_transpose() const {
        CirculantMatrix t(lift, cols, rows);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                std::vector<std::size_t> neg;
                for (auto e : at(r, c)) {
                    neg.push_back((lift - e) % lift);
                }
                t.set(c, r, std::move(neg));
            }
        }
        return t;
    }

    /// Binary (rows*L) x (cols*L) matrix; x^e becomes the cyclic shift with
    /// row i having a one in column (i + e) mod L.
    BitMatrix expand() const {
        BitMatrix m(rows * lift, cols * lift);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                for (auto e : at(r, c)) {
                    for (std::size_t i = 0; i < lift; ++i) {
                        m.row(r * lift + i).flip(c * lift + (i + e) % lift);
                    }
                }
            }
        }
        return m;
    }
};

/// Reads a base matrix:
///
///   lift <L> <rows> <cols>
///   <rows lines of <cols> entries>
///
/// An entry is `0` (zero), or monomials joined by '+': `1`, `x`, `x^3`, e.g. `1+x^2`.
inline CirculantMatrix parse_circulant(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    CirculantMatrix m;
    bool have_header = false;
    std::size_t row = 0;
    auto fail = [&](const std::string &why) { return ParseError("line " + std::to_string(line_no) + ": " + why, line_no); };
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
            if (words.size() != 4 || words[0] != "lift") {
                throw fail("expected 'lift <L> <rows> <cols>'");
            }
            try {
                m = CirculantMatrix(std::stoul(words[1]), std::stoul(words[2]), std::stoul(words[3]));
            } catch (const std::invalid_argument &) {
                throw fail("bad lift header");
            }
            have_header = true;
            continue;
        }
        if (row >= m.rows) {
            throw fail("more rows than declared");
        }
        if (words.size() != m.cols) {
            throw fail("expected " + std::to_string(m.cols) + " entries, got " + std::to_string(words.size()));
        }
        for (std::size_t c = 0; c < m.cols; ++c) {
            std::vector<std::size_t> exps;
            if (words[c] != "0") {
                std::istringstream terms(words[c]);
                for (std::string t; std::getline(terms, t, '+');) {
                    if (t == "1") {
                        exps.push_back(0);
                    } else if (t == "x") {
                        exps.push_back(1);
                    } else if (t.size() > 2 && t[0] == 'x' && t[1] == '^' &&
                               std::all_of(t.begin() + 2, t.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
                        exps.push_back(std::stoul(t.substr(2)));
                    } else {
                        throw fail("bad monomial '" + t + "'");
                    }
                }
            }
            m.set(row, c, std::move(exps));
        }
        ++row;
    }
    if (!have_header) {
        throw ParseError("missing 'lift' header", line_no);
    }
    if (row != m.rows) {
        throw ParseError("expected " + std::to_string(m.rows) + " rows, got " + std::to_string(row), line_no);
    }
    return m;
}

namespace detail {

/// Original rows of m that are linearly independent, scanning top to bottom.
inline std::vector<BitVec> independent_rows(const BitMatrix &m) {
    RowSpace span(m.cols());
    std::vector<BitVec> out;
    for (const auto &r : m.row_list()) {
        if (span.insert(r)) {
            out.push_back(r);
        }
    }
    return out;
}

/// Kernel vectors of `commute_with` that are not in the span of `stabilizers`.
inline std::vector<BitVec> logical_candidates(const BitMatrix &commute_with, const std::vector<BitVec> &stabilizers,
                                              std::size_t n) {
    RowSpace span(n);
    for (const auto &s : stabilizers) {
        span.insert(s);
    }
    std::vector<BitVec> out;
    BitMatrix kernel = nullspace(commute_with);
    for (const auto &v : kernel.row_list()) {
        if (span.insert(v)) {
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace detail

/// CSS code from X- and Z-check matrices (each n columns). Dependent checks are
/// dropped, keeping the first independent rows; logical operators come from
/// ker(H_Z) / rowspace(H_X) and ker(H_X) / rowspace(H_Z), paired by symplectic
/// Gram-Schmidt.
inline StabilizerCode css_code_from_checks(const BitMatrix &hx, const BitMatrix &hz, std::string name = {}) {
    if (hx.cols() != hz.cols()) {
        throw std::invalid_argument("css_code_from_checks: H_X and H_Z have different column counts");
    }
    const std::size_t n = hx.cols();
    for (std::size_t i = 0; i < hx.rows(); ++i) {
        for (std::size_t j = 0; j < hz.rows(); ++j) {
            if (dot(hx.row(i), hz.row(j))) {
                throw ValidationError("css_code_from_checks: X check " + std::to_string(i) + " and Z check " +
                                      std::to_string(j) + " overlap oddly");
            }
        }
    }
    auto x_rows = detail::independent_rows(hx);
    auto z_rows = detail::independent_rows(hz);
    auto xs = detail::logical_candidates(hz, x_rows, n);
    auto zs = detail::logical_candidates(hx, z_rows, n);
    if (xs.size() != zs.size()) {
        throw InternalError("css_code_from_checks: unequal numbers of X and Z logicals");
    }
    const std::size_t k = xs.size();

    // Symplectic Gram-Schmidt: make dot(xs[i], zs[j]) = delta_ij.
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i;
        while (j < k && !dot(xs[i], zs[j])) {
            ++j;
        }
        if (j == k) {
            throw InternalError("css_code_from_checks: logical X has no Z partner");
        }
        std::swap(zs[i], zs[j]);
        for (std::size_t other = 0; other < k; ++other) {
            if (other != i && dot(xs[i], zs[other])) {
                zs[other] ^= zs[i];
            }
        }
        for (std::size_t other = 0; other < k; ++other) {
            if (other != i && dot(xs[other], zs[i])) {
                xs[other] ^= xs[i];
            }
        }
    }

    StabilizerCode code;
    code.n = n;
    code.k = k;
    code.name = std::move(name);
    BitVec zero(n);
    for (auto &r : x_rows) {
        code.stabilizers.emplace_back(r, zero);
    }
    for (auto &r : z_rows) {
        code.stabilizers.emplace_back(zero, r);
    }
    for (auto &v : xs) {
        code.logical_x.emplace_back(v, zero);
    }
    for (auto &v : zs) {
        code.logical_z.emplace_back(zero, v);
    }
    auto violations = validate(code);
    if (!violations.empty()) {
        throw InternalError("css_code_from_checks produced an invalid code:\n" + format_violations(violations));
    }
    return code;
}

/// Lifted product LP(A, B) over F2[x]/(x^L - 1):
///
///   H_X = [ A (x) I_{m_B} | I_{m_A} (x) B  ]
///   H_Z = [ I_{n_A} (x) B* | A* (x) I_{n_B} ]
///
/// with n = (n_A m_B + m_A n_B) L physical qubits. No distance is computed.
inline StabilizerCode lifted_product(const CirculantMatrix &a, const CirculantMatrix &b, std::string name = {}) {
    if (a.lift != b.lift) {
        throw std::invalid_argument("lifted_product: inconsistent lift sizes " + std::to_string(a.lift) + " and " +
                                    std::to_string(b.lift));
    }
    const std::size_t L = a.lift;
    const std::size_t ma = a.rows, na = a.cols, mb = b.rows, nb = b.cols;
    CirculantMatrix a_star = a.conjugate_transpose();
    CirculantMatrix b_star = b.conjugate_transpose();

    // Kronecker products with identities, at the ring level.
    CirculantMatrix hx(L, ma * mb, na * mb + ma * nb);
    for (std::size_t i = 0; i < ma; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t t = 0; t < mb; ++t) {
                hx.set(i * mb + t, j * mb + t, a.at(i, j));
            }
        }
    }
    for (std::size_t s = 0; s < ma; ++s) {
        for (std::size_t i = 0; i < mb; ++i) {
            for (std::size_t j = 0; j < nb; ++j) {
                hx.set(s * mb + i, na * mb + s * nb + j, b.at(i, j));
            }
        }
    }
    CirculantMatrix hz(L, na * nb, na * mb + ma * nb);
    for (std::size_t s = 0; s < na; ++s) {
        for (std::size_t i = 0; i < nb; ++i) {
            for (std::size_t j = 0; j < mb; ++j) {
                hz.set(s * nb + i, s * mb + j, b_star.at(i, j));
            }
        }
    }
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < ma; ++j) {
            for (std::size_t t = 0; t < nb; ++t) {
                hz.set(i * nb + t, na * mb + j * nb + t, a_star.at(i, j));
            }
        }
    }
    return css_code_from_checks(hx.expand(), hz.expand(), std::move(name));
}

/// Sparse check matrix text: a `<rows> <cols>` line, then one line per row
/// listing the 0-based column indices of its ones ('-' for an empty row, '#'
/// starts a comment).
inline BitMatrix parse_sparse_checks(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    BitMatrix m;
    std::size_t rows = 0, row = 0;
    auto fail = [&](const std::string &why) { return ParseError("line " + std::to_string(line_no) + ": " + why, line_no); };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream tokens(line);
        std::vector<std::size_t> values;
        bool empty_row = false;
        for (std::string w; tokens >> w;) {
            if (w == "-" && have_header && values.empty() && !empty_row) {
                empty_row = true;
                continue;
            }
            if (empty_row || w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                throw fail("expected a non-negative integer, got '" + w + "'");
            }
            values.push_back(std::stoul(w));
        }
        if (!have_header) {
            if (values.empty()) {
                continue;
            }
            if (values.size() != 2) {
                throw fail("expected '<rows> <cols>' header");
            }
            rows = values[0];
            m = BitMatrix(0, values[1]);
            have_header = true;
            continue;
        }
        if (values.empty() && !empty_row) {
            continue;
        }
        if (row >= rows) {
            throw fail("more rows than declared");
        }
        BitVec r(m.cols());
        for (auto c : values) {
            if (c >= m.cols()) {
                throw fail("column " + std::to_string(c) + " out of range");
            }
            r.flip(c);
        }
        m.push_row(std::move(r));
        ++row;
    }
    if (!have_header) {
        throw ParseError("missing '<rows> <cols>' header", line_no);
    }
    if (row != rows) {
        throw ParseError("expected " + std::to_string(rows) + " rows, got " + std::to_string(row), line_no);
    }
    return m;
}

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline BitMatrix load_sparse_checks(const std::string &path) {
    return parse_sparse_checks(read_text_file(path));
}

inline std::string format_sparse_checks(const BitMatrix &m) {
    std::ostringstream out;
    out << m.rows() << " " << m.cols() << "\n";
    for (const auto &r : m.row_list()) {
        if (r.none()) {
            out << "-\n";
            continue;
        }
        bool first = true;
        for (auto c : r.ones()) {
            out << (first ? "" : " ") << c;
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace transvect
