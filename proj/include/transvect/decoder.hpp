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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "transvect/code.hpp"
#include "transvect/errors.hpp"
#include "transvect/f2.hpp"
#include "transvect/pauli.hpp"

namespace transvect {

enum class DecoderKind { Lookup, BpOsd };

struct DecoderConfig {
    DecoderKind kind = DecoderKind::Lookup;
    std::size_t bp_max_iters = 30;
    double min_sum_scale = 0.75;
    double prior_p = 0.01;
    std::size_t osd_order = 0;

    void check() const {
        if (!(prior_p > 0 && prior_p < 1)) {
            throw std::invalid_argument("DecoderConfig: prior_p must lie in (0, 1)");
        }
        if (bp_max_iters < 1) {
            throw std::invalid_argument("DecoderConfig: bp_max_iters must be at least 1");
        }
        if (osd_order != 0) {
            throw UnsupportedError("DecoderConfig: only OSD order 0 is implemented");
        }
        if (!(min_sum_scale > 0 && min_sum_scale <= 1)) {
            throw std::invalid_argument("DecoderConfig: min_sum_scale must lie in (0, 1]");
        }
    }
};

inline DecoderKind parse_decoder_kind(const std::string &name) {
    if (name == "lookup") {
        return DecoderKind::Lookup;
    }
    if (name == "bp_osd" || name == "bposd" || name == "bp-osd") {
        return DecoderKind::BpOsd;
    }
    throw ParseError("unknown decoder '" + name + "' (expected lookup or bp_osd)", 0);
}

class Decoder {
   public:
    virtual ~Decoder() = default;
    /// A Pauli whose syndrome equals `syndrome`.
    virtual PhasedPauli decode(const BitVec &syndrome) const = 0;
};

// ---------------------------------------------------------------------------
// Lookup table

/// Minimum-weight coset leader per syndrome, ties broken by `qubit_major_less`.
/// Built breadth-first over error weight.
class LookupDecoder : public Decoder {
   public:
    static constexpr std::size_t kMaxChecks = 22;
    static constexpr std::uint64_t kMaxEnumerated = 200'000'000;

    explicit LookupDecoder(const StabilizerCode &code) : n_(code.n), m_(code.stabilizers.size()) {
        if (m_ > kMaxChecks) {
            throw CapacityError("lookup decoder supports at most " + std::to_string(kMaxChecks) +
                                " stabilizer generators, code has " + std::to_string(m_));
        }
        // Syndromes of X_q and Z_q packed into integers.
        sx_.resize(n_);
        sz_.resize(n_);
        for (std::size_t q = 0; q < n_; ++q) {
            sx_[q] = syndrome(code, PhasedPauli::single(n_, q, 'X')).to_u64();
            sz_[q] = syndrome(code, PhasedPauli::single(n_, q, 'Z')).to_u64();
        }
        const std::uint64_t total = std::uint64_t{1} << m_;
        table_x_.assign(total, BitVec());
        table_z_.assign(total, BitVec());
        filled_.assign(total, false);
        table_x_[0] = BitVec(n_);
        table_z_[0] = BitVec(n_);
        filled_[0] = true;
        std::uint64_t remaining = total - 1;
        std::uint64_t enumerated = 0;
        for (std::size_t w = 1; w <= n_ && remaining > 0; ++w) {
            std::vector<bool> fresh(total, false);
            std::vector<std::size_t> qubits;
            BitVec x(n_), z(n_);
            enumerate(0, w, 0, qubits, x, z, fresh, remaining, enumerated);
        }
        if (remaining > 0) {
            throw InternalError("lookup decoder: some syndromes are unreachable (dependent stabilizers?)");
        }
    }

    std::size_t num_syndromes() const noexcept {
        return filled_.size();
    }

    PhasedPauli decode(const BitVec &s) const override {
        if (s.size() != m_) {
            throw std::invalid_argument("lookup decode: syndrome has " + std::to_string(s.size()) + " bits, expected " +
                                        std::to_string(m_));
        }
        auto idx = s.to_u64();
        return PhasedPauli(table_x_[idx], table_z_[idx], 0);
    }

   private:
    // Chooses `left` more qubits from [start, n) in ascending order; at the leaves assigns X/Y/Z.
    void enumerate(std::size_t start, std::size_t left, std::uint64_t syn, std::vector<std::size_t> &qubits, BitVec &x,
                   BitVec &z, std::vector<bool> &fresh, std::uint64_t &remaining, std::uint64_t &enumerated) {
        if (left == 0) {
            if (++enumerated > kMaxEnumerated) {
                throw CapacityError("lookup decoder: table construction exceeds the enumeration budget");
            }
            record(syn, x, z, fresh, remaining);
            return;
        }
        for (std::size_t q = start; q + left <= n_; ++q) {
            qubits.push_back(q);
            for (int p = 0; p < 3; ++p) {
                bool xb = p != 2, zb = p != 0;  // X, Y, Z
                std::uint64_t s = syn ^ (xb ? sx_[q] : 0) ^ (zb ? sz_[q] : 0);
                x.set(q, xb);
                z.set(q, zb);
                enumerate(q + 1, left - 1, s, qubits, x, z, fresh, remaining, enumerated);
            }
            x.set(q, false);
            z.set(q, false);
            qubits.pop_back();
        }
    }

    void record(std::uint64_t syn, const BitVec &x, const BitVec &z, std::vector<bool> &fresh,
                std::uint64_t &remaining) {
        if (!filled_[syn]) {
            filled_[syn] = true;
            fresh[syn] = true;
            table_x_[syn] = x;
            table_z_[syn] = z;
            --remaining;
            return;
        }
        if (fresh[syn]) {
            bool smaller = qubit_major_less(x, z, table_x_[syn], table_z_[syn]);
            if (smaller) {
                table_x_[syn] = x;
                table_z_[syn] = z;
            }
        }
    }

    std::size_t n_;
    std::size_t m_;
    std::vector<std::uint64_t> sx_, sz_;
    std::vector<BitVec> table_x_, table_z_;
    std::vector<bool> filled_;
};

// ---------------------------------------------------------------------------
// Min-sum belief propagation on a binary parity-check matrix

struct BpResult {
    BitVec hard;                   // hard decision, 1 = flipped
    std::vector<double> posterior; // log(P(0)/P(1)) per variable
    bool converged = false;
    std::size_t iterations = 0;
};

/// Scaled min-sum BP decoding H e = s. Immutable; decode() keeps all state local.
class MinSumBp {
   public:
    MinSumBp(const BitMatrix &h, std::vector<double> prior_llr, std::size_t max_iters, double scale)
        : h_(h), prior_(std::move(prior_llr)), max_iters_(max_iters), scale_(scale) {
        if (prior_.size() != h.cols()) {
            throw std::invalid_argument("MinSumBp: need one prior per column");
        }
        check_vars_.resize(h.rows());
        var_edges_.resize(h.cols());
        for (std::size_t c = 0; c < h.rows(); ++c) {
            for (auto v : h.row(c).ones()) {
                var_edges_[v].push_back(edge_var_.size());
                check_vars_[c].push_back(edge_var_.size());
                edge_var_.push_back(v);
                edge_check_.push_back(c);
            }
        }
    }

    static double llr_from_probability(double p) {
        return std::log((1 - p) / p);
    }

    const BitMatrix &matrix() const noexcept {
        return h_;
    }

    BpResult decode(const BitVec &s) const {
        if (s.size() != h_.rows()) {
            throw std::invalid_argument("MinSumBp: syndrome length != rows");
        }
        const std::size_t edges = edge_var_.size();
        std::vector<double> v2c(edges), c2v(edges, 0.0);
        for (std::size_t e = 0; e < edges; ++e) {
            v2c[e] = prior_[edge_var_[e]];
        }
        BpResult r;
        r.posterior = prior_;
        r.hard = BitVec(h_.cols());
        for (std::size_t it = 1; it <= max_iters_; ++it) {
            // Check update: sign product (times syndrome parity) and scaled minimum of the others.
            for (std::size_t c = 0; c < check_vars_.size(); ++c) {
                const auto &es = check_vars_[c];
                double min1 = std::numeric_limits<double>::infinity(), min2 = min1;
                std::size_t argmin = 0;
                bool negative = s.get(c);
                for (std::size_t k = 0; k < es.size(); ++k) {
                    double m = v2c[es[k]];
                    negative ^= m < 0;
                    double a = std::abs(m);
                    if (a < min1) {
                        min2 = min1, min1 = a, argmin = k;
                    } else if (a < min2) {
                        min2 = a;
                    }
                }
                for (std::size_t k = 0; k < es.size(); ++k) {
                    double m = v2c[es[k]];
                    bool sign = negative ^ (m < 0);
                    double mag = scale_ * (k == argmin ? min2 : min1);
                    if (!std::isfinite(mag)) {
                        mag = 0;  // degree-1 check: no information from others
                    }
                    c2v[es[k]] = sign ? -mag : mag;
                }
            }
            // Variable update and hard decision.
            for (std::size_t v = 0; v < var_edges_.size(); ++v) {
                double total = prior_[v];
                for (auto e : var_edges_[v]) {
                    total += c2v[e];
                }
                r.posterior[v] = total;
                r.hard.set(v, total < 0);
                for (auto e : var_edges_[v]) {
                    v2c[e] = total - c2v[e];
                }
            }
            r.iterations = it;
            if (h_.mul_vec(r.hard) == s) {
                r.converged = true;
                break;
            }
        }
        return r;
    }

   private:
    BitMatrix h_;
    std::vector<double> prior_;
    std::size_t max_iters_;
    double scale_;
    std::vector<std::vector<std::size_t>> check_vars_;  // edge ids per check
    std::vector<std::vector<std::size_t>> var_edges_;   // edge ids per variable
    std::vector<std::size_t> edge_var_, edge_check_;
};

/// OSD-0: columns sorted from least to most reliable (posterior LLR ascending, ties
/// by index); the first independent ones form the information set, on which
/// H e = s is solved exactly. Everything else is zero.
inline BitVec osd0(const BitMatrix &h, const BitVec &s, const std::vector<double> &posterior) {
    const std::size_t cols = h.cols();
    if (posterior.size() != cols || s.size() != h.rows()) {
        throw std::invalid_argument("osd0: dimension mismatch");
    }
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return posterior[a] < posterior[b]; });
    BitMatrix ht = h.transposed();
    const std::size_t full_rank = rank(h);
    RowSpace span(h.rows());
    std::vector<std::size_t> chosen;
    for (auto col : order) {
        if (span.rank() == full_rank) {
            break;
        }
        if (span.insert(ht.row(col))) {
            chosen.push_back(col);
        } else {
            // RowSpace indexes coefficients by insertion; keep the bookkeeping aligned.
            chosen.push_back(cols);
        }
    }
    auto coeffs = span.solve(s);
    if (!coeffs) {
        throw InternalError("osd0: syndrome is not in the column space of the check matrix");
    }
    BitVec e(cols);
    for (auto i : coeffs->ones()) {
        if (chosen[i] == cols) {
            throw InternalError("osd0: solution uses a dependent column");
        }
        e.set(chosen[i], true);
    }
    return e;
}

/// Joint X/Z decoding of a (possibly non-CSS) stabilizer code: variables are the
/// 2n bits [e_x | e_z], check j is <e, S_j>_s, priors 2p/3 per bit.
class BpOsdDecoder : public Decoder {
   public:
    BpOsdDecoder(const StabilizerCode &code, const DecoderConfig &cfg)
        : n_(code.n), bp_(check_matrix(code), std::vector<double>(2 * code.n, MinSumBp::llr_from_probability(
                                                                                   2 * cfg.prior_p / 3)),
                          cfg.bp_max_iters, cfg.min_sum_scale) {
        cfg.check();
    }

    /// Row j = [S_j.z | S_j.x], so H [e_x | e_z]^T is the syndrome.
    static BitMatrix check_matrix(const StabilizerCode &code) {
        BitMatrix h(0, 2 * code.n);
        for (const auto &s : code.stabilizers) {
            h.push_row(BitVec::concat(s.z(), s.x()));
        }
        return h;
    }

    PhasedPauli decode(const BitVec &s) const override {
        BpResult r = bp_.decode(s);
        BitVec e = r.converged ? r.hard : osd0(bp_.matrix(), s, r.posterior);
        return PhasedPauli(e.slice(0, n_), e.slice(n_, n_), 0);
    }

    BpResult run_bp(const BitVec &s) const {
        return bp_.decode(s);
    }

   private:
    std::size_t n_;
    MinSumBp bp_;
};

inline std::unique_ptr<Decoder> make_decoder(const StabilizerCode &code, const DecoderConfig &cfg) {
    cfg.check();
    if (cfg.kind == DecoderKind::Lookup) {
        return std::make_unique<LookupDecoder>(code);
    }
    return std::make_unique<BpOsdDecoder>(code, cfg);
}

/// One-shot convenience wrapper; build the decoder once for repeated use.
inline PhasedPauli decode(const StabilizerCode &code, const BitVec &syndrome_bits, const DecoderConfig &cfg) {
    if (syndrome_bits.size() != code.stabilizers.size()) {
        throw std::invalid_argument("decode: syndrome has " + std::to_string(syndrome_bits.size()) +
                                    " bits, code has " + std::to_string(code.stabilizers.size()) + " generators");
    }
    return make_decoder(code, cfg)->decode(syndrome_bits);
}

}  // namespace transvect
