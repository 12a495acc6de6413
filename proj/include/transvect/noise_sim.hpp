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
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "transvect/circuit.hpp"
#include "transvect/code.hpp"
#include "transvect/decoder.hpp"
#include "transvect/errors.hpp"
#include "transvect/pauli.hpp"
#include "transvect/propagate.hpp"

namespace transvect {

struct NoiseModel {
    double p = 0;
    bool idle_noise = true;
    bool cnot_noise = true;
    bool single_qubit_gate_noise = false;

    void check() const {
        if (!(p >= 0 && p <= 1)) {
            throw std::invalid_argument("NoiseModel: p must lie in [0, 1]");
        }
    }
};

/// Which logical X flips count as a failure.
struct FailureScope {
    bool targeted = false;
    std::size_t qubit = 0;  // 0-based logical qubit when targeted

    static FailureScope any_logical() {
        return {};
    }
    static FailureScope target(std::size_t i) {
        return {true, i};
    }
    std::string describe() const {
        return targeted ? "targeted(" + std::to_string(qubit + 1) + ")" : "any_logical";
    }
};

struct SimResult {
    double p = 0;
    std::uint64_t shots = 0;
    std::uint64_t failures = 0;
    double rate = 0;
    double ci_lo = 0;
    double ci_hi = 0;
    std::uint64_t seed = 0;
    // configuration echo
    std::string decoder;
    std::string scope;
    NoiseModel noise;
};

inline constexpr double kWilsonZ95 = 1.959963984540054;

/// Wilson score interval for `failures` out of `shots`.
inline std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t shots, double z = kWilsonZ95) {
    if (shots == 0) {
        throw std::invalid_argument("wilson_interval: zero shots");
    }
    const double n = static_cast<double>(shots);
    const double ph = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double centre = ph + z2 / (2 * n);
    const double spread = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
    // The bounds at 0/n and n/n are exactly 0 and 1; rounding would leave them slightly off.
    double lo = failures == 0 ? 0.0 : std::max(0.0, (centre - spread) / denom);
    double hi = failures == shots ? 1.0 : std::min(1.0, (centre + spread) / denom);
    return {lo, hi};
}

/// SplitMix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the per-shot stream (master seed, sweep point, shot).
inline std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t p_index, std::uint64_t shot) {
    return splitmix64(splitmix64(splitmix64(seed) ^ p_index) ^ shot);
}

/// Conjugates a Pauli frame through gates [from, end) of a Clifford circuit.
inline void propagate_frame(PhasedPauli &frame, const Circuit &c, std::size_t from = 0) {
    for (std::size_t g = from; g < c.gates.size(); ++g) {
        apply_clifford(frame, c.gates[g]);
    }
}

namespace detail {

struct NoisyLayer {
    std::vector<std::size_t> gates;
    std::vector<std::size_t> cnots;         // gate indices
    std::vector<std::size_t> single_gated;  // qubits under a 1-qubit gate
    std::vector<std::size_t> idle;          // qubits not touched in this layer
};

inline std::vector<NoisyLayer> plan_layers(const Circuit &c) {
    std::vector<NoisyLayer> plan;
    for (const auto &layer : asap_layers(c)) {
        NoisyLayer nl;
        nl.gates = layer;
        std::vector<bool> busy(c.n, false);
        for (auto g : layer) {
            const Gate &gate = c.gates[g];
            for (auto q : gate.qubits()) {
                busy[q] = true;
            }
            if (gate.two_qubit()) {
                nl.cnots.push_back(g);
            } else {
                nl.single_gated.push_back(gate.q0);
            }
        }
        for (std::size_t q = 0; q < c.n; ++q) {
            if (!busy[q]) {
                nl.idle.push_back(q);
            }
        }
        plan.push_back(std::move(nl));
    }
    return plan;
}

/// Multiplies I, X, Y or Z (code 0..3) onto qubit q of the frame; phases are not tracked.
inline void inject(PhasedPauli &frame, std::size_t q, unsigned code) {
    bool xb = code == 1 || code == 2;
    bool zb = code == 2 || code == 3;
    if (xb) {
        frame.x().flip(q);
    }
    if (zb) {
        frame.z().flip(q);
    }
}

}  // namespace detail

/// Everything a shot needs, prepared once.
class MonteCarloEngine {
   public:
    MonteCarloEngine(const StabilizerCode &code, const Circuit &circuit, const Decoder &decoder, FailureScope scope)
        : code_(code), circuit_(circuit), decoder_(decoder), scope_(scope) {
        if (code.n != circuit.n) {
            throw std::invalid_argument("run_monte_carlo: circuit acts on " + std::to_string(circuit.n) +
                                        " qubits, code has n=" + std::to_string(code.n));
        }
        circuit.check();
        if (!circuit.is_clifford()) {
            throw UnsupportedError("Monte Carlo needs a Clifford circuit (rotation angles multiple of pi/2)");
        }
        if (scope.targeted && scope.qubit >= code.k) {
            throw std::invalid_argument("failure scope targets logical qubit " + std::to_string(scope.qubit + 1) +
                                        " but k=" + std::to_string(code.k));
        }
        plan_ = detail::plan_layers(circuit);
    }

    /// One shot: returns true on a logical X failure within the scope.
    bool shot(const NoiseModel &noise, std::mt19937_64 &rng) const {
        PhasedPauli frame(code_.n);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto fires = [&] { return noise.p > 0 && unit(rng) < noise.p; };
        for (const auto &layer : plan_) {
            for (auto g : layer.gates) {
                apply_clifford(frame, circuit_.gates[g]);
            }
            if (noise.cnot_noise) {
                for (auto g : layer.cnots) {
                    if (fires()) {
                        unsigned pair = static_cast<unsigned>(rng() % 15) + 1;  // 1..15, never II
                        detail::inject(frame, circuit_.gates[g].q0, pair / 4);
                        detail::inject(frame, circuit_.gates[g].q1, pair % 4);
                    }
                }
            }
            if (noise.single_qubit_gate_noise) {
                for (auto q : layer.single_gated) {
                    if (fires()) {
                        detail::inject(frame, q, static_cast<unsigned>(rng() % 3) + 1);
                    }
                }
            }
            if (noise.idle_noise) {
                for (auto q : layer.idle) {
                    if (fires()) {
                        detail::inject(frame, q, static_cast<unsigned>(rng() % 3) + 1);
                    }
                }
            }
        }
        return fails(frame);
    }

    /// Ideal syndrome extraction, decoding and failure classification of a final frame.
    bool fails(const PhasedPauli &frame) const {
        BitVec s = syndrome(code_, frame);
        PhasedPauli residual = frame;
        if (s.any()) {
            PhasedPauli correction = decoder_.decode(s);
            residual *= correction;
            if (syndrome(code_, residual).any()) {
                throw InternalError("decoder returned a correction with the wrong syndrome");
            }
        }
        // With zero syndrome, the Xbar_i component is the commutator with Zbar_i.
        if (scope_.targeted) {
            return anticommutes(residual, code_.logical_z[scope_.qubit]);
        }
        for (const auto &z : code_.logical_z) {
            if (anticommutes(residual, z)) {
                return true;
            }
        }
        return false;
    }

    std::size_t num_layers() const noexcept {
        return plan_.size();
    }

   private:
    const StabilizerCode &code_;
    const Circuit &circuit_;
    const Decoder &decoder_;
    FailureScope scope_;
    std::vector<detail::NoisyLayer> plan_;
};

inline std::string decoder_name(DecoderKind kind) {
    return kind == DecoderKind::Lookup ? "lookup" : "bp_osd";
}

struct SimOptions {
    std::uint64_t shots = 10000;
    std::uint64_t seed = 1;
    FailureScope scope;
    DecoderConfig decoder;
    bool prior_from_p = true;  // BP priors follow the swept p
    unsigned threads = 0;      // 0 = hardware concurrency
};

namespace detail {

inline std::uint64_t count_failures(const MonteCarloEngine &engine, const NoiseModel &noise, std::uint64_t shots,
                                    std::uint64_t seed, std::uint64_t p_index, unsigned threads) {
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, shots / 256)));
    std::atomic<std::uint64_t> total{0};
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            std::uint64_t local = 0;
            std::mt19937_64 rng;
            for (std::uint64_t s = t; s < shots; s += threads) {
                rng.seed(shot_seed(seed, p_index, s));
                local += engine.shot(noise, rng) ? 1 : 0;
            }
            total += local;
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return total.load();
}

inline SimResult make_result(const NoiseModel &noise, std::uint64_t shots, std::uint64_t failures, std::uint64_t seed,
                             const SimOptions &opt) {
    SimResult r;
    r.p = noise.p;
    r.shots = shots;
    r.failures = failures;
    r.rate = static_cast<double>(failures) / static_cast<double>(shots);
    auto [lo, hi] = wilson_interval(failures, shots);
    r.ci_lo = lo;
    r.ci_hi = hi;
    r.seed = seed;
    r.decoder = decoder_name(opt.decoder.kind);
    r.scope = opt.scope.describe();
    r.noise = noise;
    return r;
}

inline DecoderConfig decoder_for_p(const SimOptions &opt, double p) {
    DecoderConfig cfg = opt.decoder;
    if (opt.prior_from_p) {
        cfg.prior_p = std::clamp(p, 1e-9, 0.5);
    }
    return cfg;
}

}  // namespace detail

/// Monte Carlo at one noise strength. Shot s uses the stream shot_seed(seed, p_index, s).
inline SimResult run_monte_carlo(const StabilizerCode &code, const Circuit &circuit, const NoiseModel &noise,
                                 const SimOptions &opt, std::uint64_t p_index = 0) {
    noise.check();
    if (opt.shots == 0) {
        throw std::invalid_argument("run_monte_carlo: shots must be positive");
    }
    auto decoder = make_decoder(code, detail::decoder_for_p(opt, noise.p));
    MonteCarloEngine engine(code, circuit, *decoder, opt.scope);
    auto failures = detail::count_failures(engine, noise, opt.shots, opt.seed, p_index, opt.threads);
    return detail::make_result(noise, opt.shots, failures, opt.seed, opt);
}

/// One row per p; `noise.p` is overwritten with each entry of p_list.
inline std::vector<SimResult> sweep(const StabilizerCode &code, const Circuit &circuit,
                                    const std::vector<double> &p_list, NoiseModel noise, const SimOptions &opt) {
    std::vector<SimResult> out;
    if (p_list.empty()) {
        return out;
    }
    if (opt.shots == 0) {
        throw std::invalid_argument("sweep: shots must be positive");
    }
    std::unique_ptr<Decoder> shared;
    if (opt.decoder.kind == DecoderKind::Lookup) {
        shared = make_decoder(code, opt.decoder);
    }
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        noise.p = p_list[i];
        noise.check();
        std::unique_ptr<Decoder> local;
        const Decoder *dec = shared.get();
        if (!dec) {
            local = make_decoder(code, detail::decoder_for_p(opt, noise.p));
            dec = local.get();
        }
        MonteCarloEngine engine(code, circuit, *dec, opt.scope);
        auto failures = detail::count_failures(engine, noise, opt.shots, opt.seed, i, opt.threads);
        out.push_back(detail::make_result(noise, opt.shots, failures, opt.seed, opt));
    }
    return out;
}

inline std::string to_csv(const std::vector<SimResult> &rows) {
    std::string out = "p,shots,failures,rate,ci_lo,ci_hi,seed\n";
    char buf[256];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%.6g,%llu,%llu,%.6g,%.6g,%.6g,%llu\n", r.p,
                      static_cast<unsigned long long>(r.shots), static_cast<unsigned long long>(r.failures), r.rate,
                      r.ci_lo, r.ci_hi, static_cast<unsigned long long>(r.seed));
        out += buf;
    }
    return out;
}

/// p values from a to b inclusive, `count` points evenly spaced in log p.
inline std::vector<double> log_range(double a, double b, std::size_t count) {
    if (!(a > 0 && b > 0) || count == 0) {
        throw std::invalid_argument("log_range: need positive endpoints and at least one point");
    }
    std::vector<double> out;
    if (count == 1) {
        out.push_back(a);
        return out;
    }
    const double la = std::log(a), lb = std::log(b);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(count - 1)));
    }
    out.front() = a;
    out.back() = b;
    return out;
}

// ---------------------------------------------------------------------------
// Unencoded reference and pseudothreshold

/// [[1,1]] code with no stabilizers, Xbar = X, Zbar = Z.
inline StabilizerCode trivial_code() {
    StabilizerCode c;
    c.n = 1;
    c.k = 1;
    c.name = "unencoded";
    c.logical_x.push_back(PhasedPauli::single(1, 0, 'X'));
    c.logical_z.push_back(PhasedPauli::single(1, 0, 'Z'));
    return c;
}

/// The 1-qubit Clifford Trotter kernel (a single Phase gate).
inline Circuit unencoded_reference_circuit() {
    return synthesize_trotter(PhasedPauli::single(1, 0, 'Z'), std::numbers::pi / 2);
}

/// First crossing of rate(p) with reference(p) = p, interpolated linearly in
/// log-log coordinates (linearly when a rate is zero).
inline std::optional<double> pseudothreshold(const std::vector<SimResult> &rows) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const auto &a = rows[i];
        const auto &b = rows[i + 1];
        double da = a.rate - a.p, db = b.rate - b.p;
        if (da == 0) {
            return a.p;
        }
        if ((da < 0) == (db < 0) && db != 0) {
            continue;
        }
        if (db == 0) {
            return b.p;
        }
        if (a.rate > 0 && b.rate > 0) {
            // log r = log r_a + s (log p - log p_a); solve log r = log p.
            double lpa = std::log(a.p), lpb = std::log(b.p);
            double s = (std::log(b.rate) - std::log(a.rate)) / (lpb - lpa);
            if (s != 1) {
                double lp = (std::log(a.rate) - s * lpa) / (1 - s);
                return std::exp(lp);
            }
        }
        double t = da / (da - db);
        return a.p + t * (b.p - a.p);
    }
    return std::nullopt;
}

}  // namespace transvect
