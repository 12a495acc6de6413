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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "fault_enumeration.hpp"
#include "test_util.hpp"
#include "transvect/noise_sim.hpp"

using namespace transvect;
using std::numbers::pi;

namespace {

Circuit reduced_833_circuit(const StabilizerCode &code) {
    PhasedPauli phys = reduce_weight(lift(code, parse_pauli("XZX", 3)), code, ReduceStrategy::Exhaustive);
    return synthesize_trotter(phys, pi / 2);
}

}  // namespace

TEST(Wilson, KnownValues) {
    const double z = kWilsonZ95;
    auto [lo0, hi0] = wilson_interval(0, 10);
    EXPECT_EQ(lo0, 0.0);
    EXPECT_NEAR(hi0, z * z / (10 + z * z), 1e-12);
    auto [lo, hi] = wilson_interval(5, 10);
    EXPECT_NEAR(lo + hi, 1.0, 1e-12);
    EXPECT_NEAR(hi - 0.5, z * std::sqrt(0.25 / 10 + z * z / 400) / (1 + z * z / 10), 1e-12);
    auto [lo_all, hi_all] = wilson_interval(10, 10);
    EXPECT_NEAR(lo_all, 10 / (10 + z * z), 1e-12);
    EXPECT_EQ(hi_all, 1.0);
    EXPECT_THROW(wilson_interval(0, 0), std::invalid_argument);
}

TEST(Seeds, SplitMixReferenceValues) {
    // Reference outputs of the SplitMix64 generator seeded with 0 (state advanced per call).
    std::uint64_t state = 0;
    std::uint64_t first = splitmix64(state);
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t second = splitmix64(state);
    EXPECT_EQ(first, 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(second, 0x6E789E6AA1B965F4ULL);
    EXPECT_NE(shot_seed(1, 0, 0), shot_seed(1, 0, 1));
    EXPECT_NE(shot_seed(1, 0, 0), shot_seed(1, 1, 0));
    EXPECT_NE(shot_seed(1, 0, 0), shot_seed(2, 0, 0));
}

TEST(Frame, PropagationMatchesConjugationUpToPhase) {
    StabilizerCode code = builtin_833();
    Circuit c = reduced_833_circuit(code);
    std::mt19937_64 rng(141);
    for (int t = 0; t < 200; ++t) {
        PhasedPauli f = transvect::testing::random_pauli(8, rng, false);
        std::size_t from = rng() % (c.gates.size() + 1);
        PhasedPauli g = f;
        propagate_frame(g, c, from);
        Circuit tail{c.n, std::vector<Gate>(c.gates.begin() + static_cast<std::ptrdiff_t>(from), c.gates.end())};
        PauliSum s = conjugate_circuit(f, tail);
        ASSERT_EQ(s.size(), 1U);
        ASSERT_EQ(s.terms[0].phased(), g);
    }
}

TEST(Inject, Codes) {
    PhasedPauli f(2);
    detail::inject(f, 0, 1);
    EXPECT_TRUE(f.same_binary(parse_pauli("XI", 2)));
    detail::inject(f, 0, 3);
    EXPECT_TRUE(f.same_binary(parse_pauli("YI", 2)));
    detail::inject(f, 1, 2);
    EXPECT_TRUE(f.same_binary(parse_pauli("YY", 2)));
    detail::inject(f, 1, 0);
    EXPECT_TRUE(f.same_binary(parse_pauli("YY", 2)));
}

TEST(Plan, LayersSplitCnotsSingleAndIdle) {
    Circuit c = parse_circuit("qubits 4\nH 0\nCNOT 1 2\nCNOT 0 2\n");
    auto plan = detail::plan_layers(c);
    ASSERT_EQ(plan.size(), 2U);
    EXPECT_EQ(plan[0].cnots, (std::vector<std::size_t>{1}));
    EXPECT_EQ(plan[0].single_gated, (std::vector<std::size_t>{0}));
    EXPECT_EQ(plan[0].idle, (std::vector<std::size_t>{3}));
    EXPECT_EQ(plan[1].idle, (std::vector<std::size_t>{1, 3}));
}

TEST(Engine, FailureMatchesLogicalEffect) {
    StabilizerCode code = builtin_833();
    Circuit c = reduced_833_circuit(code);
    LookupDecoder dec(code);
    MonteCarloEngine any(code, c, dec, FailureScope::any_logical());
    std::vector<MonteCarloEngine> targeted;
    for (std::size_t i = 0; i < 3; ++i) {
        targeted.emplace_back(code, c, dec, FailureScope::target(i));
    }
    CodeBasis basis(code);
    std::mt19937_64 rng(143);
    for (int t = 0; t < 2000; ++t) {
        PhasedPauli frame = transvect::testing::random_pauli(8, rng, false);
        PhasedPauli residual = frame * dec.decode(syndrome(code, frame));
        auto eff = basis.logical_effect(residual);
        ASSERT_NE(eff.kind, LogicalEffect::Kind::Detectable);
        ASSERT_EQ(any.fails(frame), eff.has_any_logical_x());
        for (std::size_t i = 0; i < 3; ++i) {
            ASSERT_EQ(targeted[i].fails(frame), eff.has_logical_x(i));
        }
    }
    for (std::size_t q = 0; q < 8; ++q) {
        for (char p : {'X', 'Y', 'Z'}) {
            EXPECT_FALSE(any.fails(PhasedPauli::single(8, q, p)));
        }
    }
    EXPECT_TRUE(any.fails(code.logical_x[1]));
    EXPECT_FALSE(any.fails(code.logical_z[1]));
    EXPECT_THROW(MonteCarloEngine(code, c, dec, FailureScope::target(3)), std::invalid_argument);
}

TEST(MonteCarlo, ZeroNoiseNeverFails) {
    StabilizerCode code = builtin_833();
    Circuit c = reduced_833_circuit(code);
    SimOptions opt;
    opt.shots = 2000;
    SimResult r = run_monte_carlo(code, c, NoiseModel{0.0}, opt);
    EXPECT_EQ(r.failures, 0U);
    EXPECT_EQ(r.rate, 0.0);
    EXPECT_EQ(r.ci_lo, 0.0);
    EXPECT_GT(r.ci_hi, 0.0);
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
    StabilizerCode code = builtin_833();
    Circuit c = reduced_833_circuit(code);
    SimOptions opt;
    opt.shots = 20000;
    opt.seed = 7;
    opt.threads = 1;
    NoiseModel noise{0.01};
    SimResult a = run_monte_carlo(code, c, noise, opt);
    opt.threads = 4;
    SimResult b = run_monte_carlo(code, c, noise, opt);
    opt.threads = 0;
    SimResult d = run_monte_carlo(code, c, noise, opt);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.failures, d.failures);
    EXPECT_GT(a.failures, 0U);
    opt.seed = 8;
    EXPECT_NE(run_monte_carlo(code, c, noise, opt).failures, a.failures);

    // A sweep point equals the single run with the same index.
    opt.seed = 7;
    auto rows = sweep(code, c, {0.005, 0.01}, noise, opt);
    ASSERT_EQ(rows.size(), 2U);
    EXPECT_EQ(rows[1].failures, run_monte_carlo(code, c, noise, opt, 1).failures);
    EXPECT_EQ(to_csv(rows), to_csv(sweep(code, c, {0.005, 0.01}, noise, opt)));
}

TEST(MonteCarlo, BpOsdMatchesLookupOnTinyCode) {
    // With a weight-1 decodable error model both decoders are driven by the same shots.
    StabilizerCode code = builtin_833();
    Circuit c = reduced_833_circuit(code);
    SimOptions opt;
    opt.shots = 3000;
    opt.decoder.kind = DecoderKind::BpOsd;
    SimResult r = run_monte_carlo(code, c, NoiseModel{0.005}, opt);
    EXPECT_EQ(r.decoder, "bp_osd");
    EXPECT_LE(r.rate, 0.2);
}

TEST(MonteCarlo, Errors) {
    StabilizerCode code = builtin_833();
    Circuit c = reduced_833_circuit(code);
    SimOptions opt;
    opt.shots = 0;
    EXPECT_THROW(run_monte_carlo(code, c, NoiseModel{0.01}, opt), std::invalid_argument);
    EXPECT_THROW(sweep(code, c, {0.01}, NoiseModel{}, opt), std::invalid_argument);
    opt.shots = 10;
    EXPECT_THROW(run_monte_carlo(code, c, NoiseModel{1.5}, opt), std::invalid_argument);
    Circuit generic = synthesize_trotter(lift(code, parse_pauli("XZX", 3)), 0.7);
    EXPECT_THROW(run_monte_carlo(code, generic, NoiseModel{0.01}, opt), UnsupportedError);
    EXPECT_THROW(run_monte_carlo(code, Circuit{7, {}}, NoiseModel{0.01}, opt), std::invalid_argument);
    EXPECT_TRUE(sweep(code, c, {}, NoiseModel{}, opt).empty());
}

TEST(MonteCarlo, UnencodedReferenceRate) {
    // One noisy Phase gate: X and Y faults flip Z, so the rate is 2p/3.
    SimOptions opt;
    opt.shots = 200000;
    NoiseModel noise{0.03};
    noise.single_qubit_gate_noise = true;
    SimResult r = run_monte_carlo(trivial_code(), unencoded_reference_circuit(), noise, opt);
    EXPECT_LE(r.ci_lo, 0.02);
    EXPECT_GE(r.ci_hi, 0.02);
    noise.single_qubit_gate_noise = false;
    EXPECT_EQ(run_monte_carlo(trivial_code(), unencoded_reference_circuit(), noise, opt).failures, 0U);
}

TEST(MonteCarlo, SingleCnotFaultRate) {
    // Two qubits, one CNOT, no code: a fault flips Z-bit parity of qubit 0 for the 8 of 15
    // pairs whose control factor is X or Y.
    StabilizerCode c2;
    c2.n = 2;
    c2.k = 2;
    c2.logical_x = {parse_pauli("XI", 2), parse_pauli("IX", 2)};
    c2.logical_z = {parse_pauli("ZI", 2), parse_pauli("IZ", 2)};
    Circuit circ = parse_circuit("qubits 2\nCNOT 0 1\n");
    SimOptions opt;
    opt.shots = 200000;
    opt.scope = FailureScope::target(0);
    const double p = 0.06;
    SimResult r = run_monte_carlo(c2, circ, NoiseModel{p}, opt);
    const double expected = p * 8.0 / 15.0;
    EXPECT_LE(r.ci_lo, expected);
    EXPECT_GE(r.ci_hi, expected);
}

TEST(MonteCarlo, FirstOrderSlopeOnReducedEightQubitCircuit) {
    // Fault enumeration gives the exact leading coefficient; at small p the
    // sampled rate must sit on slope * p.
    StabilizerCode code = builtin_833();
    PhasedPauli reduced = reduce_weight(lift(code, parse_pauli("X1 Z2 X3", 3)), code, ReduceStrategy::Exhaustive);
    Circuit circ = synthesize_trotter(reduced, std::numbers::pi / 2);
    LookupDecoder dec(code);
    auto slope = transvect::testing::first_order_slope(code, circ, dec, FailureScope::any_logical());
    EXPECT_NEAR(slope.cnot, 69.0 / 15.0, 1e-12);
    EXPECT_NEAR(slope.idle, 28.0 / 3.0, 1e-12);
    SimOptions opt;
    opt.shots = 400000;
    opt.seed = 11;
    const double p = 1e-4;
    SimResult r = run_monte_carlo(code, circ, NoiseModel{p}, opt);
    EXPECT_LE(r.ci_lo, slope.total() * p);
    EXPECT_GE(r.ci_hi, slope.total() * p);
}

TEST(Csv, FormatAndRange) {
    SimResult r;
    r.p = 0.001;
    r.shots = 100000;
    r.failures = 123;
    r.rate = 0.00123;
    r.ci_lo = 0.001;
    r.ci_hi = 0.0015;
    r.seed = 7;
    EXPECT_EQ(to_csv({r}), "p,shots,failures,rate,ci_lo,ci_hi,seed\n0.001,100000,123,0.00123,0.001,0.0015,7\n");
    auto ps = log_range(1e-3, 1e-2, 8);
    ASSERT_EQ(ps.size(), 8U);
    EXPECT_EQ(ps.front(), 1e-3);
    EXPECT_EQ(ps.back(), 1e-2);
    for (std::size_t i = 1; i + 1 < ps.size(); ++i) {
        EXPECT_NEAR(ps[i + 1] / ps[i], ps[i] / ps[i - 1], 1e-12);
    }
    EXPECT_THROW(log_range(0, 1, 3), std::invalid_argument);
    EXPECT_EQ(log_range(0.5, 1, 1), std::vector<double>{0.5});
}

TEST(Pseudothreshold, PowerLawCrossing) {
    std::vector<SimResult> rows;
    for (double p : {1e-3, 3e-3, 2e-2, 5e-2}) {
        SimResult r;
        r.p = p;
        r.rate = 100 * p * p;  // crosses rate = p at 0.01
        rows.push_back(r);
    }
    auto pt = pseudothreshold(rows);
    ASSERT_TRUE(pt);
    EXPECT_NEAR(*pt, 0.01, 1e-12);
    rows.pop_back();
    rows.pop_back();
    EXPECT_FALSE(pseudothreshold(rows));
    // A zero rate falls back to linear interpolation.
    std::vector<SimResult> lin(2);
    lin[0].p = 0.001, lin[0].rate = 0;
    lin[1].p = 0.003, lin[1].rate = 0.005;
    ASSERT_TRUE(pseudothreshold(lin));
    EXPECT_NEAR(*pseudothreshold(lin), 0.001 + 0.002 * (0.001 / 0.003), 1e-15);
}
