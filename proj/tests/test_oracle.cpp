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

#include "test_util.hpp"
#include "transvect/oracle.hpp"
#include "transvect/propagate.hpp"

using namespace transvect;
using oracle::cplx;
using oracle::DenseOperator;
using std::numbers::pi;
using transvect::testing::random_angle;
using transvect::testing::random_hermitian;
using transvect::testing::random_non_identity;
using transvect::testing::random_pauli;

namespace {

DenseOperator mat2(cplx a, cplx b, cplx c, cplx d) {
    DenseOperator m(2, 2);
    m << a, b, c, d;
    return m;
}

// Kronecker product written out, qubit 0 = left factor.
DenseOperator kron(const DenseOperator &a, const DenseOperator &b) {
    DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Circuit random_clifford_circuit(std::size_t n, std::size_t gates, std::mt19937_64 &rng) {
    Circuit c;
    c.n = n;
    for (std::size_t i = 0; i < gates; ++i) {
        std::size_t a = rng() % n;
        switch (rng() % (n > 1 ? 5 : 4)) {
            case 0: c.gates.push_back(Gate::h(a)); break;
            case 1: c.gates.push_back(Gate::hy(a)); break;
            case 2: c.gates.push_back(Gate::phase(a)); break;
            case 3: c.gates.push_back(Gate::rz(a, static_cast<double>(rng() % 4) * pi / 2)); break;
            default: c.gates.push_back(Gate::cnot(a, (a + 1 + rng() % (n - 1)) % n)); break;
        }
    }
    return c;
}

}  // namespace

TEST(Oracle, GateMatricesByHand) {
    const double s = 1 / std::sqrt(2.0);
    const cplx i(0, 1);
    EXPECT_TRUE(oracle::approx_equal(oracle::dense_circuit(Circuit{1, {Gate::h(0)}}), mat2(s, s, s, -s)));
    EXPECT_TRUE(oracle::approx_equal(oracle::dense_circuit(Circuit{1, {Gate::hy(0)}}), mat2(s, -i * s, i * s, -s)));
    EXPECT_TRUE(oracle::approx_equal(oracle::dense_circuit(Circuit{1, {Gate::phase(0)}}), mat2(1, 0, 0, i)));
    EXPECT_TRUE(oracle::approx_equal(oracle::dense_circuit(Circuit{1, {Gate::rz(0, 0.6)}}),
                                     mat2(std::exp(-i * 0.3), 0, 0, std::exp(i * 0.3))));
    // CNOT with control 0 (most significant) and target 1.
    DenseOperator cx = DenseOperator::Zero(4, 4);
    cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1;
    EXPECT_TRUE(oracle::approx_equal(oracle::dense_circuit(Circuit{2, {Gate::cnot(0, 1)}}), cx));
    // Gate order: list order is time order, so the later gate multiplies on the left.
    DenseOperator h = mat2(s, s, s, -s), p = mat2(1, 0, 0, i);
    EXPECT_TRUE(oracle::approx_equal(oracle::dense_circuit(Circuit{1, {Gate::h(0), Gate::phase(0)}}), p * h));
    DenseOperator id2 = DenseOperator::Identity(2, 2);
    EXPECT_TRUE(oracle::approx_equal(oracle::dense_circuit(Circuit{3, {Gate::h(1)}}), kron(kron(id2, h), id2)));
}

TEST(Oracle, DensePauliAgreesWithKronecker) {
    const cplx i(0, 1);
    DenseOperator X = mat2(0, 1, 1, 0), Y = mat2(0, -i, i, 0), Z = mat2(1, 0, 0, -1), I = mat2(1, 0, 0, 1);
    std::mt19937_64 rng(101);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 4;
        PhasedPauli p = random_pauli(n, rng);
        DenseOperator m = DenseOperator::Identity(1, 1);
        for (std::size_t q = 0; q < n; ++q) {
            char c = p.at(q);
            m = kron(m, c == 'X' ? X : c == 'Y' ? Y : c == 'Z' ? Z : I);
        }
        static const cplx powers[4] = {1, i, -1, -i};
        m *= powers[p.kappa()];
        ASSERT_TRUE(oracle::approx_equal(oracle::dense_pauli(p), m)) << format_pauli(p);
    }
}

TEST(Oracle, SynthesisRealizesTrotterUnitary) {
    std::mt19937_64 rng(103);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 1 + rng() % 5;
        PhasedPauli p = random_non_identity(n, rng);
        double theta = t % 5 == 0 ? pi / 2 : random_angle(rng);
        auto u = oracle::dense_circuit(synthesize_trotter(p, theta));
        auto target = oracle::dense_trotter(p, theta);
        ASSERT_TRUE(oracle::is_unitary(u));
        ASSERT_TRUE(oracle::equal_up_to_global_phase(u, target)) << format_pauli(p) << " " << theta;
        if (theta != pi / 2) {
            // RZ is exactly exp(-i a Z / 2), so no phase slack is needed.
            ASSERT_TRUE(oracle::approx_equal(u, target));
        }
    }
}

TEST(Oracle, ConjugationEngineAgreesOnTrotterCircuits) {
    std::mt19937_64 rng(107);
    for (int t = 0; t < 300; ++t) {
        std::size_t n = 1 + rng() % 6;
        PhasedPauli p = random_non_identity(n, rng), q = random_pauli(n, rng);
        double theta = random_angle(rng);
        Circuit c = synthesize_trotter(p, theta);
        auto u = oracle::dense_circuit(c);
        ASSERT_TRUE(oracle::approx_equal(oracle::dense_sum(conjugate_circuit(q, c), n),
                                         oracle::conjugate(u, oracle::dense_pauli(q))));
    }
}

TEST(Oracle, ConjugationEngineAgreesOnRandomCliffords) {
    std::mt19937_64 rng(109);
    for (int t = 0; t < 300; ++t) {
        std::size_t n = 1 + rng() % 5;
        Circuit c = random_clifford_circuit(n, 1 + rng() % 30, rng);
        PhasedPauli q = random_pauli(n, rng);
        auto u = oracle::dense_circuit(c);
        PauliSum s = conjugate_circuit(q, c);
        ASSERT_EQ(s.size(), 1U);
        ASSERT_TRUE(oracle::approx_equal(oracle::dense_sum(s, n), oracle::conjugate(u, oracle::dense_pauli(q))));
    }
}

TEST(Oracle, DoubleAngleTheorem) {
    std::mt19937_64 rng(113);
    int tested = 0;
    while (tested < 200) {
        std::size_t n = 1 + rng() % 4;
        PhasedPauli p = random_hermitian(n, rng), q = random_hermitian(n, rng);
        if (commutes(p, q)) {
            continue;
        }
        ++tested;
        double theta = random_angle(rng);
        auto u = oracle::dense_trotter(p, theta);
        auto Q = oracle::dense_pauli(q);
        DenseOperator lhs = Q * oracle::conjugate(u, Q);
        const cplx i(0, 1);
        DenseOperator rhs = std::cos(theta) * DenseOperator::Identity(lhs.rows(), lhs.cols()) +
                            i * std::sin(theta) * oracle::dense_pauli(p);
        ASSERT_TRUE(oracle::approx_equal(lhs, rhs));
        ASSERT_TRUE(oracle::approx_equal(lhs, oracle::dense_trotter(p, -2 * theta)));
        ASSERT_TRUE(oracle::approx_equal(oracle::dense_sum(double_angle_product(q, p, theta), n), lhs));
    }
}

TEST(Oracle, Helpers) {
    DenseOperator a = DenseOperator::Identity(2, 2);
    DenseOperator b = cplx(0, 1) * a;
    EXPECT_FALSE(oracle::approx_equal(a, b));
    EXPECT_TRUE(oracle::equal_up_to_global_phase(a, b));
    EXPECT_FALSE(oracle::equal_up_to_global_phase(a, oracle::dense_pauli(parse_pauli("Z", 1))));
    EXPECT_FALSE(oracle::approx_equal(a, DenseOperator::Identity(4, 4)));
    EXPECT_THROW(oracle::dense_circuit(Circuit{11, {}}), CapacityError);
    EXPECT_THROW(oracle::dense_trotter(PhasedPauli(11), 0.1), CapacityError);
}
