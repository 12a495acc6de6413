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

// Dense 2^n x 2^n reference simulator. Independent of the symplectic engine:
// everything here is built from explicit matrices, so it can arbitrate phases.
//
// Qubit 0 is the most significant Kronecker factor: basis index bit (n-1-q)
// holds qubit q.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "transvect/circuit.hpp"
#include "transvect/errors.hpp"
#include "transvect/pauli.hpp"
#include "transvect/propagate.hpp"

namespace transvect::oracle {

using cplx = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

inline constexpr std::size_t kMaxQubits = 10;
inline constexpr double kTolerance = 1e-10;

inline void check_capacity(std::size_t n) {
    if (n > kMaxQubits) {
        throw CapacityError("dense oracle supports at most " + std::to_string(kMaxQubits) + " qubits, got " +
                            std::to_string(n));
    }
}

namespace detail {

inline std::uint64_t qubit_mask(std::size_t n, std::size_t q) {
    return std::uint64_t{1} << (n - 1 - q);
}

inline std::uint64_t pack(const BitVec &v) {
    std::uint64_t m = 0;
    const std::size_t n = v.size();
    for (auto q : v.ones()) {
        m |= qubit_mask(n, q);
    }
    return m;
}

inline cplx i_power(int k) {
    static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return powers[((k % 4) + 4) % 4];
}

/// 2x2 matrix [[a, b], [c, d]] acting on qubit q, applied to every column of m.
inline void apply_1q(DenseOperator &m, std::size_t n, std::size_t q, cplx a, cplx b, cplx c, cplx d) {
    const std::uint64_t bit = qubit_mask(n, q);
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t r = 0; r < dim; ++r) {
        if (r & bit) {
            continue;
        }
        std::uint64_t r1 = r | bit;
        for (Eigen::Index col = 0; col < m.cols(); ++col) {
            cplx v0 = m(static_cast<Eigen::Index>(r), col);
            cplx v1 = m(static_cast<Eigen::Index>(r1), col);
            m(static_cast<Eigen::Index>(r), col) = a * v0 + b * v1;
            m(static_cast<Eigen::Index>(r1), col) = c * v0 + d * v1;
        }
    }
}

inline void apply_cnot(DenseOperator &m, std::size_t n, std::size_t control, std::size_t target) {
    const std::uint64_t cb = qubit_mask(n, control), tb = qubit_mask(n, target);
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t r = 0; r < dim; ++r) {
        if ((r & cb) && !(r & tb)) {
            m.row(static_cast<Eigen::Index>(r)).swap(m.row(static_cast<Eigen::Index>(r | tb)));
        }
    }
}

}  // namespace detail

/// Matrix of i^kappa E(x, z), E carrying its own i^{x.z} so that E is Hermitian.
inline DenseOperator dense_pauli(const PhasedPauli &p) {
    const std::size_t n = p.num_qubits();
    check_capacity(n);
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t xm = detail::pack(p.x()), zm = detail::pack(p.z());
    const int base = static_cast<int>(p.kappa()) + std::popcount(xm & zm);
    DenseOperator m = DenseOperator::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    // X^x Z^z |c> = (-1)^{z.c} |c ^ x>
    for (std::uint64_t c = 0; c < dim; ++c) {
        int sign = std::popcount(zm & c) % 2 == 0 ? 0 : 2;
        m(static_cast<Eigen::Index>(c ^ xm), static_cast<Eigen::Index>(c)) = detail::i_power(base + sign);
    }
    return m;
}

/// Left-multiplies m by the gate's matrix.
inline void apply_gate(DenseOperator &m, const Gate &g, std::size_t n) {
    const double s = 1 / std::sqrt(2.0);
    const cplx i{0, 1};
    switch (g.kind) {
        case GateKind::H: detail::apply_1q(m, n, g.q0, s, s, s, -s); return;
        case GateKind::Hy: detail::apply_1q(m, n, g.q0, s, -i * s, i * s, -s); return;
        case GateKind::Phase: detail::apply_1q(m, n, g.q0, 1, 0, 0, i); return;
        case GateKind::Rz:
            detail::apply_1q(m, n, g.q0, std::exp(-i * (g.angle / 2)), 0, 0, std::exp(i * (g.angle / 2)));
            return;
        case GateKind::CNOT: detail::apply_cnot(m, n, g.q0, g.q1); return;
    }
    throw InternalError("apply_gate: unknown gate kind");
}

/// U = g_m ... g_1 for the gates in list order.
inline DenseOperator dense_circuit(const Circuit &c) {
    check_capacity(c.n);
    c.check();
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << c.n);
    DenseOperator u = DenseOperator::Identity(dim, dim);
    for (const auto &g : c.gates) {
        apply_gate(u, g, c.n);
    }
    return u;
}

/// exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P, P the Hermitian part of p.
inline DenseOperator dense_trotter(const PhasedPauli &p, double theta) {
    check_capacity(p.num_qubits());
    DenseOperator P = dense_pauli(p.hermitian_part());
    const auto dim = P.rows();
    return std::cos(theta / 2) * DenseOperator::Identity(dim, dim) - cplx{0, 1} * std::sin(theta / 2) * P;
}

inline DenseOperator dense_sum(const PauliSum &s, std::size_t n) {
    check_capacity(n);
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
    DenseOperator m = DenseOperator::Zero(dim, dim);
    for (const auto &t : s.terms) {
        m += t.coeff.value() * dense_pauli(t.pauli);
    }
    return m;
}

inline DenseOperator conjugate(const DenseOperator &u, const DenseOperator &p) {
    return u * p * u.adjoint();
}

inline double max_abs_diff(const DenseOperator &a, const DenseOperator &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

inline bool approx_equal(const DenseOperator &a, const DenseOperator &b, double tol = kTolerance) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    return max_abs_diff(a, b) <= tol;
}

/// True if a = e^{i phi} b for some phi, the phase read off b's largest entry.
inline bool equal_up_to_global_phase(const DenseOperator &a, const DenseOperator &b, double tol = kTolerance) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    Eigen::Index r = 0, c = 0;
    double largest = b.cwiseAbs().maxCoeff(&r, &c);
    if (largest <= tol) {
        return a.cwiseAbs().maxCoeff() <= tol;
    }
    cplx ratio = a(r, c) / b(r, c);
    if (std::abs(std::abs(ratio) - 1) > tol) {
        return false;
    }
    return max_abs_diff(a, ratio * b) <= tol;
}

inline bool is_unitary(const DenseOperator &u, double tol = 1e-12) {
    const auto dim = u.rows();
    return approx_equal(u * u.adjoint(), DenseOperator::Identity(dim, dim), tol);
}

}  // namespace transvect::oracle
