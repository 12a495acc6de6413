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

// Compiles the logical rotation exp(-i theta/2 X1 Z2 X3) on the [[8,3,3]] code,
// shrinks the physical axis over its stabilizer coset, checks the result and
// estimates the logical failure rate of the Clifford kernel.

#include <cstdio>
#include <iostream>
#include <numbers>

#include "transvect/transvect.hpp"

using namespace transvect;

int main() {
    StabilizerCode code = builtin_833();
    PhasedPauli logical = parse_pauli("X1 Z2 X3", code.k);
    PhasedPauli axis = lift(code, logical);
    WeightReduction r = reduce_weight_detailed(axis, code, ReduceStrategy::Exhaustive);
    std::cout << "lifted axis:  " << format_sparse(axis) << " (weight " << r.original_weight << ")\n";
    std::cout << "reduced axis: " << format_sparse(r.result) << " (weight " << r.result.weight() << ")\n";

    for (double theta : {std::numbers::pi / 2, 0.3}) {
        Circuit full = synthesize_trotter(axis, theta);
        Circuit small = synthesize_trotter(r.result, theta);
        auto logical_ok = verify_logical_action(code, logical, theta, small).all_pass();
        auto stabilizers_ok = verify_stabilizer_centralization(code, r.result, theta).all_pass();
        std::cout << "theta " << format_angle(theta) << ": depth " << depth(full) << " -> " << depth(small)
                  << ", verified " << (logical_ok && stabilizers_ok ? "yes" : "NO") << "\n";
    }

    std::cout << "\nlifted Z1 through the theta = 0.3 kernel:\n  "
              << format_sum(conjugate_circuit(code.logical_z[0], synthesize_trotter(r.result, 0.3))) << "\n\n";

    SimOptions opt;
    opt.shots = 20000;
    opt.seed = 7;
    auto rows = sweep(code, synthesize_trotter(r.result, std::numbers::pi / 2), log_range(1e-3, 1e-2, 4),
                      NoiseModel{}, opt);
    std::cout << to_csv(rows);
    if (auto pt = pseudothreshold(rows)) {
        std::printf("pseudothreshold ~ %.3g\n", *pt);
    }
    return 0;
}
