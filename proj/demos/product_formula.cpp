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

// First-order product formula for a transverse-field Ising chain,
// H = sum_j Z_j Z_{j+1} + g sum_j X_j, compiled into one circuit and checked
// term by term.

#include <iostream>
#include <vector>

#include "transvect/transvect.hpp"

using namespace transvect;

int main() {
    const std::size_t n = 5;
    const double g = 0.8, t = 1.0;
    const std::size_t steps = 4;
    std::vector<HamiltonianTerm> terms;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        PhasedPauli zz(n);
        zz.set(j, 'Z');
        zz.set(j + 1, 'Z');
        terms.push_back({1.0, zz});
    }
    for (std::size_t j = 0; j < n; ++j) {
        terms.push_back({g, PhasedPauli::single(n, j, 'X')});
    }
    auto kernels = trotterize(terms, t, steps);
    Circuit c = compile_product_formula(kernels, n);
    std::size_t cnots = 0;
    for (const auto &gate : c.gates) {
        cnots += gate.two_qubit() ? 1 : 0;
    }
    std::cout << kernels.size() << " kernels, " << c.gates.size() << " gates, " << cnots << " CNOTs, depth "
              << depth(c) << "\n";

    // Each kernel conjugates X1 exactly as its closed form predicts.
    std::size_t agree = 0;
    for (const auto &k : kernels) {
        PhasedPauli probe = PhasedPauli::single(n, 0, 'Y');
        agree += conjugate_circuit(probe, synthesize_trotter(k.pauli, k.theta)) ==
                         conjugate_trotter(probe, k.pauli, k.theta)
                     ? 1
                     : 0;
    }
    std::cout << "kernel images matching closed form: " << agree << "/" << kernels.size() << "\n";
    std::cout << "\nfirst kernel:\n" << format_circuit(synthesize_trotter(kernels[0].pauli, kernels[0].theta));
    return agree == kernels.size() ? 0 : 1;
}
