// Copyright 2026 The resonance Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <iostream>
// Shared fixtures: seeded random Hermitian matrices, states and models.
#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "resonance/resonance.hpp"

namespace resonance::testing {

inline Matrix random_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols,
                            double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = Complex(g(rng), g(rng));
        }
    }
    return m;
}

inline Matrix random_hermitian(std::mt19937_64 &rng, std::size_t n, double scale = 1.0) {
    return hermitian_part(random_matrix(rng, n, n, scale));
}

inline StateVector random_state(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> a(dim);
    for (auto &z : a) {
        z = Complex(g(rng), g(rng));
    }
    return StateVector(std::move(a)).normalized();
}

/// Small random model: n system qubits, spectrum spread ~0.5 around e_mid.
inline SimulatorModel random_model(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t dim = std::size_t{1} << n;
    const double e_mid = -50.0 + 100.0 * u(rng);
    Matrix h = random_hermitian(rng, dim, 0.15);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) += e_mid;
    }
    SimulatorModel m;
    m.system = make_system(std::move(h), "random");
    m.reference = ReferenceState{random_state(rng, dim), e_mid - 0.3 - 0.4 * u(rng)};
    m.transition = default_transition_operator(n);
    m.omega = 2.0 * u(rng);
    m.coupling_c = 0.002 + 0.01 * u(rng);
    return m;
}

} // namespace resonance::testing
