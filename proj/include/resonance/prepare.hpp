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
/**
 * @file
 * Heralded eigenstate preparation and chaining of prepared states into new
 * reference states.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "resonance/error.hpp"
#include "resonance/evolve.hpp"
#include "resonance/model.hpp"
#include "resonance/qmath.hpp"
#include "resonance/spectroscopy.hpp"

namespace resonance {

/// System register post-selected on probe/ancilla = |01>.
struct HeraldedState {
    StateVector psi_system;
    double success_probability{0.0};
    std::string herald_sector{"01"};
    double source_omega{0.0};
    double source_tau{0.0};
};

/**
 * @brief Project a simulator state onto the |01>_{probe,ancilla} sector and
 * renormalize.
 * @throws HeraldError if the sector is (numerically) empty.
 */
inline HeraldedState heralded_projection(const StateVector &full) {
    if (full.dim() < 4) {
        throw ValidationError("heralded projection needs probe, ancilla and system qubits");
    }
    const std::size_t dim = full.dim() / 4;
    std::vector<Complex> sector(dim);
    double success = 0.0;
    for (std::size_t s = 0; s < dim; ++s) {
        sector[s] = full[dim + s];
        success += std::norm(sector[s]);
    }
    if (success < 1e-12) {
        std::ostringstream msg;
        msg << "herald failure: |01> sector probability " << success;
        throw HeraldError(msg.str());
    }
    HeraldedState out;
    out.psi_system = StateVector(std::move(sector)).normalized();
    out.success_probability = success;
    return out;
}

/// |<E_j|psi>|^2 against the oracle eigenvector j (0-based).
inline double eigenstate_fidelity(const HeraldedState &h,
                                  const SystemHamiltonian &system,
                                  std::size_t j) {
    const auto eig = oracle_spectrum(system);
    if (j >= eig.values.size()) {
        throw DomainError("eigenstate index out of range");
    }
    return std::norm(overlap(eig.eigenvector(j), h.psi_system));
}

/// Oracle eigenvalue index closest to `energy`.
inline std::size_t nearest_eigenstate(const EigenDecomposition &eig,
                                      double energy) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < eig.values.size(); ++j) {
        if (std::abs(eig.values[j] - energy) < std::abs(eig.values[best] - energy)) {
            best = j;
        }
    }
    return best;
}

struct Preparation {
    HeraldedState state;
    std::size_t target_j{0};
    Complex d_j{};
    double fidelity{0.0};
};

/**
 * @brief Drive the transition behind `peak` and herald the result.
 *
 * ω is set to the peak center. Unless `tau` is given, the evolution time is
 * the half Rabi period π/(2c|d_j|) with d_j taken from the oracle, j being
 * the eigenvalue nearest to the peak's energy estimate.
 *
 * @throws DarkTransitionError if |d_j| < 1e-8.
 * @throws HeraldError if the herald sector is empty.
 */
inline Preparation prepare_eigenstate(SimulatorModel m, const Peak &peak,
                                      const Engine &engine = ExactEngine{},
                                      std::optional<double> tau = std::nullopt) {
    const auto eig = oracle_spectrum(m.system);
    const std::size_t j = nearest_eigenstate(eig, peak.energy_estimate);
    const auto d = transition_amplitudes(m.system, m.reference, m.transition);
    if (std::abs(d[j]) < 1e-8) {
        std::ostringstream msg;
        msg << "dark transition: |d_" << (j + 1) << "| = " << std::abs(d[j])
            << " < 1e-8; change the transition operator or chain from another state";
        throw DarkTransitionError(msg.str());
    }
    if (!(m.coupling_c > 0.0)) {
        throw DomainError("preparation requires coupling_c > 0");
    }
    const double t = tau.value_or(std::numbers::pi /
                                  (2.0 * m.coupling_c * std::abs(d[j])));
    m.omega = peak.omega_center;
    Preparation out;
    out.state = heralded_projection(evolve_initial_state(m, t, engine));
    out.state.source_omega = m.omega;
    out.state.source_tau = t;
    out.target_j = j;
    out.d_j = d[j];
    out.fidelity = std::norm(overlap(eig.eigenvector(j), out.state.psi_system));
    return out;
}

/// New reference |E_0> := prepared state, E_0 := measured energy.
inline ReferenceState chain_reference(const HeraldedState &h,
                                      double measured_energy) {
    return ReferenceState{h.psi_system, measured_energy};
}

} // namespace resonance
