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
 * Composite simulator Hamiltonian: probe qubit, ancilla qubit and an n-qubit
 * system register.
 *
 * Tensor order is probe ⊗ ancilla ⊗ system, probe being the most significant
 * bit of a basis index. With σ_z|0> = +|0>, the probe term -(ω/2)σ_z puts
 * the excited probe state |1> at +ω/2, so the resonance condition is
 * ω = E_j - E_0.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "resonance/error.hpp"
#include "resonance/qmath.hpp"

namespace resonance {

/// Physical Hamiltonian H_S on n qubits, in Hartree.
struct SystemHamiltonian {
    std::size_t n_qubits{0};
    Matrix matrix;
    std::string label;
};

/// Input state |E_0> and the reference energy E_0 attached to it.
struct ReferenceState {
    StateVector psi;
    double energy_e0{0.0};
};

/// Operator B driving system transitions; the coupling is c σ_x ⊗ σ_x ⊗ B.
struct TransitionOperator {
    Matrix matrix_b;
    std::string label;
};

struct SimulatorModel {
    SystemHamiltonian system;
    ReferenceState reference;
    TransitionOperator transition;
    double omega{0.0};
    double coupling_c{0.0};
    /// Energy of the ancilla-|0> states orthogonal to |E_0>.
    double complement_energy{0.0};
};

/// Hamiltonian split used by Trotterization.
struct HamiltonianSplit {
    /// Probe and register terms; these commute with each other.
    Matrix static_part;
    /// c σ_x ⊗ σ_x ⊗ B
    Matrix interaction;
};

inline std::size_t qubit_dimension(std::size_t n_qubits) {
    if (n_qubits >= 8 * sizeof(std::size_t) - 1) {
        throw SizeError("qubit count too large");
    }
    return std::size_t{1} << n_qubits;
}

/// Validate and wrap a system matrix; n_qubits is inferred from its size.
inline SystemHamiltonian make_system(Matrix matrix, std::string label) {
    if (!matrix.is_square() || !is_power_of_two(matrix.rows())) {
        throw ValidationError(
            "system Hamiltonian must be square with power-of-two dimension");
    }
    check_dimension(matrix.rows(), "system Hamiltonian");
    require_hermitian(matrix, 1e-10, "system Hamiltonian");
    std::size_t n = 0;
    while ((std::size_t{1} << n) < matrix.rows()) {
        ++n;
    }
    if (n == 0) {
        throw ValidationError("system Hamiltonian needs at least one qubit");
    }
    return SystemHamiltonian{n, std::move(matrix), std::move(label)};
}

/// Four-configuration low-energy Hamiltonian of the water molecule (Hartree).
inline SystemHamiltonian water_preset() {
    // clang-format off
    Matrix h(4, 4, {
        -83.9566, -0.0820,  0.0458,  0.0594,
         -0.0820, -83.4080, 0.0110,  0.0767,
          0.0458,  0.0110, -82.5661, 0.1323,
          0.0594,  0.0767,  0.1323, -82.4800,
    });
    // clang-format on
    return make_system(std::move(h), "water");
}

/// B = H_d^{⊗n}.
inline TransitionOperator default_transition_operator(std::size_t n) {
    if (n == 0) {
        throw DomainError("transition operator needs n >= 1");
    }
    check_dimension(qubit_dimension(n), "transition operator");
    Matrix b = pauli::hadamard();
    for (std::size_t k = 1; k < n; ++k) {
        b = kron(b, pauli::hadamard());
    }
    return TransitionOperator{std::move(b), "hadamard"};
}

inline ReferenceState basis_reference(std::size_t n, std::size_t index,
                                      double energy_e0) {
    const std::size_t dim = qubit_dimension(n);
    if (index >= dim) {
        std::ostringstream msg;
        msg << "reference index " << index << " out of range for " << n
            << " qubits";
        throw DomainError(msg.str());
    }
    return ReferenceState{StateVector::basis(dim, index), energy_e0};
}

/// Throws ValidationError for any broken SimulatorModel invariant.
inline void validate(const SimulatorModel &m) {
    const std::size_t dim = qubit_dimension(m.system.n_qubits);
    if (m.system.matrix.rows() != dim) {
        throw ValidationError("system matrix does not match n_qubits");
    }
    require_hermitian(m.system.matrix, 1e-10, "system Hamiltonian");
    if (m.reference.psi.dim() != dim) {
        throw ValidationError("reference state dimension mismatch");
    }
    if (std::abs(m.reference.psi.norm() - 1.0) > 1e-10) {
        throw ValidationError("reference state is not normalized");
    }
    if (m.transition.matrix_b.rows() != dim ||
        m.transition.matrix_b.cols() != dim) {
        throw ValidationError("transition operator dimension mismatch");
    }
    if (!(m.coupling_c >= 0.0) || !std::isfinite(m.coupling_c)) {
        throw ValidationError("coupling_c must be finite and non-negative");
    }
    if (!(m.omega >= 0.0) || !std::isfinite(m.omega)) {
        throw ValidationError("omega must be finite and non-negative");
    }
    check_dimension(4 * dim, "simulator Hamiltonian");
}

/**
 * @brief Non-fatal diagnostics for a model.
 *
 * Reports a non-Hermitian B (the builder uses (B + B†)/2) and a coupling
 * that is not small against the smallest level spacing of H_S.
 */
inline std::vector<std::string> model_warnings(const SimulatorModel &m) {
    std::vector<std::string> out;
    const auto v = hermiticity_violation(m.transition.matrix_b);
    if (v.magnitude > 1e-10) {
        out.emplace_back(
            "transition operator is not Hermitian; using (B + B^dagger)/2");
    }
    const auto eig = hermitian_eig(m.system.matrix);
    if (eig.values.size() > 1) {
        double min_gap = eig.values.back() - eig.values.front();
        for (std::size_t k = 1; k < eig.values.size(); ++k) {
            min_gap = std::min(min_gap, eig.values[k] - eig.values[k - 1]);
        }
        if (m.coupling_c >= min_gap / 10.0) {
            std::ostringstream msg;
            msg << "coupling_c = " << m.coupling_c
                << " is not small against the minimum level spacing "
                << min_gap << "; off-resonant transitions may blur peaks";
            out.push_back(msg.str());
        }
    }
    return out;
}

/// H_R = |0><0| ⊗ H_{E0} + |1><1| ⊗ H_S
inline Matrix register_hamiltonian(const SimulatorModel &m) {
    const std::size_t dim = m.system.matrix.rows();
    const Matrix projector = outer(m.reference.psi, m.reference.psi);
    Matrix h_ref = m.reference.energy_e0 * projector;
    if (m.complement_energy != 0.0) {
        h_ref += m.complement_energy * (Matrix::identity(dim) - projector);
    }
    const std::vector<double> p0{1.0, 0.0};
    const std::vector<double> p1{0.0, 1.0};
    return kron(Matrix::diagonal(p0), h_ref) +
           kron(Matrix::diagonal(p1), m.system.matrix);
}

inline HamiltonianSplit split_hamiltonian(const SimulatorModel &m) {
    validate(m);
    const std::size_t reg_dim = 2 * m.system.matrix.rows();
    Matrix probe = kron(pauli::z(), Matrix::identity(reg_dim));
    probe *= Complex(-m.omega / 2.0);
    Matrix static_part =
        probe + kron(Matrix::identity(2), register_hamiltonian(m));

    Matrix interaction =
        kron(pauli::x(), kron(pauli::x(), hermitian_part(m.transition.matrix_b)));
    interaction *= Complex(m.coupling_c);
    return HamiltonianSplit{std::move(static_part), std::move(interaction)};
}

/**
 * @brief Assemble H = -(ω/2)σ_z⊗I + I⊗H_R + c σ_x⊗σ_x⊗B.
 *
 * Dimension 2^{n+2}. Hermitian for any Hermitian H_S; B is replaced by its
 * Hermitian part.
 */
inline Matrix build_simulator_hamiltonian(const SimulatorModel &m) {
    auto split = split_hamiltonian(m);
    return split.static_part + split.interaction;
}

/// |1>_probe ⊗ |0>_ancilla ⊗ |E_0>
inline StateVector initial_state(const SimulatorModel &m) {
    const std::size_t dim = m.reference.psi.dim();
    std::vector<Complex> amps(4 * dim);
    for (std::size_t s = 0; s < dim; ++s) {
        amps[2 * dim + s] = m.reference.psi[s];
    }
    return StateVector(std::move(amps));
}

/**
 * @brief Shift every register energy by s.
 *
 * H_S, E_0 and the complement energy move together, so the assembled
 * Hamiltonian changes by s·I and all probe probabilities are unchanged.
 */
inline SimulatorModel shifted(SimulatorModel m, double s) {
    const std::size_t dim = m.system.matrix.rows();
    for (std::size_t i = 0; i < dim; ++i) {
        m.system.matrix(i, i) += s;
    }
    m.reference.energy_e0 += s;
    m.complement_energy += s;
    return m;
}

/// Water preset with |E_0> = |00>, E_0 = -84.20 and the Hadamard B.
inline SimulatorModel water_model(double omega = 0.0, double coupling_c = 0.006) {
    SimulatorModel m;
    m.system = water_preset();
    m.reference = basis_reference(2, 0, -84.20);
    m.transition = default_transition_operator(2);
    m.omega = omega;
    m.coupling_c = coupling_c;
    return m;
}

} // namespace resonance
