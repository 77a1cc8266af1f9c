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
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"

namespace resonance {
namespace {

const std::vector<double> kOracle{-83.9730696226, -83.4009179080, -82.6604302250,
                                  -82.3762822445};

Peak exact_peak(std::size_t j, double e0 = -84.20) {
    Peak p;
    p.omega_center = kOracle[j] - e0;
    p.energy_estimate = kOracle[j];
    p.grid_resolution = 1e-4;
    return p;
}

StateVector embed(std::size_t probe, std::size_t ancilla, const StateVector &system) {
    const std::size_t dim = system.dim();
    std::vector<Complex> a(4 * dim);
    for (std::size_t s = 0; s < dim; ++s) {
        a[(2 * probe + ancilla) * dim + s] = system[s];
    }
    return StateVector(std::move(a));
}

TEST(HeraldedProjection, PureSectorPassesThrough) {
    std::mt19937_64 rng(1);
    const auto phi = testing::random_state(rng, 4);
    const auto h = heralded_projection(embed(0, 1, phi));
    EXPECT_NEAR(h.success_probability, 1.0, 1e-14);
    EXPECT_EQ(h.herald_sector, "01");
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(h.psi_system[i] - phi[i]), 0.0, 1e-14);
    }
}

TEST(HeraldedProjection, OrthogonalSectorFails) {
    std::mt19937_64 rng(2);
    EXPECT_THROW(heralded_projection(embed(1, 0, testing::random_state(rng, 4))), HeraldError);
    EXPECT_THROW(heralded_projection(StateVector::basis(2, 0)), ValidationError);
}

TEST(HeraldedProjection, SuccessMatchesSectorWeightOnRandomStates) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = std::size_t{2} << (trial % 3);
        const auto full = testing::random_state(rng, 4 * dim);
        double weight = 0.0;
        for (std::size_t s = 0; s < dim; ++s) {
            weight += std::norm(full[dim + s]);
        }
        const auto h = heralded_projection(full);
        EXPECT_NEAR(h.success_probability, weight, 1e-12);
        EXPECT_NEAR(h.psi_system.norm(), 1.0, 1e-10);
    }
}

TEST(EigenstateFidelity, OracleVectorsAndOrthogonality) {
    const auto sys = water_preset();
    const auto eig = oracle_spectrum(sys);
    HeraldedState h;
    h.psi_system = eig.eigenvector(2);
    EXPECT_NEAR(eigenstate_fidelity(h, sys, 2), 1.0, 1e-12);
    EXPECT_NEAR(eigenstate_fidelity(h, sys, 0), 0.0, 1e-12);
    EXPECT_THROW(eigenstate_fidelity(h, sys, 4), DomainError);
}

TEST(EigenstateFidelity, CeilingOnRandomStates) {
    std::mt19937_64 rng(4);
    const auto sys = water_preset();
    for (int trial = 0; trial < 50; ++trial) {
        HeraldedState h;
        h.psi_system = testing::random_state(rng, 4);
        const double f = eigenstate_fidelity(h, sys, trial % 4);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0 + 1e-12);
    }
}

TEST(PrepareEigenstate, GroundState) {
    const auto prep = prepare_eigenstate(water_model(0.0, 0.006), exact_peak(0));
    EXPECT_EQ(prep.target_j, 0U);
    EXPECT_GE(prep.state.success_probability, 0.99);
    EXPECT_GE(prep.fidelity, 0.99);
    EXPECT_NEAR(prep.state.source_tau, std::numbers::pi / (2.0 * 0.006 * std::abs(prep.d_j)),
                1e-9);
    EXPECT_NEAR(prep.fidelity, eigenstate_fidelity(prep.state, water_preset(), 0), 1e-15);
}

TEST(PrepareEigenstate, FourthState) {
    const auto prep = prepare_eigenstate(water_model(0.0, 0.006), exact_peak(3));
    EXPECT_EQ(prep.target_j, 3U);
    EXPECT_GE(prep.state.success_probability, 0.99);
    EXPECT_GE(prep.fidelity, 0.99);
}

TEST(PrepareEigenstate, RefinedPeaksSucceed) {
    const auto m = water_model();
    const auto peaks = detect_peaks(run_sweep(m, SweepPlan{}));
    ASSERT_EQ(peaks.size(), 4U);
    for (std::size_t j = 0; j < 4; ++j) {
        const auto refined = refine_peak(m, peaks[j], SweepPlan{}, 1e-4);
        const auto prep = prepare_eigenstate(m, refined.peak);
        EXPECT_EQ(prep.target_j, j);
        EXPECT_GE(prep.state.success_probability, 0.95);
        EXPECT_GE(prep.fidelity, 0.99);
    }
}

TEST(PrepareEigenstate, UnrefinedGridPointAgreesWithTwoLevelFormula) {
    // Detuning 0.0069 at the 0.22 grid point lowers the success probability
    // to the two-level value (about 0.24).
    const auto m = water_model();
    Peak grid;
    grid.omega_center = 0.22;
    grid.energy_estimate = -84.20 + 0.22;
    const auto prep = prepare_eigenstate(m, grid);
    const double analytic = analytic_transition_probability(
        m.system, m.reference, m.transition, 0.22, 0.006, prep.state.source_tau, 0);
    EXPECT_NEAR(prep.state.success_probability, analytic, 0.01);
    EXPECT_GT(prep.state.success_probability, 0.2);
    EXPECT_LT(prep.state.success_probability, 0.5);
    EXPECT_GE(prep.fidelity, 0.99);
}

TEST(PrepareEigenstate, OnResonanceTracksSinSquaredAsCouplingShrinks) {
    const auto m0 = water_model();
    const auto d = transition_amplitudes(m0.system, m0.reference, m0.transition);
    double previous = 1e300;
    for (double c : {0.006, 0.003, 0.0015}) {
        const double tau = 300.0 * 0.006 / c;
        const auto prep =
            prepare_eigenstate(water_model(0.0, c), exact_peak(0), ExactEngine{}, tau);
        const double s = std::sin(c * std::abs(d[0]) * tau);
        const double gap = std::abs(prep.state.success_probability - s * s);
        EXPECT_LT(gap, previous) << c;
        previous = gap;
    }
}

TEST(PrepareEigenstate, DarkTransition) {
    // B = I and a basis eigenstate reference: d_j = 0 for every other level.
    const std::vector<double> diag{-1.0, 0.0, 1.0, 2.0};
    SimulatorModel m;
    m.system = make_system(Matrix::diagonal(diag), "diag");
    m.reference = basis_reference(2, 0, -1.5);
    m.transition = TransitionOperator{Matrix::identity(4), "identity"};
    m.coupling_c = 0.006;
    Peak p;
    p.omega_center = 1.5;
    p.energy_estimate = 0.0;
    try {
        (void)prepare_eigenstate(m, p);
        FAIL() << "expected DarkTransitionError";
    } catch (const DarkTransitionError &e) {
        EXPECT_NE(std::string(e.what()).find("dark transition"), std::string::npos);
    }
}

TEST(PrepareEigenstate, ZeroCouplingIsRejected) {
    EXPECT_THROW(prepare_eigenstate(water_model(0.0, 0.0), exact_peak(0)), DomainError);
}

TEST(PrepareEigenstate, TrotterEngine) {
    const auto prep = prepare_eigenstate(water_model(), exact_peak(0),
                                         TrotterEngineSettings{2, 0, 1e-6});
    EXPECT_GE(prep.fidelity, 0.99);
    EXPECT_GE(prep.state.success_probability, 0.99);
}

TEST(Chain, ReferenceFields) {
    HeraldedState h;
    h.psi_system = StateVector::basis(4, 2);
    const auto r = chain_reference(h, -83.5);
    EXPECT_EQ(r.psi, h.psi_system);
    EXPECT_EQ(r.energy_e0, -83.5);
}

std::vector<double> chained_peaks(const SimulatorModel &m, double step) {
    SweepPlan plan;
    plan.n_points = static_cast<std::size_t>(std::lround(2.0 / step)) + 1;
    PeakOptions opts;
    opts.min_omega = 4.0 * plan.coupling_c;
    std::vector<double> out;
    for (const auto &p : detect_peaks(run_sweep(m, plan), opts)) {
        out.push_back(refine_peak(m, p, plan, 1e-4).peak.omega_center);
    }
    return out;
}

TEST(Chain, FromGroundStateFindsUpperGaps) {
    const auto m = water_model();
    const auto prep = prepare_eigenstate(m, exact_peak(0));
    auto chained = m;
    chained.reference = chain_reference(prep.state, kOracle[0]);
    const auto found = chained_peaks(chained, 0.01);
    ASSERT_EQ(found.size(), 3U);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(found[k], kOracle[k + 1] - kOracle[0], 1e-3);
    }
    // No reported response at ω ≈ 0.
    for (double w : found) {
        EXPECT_GT(w, 4.0 * 0.006);
    }
}

TEST(Chain, GapSetMatchesOracleMatrixElements) {
    // From prepared |E_2>, the reported gaps are {E_k - E_2 : |<E_k|B|E_2>| > 0.1, E_k > E_2}.
    const auto m = water_model();
    const auto prep = prepare_eigenstate(m, exact_peak(1));
    auto chained = m;
    chained.reference = chain_reference(prep.state, kOracle[1]);
    const auto eig = oracle_spectrum(m.system);
    std::vector<double> expected;
    for (std::size_t k = 2; k < 4; ++k) {
        const auto bk = apply(m.transition.matrix_b, eig.eigenvector(1));
        if (std::abs(overlap(eig.eigenvector(k), bk)) > 0.1) {
            expected.push_back(kOracle[k] - kOracle[1]);
        }
    }
    // The E_4 line (|d| = 0.25) is ~0.006 wide, so a 0.01 grid can step over it.
    const auto found = chained_peaks(chained, 0.0025);
    ASSERT_EQ(found.size(), expected.size());
    for (std::size_t k = 0; k < found.size(); ++k) {
        EXPECT_NEAR(found[k], expected[k], 1e-3);
    }
}

} // namespace
} // namespace resonance
