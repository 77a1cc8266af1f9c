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
#include <complex>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"

namespace resonance {
namespace {

using testing::random_hermitian;
using testing::random_matrix;
using testing::random_state;

constexpr double kInvSqrt2 = 0.70710678118654752440;

TEST(Kron, IdentityTimesIdentity) {
    const auto k = kron(Matrix::identity(2), Matrix::identity(2));
    EXPECT_EQ(k, Matrix::identity(4));
}

TEST(Kron, PauliXWithZHasOffDiagonalZBlocks) {
    const auto k = kron(pauli::x(), pauli::z());
    Matrix expected(4, 4);
    expected(0, 2) = 1.0;
    expected(1, 3) = -1.0;
    expected(2, 0) = 1.0;
    expected(3, 1) = -1.0;
    EXPECT_EQ(k, expected);
}

TEST(Kron, HadamardPairMapsZeroToUniform) {
    const auto psi = apply(kron(pauli::hadamard(), pauli::hadamard()), StateVector::basis(4, 0));
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(psi[i].real(), 0.5, 1e-15);
        EXPECT_NEAR(psi[i].imag(), 0.0, 1e-15);
    }
}

TEST(Kron, AssociativeOnRandomMatrices) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_matrix(rng, 2, 3);
        const auto b = random_matrix(rng, 3, 2);
        const auto c = random_matrix(rng, 2, 2);
        EXPECT_LE(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))), 1e-12);
    }
}

TEST(Kron, DimensionCapRaisesSizeError) {
    const auto big = Matrix::identity(256);
    EXPECT_THROW(kron(big, Matrix::identity(128)), SizeError);
}

TEST(Kron, EnvironmentOverridesCap) {
    ::setenv("RESONANCE_MAX_DIM", "8", 1);
    EXPECT_EQ(max_dimension(), 8U);
    EXPECT_THROW(kron(Matrix::identity(4), Matrix::identity(4)), SizeError);
    ::setenv("RESONANCE_MAX_DIM", "bogus", 1);
    EXPECT_EQ(max_dimension(), std::size_t{1} << 14);
    ::unsetenv("RESONANCE_MAX_DIM");
    EXPECT_NO_THROW(kron(Matrix::identity(4), Matrix::identity(4)));
}

TEST(Matrix, ShapeMismatchIsRejected) {
    EXPECT_THROW(Matrix(2, 2, {1.0, 2.0, 3.0}), ValidationError);
    EXPECT_THROW(Matrix::identity(2) + Matrix::identity(3), ValidationError);
    EXPECT_THROW(Matrix::identity(2) * Matrix(3, 3), ValidationError);
}

TEST(Matrix, PowerMatchesRepeatedProduct) {
    std::mt19937_64 rng(3);
    const auto a = random_matrix(rng, 3, 3, 0.5);
    Matrix expected = Matrix::identity(3);
    for (int k = 0; k < 7; ++k) {
        expected = expected * a;
    }
    EXPECT_LE(max_abs(power(a, 7) - expected), 1e-12);
    EXPECT_EQ(power(a, 0), Matrix::identity(3));
}

TEST(HermitianEig, DiagonalInput) {
    const std::vector<double> d{1.0, 2.0, 3.0, 4.0};
    const auto eig = hermitian_eig(Matrix::diagonal(d));
    EXPECT_EQ(eig.values, d);
    EXPECT_LE(max_abs(eig.vectors - Matrix::identity(4)), 1e-15);
}

TEST(HermitianEig, UnsortedDiagonalIsSorted) {
    const std::vector<double> d{3.0, -1.0, 2.0, 0.5};
    const auto eig = hermitian_eig(Matrix::diagonal(d));
    EXPECT_EQ(eig.values, (std::vector<double>{-1.0, 0.5, 2.0, 3.0}));
}

TEST(HermitianEig, PauliX) {
    const auto eig = hermitian_eig(pauli::x());
    EXPECT_NEAR(eig.values[0], -1.0, 1e-15);
    EXPECT_NEAR(eig.values[1], 1.0, 1e-15);
    const auto lo = eig.eigenvector(0);
    const auto hi = eig.eigenvector(1);
    // (|0> - |1>)/√2 and (|0> + |1>)/√2 up to global phase.
    EXPECT_NEAR(std::abs(overlap(StateVector(std::vector<Complex>{kInvSqrt2, -kInvSqrt2}), lo)),
                1.0, 1e-14);
    EXPECT_NEAR(std::abs(overlap(StateVector(std::vector<Complex>{kInvSqrt2, kInvSqrt2}), hi)),
                1.0, 1e-14);
}

TEST(HermitianEig, WaterSpectrum) {
    const auto eig = hermitian_eig(water_preset().matrix);
    const std::vector<double> printed{-83.9731, -83.4010, -82.6604, -82.3763};
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(eig.values[j], printed[j], 1e-4);
    }
}

TEST(HermitianEig, NonHermitianNamesWorstEntry) {
    Matrix h = Matrix::identity(3);
    h(0, 1) = 0.1;
    h(2, 1) = Complex(0.0, 0.5);
    try {
        (void)hermitian_eig(h);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("h[1,2]"), std::string::npos) << e.what();
    }
}

TEST(HermitianEig, RejectsNonSquareAndEmpty) {
    EXPECT_THROW(hermitian_eig(Matrix(2, 3)), ValidationError);
    EXPECT_THROW(hermitian_eig(Matrix(0, 0)), ValidationError);
}

TEST(HermitianEig, DegenerateValuesKeptDistinct) {
    const std::vector<double> d{2.0, 2.0, 2.0};
    const auto eig = hermitian_eig(Matrix::diagonal(d));
    EXPECT_EQ(eig.values.size(), 3U);
    EXPECT_LE(unitarity_error(eig.vectors), 1e-15);
}

TEST(HermitianEig, ReconstructionOnRandomMatrices) {
    std::mt19937_64 rng(2024);
    const std::size_t dims[] = {1, 2, 3, 5, 8, 16, 33, 64};
    for (int trial = 0; trial < 56; ++trial) {
        const std::size_t n = dims[trial % 8];
        const auto h = random_hermitian(rng, n);
        const auto eig = hermitian_eig(h);
        const auto lambda = Matrix::diagonal(eig.values);
        const auto rebuilt = eig.vectors * lambda * adjoint(eig.vectors);
        EXPECT_LE(frobenius_norm(rebuilt - h) / frobenius_norm(h), 1e-9) << "n = " << n;
        EXPECT_LE(unitarity_error(eig.vectors), 1e-10);
        for (std::size_t k = 1; k < n; ++k) {
            EXPECT_LE(eig.values[k - 1], eig.values[k]);
        }
    }
}

TEST(HermitianEig, ShiftEquivariance) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = random_hermitian(rng, 2 + trial % 7);
        const double s = u(rng);
        const auto hs = h + s * Matrix::identity(h.rows());
        const auto a = hermitian_eig(h).values;
        const auto b = hermitian_eig(hs).values;
        for (std::size_t k = 0; k < a.size(); ++k) {
            EXPECT_NEAR(b[k], a[k] + s, 1e-10);
        }
    }
}

TEST(HermitianEig, Deterministic) {
    std::mt19937_64 rng(5);
    const auto h = random_hermitian(rng, 12);
    const auto a = hermitian_eig(h);
    const auto b = hermitian_eig(h);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.vectors, b.vectors);
}

TEST(UnitaryExp, ZeroTimeIsIdentity) {
    std::mt19937_64 rng(8);
    const auto h = random_hermitian(rng, 6);
    EXPECT_LE(max_abs(unitary_exp(h, 0.0) - Matrix::identity(6)), 1e-14);
}

TEST(UnitaryExp, PauliZQuarterPeriod) {
    const auto u = unitary_exp(pauli::z(), std::numbers::pi / 2.0);
    EXPECT_NEAR(std::abs(u(0, 0) - Complex(0.0, -1.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(1, 1) - Complex(0.0, 1.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(0, 1)), 0.0, 1e-15);
}

TEST(UnitaryExp, UnitarityOnRandomHamiltonians) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> t(-2000.0, 2000.0);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 15;
        Matrix h = random_hermitian(rng, n);
        for (std::size_t i = 0; i < n; ++i) {
            h(i, i) -= 84.0;
        }
        const double time = t(rng);
        const auto u = unitary_exp(h, time);
        EXPECT_LE(unitarity_error(u), 1e-10);
    }
}

TEST(UnitaryExp, NormPreservationOnPowerOfTwoStates) {
    std::mt19937_64 rng(100);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = std::size_t{1} << (1 + trial % 5);
        Matrix h = random_hermitian(rng, dim, 3.0);
        const auto u = unitary_exp(h, 1000.0);
        EXPECT_NEAR(apply(u, random_state(rng, dim)).norm(), 1.0, 1e-10);
    }
}

TEST(UnitaryExp, RejectsNonHermitian) {
    Matrix h(2, 2);
    h(0, 1) = 1.0;
    EXPECT_THROW(unitary_exp(h, 1.0), ValidationError);
}

TEST(SpectralExponential, ApplyMatchesMatrix) {
    std::mt19937_64 rng(4);
    const auto h = random_hermitian(rng, 8);
    const SpectralExponential<double> e(h);
    const auto psi = random_state(rng, 8);
    const auto a = e.apply(3.7, psi);
    const auto b = apply(e(3.7), psi);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-13);
    }
}

TEST(SpectralNorm, MatchesKnownValues) {
    const std::vector<double> d{0.5, -3.0, 2.0};
    EXPECT_NEAR(spectral_norm(Matrix::diagonal(d)), 3.0, 1e-14);
    Matrix a(2, 2);
    a(0, 1) = 2.0;
    EXPECT_NEAR(spectral_norm(a), 2.0, 1e-14);
    EXPECT_NEAR(spectral_norm(Matrix::identity(5)), 1.0, 1e-14);
}

TEST(Overlap, BasicFacts) {
    const auto zero = StateVector::basis(2, 0);
    const auto one = StateVector::basis(2, 1);
    EXPECT_EQ(overlap(zero, one), Complex(0.0));
    std::mt19937_64 rng(6);
    const auto psi = random_state(rng, 8);
    EXPECT_NEAR(std::abs(overlap(psi, psi) - Complex(1.0)), 0.0, 1e-14);
    EXPECT_THROW(overlap(zero, psi), ValidationError);
}

TEST(Overlap, BoundedForNormalizedStates) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_state(rng, 16);
        const auto b = random_state(rng, 16);
        const double p = std::norm(overlap(a, b));
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0 + 1e-12);
    }
}

TEST(StateVector, RejectsBadDimensionsAndIndices) {
    EXPECT_THROW(StateVector(std::vector<Complex>(3)), ValidationError);
    EXPECT_THROW(StateVector::basis(4, 4), DomainError);
    EXPECT_THROW(apply(Matrix::identity(2), StateVector::basis(4, 0)), ValidationError);
}

TEST(StateVector, ZeroVectorCannotBeNormalized) {
    EXPECT_THROW((void)StateVector(std::vector<Complex>(4)).normalized(), Error);
}

} // namespace
} // namespace resonance
