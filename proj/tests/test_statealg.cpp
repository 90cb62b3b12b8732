// Copyright 2026 The qcageom Authors
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

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qcageom/statealg.hpp"

namespace {

using namespace qcageom;
using std::numbers::sqrt2;

constexpr double kTol = 1e-10;

ComplexMatrix random_unitary(std::mt19937_64 &rng, std::size_t dim) {
    // Gram-Schmidt on a Gaussian matrix.
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto &c : cols) {
        for (auto &z : c) {
            z = {g(rng), g(rng)};
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex ip = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                ip += std::conj(cols[k][i]) * cols[j][i];
            }
            for (std::size_t i = 0; i < dim; ++i) {
                cols[j][i] -= ip * cols[k][i];
            }
        }
        double n = 0.0;
        for (auto &z : cols[j]) {
            n += std::norm(z);
        }
        for (auto &z : cols[j]) {
            z /= std::sqrt(n);
        }
    }
    ComplexMatrix u(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            u(i, j) = cols[j][i];
        }
    }
    return u;
}

ComplexMatrix random_hermitian(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = g(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = {g(rng), g(rng)};
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

DensityMatrix random_density(std::mt19937_64 &rng, std::size_t n_qubits) {
    // Reduced state of a random pure state on twice the qubits.
    const auto psi = oracle::random_state(rng, 2 * n_qubits);
    std::vector<Label> keep(n_qubits);
    for (std::size_t i = 0; i < n_qubits; ++i) {
        keep[i] = static_cast<Label>(i);
    }
    return partial_trace(psi, keep);
}

// --- ComplexMatrix -----------------------------------------------------------

TEST(ComplexMatrix, RejectsBadShapeAndNonFinite) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), InvalidArgument);
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex{std::nan(""), 0.0}}), InvalidArgument);
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex{INFINITY, 0.0}}), InvalidArgument);
}

TEST(ComplexMatrix, KronAndProducts) {
    const auto xz = kron(gates::pauli_x(), gates::pauli_z());
    EXPECT_EQ(xz.rows(), 4u);
    EXPECT_EQ(xz(0, 2), Complex(1.0));
    EXPECT_EQ(xz(1, 3), Complex(-1.0));
    EXPECT_EQ(xz(0, 0), Complex(0.0));
    EXPECT_LE((gates::pauli_x() * gates::pauli_x()).max_abs_diff(ComplexMatrix::identity(2)), 0.0);
    EXPECT_TRUE(gates::hadamard().is_unitary());
    EXPECT_FALSE((gates::pauli_x() + gates::pauli_z()).is_unitary());
    EXPECT_TRUE(gates::pauli_y().is_hermitian());
}

TEST(Gates, RotationConventions) {
    // e^{-i pi/2 sigma_x} = -i X
    const auto rx = gates::exp_sigma_x(std::numbers::pi / 2);
    EXPECT_LE(rx.max_abs_diff(Complex{0.0, -1.0} * gates::pauli_x()), 1e-15);
    // e^{-i pi sigma_x} = -1
    EXPECT_LE(gates::exp_sigma_x(std::numbers::pi).max_abs_diff(-1.0 * ComplexMatrix::identity(2)), 1e-15);
    const auto rz = gates::rz(std::numbers::pi);
    EXPECT_LE(std::abs(rz(0, 0) - Complex(0.0, -1.0)), 1e-15);
    EXPECT_LE(std::abs(rz(1, 1) - Complex(0.0, 1.0)), 1e-15);
}

// --- StateVector ---------------------------------------------------------------

TEST(StateVector, ValidatesNormLabelsAndSize) {
    EXPECT_THROW(StateVector({1.0, 1.0}), InvalidArgument);
    EXPECT_THROW(StateVector({1.0, 0.0, 0.0}), InvalidArgument);
    EXPECT_THROW(StateVector({1.0, 0.0, 0.0, 0.0}, {3, 3}), InvalidArgument);
    EXPECT_THROW(StateVector::basis(kMaxQubits + 1, 0), InvalidArgument);
    EXPECT_THROW(StateVector::normalized({0.0, 0.0}, {0}), InvalidArgument);
    EXPECT_NO_THROW(StateVector({1.0 + 2e-11, 0.0}));
}

TEST(StateVector, LabelZeroIsMostSignificant) {
    const auto s = StateVector::basis(3, 0b100);
    EXPECT_EQ(s[4], Complex(1.0));
    const auto x0 = apply_unitary(states::zero().relabeled({0}), gates::pauli_x(), {0});
    EXPECT_EQ(x0[1], Complex(1.0));
    const auto two = StateVector::basis(2, 0);
    const auto flipped = apply_unitary(two, gates::pauli_x(), {0});
    EXPECT_EQ(flipped[0b10], Complex(1.0));
}

// --- tensor --------------------------------------------------------------------

TEST(Tensor, ProductStates) {
    const auto zz = tensor(states::zero(), states::zero().relabeled({1}));
    EXPECT_EQ(zz[0], Complex(1.0));
    EXPECT_EQ(zz.labels()[1], 1);
    const auto p0 = tensor(states::plus(), states::zero().relabeled({1}));
    EXPECT_NEAR(p0[0].real(), 1 / sqrt2, kTol);
    EXPECT_NEAR(p0[2].real(), 1 / sqrt2, kTol);
    EXPECT_EQ(p0[1], Complex(0.0));
    const auto mixed = tensor(DensityMatrix::maximally_mixed(1), DensityMatrix(ComplexMatrix::diagonal(std::vector<Complex>{0.5, 0.5}), {1}));
    EXPECT_LE(mixed.matrix().max_abs_diff(0.25 * ComplexMatrix::identity(4)), kTol);
}

TEST(Tensor, RejectsOverlappingLabels) {
    EXPECT_THROW(tensor(states::zero(), states::one()), InvalidArgument);
    EXPECT_THROW(tensor(DensityMatrix::maximally_mixed(1), DensityMatrix::maximally_mixed(1)), InvalidArgument);
}

// --- apply_unitary ------------------------------------------------------------

TEST(ApplyUnitary, IdentityIsBitExact) {
    std::mt19937_64 rng(11);
    const auto psi = oracle::random_state(rng, 5);
    const auto out = apply_unitary(psi, ComplexMatrix::identity(4), {3, 1});
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        EXPECT_EQ(out[i], psi[i]);
    }
}

TEST(ApplyUnitary, CnotMakesBell) {
    const auto p0 = tensor(states::plus(), states::zero().relabeled({1}));
    const auto bell = apply_unitary(p0, gates::cnot(), {0, 1});
    EXPECT_NEAR(fidelity(bell, states::bell_phi_plus()), 1.0, kTol);
    // Reversed target order: control is qubit 1.
    const auto p1 = tensor(states::zero(), states::plus().relabeled({1}));
    EXPECT_NEAR(fidelity(apply_unitary(p1, gates::cnot(), {1, 0}), states::bell_phi_plus()), 1.0, kTol);
}

TEST(ApplyUnitary, PreservesNormForRandomUnitaries) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const auto psi = oracle::random_state(rng, 4);
        const std::size_t k = trial % 2 + 1;
        const auto u = random_unitary(rng, std::size_t{1} << k);
        const std::vector<Label> targets = k == 1 ? std::vector<Label>{trial % 4} : std::vector<Label>{trial % 4, (trial + 1) % 4};
        EXPECT_NEAR(apply_unitary(psi, u, targets).norm_squared(), 1.0, kTol);
    }
}

TEST(ApplyUnitary, MatchesDenseKronOracle) {
    std::mt19937_64 rng(13);
    const auto psi = oracle::random_state(rng, 3);
    const auto u = random_unitary(rng, 2);
    // U on qubit 1 of 3 == (I ⊗ U ⊗ I) |psi>.
    const auto full = kron(kron(ComplexMatrix::identity(2), u), ComplexMatrix::identity(2));
    const auto out = apply_unitary(psi, u, {1});
    for (std::size_t i = 0; i < 8; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < 8; ++j) {
            acc += full(i, j) * psi[j];
        }
        EXPECT_NEAR(std::abs(out[i] - acc), 0.0, 1e-12);
    }
}

TEST(ApplyUnitary, RejectsBadInput) {
    const auto s = StateVector::basis(2, 0);
    EXPECT_THROW(apply_unitary(s, gates::pauli_x() + gates::pauli_z(), {0}), InvalidArgument);
    EXPECT_THROW(apply_unitary(s, gates::pauli_x(), {0, 1}), InvalidArgument);
    EXPECT_THROW(apply_unitary(s, gates::cnot(), {0, 0}), InvalidArgument);
    EXPECT_THROW(apply_unitary(s, gates::pauli_x(), {7}), InvalidArgument);
}

// --- partial trace -------------------------------------------------------------

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
    const auto rho = partial_trace(states::bell_phi_plus(), {0});
    EXPECT_LE(rho.matrix().max_abs_diff(0.5 * ComplexMatrix::identity(2)), kTol);
}

TEST(PartialTrace, ProductStateMarginal) {
    const auto psi = StateVector::normalized({0.6, Complex{0.0, 0.8}}, {0});
    const auto joint = tensor(psi, states::plus().relabeled({1}));
    EXPECT_LE(partial_trace(joint, {0}).matrix().max_abs_diff(DensityMatrix::projector(psi).matrix()), kTol);
}

TEST(PartialTrace, MatchesIndexSumOracle) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const auto psi = oracle::random_state(rng, 3 + trial % 2);
        const auto n = static_cast<Label>(psi.n_qubits());
        for (Label a = 0; a < n; ++a) {
            for (Label b = a + 1; b < n; ++b) {
                const auto rho = partial_trace(psi, {a, b});
                EXPECT_LE(rho.matrix().max_abs_diff(oracle::partial_trace(psi, {a, b})), kTol);
                EXPECT_NEAR(rho.matrix().trace().real(), 1.0, kTol);
            }
        }
    }
}

TEST(PartialTrace, KeepOrderFollowsRegister) {
    std::mt19937_64 rng(15);
    const auto psi = oracle::random_state(rng, 3);
    EXPECT_LE(partial_trace(psi, {2, 0}).matrix().max_abs_diff(partial_trace(psi, {0, 2}).matrix()), 0.0);
    EXPECT_EQ(partial_trace(psi, {2, 0}).labels()[0], 0);
}

TEST(PartialTrace, DensityMatrixAgreesWithStateVector) {
    std::mt19937_64 rng(16);
    const auto psi = oracle::random_state(rng, 4);
    const auto full = DensityMatrix::projector(psi);
    EXPECT_LE(partial_trace(full, {1, 3}).matrix().max_abs_diff(partial_trace(psi, {1, 3}).matrix()), kTol);
    // Nested traces compose.
    const auto r13 = partial_trace(psi, {1, 3});
    EXPECT_LE(partial_trace(r13, {3}).matrix().max_abs_diff(partial_trace(psi, {3}).matrix()), kTol);
}

TEST(PartialTrace, TensorFactorRecovered) {
    std::mt19937_64 rng(17);
    const auto a = random_density(rng, 1);
    const auto b = random_density(rng, 2);
    const DensityMatrix bb(b.matrix(), {1, 2});
    EXPECT_LE(partial_trace(tensor(a, bb), {0}).matrix().max_abs_diff(a.matrix()), kTol);
}

TEST(PartialTrace, RejectsEmptyAndUnknownKeep) {
    const auto psi = states::bell_phi_plus();
    EXPECT_THROW(partial_trace(psi, std::span<const Label>{}), InvalidArgument);
    EXPECT_THROW(partial_trace(psi, {5}), InvalidArgument);
    EXPECT_THROW(partial_trace(DensityMatrix::projector(psi), {0, 0}), InvalidArgument);
}

// --- spectra and entropy -------------------------------------------------------

TEST(Eigen, SmallKnownSpectra) {
    const auto a = hermitian_eigenvalues(0.5 * ComplexMatrix::identity(2));
    EXPECT_NEAR(a[0], 0.5, 1e-14);
    EXPECT_NEAR(a[1], 0.5, 1e-14);
    const auto b = hermitian_eigenvalues(ComplexMatrix::diagonal(std::vector<Complex>{0.3, 0.7}));
    EXPECT_NEAR(b[0], 0.7, 1e-14);
    EXPECT_NEAR(b[1], 0.3, 1e-14);
    EXPECT_THROW(hermitian_eigenvalues(Complex{0.0, 1.0} * gates::pauli_x()), InvalidArgument);
}

TEST(Eigen, WernerSpectrum) {
    for (double z : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        const auto ev = hermitian_eigenvalues(states::werner(z).matrix());
        EXPECT_NEAR(ev[0], (1 + 3 * z) / 4, 1e-12);
        for (int k = 1; k < 4; ++k) {
            EXPECT_NEAR(ev[k], (1 - z) / 4, 1e-12);
        }
    }
}

TEST(Eigen, AgreesWithEigenSelfAdjointSolver) {
    std::mt19937_64 rng(18);
    for (std::size_t dim : {2u, 3u, 4u, 7u, 8u, 16u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto m = random_hermitian(rng, dim);
            Eigen::MatrixXcd e(dim, dim);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
            const auto ours = hermitian_eigenvalues(m);
            double trace = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                // Eigen sorts ascending.
                EXPECT_NEAR(ours[k], solver.eigenvalues()(static_cast<Eigen::Index>(dim - 1 - k)), 1e-9);
                trace += ours[k];
            }
            EXPECT_NEAR(trace, m.trace().real(), 1e-8);
        }
    }
}

TEST(Entropy, KnownValues) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::projector(states::plus())), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(1)), 1.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(3)), 3.0, 1e-12);
    const double s = -(0.625 * std::log2(0.625) + 3 * 0.125 * std::log2(0.125));
    EXPECT_NEAR(von_neumann_entropy(states::werner(0.5)), s, 1e-12);
    EXPECT_NEAR(s, 1.5487949406953985, 1e-12);
}

TEST(Entropy, RejectsNegativeSpectrum) {
    const DensityMatrix bad(ComplexMatrix::diagonal(std::vector<Complex>{1.5, -0.5}));
    EXPECT_THROW(von_neumann_entropy(bad), InvalidArgument);
    // Tiny negative drift is clamped.
    const DensityMatrix drift(ComplexMatrix::diagonal(std::vector<Complex>{1.0 + 5e-11, -5e-11}));
    EXPECT_NEAR(von_neumann_entropy(drift), 0.0, 1e-9);
}

TEST(Entropy, UnitaryInvariance) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = random_density(rng, 2);
        const auto u = random_unitary(rng, 4);
        const DensityMatrix conj(u * rho.matrix() * u.adjoint());
        EXPECT_NEAR(von_neumann_entropy(conj), von_neumann_entropy(rho), 1e-8);
    }
}

TEST(Entropy, SchmidtSymmetry) {
    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 10; ++trial) {
        const auto psi = oracle::random_state(rng, 5);
        EXPECT_NEAR(von_neumann_entropy(partial_trace(psi, {0, 3})),
                    von_neumann_entropy(partial_trace(psi, {1, 2, 4})), 1e-8);
    }
}

// --- fidelity and PPT -------------------------------------------------------------

TEST(Fidelity, BasicPairs) {
    EXPECT_NEAR(fidelity(states::plus(), states::plus()), 1.0, kTol);
    EXPECT_NEAR(fidelity(states::zero(), states::one()), 0.0, kTol);
    EXPECT_NEAR(fidelity(states::zero(), states::plus()), 0.5, kTol);
    EXPECT_NEAR(fidelity(states::plus(), DensityMatrix::maximally_mixed(1)), 0.5, kTol);
    EXPECT_THROW(fidelity(states::zero(), states::bell_phi_plus()), InvalidArgument);
}

TEST(Ppt, KnownStates) {
    EXPECT_FALSE(ppt_separable_2q(DensityMatrix::projector(states::bell_phi_plus())));
    EXPECT_TRUE(ppt_separable_2q(DensityMatrix::maximally_mixed(2)));
    EXPECT_THROW(ppt_separable_2q(DensityMatrix::maximally_mixed(1)), InvalidArgument);
}

TEST(Ppt, WernerThreshold) {
    for (double z = 0.0; z <= 1.0; z += 0.01) {
        const auto pt = hermitian_eigenvalues(partial_transpose_second(states::werner(z)));
        EXPECT_NEAR(pt.back(), std::min((1 - 3 * z) / 4, (1 + z) / 4), 1e-12);
        EXPECT_EQ(ppt_separable_2q(states::werner(z)), z <= 1.0 / 3.0 + 1e-6) << "z=" << z;
    }
}

} // namespace
