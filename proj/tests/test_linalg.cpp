// Copyright 2026 The gmeact Authors
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

#include "test_util.hpp"

namespace gmeact {
namespace {

using testing::eigen_min_eig;
using testing::eigen_spectrum;
using testing::from_eigen;
using testing::max_abs_diff;
using testing::to_eigen;

ComplexMatrix ket_bra(std::size_t dim, std::size_t i, std::size_t j) {
  ComplexMatrix m(dim, dim);
  m(i, j) = 1;
  return m;
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(Kron, BasisProjectors) {
  const ComplexMatrix k = kron(ket_bra(2, 0, 0), ket_bra(2, 1, 1));
  EXPECT_EQ(k, ket_bra(4, 1, 1));
}

TEST(Kron, MatchesEigenKroneckerAndMixedProduct) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_ginibre(2, 2, rng), b = random_ginibre(2, 3, rng);
    const auto c = random_ginibre(2, 2, rng), d = random_ginibre(3, 2, rng);
    const Eigen::MatrixXcd ea = to_eigen(a), eb = to_eigen(b);
    Eigen::MatrixXcd ek(ea.rows() * eb.rows(), ea.cols() * eb.cols());
    for (Eigen::Index i = 0; i < ea.rows(); ++i)
      for (Eigen::Index j = 0; j < ea.cols(); ++j) ek.block(i * eb.rows(), j * eb.cols(), eb.rows(), eb.cols()) = ea(i, j) * eb;
    EXPECT_LT(max_abs_diff(kron(a, b), from_eigen(ek)), 1e-12);
    EXPECT_LT(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)), 1e-12);
  }
}

TEST(SchurProduct, AllOnesIsNeutral) {
  Rng rng(3);
  const auto a = random_ginibre(4, 4, rng);
  EXPECT_LT(max_abs_diff(schur_product(a, ComplexMatrix(4, 4, cplx(1))), a), 1e-15);
}

TEST(SchurProduct, GhzProjectorSquaresToHalf) {
  const auto g = projector(ghz_basis_state(1, GhzSign::Plus));
  EXPECT_LT(max_abs_diff(schur_product(g, g), g * cplx(0.5)), 1e-15);
}

TEST(SchurProduct, PsdInputsGivePsdOutput) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_ginibre(4, 4, rng), b = random_ginibre(4, 2, rng);
    const auto ga = a * adjoint(a), gb = b * adjoint(b);
    EXPECT_GE(eigen_min_eig(schur_product(ga, gb)), tol::kPsd);
  }
}

TEST(PartialTranspose, IsAnInvolution) {
  Rng rng(7);
  const auto rho = random_density(8, rng);
  const PartyStructure ps = PartyStructure::qubits(3);
  for (std::size_t mask = 1; mask < 8; ++mask) {
    std::vector<std::size_t> parties;
    for (std::size_t p = 0; p < 3; ++p)
      if (mask >> p & 1) parties.push_back(p);
    const auto once = partial_transpose(rho, ps, std::span<const std::size_t>(parties));
    EXPECT_LT(max_abs_diff(partial_transpose(once, ps, std::span<const std::size_t>(parties)), rho), 1e-15);
    EXPECT_NEAR(trace(once).real(), 1.0, 1e-12);
  }
}

TEST(PartialTranspose, MatchesIndependentOracleOnMixedDimensions) {
  Rng rng(9);
  const PartyStructure ps({2, 4, 8});
  const auto rho = random_density(64, rng);
  for (std::vector<std::size_t> parties : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
    const auto got = partial_transpose(rho, ps, std::span<const std::size_t>(parties));
    const auto want = from_eigen(testing::oracle_partial_transpose(to_eigen(rho), ps.dims(), parties));
    EXPECT_LT(max_abs_diff(got, want), 1e-15);
  }
}

TEST(PartialTranspose, IsLinear) {
  Rng rng(10);
  const auto a = random_hermitian(8, rng), b = random_hermitian(8, rng);
  const PartyStructure ps = PartyStructure::qubits(3);
  const auto lhs = partial_transpose(a * cplx(2.5) + b, ps, {1});
  const auto rhs = partial_transpose(a, ps, {1}) * cplx(2.5) + partial_transpose(b, ps, {1});
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-13);
}

TEST(PartialTranspose, SingletHasNegativeHalf) {
  ComplexVector psi(4);
  psi[1] = 1 / std::sqrt(2.0);
  psi[2] = -1 / std::sqrt(2.0);
  const auto pt = partial_transpose(projector(psi), PartyStructure::qubits(2), {0});
  EXPECT_NEAR(min_eigenvalue(pt), -0.5, 1e-12);
  EXPECT_NEAR(eigen_min_eig(pt), -0.5, 1e-12);
}

TEST(PartialTranspose, ProductStateStaysPsd) {
  Rng rng(12);
  const auto s = kron(random_density(2, rng), random_density(4, rng));
  EXPECT_GE(min_eigenvalue(partial_transpose(s, PartyStructure({2, 4}), {0})), tol::kPsd);
}

TEST(HermitianEig, DiagonalInput) {
  ComplexMatrix d(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  const auto e = hermitian_eig(d);
  ASSERT_EQ(e.values.size(), 3u);
  EXPECT_NEAR(e.values[0], 1, 1e-15);
  EXPECT_NEAR(e.values[1], 2, 1e-15);
  EXPECT_NEAR(e.values[2], 3, 1e-15);
}

TEST(HermitianEig, PauliX) {
  const auto e = hermitian_eig(detail::pauli('X'));
  EXPECT_NEAR(e.values[0], -1, 1e-15);
  EXPECT_NEAR(e.values[1], 1, 1e-15);
  const auto minus = e.vector(0);
  EXPECT_NEAR(std::abs(minus[0] + minus[1]), 0, 1e-14);
  EXPECT_NEAR(std::abs(minus[0]), 1 / std::sqrt(2.0), 1e-14);
}

TEST(HermitianEig, Random64MatchesEigenAndReconstructs) {
  Rng rng(13);
  const auto h = random_hermitian(64, rng);
  const auto e = hermitian_eig(h);
  const auto want = eigen_spectrum(h);
  double tr = 0;
  for (std::size_t i = 0; i < 64; ++i) {
    EXPECT_NEAR(e.values[i], want[i], 1e-10);
    tr += e.values[i];
  }
  EXPECT_NEAR(tr, trace(h).real(), 1e-10);
  std::vector<cplx> vals(e.values.begin(), e.values.end());
  const auto rebuilt = e.vectors * ComplexMatrix::diagonal(std::span<const cplx>(vals)) * adjoint(e.vectors);
  EXPECT_LT(max_abs_diff(rebuilt, h), 1e-10);
  EXPECT_LT(max_abs_diff(adjoint(e.vectors) * e.vectors, ComplexMatrix::identity(64)), 1e-10);
}

TEST(HermitianEig, PsdSpectrumNonNegative) {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) EXPECT_GE(hermitian_eig(random_density(16, rng)).values.front(), tol::kPsd);
}

TEST(PartialTrace, ProductState) {
  Rng rng(15);
  const auto a = random_density(2, rng);
  const auto b = random_hermitian(4, rng);
  const auto got = partial_trace(kron(a, b), PartyStructure({2, 4}), {1});
  EXPECT_LT(max_abs_diff(got, a * trace(b)), 1e-14);
}

TEST(PartialTrace, GhzMarginal) {
  const auto got = partial_trace(projector(ghz_basis_state(1, GhzSign::Plus)), PartyStructure::qubits(3), {0});
  ComplexMatrix want(4, 4);
  want(0, 0) = want(3, 3) = 0.5;
  EXPECT_LT(max_abs_diff(got, want), 1e-15);
}

TEST(PartialTrace, AllPartiesGivesTrace) {
  Rng rng(16);
  const auto h = random_hermitian(8, rng);
  const auto t = partial_trace(h, PartyStructure::qubits(3), {0, 1, 2});
  ASSERT_EQ(t.rows(), 1u);
  EXPECT_NEAR(std::abs(t(0, 0) - trace(h)), 0, 1e-13);
}

TEST(PartyKron, InterleavesCopiesInsideParties) {
  Rng rng(17);
  const auto a = random_unit_vector(8, rng), b = random_unit_vector(8, rng);
  const PartyStructure ps = PartyStructure::qubits(3);
  const auto v = party_kron(std::span<const cplx>(a), ps, std::span<const cplx>(b), ps);
  // index (a0 b0)(a1 b1)(a2 b2) with copy innermost
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      std::size_t idx = 0;
      for (int p = 2; p >= 0; --p) idx = idx * 4 + ((i >> p & 1) * 2 + (j >> p & 1));
      EXPECT_NEAR(std::abs(v[idx] - a[i] * b[j]), 0, 1e-15);
    }
}

TEST(PermuteSubsystems, RoundTrip) {
  Rng rng(18);
  const auto h = random_hermitian(24, rng);
  const std::vector<std::size_t> dims = {2, 3, 4}, perm = {2, 0, 1};
  const auto p = permute_subsystems(h, dims, perm);
  std::vector<std::size_t> inv(3), pd(3);
  for (std::size_t i = 0; i < 3; ++i) {
    inv[perm[i]] = i;
    pd[i] = dims[perm[i]];
  }
  EXPECT_LT(max_abs_diff(permute_subsystems(p, pd, inv), h), 1e-15);
}

TEST(Linalg, DimensionErrors) {
  EXPECT_THROW(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), DimensionMismatch);
  EXPECT_THROW(partial_transpose(ComplexMatrix::identity(4), PartyStructure::qubits(3), {0}), DimensionMismatch);
}

}  // namespace
}  // namespace gmeact
