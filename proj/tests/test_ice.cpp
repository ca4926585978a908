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
using testing::oracle_partial_transpose;
using testing::to_eigen;

const PartyStructure kThreeTwo = PartyStructure::qubits(3, 2);

TEST(Werner, SingletCornerHasPtEigenvalueMinusHalf) {
  const auto w = werner(1.0);
  EXPECT_NEAR(trace(w).real(), 1, 1e-14);
  EXPECT_NEAR(min_eigenvalue(partial_transpose(w, PartyStructure::qubits(2), {1})), -0.5, 1e-12);
}

TEST(IceStates, LocalUnitaryInvariant) {
  for (auto f : {IceFamily::Symmetric, IceFamily::Unsymmetric})
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
      const auto rho = ice_state(f, p);
      EXPECT_NEAR(trace(rho).real(), 1, 1e-14);
      EXPECT_GE(min_eigenvalue(rho), -1e-12);
      EXPECT_LT(local_unitary_defect(rho, 3, 20, 7), 1e-10);
    }
}

TEST(IceStates, NoiseIsNotInvariant) {
  Rng rng(1);
  EXPECT_GT(local_unitary_defect(random_density(8, rng), 3, 5, 1), 1e-3);
}

TEST(IceStates, FamilyParsing) {
  EXPECT_EQ(parse_ice_family("ice-s"), IceFamily::Symmetric);
  EXPECT_EQ(parse_ice_family("u"), IceFamily::Unsymmetric);
  EXPECT_THROW(parse_ice_family("ice-x"), std::invalid_argument);
  EXPECT_THROW(ice_projection(3), std::out_of_range);
}

TEST(IceProjection, IsAProjectorOfRankThreeOnOneParty) {
  const auto p = ice_projection(1);
  EXPECT_EQ(p.rows(), 64u);
  EXPECT_LT(testing::max_abs_diff(p * p, p), 1e-15);
  EXPECT_NEAR(trace(p).real(), 48, 1e-12);
}

TEST(IcePartialTranspose, MatchesEigenOracle) {
  const auto two = ice_two_copy(IceFamily::Unsymmetric, 0.65);
  const auto proj = ice_projection(0);
  const auto op = proj * two * proj;
  const auto got = bipartition_min_pt(op, kThreeTwo);
  const auto rho = to_eigen(op / trace(op));
  for (std::size_t x = 0; x < 3; ++x)
    EXPECT_NEAR(got[x], eigen_min_eig(testing::from_eigen(oracle_partial_transpose(rho, {4, 4, 4}, {x}))), 1e-10);
}

TEST(IceThresholds, TwoCopyCuts) {
  const auto s = npt_threshold(IceFamily::Symmetric, std::nullopt, 0);
  ASSERT_TRUE(s.has_value());
  EXPECT_NEAR(*s, 0.6, 1e-8);
  const auto u0 = npt_threshold(IceFamily::Unsymmetric, std::nullopt, 0);
  const auto u1 = npt_threshold(IceFamily::Unsymmetric, std::nullopt, 1);
  ASSERT_TRUE(u0 && u1);
  EXPECT_NEAR(*u0, 1 / std::sqrt(3.0), 1e-8);
  EXPECT_NEAR(*u1, 0.5, 1e-8);
  // the projection does not move the NPT onset
  EXPECT_NEAR(*npt_threshold(IceFamily::Unsymmetric, 0, 0), *u0, 1e-8);
}

TEST(IcePipeline, MonotoneAndReferencesAttached) {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  IceOptions opt;
  opt.invariance_samples = 5;
  opt.thresholds = false;
  const auto rep = ice_pipeline(IceFamily::Unsymmetric, grid, 1, opt);
  EXPECT_EQ(rep.rows.size(), grid.size());
  EXPECT_TRUE(rep.npt_monotone);
  ASSERT_TRUE(rep.reference.has_value());
  EXPECT_NEAR(rep.reference->gme_from, 0.708, 1e-12);
  for (const auto& row : rep.rows) EXPECT_LT(row.invariance_defect, 1e-10);
  EXPECT_GE(rep.rows.front().before[0], -1e-10);
  EXPECT_LT(rep.rows.back().before[0], -1e-3);
  EXPECT_FALSE(ice_reference(IceFamily::Symmetric, 2).has_value());
}

TEST(IceProjection, TwirlReductionLeavesSpectraInvariant) {
  for (auto f : {IceFamily::Symmetric, IceFamily::Unsymmetric}) {
    const auto two = ice_two_copy(f, 0.75);
    const auto p0 = ice_projection(0);
    const auto ref = bipartition_pt_spectra(p0 * two * p0, kThreeTwo);
    for (std::uint64_t s = 0; s < 5; ++s) {
      Rng rng = make_rng(44, s);
      const auto u = haar_unitary(2, rng);
      const auto pu = ice_projection(0, &u);
      const auto got = bipartition_pt_spectra(pu * two * pu, kThreeTwo);
      for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t i = 0; i < ref[x].size(); ++i) EXPECT_NEAR(got[x][i], ref[x][i], 1e-10);
    }
  }
}

}  // namespace
}  // namespace gmeact
