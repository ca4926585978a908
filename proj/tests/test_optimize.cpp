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

using testing::max_abs_diff;

TEST(Seesaw, PositiveOperatorNeverGoesNegative) {
  Rng rng(71);
  const auto a = random_ginibre(64, 64, rng);
  const ComplexMatrix x = a * adjoint(a);
  SeesawOptions opt;
  opt.starts = 3;
  const auto res = seesaw(x, PartyStructure({4, 4, 4}), opt);
  EXPECT_GE(res.value, 0);
}

TEST(Seesaw, HistoryIsMonotoneAndMatchesStoredVectors) {
  Rng rng(72);
  for (int t = 0; t < 5; ++t) {
    const auto x = random_hermitian(64, rng);
    SeesawOptions opt;
    opt.starts = 2;
    opt.seed = static_cast<std::uint64_t>(t);
    const PartyStructure ps({4, 4, 4});
    const auto res = seesaw(x, ps, opt);
    ASSERT_FALSE(res.history.empty());
    for (std::size_t i = 1; i < res.history.size(); ++i) EXPECT_LE(res.history[i], res.history[i - 1] + 1e-12);
    EXPECT_NEAR(res.history.back(), res.value, 1e-14);
    EXPECT_NEAR(product_expectation(x, ps, res.vectors), res.value, 1e-12);
    for (const auto& v : res.vectors) EXPECT_NEAR(norm(v), 1, 1e-12);
  }
}

TEST(Seesaw, SameSeedSameResult) {
  Rng rng(73);
  const auto x = random_hermitian(64, rng);
  SeesawOptions opt;
  opt.starts = 2;
  opt.seed = 9;
  const auto a = seesaw(x, PartyStructure({4, 4, 4}), opt), b = seesaw(x, PartyStructure({4, 4, 4}), opt);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(Seesaw, FindsProjectionsForFiveFourThreeZero) {
  const auto rho = make_chi({5, 4, 3, 0});
  SeesawOptions opt;
  opt.seed = 1;
  const auto res = seesaw(two_copy_search_operator(rho, ghz_fidelity_witness()), two_copy_search_structure(), opt);
  ASSERT_LT(res.value, -1e-6);
  // the stored projections reproduce the value and beat fidelity 1/2
  const auto img = project_unnormalized(two_copies(rho), res.projections());
  EXPECT_NEAR(trace_product(img, ghz_fidelity_witness()).real(), res.value, 1e-12);
  EXPECT_GT(ghz_fidelity_after(two_copies(rho), res.projections()), 0.5);
  // the Hadamard map does not detect this state
  EXPECT_FALSE(hadamard_2copy_criterion(XState::from_weights(ghz_weights(rho))));
}

TEST(Seesaw, WarmStartIsUsedFirst) {
  const auto rho = make_chi({5, 4, 3, 0});
  const auto x = two_copy_search_operator(rho, ghz_fidelity_witness());
  SeesawOptions opt;
  opt.seed = 1;
  const auto first = seesaw(x, two_copy_search_structure(), opt);
  SeesawOptions warm;
  warm.starts = 0;
  warm.warm_starts = {first.vectors};
  const auto again = seesaw(x, two_copy_search_structure(), warm);
  EXPECT_EQ(again.start, 0u);
  EXPECT_LE(again.value, first.value + 1e-12);
}

TEST(Seesaw, RelaxationLowerBoundsSeesaw) {
  const auto w = ghz_fidelity_witness();
  for (const auto& [l, p] : {std::pair{std::array<double, 4>{5, 4, 3, 0}, 1.0}, {{1, 0.65, 0.65, 0}, 0.9}}) {
    const auto rho = noisy_chi(l, p);
    SeesawOptions opt;
    opt.seed = 2;
    const auto s = seesaw(two_copy_search_operator(rho, w), two_copy_search_structure(), opt);
    const auto r = ppt_relax_lp(ghz_weights(rho), ghz_weights(w));
    EXPECT_LE(r.value, s.value + 1e-9);
    if (s.value < -1e-9) {
      EXPECT_LT(r.value, 0);
    }
  }
}

TEST(FidelityBound, Examples) {
  EXPECT_GE(fidelity_bound(two_copies(make_chi({1, 1, 0.05, 0}))).value, 0.9756 - 1e-3);
  EXPECT_GE(fidelity_bound(two_copies(make_chi({1, 1.0 / 3, 1.0 / 3, 1.0 / 3}))).value, 0.75 - 1e-3);
  EXPECT_NEAR(fidelity_bound(two_copies(make_chi({1, 0, 0, 0}))).value, 1, 1e-6);
}

TEST(FidelityBound, NothingBelowHalf) {
  // partition-separable: no projection can exceed fidelity 1/2
  const auto fb = fidelity_bound(two_copies(make_chi({1, 1, 0.3, 0.3})));
  EXPECT_FALSE(fb.projections);
  EXPECT_EQ(fb.value, 0);
}

TEST(ClassifyPoint, Examples) {
  EXPECT_EQ(classify_point({1, 1, 0.4, 0.4}, 1).label, ClassificationLabel::PartitionSeparable);
  EXPECT_EQ(classify_point({1, 1, 0.4, 0.4}, 0.7).label, ClassificationLabel::PartitionSeparable);
  ClassifyOptions opt;
  opt.seesaw.seed = 1;
  const auto a = classify_point({5, 4, 3, 0}, 1, opt);
  EXPECT_EQ(a.label, ClassificationLabel::ProjectionFound);
  EXPECT_NEAR(a.p_wnr, 0.5928, 1e-3);
  const auto b = classify_point({1, 1.0 / 3, 1.0 / 3, 1.0 / 3}, 1, opt);
  EXPECT_EQ(b.label, ClassificationLabel::HadamardDetected);
  EXPECT_NEAR(b.p_wnr, 0.5294, 1e-3);
}

TEST(ClassifyPoint, StageSelection) {
  ClassifyOptions opt;
  opt.stages = parse_stages("pptmix");
  EXPECT_EQ(classify_point({1, 1, 0.4, 0.4}, 1, opt).label, ClassificationLabel::NotDetectedGME);
  EXPECT_EQ(classify_point({5, 4, 3, 0}, 1, opt).label, ClassificationLabel::Undecided);
  EXPECT_EQ(parse_stages("all"), stage::kAll);
  EXPECT_EQ(parse_stages("partition,relax"), stage::kPartition | stage::kRelax);
  EXPECT_THROW(parse_stages("pptmix,bogus"), std::invalid_argument);
}

TEST(ClassifyPoint, LabelsRoundTrip) {
  for (int l = 0; l < 6; ++l) {
    const auto label = static_cast<ClassificationLabel>(l);
    EXPECT_EQ(parse_label(to_string(label)), label);
  }
  EXPECT_FALSE(parse_label("Blue"));
}

TEST(ChiGrid, SizeOrderAndPartitionPoints) {
  const auto grid = chi_grid(0.05);
  EXPECT_EQ(grid.size(), 1457u);
  std::size_t partition = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& l = grid[i];
    EXPECT_EQ(l[0], 1);
    EXPECT_TRUE(l[1] >= l[2] && l[2] >= l[3] && l[3] >= 0);
    EXPECT_NE(classify_chi(l), SeparabilityClass::GME);
    if (chi_partition_separable(l)) ++partition;
    if (i > 0) {
      EXPECT_TRUE(std::lexicographical_compare(grid[i - 1].begin(), grid[i - 1].end(), l.begin(), l.end()));
    }
  }
  EXPECT_EQ(partition, 21u);
}

TEST(ChiGrid, HadamardDetectionImpliesPptMixDetection) {
  const auto maps = ghz_copy_maps(2);
  for (const auto& l : chi_grid(0.1)) {
    for (double p : {1.0, 0.9, 0.8}) {
      const auto c = ghz_weights(noisy_chi(l, p));
      if (!hadamard_2copy_criterion(XState::from_weights(c))) continue;
      EXPECT_LT(pptmix_lp(product_coefficients({as_vector(c), as_vector(c)}), maps).t, -1e-9);
    }
  }
}

TEST(NoisePath, FollowsBranchIntoNoise) {
  SeesawOptions first, follow;
  first.starts = 10;
  first.iterations = 100;
  follow.starts = 1;
  follow.iterations = 100;
  const auto path = seesaw_noise_path({1, 0.65, 0.65, 0}, {1.0, 0.95, 0.9}, first, follow);
  ASSERT_EQ(path.size(), 3u);
  for (const auto& r : path) EXPECT_LT(r.value, -1e-9);
  EXPECT_LT(path[0].value, path[2].value);
}

}  // namespace
}  // namespace gmeact
