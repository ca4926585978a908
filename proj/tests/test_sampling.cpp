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

#include <cmath>
#include <numeric>

#include "test_util.hpp"

namespace gmeact {
namespace {

const PartyStructure kThree = PartyStructure::qubits(3);

// Counts proportional to the exact distribution with a very large shot
// budget, so that plug-in estimates reproduce exact expectations.
ShotCounts exact_counts(const std::vector<double>& p) {
  constexpr double kShots = 1e15;
  ShotCounts s;
  for (double v : p) {
    s.counts.push_back(static_cast<std::uint64_t>(std::llround(v * kShots)));
    s.shots += s.counts.back();
  }
  return s;
}

std::vector<ShotCounts> exact_data(const ComplexMatrix& rho, std::size_t k) {
  std::vector<ShotCounts> out;
  for (const auto& s : witness_settings(k)) out.push_back(exact_counts(outcome_probs(rho, s)));
  return out;
}

TEST(OutcomeProbs, GhzInZBasis) {
  const auto p = outcome_probs(projector(ghz_basis_state(1, GhzSign::Plus)), uniform_setting(detail::pauli('Z'), 3));
  ASSERT_EQ(p.size(), 8u);
  EXPECT_NEAR(p[0], 0.5, 1e-14);
  EXPECT_NEAR(p[7], 0.5, 1e-14);
  for (std::size_t x = 1; x < 7; ++x) EXPECT_NEAR(p[x], 0, 1e-14);
}

TEST(OutcomeProbs, MaximallyMixedIsUniform) {
  const auto rho = ComplexMatrix::identity(8) / cplx(8);
  for (const auto& s : witness_settings(2))
    for (double v : outcome_probs(rho, s)) EXPECT_NEAR(v, 1.0 / 8, 1e-14);
}

TEST(OutcomeProbs, ParityReproducesExpectation) {
  Rng rng(2);
  const auto rho = random_density(8, rng);
  for (std::size_t l = 1; l <= 6; ++l) {
    const auto p = outcome_probs(rho, uniform_setting(m_l_observable(l, 6), 3));
    double parity = 0;
    for (std::size_t x = 0; x < 8; ++x) parity += (std::popcount(x) % 2 == 0 ? 1.0 : -1.0) * p[x];
    EXPECT_NEAR(parity, m_l_expectation(rho, l, 6, 3), 1e-12);
  }
}

TEST(OutcomeProbs, RejectsBadSettings) {
  const auto rho = ComplexMatrix::identity(8) / cplx(8);
  EXPECT_THROW(outcome_probs(rho, uniform_setting(detail::pauli('Z'), 2)), DimensionMismatch);
  EXPECT_THROW(outcome_probs(rho, uniform_setting(ComplexMatrix::identity(2), 3)), std::invalid_argument);
  EXPECT_THROW(outcome_probs(rho, MeasurementSetting{}), std::invalid_argument);
}

TEST(SampleCounts, ZeroShots) {
  const auto s = sample_counts({0.5, 0.5}, 0, std::uint64_t{1});
  EXPECT_EQ(s.shots, 0u);
  EXPECT_EQ(s.counts, (std::vector<std::uint64_t>{0, 0}));
}

TEST(SampleCounts, SumsToShotsAndConverges) {
  const std::vector<double> p{0.1, 0.0, 0.25, 0.05, 0.3, 0.1, 0.15, 0.05};
  const auto s = sample_counts(p, 1000000, std::uint64_t{9});
  EXPECT_EQ(std::accumulate(s.counts.begin(), s.counts.end(), std::uint64_t{0}), 1000000u);
  EXPECT_EQ(s.counts[1], 0u);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double sigma = std::sqrt(p[i] * (1 - p[i]) / 1e6);
    EXPECT_NEAR(static_cast<double>(s.counts[i]) / 1e6, p[i], 5 * sigma + 1e-12);
  }
}

TEST(SampleCounts, SeedReproducible) {
  const std::vector<double> p{0.2, 0.3, 0.5};
  EXPECT_EQ(sample_counts(p, 5000, std::uint64_t{4}).counts, sample_counts(p, 5000, std::uint64_t{4}).counts);
  EXPECT_NE(sample_counts(p, 5000, std::uint64_t{4}).counts, sample_counts(p, 5000, std::uint64_t{5}).counts);
  EXPECT_THROW(sample_counts({-0.1, 1.1}, 10, std::uint64_t{1}), std::invalid_argument);
}

TEST(Estimator, ExactDataReproducesAnalyticValue) {
  Rng rng(12);
  for (int t = 0; t < 5; ++t) {
    const auto rho = random_density(8, rng);
    for (std::size_t k : {1u, 2u, 3u})
      EXPECT_NEAR(estimate_witness(exact_data(rho, k), k), lifted_witness_value(rho, k), 1e-12) << "k=" << k;
  }
  const auto rho = ghz_with_noise(3.0 / 7);
  EXPECT_NEAR(estimate_witness(exact_data(rho, 2), 2), -3.0 / 98, 1e-12);
  EXPECT_NEAR(estimate_single_copy_witness(exact_data(rho, 2), 2), 0, 1e-12);
}

TEST(Estimator, SingleCopyWitnessIsHalfMinusFidelity) {
  Rng rng(13);
  for (int t = 0; t < 5; ++t) {
    const auto rho = random_density(8, rng);
    for (std::size_t k : {1u, 2u})
      EXPECT_NEAR(estimate_single_copy_witness(exact_data(rho, k), k), 0.5 - ghz_fidelity(rho), 1e-12);
  }
}

TEST(Estimator, UnbiasedPowerHasExactExpectation) {
  // average over the binomial law in closed form
  const std::uint64_t n = 12;
  for (double q : {0.1, 0.37, 0.8})
    for (std::size_t k : {1u, 2u, 3u}) {
      double mean = 0;
      for (std::uint64_t c = 0; c <= n; ++c) {
        const double w = std::exp(std::lgamma(n + 1.0) - std::lgamma(c + 1.0) - std::lgamma(n - c + 1.0)) *
                         std::pow(q, static_cast<double>(c)) * std::pow(1 - q, static_cast<double>(n - c));
        mean += w * detail::power_estimate(c, n, k, Estimator::Unbiased);
      }
      EXPECT_NEAR(mean, std::pow(q, static_cast<double>(k)), 1e-12);
    }
}

TEST(Estimator, RejectsMalformedData) {
  std::vector<ShotCounts> c(6, ShotCounts{std::vector<std::uint64_t>(8, 1), 8});
  EXPECT_THROW(estimate_witness(c, 2), std::invalid_argument);
  c.push_back(ShotCounts{std::vector<std::uint64_t>(4, 2), 8});
  EXPECT_THROW(estimate_witness(c, 2), DimensionMismatch);
}

TEST(Replicate, MeanWithinStatisticalError) {
  const auto rho = ghz_with_noise(3.0 / 7);
  const auto rep = replicate(rho, 10000, 100, 17);
  EXPECT_EQ(rep.values.size(), 100u);
  EXPECT_NEAR(rep.witness.mean, -3.0 / 98, 5 * rep.witness.std / std::sqrt(100.0));
  EXPECT_LT(rep.witness.mean, 0);
  EXPECT_NEAR(rep.single.mean, 0, 5 * rep.single.std / std::sqrt(100.0) + 1e-4);
}

TEST(Replicate, SpreadScalesAsInverseRootShots) {
  const auto rho = ghz_with_noise(3.0 / 7);
  const double a = replicate(rho, 2000, 200, 3).witness.std;
  const double b = replicate(rho, 32000, 200, 3).witness.std;
  EXPECT_NEAR(a / b, 4.0, 1.0);
}

TEST(Replicate, DeterministicAcrossWorkerCounts) {
  const auto rho = ghz_with_noise(0.5);
  ReplicateOptions one, many;
  many.workers = 4;
  const auto a = replicate(rho, 500, 20, 99, one);
  const auto b = replicate(rho, 500, 20, 99, many);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.single_values, b.single_values);
  EXPECT_THROW(replicate(rho, 10, 1, 1), std::invalid_argument);
}

TEST(Replicate, UnbiasedEstimatorRemovesFiniteShotBias) {
  const auto rho = ghz_with_noise(3.0 / 7);
  ReplicateOptions opt;
  opt.estimator = Estimator::Unbiased;
  const auto rep = replicate(rho, 200, 2000, 5, opt);
  EXPECT_NEAR(rep.witness.mean, -3.0 / 98, 5 * rep.witness.std / std::sqrt(2000.0));
}

TEST(Histogram, CountsEveryValue) {
  const auto h = histogram({1, 2, 2, 3, 3, 3, 4, 10});
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}), 8u);
  EXPECT_GT(h.width, 0);
  EXPECT_TRUE(histogram({}).counts.empty());
  EXPECT_EQ(histogram({2, 2, 2}).counts, std::vector<std::size_t>{3});
}

}  // namespace
}  // namespace gmeact
