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
using testing::max_abs_diff;

ComplexVector ket(std::initializer_list<std::pair<std::size_t, double>> entries) {
  ComplexVector v(8);
  for (auto [i, a] : entries) v[i] = a;
  return v;
}

TEST(Chi, PureGhzCorner) {
  EXPECT_LT(max_abs_diff(make_chi({1, 0, 0, 0}), projector(ghz_basis_state(1, GhzSign::Plus))), 1e-15);
}

TEST(Chi, FiveFourThreeZeroSpectrum) {
  const auto rho = make_chi({5, 4, 3, 0});
  EXPECT_NEAR(trace(rho).real(), 1, 1e-15);
  auto spec = eigen_spectrum(rho);
  std::sort(spec.begin(), spec.end(), std::greater<>());
  const double want[8] = {5, 4, 3, 0, 0, 0, 0, 0};
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(spec[i], want[i] / 12, 1e-14);
  const auto c = ghz_weights(rho);
  EXPECT_NEAR(c.plus(1), 5.0 / 12, 1e-15);
  EXPECT_NEAR(c.plus(2), 4.0 / 12, 1e-15);
  EXPECT_NEAR(c.plus(3), 3.0 / 12, 1e-15);
  for (int m = 1; m <= 4; ++m) EXPECT_NEAR(c.minus(m), 0, 1e-15);
}

// Antidiagonal equals diagonal, so all weight sits on the four GHZ+ states.
TEST(Chi, AllEqualIsUniformOverPlusStates) {
  const auto c = ghz_weights(make_chi({1, 1, 1, 1}));
  for (int m = 1; m <= 4; ++m) {
    EXPECT_NEAR(c.plus(m), 0.25, 1e-15);
    EXPECT_NEAR(c.minus(m), 0, 1e-15);
  }
  EXPECT_GT(max_abs_diff(make_chi({1, 1, 1, 1}), ComplexMatrix::identity(8) / cplx(8)), 0.1);
}

TEST(Chi, RejectsBadParameters) {
  EXPECT_THROW(make_chi({0, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(make_chi({1, 2, 0, 0}), std::invalid_argument);
  EXPECT_THROW(make_chi({1, -0.1, -0.2, -0.3}), std::invalid_argument);
}

TEST(ClassifyChi, Examples) {
  EXPECT_EQ(classify_chi({5, 4, 3, 0}), SeparabilityClass::Biseparable);
  EXPECT_EQ(classify_chi({1, 1, 0, 0}), SeparabilityClass::PartitionSeparable);
  EXPECT_EQ(classify_chi({1, 0, 0, 0}), SeparabilityClass::GME);
}

TEST(ClassifyChi, GmeExactlyWhenFidelityAboveHalf) {
  const double grid[] = {0, 0.1, 0.25, 1.0 / 3, 0.5, 0.7, 1};
  for (double a : grid)
    for (double b : grid)
      for (double c : grid) {
        if (b > a || c > b) continue;
        const std::array<double, 4> l = {1, a, b, c};
        const bool gme = classify_chi(l) == SeparabilityClass::GME;
        EXPECT_EQ(gme, ghz_fidelity(make_chi(l)) > 0.5 + 1e-12) << a << ' ' << b << ' ' << c;
      }
}

TEST(GhzBasis, Examples) {
  const double s = 1 / std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(ghz_basis_state(1, GhzSign::Plus), ket({{0, s}, {7, s}})), 1e-15);
  EXPECT_LT(max_abs_diff(ghz_basis_state(4, GhzSign::Minus), ket({{4, s}, {3, -s}})), 1e-15);
}

TEST(GhzBasis, Orthonormal) {
  const auto u = ghz_basis_matrix();
  EXPECT_LT(max_abs_diff(adjoint(u) * u, ComplexMatrix::identity(8)), 1e-15);
}

TEST(GhzTwirl, FixesGhzDiagonalStates) {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    GhzDiagCoeffs c;
    double s = 0;
    for (auto& w : c.weights) s += (w = std::uniform_real_distribution<>(0, 1)(rng));
    for (auto& w : c.weights) w /= s;
    const auto back = ghz_twirl(ghz_diagonal_matrix(c));
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(back[i], c[i], 1e-14);
  }
}

TEST(GhzTwirl, MaximallyMixed) {
  const auto c = ghz_twirl(ComplexMatrix::identity(8) / cplx(8));
  for (double w : c.weights) EXPECT_NEAR(w, 1.0 / 8, 1e-15);
}

TEST(GhzTwirl, RandomStateGivesInnerProductsAndIsIdempotent) {
  Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    const auto rho = random_density(8, rng);
    const auto c = ghz_twirl(rho);
    for (int m = 1; m <= 4; ++m)
      for (auto sg : {GhzSign::Plus, GhzSign::Minus}) {
        const auto v = ghz_basis_state(m, sg);
        EXPECT_NEAR(c[ghz_index(m, sg)], expectation(rho, v).real(), 1e-13);
      }
    EXPECT_NEAR(c.sum(), 1, 1e-13);
    const auto again = ghz_twirl(ghz_diagonal_matrix(c));
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(again[i], c[i], 1e-13);
  }
}

TEST(WhiteNoise, Endpoints) {
  Rng rng(23);
  const auto rho = random_density(8, rng);
  EXPECT_LT(max_abs_diff(mix_white_noise(rho, 1), rho), 1e-15);
  EXPECT_LT(max_abs_diff(mix_white_noise(rho, 0), ComplexMatrix::identity(8) / cplx(8)), 1e-15);
}

TEST(WhiteNoise, ThreeSeventhsSitsOnTheFidelityBoundary) {
  const auto rho = ghz_with_noise(3.0 / 7);
  EXPECT_NEAR(ghz_fidelity(rho), 0.5, 1e-15);
  const auto x = XState::from_weights(ghz_weights(rho));
  EXPECT_FALSE(x_state_is_gme(x.lambda, x.mu));
  const auto y = XState::from_weights(ghz_weights(ghz_with_noise(3.0 / 7 + 1e-6)));
  EXPECT_TRUE(x_state_is_gme(y.lambda, y.mu));
}

TEST(GhzSymmetric, Coordinates) {
  const auto g = ghz_symmetric_coords(projector(ghz_basis_state(1, GhzSign::Plus)));
  EXPECT_NEAR(g.x, 0.5, 1e-15);
  EXPECT_NEAR(g.y, std::sqrt(3.0) / 4, 1e-15);
  const auto mixed = ghz_symmetric_coords(ComplexMatrix::identity(8) / cplx(8));
  EXPECT_NEAR(mixed.x, 0, 1e-15);
  EXPECT_NEAR(mixed.y, 0, 1e-15);
  const auto sym = ghz_symmetric_coords(rho_sym());
  EXPECT_NEAR(sym.x, 0, 1e-15);
  EXPECT_NEAR(sym.y, -1 / (4 * std::sqrt(3.0)), 1e-15);
}

TEST(GhzSymmetric, WeightsRoundTrip) {
  for (const auto& rho : {rho_act(), rho_sym(), ghz_with_noise(0.3)}) {
    const auto c = ghz_symmetric_weights(ghz_symmetric_coords(rho));
    const auto d = ghz_twirl(rho);
    EXPECT_NEAR(c[0], d[0], 1e-14);
    EXPECT_NEAR(c[1], d[1], 1e-14);
  }
}

TEST(Families, WernerAtZeroIsMaximallyMixed) {
  EXPECT_LT(max_abs_diff(werner(0), ComplexMatrix::identity(4) / cplx(4)), 1e-15);
}

TEST(Families, UnsymmetricMarginalOnAB) {
  for (double p : {0.0, 0.3, 0.72, 1.0}) {
    const auto rho = ice_unsymmetric(p);
    EXPECT_NEAR(trace(rho).real(), 1, 1e-14);
    const auto ab = partial_trace(rho, PartyStructure::qubits(3), {2});
    EXPECT_LT(max_abs_diff(ab, werner(p / 2)), 1e-14);
  }
}

TEST(Families, Rho1Eigenvalues) {
  const double pp = 0.3, pm = 0.1;
  auto spec = eigen_spectrum(ghz_diagonal_matrix(rho1_weights(pp, pm)));
  std::sort(spec.begin(), spec.end(), std::greater<>());
  const double bg = (1 - pp - pm) / 8;
  EXPECT_NEAR(spec[0], pp + bg, 1e-14);
  EXPECT_NEAR(spec[1], pm + bg, 1e-14);
  for (int i = 2; i < 8; ++i) EXPECT_NEAR(spec[i], bg, 1e-14);
}

TEST(Families, EveryConstructorIsAState) {
  const std::vector<std::string> specs = {"chi:5,4,3,0", "chi:1,0.65,0.65,0", "rho-sym",   "rho-act",  "werner:0.7",
                                          "ice-s:0.8",   "ice-u:0.72",        "rho1:0.3,0.1", "rho2:0.4,0.2", "ghz-noise:0.5"};
  for (const auto& s : specs) {
    const auto st = parse_state_spec(s);
    EXPECT_NEAR(trace(st.rho).real(), 1, 1e-13) << s;
    EXPECT_LT(hermiticity_defect(st.rho), tol::kHermiticity) << s;
    EXPECT_GE(eigen_min_eig(st.rho), tol::kPsd) << s;
    EXPECT_EQ(st.rho.rows(), st.parties.total()) << s;
  }
  EXPECT_THROW(parse_state_spec("chi:1,2"), std::invalid_argument);
  EXPECT_THROW(parse_state_spec("nope"), std::invalid_argument);
  EXPECT_THROW(parse_state_spec("werner:x"), std::invalid_argument);
}

TEST(Families, IceStatesAreLocalUnitaryInvariant) {
  Rng rng(24);
  for (const auto& rho : {ice_symmetric(0.8), ice_unsymmetric(0.72)}) {
    for (int t = 0; t < 50; ++t) {
      const auto u = haar_unitary(2, rng);
      const auto uuu = kron(kron(u, u), u);
      EXPECT_LT(frobenius_norm(uuu * rho * adjoint(uuu) - rho), 1e-10);
    }
  }
}

TEST(XState, WeightsRoundTrip) {
  const XState x{{0.2, 0.1, 0.1, 0.1}, {0.15, -0.05, 0.0, 0.1}};
  const auto back = XState::from_weights(x.to_weights());
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(back.lambda[i], x.lambda[i], 1e-15);
    EXPECT_NEAR(back.mu[i], x.mu[i], 1e-15);
  }
  const auto w = ghz_weights(make_x_state(x));
  EXPECT_NEAR(w.plus(1), 0.35 / 1.0, 1e-14);
}

}  // namespace
}  // namespace gmeact
