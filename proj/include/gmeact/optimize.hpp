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

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "maps.hpp"
#include "ppt.hpp"
#include "seesaw.hpp"
#include "states.hpp"
#include "tolerances.hpp"

namespace gmeact {

inline ComplexMatrix two_copies(const ComplexMatrix& rho) {
  const auto ps = PartyStructure::qubits(3);
  return party_kron(rho, ps, rho, ps);
}

// Seesaw operator for two copies of rho and a single-copy witness.
inline ComplexMatrix two_copy_search_operator(const ComplexMatrix& rho, const ComplexMatrix& w) {
  return witness_search_operator(two_copies(rho), PartyStructure::qubits(3, 2), w);
}

inline PartyStructure two_copy_search_structure() { return PartyStructure({8, 8, 8}); }

// ---------------------------------------------------------------------------
// Fidelity reachable by local projections of two copies.

struct FidelityBoundOptions {
  SeesawOptions seesaw;
  std::size_t steps = 20;
};

struct FidelityBound {
  double value = 0;                        // best GHZ fidelity actually reached
  double kappa = 0;                        // largest kappa with a negative seesaw value
  std::optional<ProjectionSet> projections;
};

// Bisection over kappa in [1/2, 1]: a negative value of Tr[F rho2 F† W_kappa]
// with W_kappa = kappa I - |GHZ+><GHZ+| shows that the projected state has
// fidelity above kappa. Every step reuses the seed sequence and also starts
// from the best vectors so far.
inline FidelityBound fidelity_bound(const ComplexMatrix& rho2, const FidelityBoundOptions& opt = {}) {
  const auto ps2 = PartyStructure::qubits(3, 2);
  const auto ps = two_copy_search_structure();
  FidelityBound out;
  std::vector<ComplexVector> best_vectors;
  auto attempt = [&](double kappa) {
    SeesawOptions so = opt.seesaw;
    if (!best_vectors.empty()) so.warm_starts.insert(so.warm_starts.begin(), best_vectors);
    const auto res = seesaw(witness_search_operator(rho2, ps2, ghz_fidelity_witness(kappa)), ps, so);
    if (!(res.value < 0)) return false;
    const auto proj = res.projections();
    double f = 0;
    try {
      f = ghz_fidelity_after(rho2, proj);
    } catch (const ZeroNormalization&) {
      return false;
    }
    if (f <= kappa) return false;
    if (f > out.value) {
      out.value = f;
      out.projections = proj;
      best_vectors = res.vectors;
    }
    out.kappa = std::max(out.kappa, kappa);
    return true;
  };
  if (!attempt(0.5)) return {};
  double lo = std::max(0.5, out.value), hi = 1.0;
  for (std::size_t s = 0; s < opt.steps && lo < hi; ++s) {
    const double mid = 0.5 * (lo + hi);
    if (attempt(mid)) {
      lo = std::max(mid, out.value);
    } else {
      hi = mid;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification of noisy chi states.

enum class ClassificationLabel {
  PartitionSeparable,
  NotDetectedGME,
  HadamardDetected,
  ProjectionFound,
  NoProjectionExists,
  Undecided,
};

inline const char* to_string(ClassificationLabel l) {
  switch (l) {
    case ClassificationLabel::PartitionSeparable: return "PartitionSeparable";
    case ClassificationLabel::NotDetectedGME: return "NotDetectedGME";
    case ClassificationLabel::HadamardDetected: return "HadamardDetected";
    case ClassificationLabel::ProjectionFound: return "ProjectionFound";
    case ClassificationLabel::NoProjectionExists: return "NoProjectionExists";
    case ClassificationLabel::Undecided: return "Undecided";
  }
  return "?";
}

inline std::optional<ClassificationLabel> parse_label(const std::string& s) {
  for (auto l : {ClassificationLabel::PartitionSeparable, ClassificationLabel::NotDetectedGME,
                 ClassificationLabel::HadamardDetected, ClassificationLabel::ProjectionFound,
                 ClassificationLabel::NoProjectionExists, ClassificationLabel::Undecided}) {
    if (s == to_string(l)) return l;
  }
  return std::nullopt;
}

namespace stage {
inline constexpr unsigned kPartition = 1u << 0;
inline constexpr unsigned kPptMix = 1u << 1;
inline constexpr unsigned kHadamard = 1u << 2;
inline constexpr unsigned kSeesaw = 1u << 3;
inline constexpr unsigned kRelax = 1u << 4;
inline constexpr unsigned kAll = kPartition | kPptMix | kHadamard | kSeesaw | kRelax;
}  // namespace stage

// "partition,pptmix,hadamard,seesaw,relax" or "all"
inline unsigned parse_stages(const std::string& spec) {
  if (spec.empty() || spec == "all") return stage::kAll;
  unsigned mask = 0;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t end = std::min(spec.find(',', pos), spec.size());
    const std::string name = spec.substr(pos, end - pos);
    if (name == "partition") mask |= stage::kPartition;
    else if (name == "pptmix") mask |= stage::kPptMix;
    else if (name == "hadamard") mask |= stage::kHadamard;
    else if (name == "seesaw") mask |= stage::kSeesaw;
    else if (name == "relax") mask |= stage::kRelax;
    else throw std::invalid_argument("unknown pipeline stage '" + name + "'");
    pos = end + 1;
  }
  return mask;
}

struct ClassifyOptions {
  unsigned stages = stage::kAll;
  SeesawOptions seesaw;
  LpOptions lp;
};

struct PointResult {
  ClassificationLabel label = ClassificationLabel::Undecided;
  double t = std::numeric_limits<double>::quiet_NaN();
  double p_wnr = std::numeric_limits<double>::quiet_NaN();
  double seesaw_value = std::numeric_limits<double>::quiet_NaN();
  double relax_value = std::numeric_limits<double>::quiet_NaN();
  std::optional<PptMixResult> pptmix;
  std::optional<SeesawResult> seesaw;
  std::optional<PptRelaxResult> relax;
};

// p chi + (1 - p) I/8
inline ComplexMatrix noisy_chi(const std::array<double, 4>& lambda, double p) {
  return mix_white_noise(make_chi(lambda), p);
}

inline bool chi_partition_separable(const std::array<double, 4>& lambda) {
  const double s = std::max(lambda[0], 1e-300);
  return std::abs(lambda[0] - lambda[1]) <= 1e-12 * s && std::abs(lambda[2] - lambda[3]) <= 1e-12 * s;
}

// Stages run in the fixed order partition -> pptmix -> hadamard -> seesaw ->
// relax, and the first conclusive one sets the label.
inline PointResult classify_point(const std::array<double, 4>& lambda, double p, const ClassifyOptions& opt = {}) {
  require_chi_params(lambda);
  PointResult out;
  if ((opt.stages & stage::kPartition) && chi_partition_separable(lambda)) {
    out.label = ClassificationLabel::PartitionSeparable;
    return out;
  }
  const ComplexMatrix rho = noisy_chi(lambda, p);
  const GhzDiagCoeffs weights = ghz_weights(rho);
  if (opt.stages & stage::kPptMix) {
    const auto r = product_coefficients({as_vector(weights), as_vector(weights)});
    auto res = pptmix_lp(r, ghz_copy_maps(2), opt.lp);
    out.t = res.t;
    if (res.t < -tol::kLpOptimality) out.p_wnr = white_noise_robustness(res.t, 64);
    const bool detected = res.t < -tol::kLpOptimality;
    out.pptmix = std::move(res);
    if (!detected) {
      out.label = ClassificationLabel::NotDetectedGME;
      return out;
    }
  }
  if ((opt.stages & stage::kHadamard) && hadamard_2copy_criterion(XState::from_weights(weights))) {
    out.label = ClassificationLabel::HadamardDetected;
    return out;
  }
  const ComplexMatrix w = ghz_fidelity_witness();
  if (opt.stages & stage::kSeesaw) {
    auto res = seesaw(two_copy_search_operator(rho, w), two_copy_search_structure(), opt.seesaw);
    out.seesaw_value = res.value;
    const bool found = res.value < -tol::kDetection;
    out.seesaw = std::move(res);
    if (found) {
      out.label = ClassificationLabel::ProjectionFound;
      return out;
    }
  }
  if (opt.stages & stage::kRelax) {
    auto res = ppt_relax_lp(weights, ghz_weights(w), opt.lp);
    out.relax_value = res.value;
    const bool excluded = res.value >= -tol::kLpOptimality;
    out.relax = std::move(res);
    if (excluded) {
      out.label = ClassificationLabel::NoProjectionExists;
      return out;
    }
  }
  out.label = ClassificationLabel::Undecided;
  return out;
}

// Seesaw along increasing noise, each point warm-started from the last point
// where a negative value was found. Near the detection threshold the
// negative region is tiny and random starts alone tend to land on the flat
// C = 0 solutions; following a branch from the noiseless end avoids that.
inline std::vector<SeesawResult> seesaw_noise_path(const std::array<double, 4>& lambda, const std::vector<double>& ps,
                                                   const SeesawOptions& first, const SeesawOptions& follow) {
  std::vector<SeesawResult> out;
  std::vector<ComplexVector> branch;
  const ComplexMatrix w = ghz_fidelity_witness();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    SeesawOptions so = branch.empty() ? first : follow;
    if (!branch.empty()) so.warm_starts.insert(so.warm_starts.begin(), branch);
    auto res = seesaw(two_copy_search_operator(noisy_chi(lambda, ps[i]), w), two_copy_search_structure(), so);
    if (res.value < -tol::kDetection) branch = res.vectors;
    out.push_back(std::move(res));
  }
  return out;
}

// Biseparable chi(1, x, y, z) with 1 >= x >= y >= z >= 0, x + y + z >= 1 on a
// grid of the given step, ordered lexicographically in (x, y, z).
inline std::vector<std::array<double, 4>> chi_grid(double step) {
  if (!(step > 0) || step > 1) throw std::invalid_argument("chi_grid: step must lie in (0, 1]");
  const long n = std::lround(1.0 / step);
  if (std::abs(static_cast<double>(n) * step - 1) > 1e-9) throw std::invalid_argument("chi_grid: 1/step must be an integer");
  std::vector<std::array<double, 4>> out;
  for (long a = 0; a <= n; ++a)
    for (long b = 0; b <= a; ++b)
      for (long c = 0; c <= b; ++c)
        if (a + b + c >= n) {
          const double d = static_cast<double>(n);
          out.push_back({1.0, static_cast<double>(a) / d, static_cast<double>(b) / d, static_cast<double>(c) / d});
        }
  return out;
}

}  // namespace gmeact
