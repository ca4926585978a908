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
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "random.hpp"
#include "states.hpp"
#include "tolerances.hpp"

namespace gmeact {

enum class IceFamily { Symmetric, Unsymmetric };

inline const char* to_string(IceFamily f) { return f == IceFamily::Symmetric ? "ice-s" : "ice-u"; }

inline IceFamily parse_ice_family(const std::string& s) {
  if (s == "ice-s" || s == "s" || s == "symmetric") return IceFamily::Symmetric;
  if (s == "ice-u" || s == "u" || s == "unsymmetric") return IceFamily::Unsymmetric;
  throw std::invalid_argument("unknown ICE family '" + s + "'");
}

inline ComplexMatrix ice_state(IceFamily f, double p) {
  return f == IceFamily::Symmetric ? ice_symmetric(p) : ice_unsymmetric(p);
}

// max over random U of ||U^{⊗n} rho U^{⊗n}† - rho||_F
inline double local_unitary_defect(const ComplexMatrix& rho, std::size_t parties, std::size_t samples, std::uint64_t seed) {
  double worst = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = make_rng(seed, s);
    const ComplexMatrix u = kron_power(haar_unitary(2, rng), parties);
    worst = std::max(worst, frobenius_norm(u * rho * adjoint(u) - rho));
  }
  return worst;
}

// P = I_4 - |00><00| on one party of a two-copy, three-party system,
// optionally rotated to (U ⊗ U) P (U ⊗ U)†.
inline ComplexMatrix ice_projection(std::size_t party, const ComplexMatrix* u = nullptr) {
  if (party > 2) throw std::out_of_range("ice_projection: party must be 0, 1 or 2");
  ComplexMatrix p = ComplexMatrix::identity(4);
  p(0, 0) = 0;
  if (u != nullptr) {
    const ComplexMatrix uu = kron(*u, *u);
    p = uu * p * adjoint(uu);
  }
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t x = 0; x < 3; ++x) out = kron(out, x == party ? p : ComplexMatrix::identity(4));
  return out;
}

// Minimal eigenvalue of the partial transpose for the cuts A|BC, B|AC, C|AB
// of a (trace-normalized) three-party operator.
inline std::array<double, 3> bipartition_min_pt(const ComplexMatrix& op, const PartyStructure& ps) {
  const double tr = trace(op).real();
  if (!(tr > tol::kZeroNorm)) throw ZeroNormalization("bipartition_min_pt: operator has vanishing trace");
  const ComplexMatrix rho = op / cplx(tr);
  std::array<double, 3> out{};
  for (std::size_t x = 0; x < 3; ++x) out[x] = min_eigenvalue(partial_transpose(rho, ps, {x}));
  return out;
}

// Full PT spectra for the three cuts, used to check invariance.
inline std::array<std::vector<double>, 3> bipartition_pt_spectra(const ComplexMatrix& op, const PartyStructure& ps) {
  const ComplexMatrix rho = op / trace(op);
  std::array<std::vector<double>, 3> out;
  for (std::size_t x = 0; x < 3; ++x) out[x] = hermitian_eig(partial_transpose(rho, ps, {x})).values;
  return out;
}

inline ComplexMatrix ice_two_copy(IceFamily f, double p) {
  const auto ps = PartyStructure::qubits(3);
  const ComplexMatrix r = ice_state(f, p);
  return party_kron(r, ps, r, ps);
}

inline ComplexMatrix ice_projected(IceFamily f, double p, std::size_t party) {
  const ComplexMatrix proj = ice_projection(party);
  return proj * ice_two_copy(f, p) * proj;
}

// Reference windows for the two-copy states from the literature on these
// families; attached to reports as annotations and never recomputed here.
struct IceReference {
  double gme_from;       // two-copy GME for p at or above this value
  double pptmix_until;   // projected state a PPT mixture up to this value
};

inline std::optional<IceReference> ice_reference(IceFamily f, std::size_t party) {
  if (f == IceFamily::Symmetric && party == 0) return IceReference{0.781, 0.800};
  if (f == IceFamily::Unsymmetric && party == 0) return IceReference{0.708, 0.738};
  if (f == IceFamily::Unsymmetric && party == 1) return IceReference{0.708, 0.721};
  return std::nullopt;
}

// Smallest p in [0, 1] at which the cut becomes NPT (min PT eigenvalue below
// the PSD tolerance), by bisection; empty when the cut stays PPT at p = 1.
// `party` selects the projected state, or the plain two-copy state if empty.
inline std::optional<double> npt_threshold(IceFamily f, std::optional<std::size_t> party, std::size_t cut,
                                           double resolution = 1e-9) {
  const auto ps = PartyStructure::qubits(3, 2);
  auto value = [&](double p) {
    const ComplexMatrix op = party ? ice_projected(f, p, *party) : ice_two_copy(f, p);
    return bipartition_min_pt(op, ps)[cut];
  };
  if (value(1.0) >= tol::kPsd) return std::nullopt;
  double lo = 0, hi = 1;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) < tol::kPsd ? hi : lo) = mid;
  }
  return hi;
}

struct IceRow {
  double p = 0;
  double invariance_defect = 0;          // single-copy U⊗U⊗U check
  std::array<double, 3> before{};        // min PT eigenvalue per cut, two copies
  std::array<double, 3> after{};         // same after the projection
};

struct IceReport {
  IceFamily family = IceFamily::Symmetric;
  std::size_t party = 0;
  std::vector<IceRow> rows;
  std::array<std::optional<double>, 3> threshold_before{};
  std::array<std::optional<double>, 3> threshold_after{};
  bool npt_monotone = true;              // once NPT on the grid, stays NPT
  std::optional<IceReference> reference;
};

struct IceOptions {
  std::size_t invariance_samples = 50;
  std::uint64_t seed = 0;
  bool thresholds = true;
};

inline IceReport ice_pipeline(IceFamily f, const std::vector<double>& grid, std::size_t party, const IceOptions& opt = {}) {
  const auto ps = PartyStructure::qubits(3, 2);
  IceReport rep;
  rep.family = f;
  rep.party = party;
  rep.reference = ice_reference(f, party);
  for (double p : grid) {
    IceRow row;
    row.p = p;
    row.invariance_defect = local_unitary_defect(ice_state(f, p), 3, opt.invariance_samples, opt.seed);
    const ComplexMatrix two = ice_two_copy(f, p);
    row.before = bipartition_min_pt(two, ps);
    const ComplexMatrix proj = ice_projection(party);
    row.after = bipartition_min_pt(proj * two * proj, ps);
    rep.rows.push_back(row);
  }
  for (std::size_t cut = 0; cut < 3; ++cut) {
    bool seen_before = false, seen_after = false;
    for (const auto& row : rep.rows) {
      const bool nb = row.before[cut] < tol::kPsd, na = row.after[cut] < tol::kPsd;
      if ((seen_before && !nb) || (seen_after && !na)) rep.npt_monotone = false;
      seen_before = seen_before || nb;
      seen_after = seen_after || na;
    }
    if (opt.thresholds) {
      rep.threshold_before[cut] = npt_threshold(f, std::nullopt, cut);
      rep.threshold_after[cut] = npt_threshold(f, party, cut);
    }
  }
  return rep;
}

}  // namespace gmeact
