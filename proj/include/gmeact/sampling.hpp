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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "criteria.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace gmeact {

// Product of single-qubit observables with spectrum {+1, -1}.
struct MeasurementSetting {
  std::vector<ComplexMatrix> observables;

  std::size_t qubits() const { return observables.size(); }

  // Throws unless every observable is a 2x2 Hermitian matrix with eigenvalues +-1.
  void validate() const {
    if (observables.empty()) throw std::invalid_argument("measurement setting without observables");
    for (const auto& o : observables) {
      if (o.rows() != 2 || o.cols() != 2) throw DimensionMismatch("measurement observables must be 2x2");
      const auto eig = hermitian_eig(o);
      if (std::abs(eig.values[0] + 1) > 1e-10 || std::abs(eig.values[1] - 1) > 1e-10) {
        throw std::invalid_argument("measurement observable must have eigenvalues -1 and +1");
      }
    }
  }
};

inline MeasurementSetting uniform_setting(const ComplexMatrix& o, std::size_t qubits) {
  return MeasurementSetting{std::vector<ComplexMatrix>(qubits, o)};
}

struct ShotCounts {
  std::vector<std::uint64_t> counts;  // indexed by outcome string, bit 1 = outcome -1
  std::uint64_t shots = 0;
};

// Born-rule distribution over outcome strings. Outcome bit 0 means +1, with
// qubit 0 the most significant bit (so Z outcomes coincide with basis labels).
inline std::vector<double> outcome_probs(const ComplexMatrix& rho, const MeasurementSetting& s) {
  s.validate();
  const std::size_t n = s.qubits(), d = std::size_t{1} << n;
  if (!rho.is_square() || rho.rows() != d) throw DimensionMismatch("outcome_probs: state does not match setting");
  ComplexMatrix basis = ComplexMatrix::identity(1);
  for (const auto& o : s.observables) {
    const auto eig = hermitian_eig(o);
    ComplexMatrix local(2, 2);  // column 0: +1 eigenvector, column 1: -1 eigenvector
    for (std::size_t r = 0; r < 2; ++r) {
      local(r, 0) = eig.vectors(r, 1);
      local(r, 1) = eig.vectors(r, 0);
    }
    basis = kron(basis, local);
  }
  const ComplexMatrix rot = adjoint(basis) * rho * basis;
  std::vector<double> p(d);
  double total = 0;
  for (std::size_t x = 0; x < d; ++x) {
    p[x] = std::max(0.0, rot(x, x).real());
    total += p[x];
  }
  for (auto& v : p) v /= total;
  return p;
}

// Multinomial sample through a chain of binomials.
inline ShotCounts sample_counts(const std::vector<double>& probs, std::uint64_t shots, Rng& rng) {
  ShotCounts out;
  out.counts.assign(probs.size(), 0);
  out.shots = shots;
  double remaining_mass = 1.0;
  std::uint64_t remaining = shots;
  for (std::size_t i = 0; i < probs.size() && remaining > 0; ++i) {
    if (probs[i] < 0) throw std::invalid_argument("sample_counts: negative probability");
    if (i + 1 == probs.size() || remaining_mass <= 0) {
      out.counts[i] = remaining;
      remaining = 0;
      break;
    }
    const double q = std::clamp(probs[i] / remaining_mass, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> bin(remaining, q);
    out.counts[i] = bin(rng);
    remaining -= out.counts[i];
    remaining_mass -= probs[i];
  }
  return out;
}

inline ShotCounts sample_counts(const std::vector<double>& probs, std::uint64_t shots, std::uint64_t seed) {
  Rng rng(seed);
  return sample_counts(probs, shots, rng);
}

// Z^{⊗N}, then M_l^{⊗N} for l = 1..N k.
inline std::vector<MeasurementSetting> witness_settings(std::size_t k, std::size_t parties = 3) {
  std::vector<MeasurementSetting> out;
  out.push_back(uniform_setting(detail::pauli('Z'), parties));
  const std::size_t n = parties * k;
  for (std::size_t l = 1; l <= n; ++l) out.push_back(uniform_setting(m_l_observable(l, n), parties));
  return out;
}

enum class Estimator { PlugIn, Unbiased };

namespace detail {

// Estimate of q^k from c successes in n trials: plug-in (c/n)^k or the
// falling-factorial ratio, which is unbiased.
inline double power_estimate(std::uint64_t c, std::uint64_t n, std::size_t k, Estimator e) {
  if (n == 0) throw std::invalid_argument("estimator needs at least one shot");
  if (e == Estimator::PlugIn || k == 1) return std::pow(static_cast<double>(c) / static_cast<double>(n), static_cast<int>(k));
  if (n < k) throw std::invalid_argument("unbiased estimator needs at least k shots");
  double v = 1;
  for (std::size_t j = 0; j < k; ++j) v *= static_cast<double>(c - std::min<std::uint64_t>(c, j)) / static_cast<double>(n - j);
  return c < k ? 0.0 : v;
}

// Mean of the +-1 parity of an outcome string, raised to the k-th power.
inline double parity_power(const ShotCounts& s, std::size_t k, Estimator e) {
  std::uint64_t plus = 0;
  for (std::size_t x = 0; x < s.counts.size(); ++x)
    if (std::popcount(x) % 2 == 0) plus += s.counts[x];
  if (e == Estimator::PlugIn) {
    const double m = (2.0 * static_cast<double>(plus) - static_cast<double>(s.shots)) / static_cast<double>(s.shots);
    return std::pow(m, static_cast<int>(k));
  }
  // E^k = sum_j C(k, j) 2^j q^j (-1)^{k-j}
  double acc = 0, binom = 1;
  for (std::size_t j = 0; j <= k; ++j) {
    if (j > 0) binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
    const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
    acc += binom * std::pow(2.0, static_cast<double>(j)) * sign * power_estimate(plus, s.shots, j, e);
  }
  return acc;
}

inline void check_counts(const std::vector<ShotCounts>& counts, std::size_t k, std::size_t parties) {
  if (counts.size() != 1 + parties * k) throw std::invalid_argument("estimate_witness: missing measurement setting");
  for (const auto& c : counts)
    if (c.counts.size() != (std::size_t{1} << parties)) throw DimensionMismatch("estimate_witness: outcome count");
}

}  // namespace detail

// Two-copy (k-copy) witness from the 1 + N k settings of witness_settings.
inline double estimate_witness(const std::vector<ShotCounts>& counts, std::size_t k, std::size_t parties = 3,
                               Estimator e = Estimator::PlugIn) {
  detail::check_counts(counts, k, parties);
  const std::size_t d = std::size_t{1} << parties, n = parties * k;
  double diag = 0;
  for (std::size_t x = 1; x + 1 < d; ++x) diag += detail::power_estimate(counts[0].counts[x], counts[0].shots, k, e);
  double coh = 0;
  for (std::size_t l = 1; l <= n; ++l) coh += (l % 2 == 0 ? 1.0 : -1.0) * detail::parity_power(counts[l], k, e);
  return 0.5 * diag - coh / (2.0 * static_cast<double>(n));
}

// Single-copy fidelity witness 1/2 - F from the same data: populations of
// 0...0 and 1...1 from the Z setting, and the settings l = k, 2k, ..., N k,
// whose angles are those of the N-term decomposition of |0..0><1..1| + h.c.
inline double estimate_single_copy_witness(const std::vector<ShotCounts>& counts, std::size_t k, std::size_t parties = 3) {
  detail::check_counts(counts, k, parties);
  const std::size_t d = std::size_t{1} << parties;
  const double shots = static_cast<double>(counts[0].shots);
  const double pop = (static_cast<double>(counts[0].counts[0]) + static_cast<double>(counts[0].counts[d - 1])) / shots;
  double coh = 0;
  for (std::size_t j = 1; j <= parties; ++j)
    coh += (j % 2 == 0 ? 1.0 : -1.0) * detail::parity_power(counts[j * k], 1, Estimator::PlugIn);
  const double fidelity = 0.5 * pop + 0.5 * coh / static_cast<double>(parties);
  return 0.5 - fidelity;
}

struct ReplicationStats {
  double mean = 0;
  double std = 0;  // sample standard deviation
};

inline ReplicationStats summarize(const std::vector<double>& v) {
  ReplicationStats s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

struct ReplicationReport {
  std::size_t replications = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::size_t copies = 2;
  std::vector<double> values;         // k-copy witness per replication
  std::vector<double> single_values;  // single-copy fidelity witness per replication
  ReplicationStats witness;
  ReplicationStats single;
};

struct ReplicateOptions {
  std::size_t copies = 2;
  std::size_t parties = 3;
  Estimator estimator = Estimator::PlugIn;
  std::size_t workers = 1;
};

// Simulated experiments: each replication measures every setting `shots`
// times with its own seed stream derived from (seed, replication index).
inline ReplicationReport replicate(const ComplexMatrix& rho, std::uint64_t shots, std::size_t reps, std::uint64_t seed,
                                   const ReplicateOptions& opt = {}) {
  if (reps < 2) throw std::invalid_argument("replicate: need at least two replications");
  const auto settings = witness_settings(opt.copies, opt.parties);
  std::vector<std::vector<double>> probs;
  for (const auto& s : settings) probs.push_back(outcome_probs(rho, s));
  auto one = [&](std::size_t r) {
    Rng rng = make_rng(seed, r);
    std::vector<ShotCounts> counts;
    for (const auto& p : probs) counts.push_back(sample_counts(p, shots, rng));
    return std::pair<double, double>(estimate_witness(counts, opt.copies, opt.parties, opt.estimator),
                                     estimate_single_copy_witness(counts, opt.copies, opt.parties));
  };
  const auto results = parallel_map(reps, one, opt.workers);
  ReplicationReport rep;
  rep.replications = reps;
  rep.shots = shots;
  rep.seed = seed;
  rep.copies = opt.copies;
  for (const auto& [w, s] : results) {
    rep.values.push_back(w);
    rep.single_values.push_back(s);
  }
  rep.witness = summarize(rep.values);
  rep.single = summarize(rep.single_values);
  return rep;
}

struct Histogram {
  double low = 0;
  double width = 0;
  std::vector<std::size_t> counts;
};

// Freedman-Diaconis bin width.
inline Histogram histogram(std::vector<double> v) {
  Histogram h;
  if (v.empty()) return h;
  std::sort(v.begin(), v.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double f = pos - static_cast<double>(i);
    return i + 1 < v.size() ? v[i] * (1 - f) + v[i + 1] * f : v[i];
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  const double range = v.back() - v.front();
  h.low = v.front();
  h.width = 2 * iqr / std::cbrt(static_cast<double>(v.size()));
  if (!(h.width > 0)) h.width = range > 0 ? range : 1.0;
  const auto bins = static_cast<std::size_t>(std::floor(range / h.width)) + 1;
  h.counts.assign(bins, 0);
  for (double x : v) h.counts[std::min(bins - 1, static_cast<std::size_t>((x - h.low) / h.width))]++;
  return h;
}

}  // namespace gmeact
