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
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "states.hpp"
#include "tolerances.hpp"

namespace gmeact {

// ---------------------------------------------------------------------------
// Two-copy Hadamard criterion. The Schur square of an X-state is again an
// X-state with entries lambda_i^2, mu_i^2, so rho^{⊗2} is certified GME when
// some |mu_i|^2 exceeds the sum of the other lambda_j^2. For descending
// lambda this reduces to |mu_1|^2 > lambda_2^2 + lambda_3^2 + lambda_4^2.
template <typename T>
bool hadamard_2copy_criterion(const std::array<T, 4>& lambda, const std::array<T, 4>& mu) {
  for (std::size_t i = 0; i < 4; ++i) {
    T rest{};
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) rest += lambda[j] * lambda[j];
    if (mu[i] * mu[i] > rest) return true;
  }
  return false;
}

// Floating-point variant with a relative margin so that exact boundary cases
// (e.g. 25 = 16 + 9) are not decided by rounding.
inline bool hadamard_2copy_criterion(const XState& x, double margin = tol::kDetection) {
  const double scale = x.lambda[0] * x.lambda[0];
  for (std::size_t i = 0; i < 4; ++i) {
    double rest = 0;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) rest += x.lambda[j] * x.lambda[j];
    if (x.mu[i] * x.mu[i] > rest + margin * scale) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Projected two-copy fidelity of chi(1, mu, eps, delta) under the
// distillation-type filters; the state is two-copy GME when it exceeds 1/2.
inline double distillation_ratio(double mu, double eps, double delta) {
  if (!(mu <= 1 && mu >= eps && eps >= delta && delta >= 0)) {
    throw std::invalid_argument("distillation criterion needs 1 >= mu >= eps >= delta >= 0");
  }
  if (eps + delta <= 0) throw ZeroNormalization("distillation criterion: eps = delta = 0");
  return eps * (1 + mu) / ((eps + delta) * (1 + mu + eps + delta));
}

inline bool distillation_criterion(double mu, double eps, double delta) {
  return distillation_ratio(mu, eps, delta) > 0.5 * (1 + tol::kDetection);
}

// ---------------------------------------------------------------------------
// GHH permutation criterion.

struct GhhValue {
  double lhs = 0;
  double rhs = 0;
  bool violated() const { return lhs > rhs * (1 + tol::kDetection) + 1e-15; }
};

namespace detail {

// Partitions of {0..n-1} into exactly m non-empty blocks, each block as a bit mask.
inline std::vector<std::vector<unsigned>> set_partitions(std::size_t n, std::size_t m) {
  std::vector<std::vector<unsigned>> out;
  std::vector<std::size_t> label(n, 0);
  // restricted growth strings
  auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      if (used != m) return;
      std::vector<unsigned> blocks(m, 0);
      for (std::size_t j = 0; j < n; ++j) blocks[label[j]] |= 1u << j;
      out.push_back(blocks);
      return;
    }
    for (std::size_t b = 0; b <= used && b < m; ++b) {
      label[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  if (n > 0 && m > 0 && m <= n) rec(rec, 0, 0);
  return out;
}

// Throws unless v is a product over the given subsystems (all marginals pure).
inline void require_product(std::span<const cplx> v, const std::vector<std::size_t>& dims) {
  const std::size_t total = v.size();
  std::size_t inner = total;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    const std::size_t d = dims[s];
    inner /= d;
    const std::size_t outer = total / (inner * d);
    ComplexMatrix red(d, d);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          cplx acc = 0;
          for (std::size_t r = 0; r < inner; ++r) acc += v[(o * d + i) * inner + r] * std::conj(v[(o * d + j) * inner + r]);
          red(i, j) += acc;
        }
    const double tr = trace(red).real();
    const double purity = trace(red * red).real();
    if (tr <= 0 || std::abs(purity - tr * tr) > 1e-9 * tr * tr) {
      throw std::invalid_argument("GHH: Phi is not a fully separable product vector");
    }
  }
}

// <psi| rho ⊗ rho |phi> with both vectors in copy-major order.
inline cplx two_copy_element(const ComplexMatrix& rho, std::span<const cplx> psi, std::span<const cplx> phi) {
  const std::size_t d = rho.rows();
  ComplexMatrix f(d, d);
  for (std::size_t i = 0; i < d * d; ++i) f.data()[i] = phi[i];
  const ComplexMatrix g = rho * f * transpose(rho);
  cplx s = 0;
  for (std::size_t i = 0; i < d * d; ++i) s += std::conj(psi[i]) * g.data()[i];
  return s;
}

// Permutation swapping the two copies of the parties in `mask`.
inline std::vector<std::size_t> copy_swap(std::size_t parties, unsigned mask) {
  std::vector<std::size_t> perm(2 * parties);
  for (std::size_t j = 0; j < parties; ++j) {
    const bool swap = (mask >> j) & 1u;
    perm[j] = swap ? parties + j : j;
    perm[parties + j] = swap ? j : parties + j;
  }
  return perm;
}

struct GhhTerms {
  double lhs_sq = 0;                  // <Phi| rho⊗rho P_tot |Phi>
  std::vector<double> block_values;   // <P_S Phi| rho⊗rho |P_S Phi>, indexed by mask
};

inline GhhTerms ghh_terms(const ComplexMatrix& rho, const PartyStructure& ps, std::span<const cplx> phi) {
  const std::size_t d = ps.total(), n = ps.count();
  if (!rho.is_square() || rho.rows() != d) throw DimensionMismatch("GHH: state does not match parties");
  if (phi.size() != d * d) throw DimensionMismatch("GHH: Phi must live on two copies");
  std::vector<std::size_t> dims2(ps.dims());
  dims2.insert(dims2.end(), ps.dims().begin(), ps.dims().end());
  require_product(phi, dims2);
  GhhTerms t;
  const unsigned all = (1u << n) - 1;
  const auto swapped_all = permute_subsystems(phi, dims2, copy_swap(n, all));
  t.lhs_sq = two_copy_element(rho, phi, swapped_all).real();
  t.block_values.assign(std::size_t{1} << n, 0.0);
  for (unsigned mask = 1; mask < all; ++mask) {
    const auto ps_phi = permute_subsystems(phi, dims2, copy_swap(n, mask));
    t.block_values[mask] = std::max(0.0, two_copy_element(rho, ps_phi, ps_phi).real());
  }
  return t;
}

}  // namespace detail

// Both sides of the GHH inequality for m-separable states; Phi is a product
// vector on two copies of the N parties (copy-major), each party of the
// dimensions in ps. A violation with m = 2 witnesses GME.
inline GhhValue ghh_single(const ComplexMatrix& rho, const PartyStructure& ps, std::span<const cplx> phi,
                           std::size_t m = 2) {
  const std::size_t n = ps.count();
  if (n > 4) throw std::invalid_argument("GHH: at most four parties supported densely");
  if (m < 2 || m > n) throw std::invalid_argument("GHH: m must lie in [2, N]");
  const auto t = detail::ghh_terms(rho, ps, phi);
  GhhValue v;
  v.lhs = std::sqrt(std::max(0.0, t.lhs_sq));
  for (const auto& blocks : detail::set_partitions(n, m)) {
    double prod = 1;
    for (unsigned b : blocks) prod *= t.block_values[b];
    v.rhs += std::pow(prod, 1.0 / (2.0 * static_cast<double>(m)));
  }
  return v;
}

// k-copy GHH criterion for rho^{⊗k}, Phi = Phi_1 ⊗ ... ⊗ Phi_k, evaluated as
// products of single-copy scalars.
inline GhhValue ghh_kcopy(const ComplexMatrix& rho, const PartyStructure& ps, const std::vector<ComplexVector>& phis) {
  if (phis.empty()) throw std::invalid_argument("GHH: need at least one Phi_n");
  const std::size_t n = ps.count();
  std::vector<detail::GhhTerms> terms;
  for (const auto& phi : phis) terms.push_back(detail::ghh_terms(rho, ps, phi));
  GhhValue v;
  v.lhs = 1;
  for (const auto& t : terms) v.lhs *= std::sqrt(std::max(0.0, t.lhs_sq));
  for (const auto& blocks : detail::set_partitions(n, 2)) {
    double prod = 1;
    for (unsigned b : blocks)
      for (const auto& t : terms) prod *= t.block_values[b];
    v.rhs += std::pow(prod, 0.25);
  }
  return v;
}

// The product vectors |Psi_m> = |b_m, complement(b_m)> on two copies of
// three qubits, b_m in {000, 001, 010, 100}.
inline ComplexVector ghh_ghz_vector(int m) {
  if (m < 1 || m > 4) throw std::out_of_range("GHH vector index must lie in 1..4");
  const std::size_t b = kGhzLowWord[m - 1];
  return basis_vector(64, (b << 3) | (7 - b));
}

struct GhhGhzInput {
  std::array<double, 4> coherence{};  // Lambda_m = |lambda_{+m} - lambda_{-m}|
  std::array<double, 4> weight{};     // M_m = lambda_{+m} + lambda_{-m}
  std::size_t k = 1;

  static GhhGhzInput from(const GhzDiagCoeffs& c, std::size_t k) {
    GhhGhzInput in;
    for (int m = 1; m <= 4; ++m) {
      in.coherence[m - 1] = std::abs(c.plus(m) - c.minus(m));
      in.weight[m - 1] = c.plus(m) + c.minus(m);
    }
    in.k = k;
    return in;
  }
};

namespace detail {

inline double log_pow(double base, std::size_t e) {
  if (e == 0) return 0.0;
  if (base <= 0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(e) * std::log(base);
}

inline double log_sum_exp(std::initializer_list<double> xs) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : xs) mx = std::max(mx, x);
  if (std::isinf(mx)) return mx;
  double s = 0;
  for (double x : xs) s += std::exp(x - mx);
  return mx + std::log(s);
}

}  // namespace detail

// All compositions (k_1..k_4) of k.
inline std::vector<std::array<std::size_t, 4>> compositions4(std::size_t k) {
  std::vector<std::array<std::size_t, 4>> out;
  for (std::size_t a = 0; a <= k; ++a)
    for (std::size_t b = 0; a + b <= k; ++b)
      for (std::size_t c = 0; a + b + c <= k; ++c) out.push_back({a, b, c, k - a - b - c});
  return out;
}

// First composition violating the GHZ-diagonal k-copy GHH inequality, if any.
// Evaluated in log space so large k does not underflow.
inline std::optional<std::array<std::size_t, 4>> ghh_ghz_diag_violation(const GhhGhzInput& in) {
  if (in.k == 0) throw std::invalid_argument("GHH: k must be at least 1");
  const auto& L = in.coherence;
  const auto& M = in.weight;
  for (const auto& km : compositions4(in.k)) {
    double lhs = 0;
    for (std::size_t m = 0; m < 4; ++m) lhs += detail::log_pow(L[m], km[m]);
    if (std::isinf(lhs)) continue;
    auto term = [&](std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4) {
      return detail::log_pow(M[i1], km[0]) + detail::log_pow(M[i2], km[1]) + detail::log_pow(M[i3], km[2]) +
             detail::log_pow(M[i4], km[3]);
    };
    // M_4^{k1} M_3^{k2} M_2^{k3} M_1^{k4} + M_3 M_4 M_1 M_2 + M_2 M_1 M_4 M_3
    const double rhs = detail::log_sum_exp({term(3, 2, 1, 0), term(2, 3, 0, 1), term(1, 0, 3, 2)});
    if (lhs > rhs + tol::kLogDetection) return km;
  }
  return std::nullopt;
}

inline bool ghh_ghz_diag(const GhhGhzInput& in) { return ghh_ghz_diag_violation(in).has_value(); }

// ---------------------------------------------------------------------------
// Closed forms for the two GHH test families.

inline bool rho1_detect(double p_plus1, double p_minus1, std::size_t k) {
  if (k == 0) throw std::invalid_argument("rho1_detect: k must be at least 1");
  if (p_plus1 < p_minus1) throw std::invalid_argument("rho1_detect: requires p_+1 >= p_-1");
  const double noise = (1 - p_plus1 - p_minus1) / 4;
  const double lhs = detail::log_pow(p_plus1 - p_minus1, k);
  const double rhs = std::log(3.0) + detail::log_pow(noise, k);
  return !std::isinf(lhs) && lhs > rhs + tol::kLogDetection;
}

// Threshold on p_+1 as a function of p_-1.
inline double rho1_boundary(double p_minus1, std::size_t k) {
  const double r = std::pow(3.0, 1.0 / static_cast<double>(k));
  return r / (4 + r) + (4 - r) / (4 + r) * p_minus1;
}

// k -> infinity: p_+1 = 1/5 + 3/5 p_-1
inline double rho1_limit_boundary(double p_minus1) { return 0.2 + 0.6 * p_minus1; }

inline bool rho2_detect(double p_plus1, double p_plus2, std::size_t k) {
  if (k == 0) throw std::invalid_argument("rho2_detect: k must be at least 1");
  if (p_plus1 < p_plus2) throw std::invalid_argument("rho2_detect: requires p_+1 >= p_+2");
  const double mu = (1 - p_plus1 - p_plus2) / 4;
  // p1^k - (mu + p2)^k > 2 mu^k, i.e. p1^k > (mu + p2)^k + 2 mu^k
  const double lhs = detail::log_pow(p_plus1, k);
  const double rhs = detail::log_sum_exp({detail::log_pow(mu + p_plus2, k), std::log(2.0) + detail::log_pow(mu, k)});
  return !std::isinf(lhs) && lhs > rhs + tol::kLogDetection;
}

// k -> infinity: 5 p_+1 > 1 + 3 p_+2
inline bool rho2_limit_detect(double p_plus1, double p_plus2) { return 5 * p_plus1 > 1 + 3 * p_plus2; }
inline double rho2_limit_boundary(double p_plus2) { return (1 + 3 * p_plus2) / 5; }

// ---------------------------------------------------------------------------
// Local observables for the nonlinear witness.

// cos(l pi / n) X + sin(l pi / n) Y
inline ComplexMatrix m_l_observable(std::size_t l, std::size_t n) {
  if (n == 0 || l < 1 || l > n) throw std::out_of_range("m_l_observable: need 1 <= l <= n");
  const double phi = std::numbers::pi * static_cast<double>(l) / static_cast<double>(n);
  return ComplexMatrix{{0, cplx(std::cos(phi), -std::sin(phi))}, {cplx(std::cos(phi), std::sin(phi)), 0}};
}

// |0...0><1...1| + h.c. on n qubits
inline ComplexMatrix chi_operator(std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix c(d, d);
  c(0, d - 1) = 1;
  c(d - 1, 0) = 1;
  return c;
}

// (1/n) sum_l (-1)^l M_l^{⊗n}, which reconstructs chi_operator(n).
inline ComplexMatrix chi_decomposition(std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix acc(d, d);
  for (std::size_t l = 1; l <= n; ++l) {
    const ComplexMatrix term = kron_power(m_l_observable(l, n), n);
    acc += term * cplx(l % 2 == 0 ? 1.0 : -1.0);
  }
  return acc / cplx(static_cast<double>(n));
}

// Tr(M_l^{⊗N} rho)
inline double m_l_expectation(const ComplexMatrix& rho, std::size_t l, std::size_t n, std::size_t parties) {
  return trace_product(kron_power(m_l_observable(l, n), parties), rho).real();
}

// Tr(W_k rho^{⊗k}) for the k-copy lift of the GHZ fidelity witness, written
// through single-copy quantities: computational-basis populations except
// all-0 / all-1, and the expectations of the N k observables M_l^{⊗N}.
inline double lifted_witness_value(const ComplexMatrix& rho, std::size_t k, std::size_t parties = 3) {
  const std::size_t d = std::size_t{1} << parties;
  if (!rho.is_square() || rho.rows() != d) throw DimensionMismatch("lifted_witness_value: state dimension");
  if (k == 0) throw std::invalid_argument("lifted_witness_value: k must be at least 1");
  const int ki = static_cast<int>(k);
  double diag = 0;
  for (std::size_t x = 1; x + 1 < d; ++x) diag += std::pow(rho(x, x).real(), ki);
  const std::size_t n = parties * k;
  double coh = 0;
  for (std::size_t l = 1; l <= n; ++l) {
    const double e = m_l_expectation(rho, l, n, parties);
    coh += (l % 2 == 0 ? 1.0 : -1.0) * std::pow(e, ki);
  }
  return 0.5 * diag - coh / (2.0 * static_cast<double>(n));
}

}  // namespace gmeact
