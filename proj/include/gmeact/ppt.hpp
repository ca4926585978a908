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
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "lp.hpp"
#include "states.hpp"
#include "tolerances.hpp"

// Linear programs over graph-diagonal (here GHZ-diagonal) operators: the
// PPT-mixture witness LP and the PPT relaxation of the projection search.

namespace gmeact {

// Action of a partial transpose on coefficient vectors over a projector basis.
struct CoeffPtMap {
  RealMatrix m;
  std::vector<std::size_t> parties;
  double closure_residual = 0;
};

// M_{ji} = <g_j| Pi_i^{T_X} |g_j>, with a check that every Pi_i^{T_X} lies
// in the span of the basis projectors.
inline CoeffPtMap coeff_pt_map(const std::vector<ComplexVector>& basis, const PartyStructure& ps,
                               const std::vector<std::size_t>& parties) {
  const std::size_t n = basis.size();
  if (n == 0) throw std::invalid_argument("coeff_pt_map: empty basis");
  for (const auto& v : basis)
    if (v.size() != ps.total()) throw DimensionMismatch("coeff_pt_map: basis vector dimension");
  CoeffPtMap out{RealMatrix(n, n), parties, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix pt = partial_transpose(projector(basis[i]), ps, std::span<const std::size_t>(parties));
    ComplexMatrix rebuilt(pt.rows(), pt.cols());
    for (std::size_t j = 0; j < n; ++j) {
      const cplx e = expectation(pt, basis[j]);
      out.m(j, i) = e.real();
      if (e.real() != 0) rebuilt += projector(basis[j]) * cplx(e.real());
    }
    out.closure_residual = std::max(out.closure_residual, frobenius_norm(rebuilt - pt));
  }
  if (out.closure_residual > tol::kClosure) {
    throw InvariantViolation("coeff_pt_map: basis is not closed under the partial transpose (residual " +
                             std::to_string(out.closure_residual) + ")");
  }
  return out;
}

// GHZ basis of k copies in the party-major layout; index (i_1, ..., i_k)
// with the first copy most significant.
inline std::vector<ComplexVector> ghz_product_basis(std::size_t k) {
  std::vector<ComplexVector> single;
  for (int m = 1; m <= 4; ++m)
    for (auto s : {GhzSign::Plus, GhzSign::Minus}) single.push_back(ghz_basis_state(m, s));
  std::vector<ComplexVector> acc = single;
  PartyStructure acc_ps = PartyStructure::qubits(3);
  const PartyStructure one = PartyStructure::qubits(3);
  for (std::size_t c = 1; c < k; ++c) {
    std::vector<ComplexVector> next;
    for (const auto& a : acc)
      for (const auto& b : single) next.push_back(party_kron(std::span<const cplx>(a), acc_ps, std::span<const cplx>(b), one));
    acc = std::move(next);
    acc_ps = party_product(acc_ps, one);
  }
  return acc;
}

// Single-copy maps for T_A, T_B, T_C on the GHZ basis.
inline std::vector<CoeffPtMap> ghz_single_copy_maps() {
  const auto basis = ghz_product_basis(1);
  std::vector<CoeffPtMap> out;
  for (std::size_t x = 0; x < 3; ++x) out.push_back(coeff_pt_map(basis, PartyStructure::qubits(3), {x}));
  return out;
}

// k-copy map as the k-fold Kronecker power of the single-copy one.
inline CoeffPtMap coeff_pt_map_power(const CoeffPtMap& single, std::size_t k) {
  CoeffPtMap out = single;
  for (std::size_t c = 1; c < k; ++c) out.m = kron(out.m, single.m);
  return out;
}

inline std::vector<CoeffPtMap> ghz_copy_maps(std::size_t k) {
  auto maps = ghz_single_copy_maps();
  for (auto& m : maps) m = coeff_pt_map_power(m, k);
  return maps;
}

// Coefficients of rho_1 ⊗ rho_2 ⊗ ... over the product basis.
inline std::vector<double> product_coefficients(const std::vector<std::vector<double>>& factors) {
  std::vector<double> acc = {1.0};
  for (const auto& f : factors) acc = kron(acc, f);
  return acc;
}

inline std::vector<double> as_vector(const GhzDiagCoeffs& c) { return {c.weights.begin(), c.weights.end()}; }

struct PptMixResult {
  double t = 0;                              // min Tr(W rho) with Tr W = 1
  std::vector<double> w;                     // witness coefficients
  std::vector<std::vector<double>> p, q;     // w = p_X + M_X q_X
  LpSolution lp;
};

// min r.w over w = p_X + M_X q_X (all X), p, q >= 0, sum w = 1.
// Variable layout: w (free), then p_X, q_X for each map.
inline PptMixResult pptmix_lp(const std::vector<double>& r, const std::vector<CoeffPtMap>& maps,
                              const LpOptions& opt = {}) {
  const std::size_t n = r.size();
  for (const auto& m : maps)
    if (m.m.rows() != n || m.m.cols() != n) throw DimensionMismatch("pptmix_lp: map size differs from coefficient count");
  double total = 0;
  for (double x : r) total += x;
  if (std::abs(total - 1) > 1e-9) throw std::invalid_argument("pptmix_lp: coefficients must sum to 1");
  const std::size_t nx = maps.size();
  const std::size_t vars = n + 2 * nx * n;
  LinearProgram lp;
  lp.objective.assign(vars, 0.0);
  for (std::size_t i = 0; i < n; ++i) lp.objective[i] = r[i];
  lp.lower.assign(vars, 0.0);
  for (std::size_t i = 0; i < n; ++i) lp.lower[i] = -INFINITY;
  lp.a_eq = RealMatrix(nx * n + 1, vars);
  lp.b_eq.assign(nx * n + 1, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    const std::size_t p0 = n + 2 * x * n, q0 = p0 + n;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = x * n + i;
      lp.a_eq(row, i) = 1.0;
      lp.a_eq(row, p0 + i) = -1.0;
      for (std::size_t j = 0; j < n; ++j) lp.a_eq(row, q0 + j) = -maps[x].m(i, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) lp.a_eq(nx * n, i) = 1.0;
  lp.b_eq[nx * n] = 1.0;

  PptMixResult res;
  res.lp = lp_solve(lp, opt);
  res.t = res.lp.optimum;
  res.w.assign(res.lp.x.begin(), res.lp.x.begin() + n);
  for (std::size_t x = 0; x < nx; ++x) {
    const auto p0 = res.lp.x.begin() + n + 2 * x * n;
    res.p.emplace_back(p0, p0 + n);
    res.q.emplace_back(p0 + n, p0 + 2 * n);
  }
  return res;
}

// Independent check of a PPT-mixture witness certificate; returns the
// largest violation of its defining conditions.
inline double pptmix_certificate_defect(const std::vector<double>& w, const std::vector<std::vector<double>>& p,
                                        const std::vector<std::vector<double>>& q, const std::vector<CoeffPtMap>& maps) {
  double defect = 0, sum = 0;
  for (double x : w) sum += x;
  defect = std::abs(sum - 1);
  for (std::size_t x = 0; x < maps.size(); ++x) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      double s = p[x][i];
      for (std::size_t j = 0; j < w.size(); ++j) s += maps[x].m(i, j) * q[x][j];
      defect = std::max({defect, std::abs(s - w[i]), -p[x][i], -q[x][i]});
    }
  }
  return defect;
}

// Robustness against white noise for a normalized witness value t.
inline double white_noise_robustness(double t, std::size_t dim) {
  if (t > 0) throw std::invalid_argument("white_noise_robustness: state not detected (t > 0)");
  return 1.0 / (1.0 - static_cast<double>(dim) * t);
}

struct PptRelaxResult {
  double value = 0;              // min x.s over PPT points of the simplex
  std::vector<double> state;     // minimizing s
  // Dual certificate: x = value * 1 + p + sum_X M_X y_X with p, y >= 0,
  // which bounds x.s >= value on every PPT s.
  std::vector<double> slack;
  std::vector<std::vector<double>> y;
  LpSolution lp;
};

// Relaxation of the product-vector search for X = rho^{⊗2} ⊗ W, both
// GHZ-diagonal. Solved in dual form, max t s.t. x - t 1 = p + sum M_X y_X,
// written with t = min(x) - tau so that p = x - min(x) is a feasible start.
inline PptRelaxResult ppt_relax_lp(const GhzDiagCoeffs& rho, const GhzDiagCoeffs& w, const LpOptions& opt = {}) {
  const auto r = as_vector(rho);
  const auto x = product_coefficients({r, r, as_vector(w)});
  const auto maps = ghz_copy_maps(3);
  const std::size_t n = x.size(), nx = maps.size();
  const double xmin = *std::min_element(x.begin(), x.end());
  const std::size_t vars = 1 + n + nx * n;
  LinearProgram lp;
  lp.objective.assign(vars, 0.0);
  lp.objective[0] = 1.0;
  lp.lower.assign(vars, 0.0);
  lp.lower[0] = -INFINITY;
  lp.a_eq = RealMatrix(n, vars);
  lp.b_eq.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lp.b_eq[i] = x[i] - xmin;
    lp.a_eq(i, 0) = -1.0;
    lp.a_eq(i, 1 + i) = 1.0;
    for (std::size_t k = 0; k < nx; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        const double v = maps[k].m(i, j);
        if (v != 0) lp.a_eq(i, 1 + n + k * n + j) = v;
      }
  }
  PptRelaxResult res;
  res.lp = lp_solve(lp, opt);
  res.value = xmin - res.lp.x[0];
  res.slack.assign(res.lp.x.begin() + 1, res.lp.x.begin() + 1 + n);
  for (std::size_t k = 0; k < nx; ++k) {
    const auto y0 = res.lp.x.begin() + 1 + n + k * n;
    res.y.emplace_back(y0, y0 + n);
  }
  // The minimizing PPT point is minus the duals of the equality rows.
  res.state.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.state[i] = std::max(0.0, -res.lp.duals[i]);
  return res;
}

// Operator-level entry point; both operators must be GHZ-diagonal.
inline PptRelaxResult ppt_relax_lp(const ComplexMatrix& rho, const ComplexMatrix& w, const LpOptions& opt = {}) {
  auto diagonal_part = [](const ComplexMatrix& op) {
    const GhzDiagCoeffs c = ghz_weights(op);
    if (frobenius_norm(ghz_diagonal_matrix(c) - op) > 1e-9) {
      throw std::invalid_argument("ppt_relax_lp: symmetry precondition violated (operator is not GHZ-diagonal)");
    }
    return c;
  };
  return ppt_relax_lp(diagonal_part(rho), diagonal_part(w), opt);
}

// Largest violation of the dual certificate x = value*1 + slack + sum M y.
inline double ppt_relax_certificate_defect(const GhzDiagCoeffs& rho, const GhzDiagCoeffs& w, const PptRelaxResult& res) {
  const auto r = as_vector(rho);
  const auto x = product_coefficients({r, r, as_vector(w)});
  const auto maps = ghz_copy_maps(3);
  double defect = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = res.value + res.slack[i];
    for (std::size_t k = 0; k < maps.size(); ++k)
      for (std::size_t j = 0; j < x.size(); ++j) s += maps[k].m(i, j) * res.y[k][j];
    defect = std::max({defect, std::abs(s - x[i]), -res.slack[i]});
  }
  for (const auto& yk : res.y)
    for (double v : yk) defect = std::max(defect, -v);
  return defect;
}

}  // namespace gmeact
