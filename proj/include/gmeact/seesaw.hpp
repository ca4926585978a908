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

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "maps.hpp"
#include "random.hpp"
#include "tolerances.hpp"

namespace gmeact {

struct SeesawOptions {
  std::size_t starts = 10;
  std::size_t iterations = 30;
  std::uint64_t seed = 0;
  double tolerance = tol::kSeesawConvergence;
  // Extra starting points tried before the random ones, one vector per party.
  std::vector<std::vector<ComplexVector>> warm_starts;
};

struct SeesawResult {
  std::vector<ComplexVector> vectors;  // unit vectors, one per party
  double value = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  std::size_t start = 0;               // warm starts come first
  std::vector<double> history;         // value after every sweep of the winning start

  // Reads each party vector as a filter (see vector_to_projection).
  ProjectionSet projections() const {
    ProjectionSet p;
    for (const auto& v : vectors) p.filters.push_back(vector_to_projection(std::span<const cplx>(v)));
    return p;
  }
};

namespace detail {

// Per-party local index of every joint basis index.
inline std::vector<std::vector<std::size_t>> local_indices(const PartyStructure& ps) {
  const std::size_t n = ps.count(), total = ps.total();
  std::vector<std::vector<std::size_t>> idx(n, std::vector<std::size_t>(total));
  for (std::size_t r = 0; r < total; ++r) {
    std::size_t rest = r;
    for (std::size_t p = n; p-- > 0;) {
      idx[p][r] = rest % ps.dim(p);
      rest /= ps.dim(p);
    }
  }
  return idx;
}

// <others| X |others> as an operator on party `party`.
inline ComplexMatrix reduced_operator(const ComplexMatrix& x, const PartyStructure& ps,
                                      const std::vector<std::vector<std::size_t>>& idx,
                                      const std::vector<ComplexVector>& v, std::size_t party) {
  const std::size_t total = ps.total(), d = ps.dim(party);
  std::vector<cplx> w(total, cplx(1));
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t p = 0; p < ps.count(); ++p)
      if (p != party) w[r] *= v[p][idx[p][r]];
  ComplexMatrix out(d, d);
  const auto& loc = idx[party];
  for (std::size_t r = 0; r < total; ++r) {
    const cplx wr = std::conj(w[r]);
    if (wr == cplx(0)) continue;
    cplx* row = &out(loc[r], 0);
    for (std::size_t c = 0; c < total; ++c) {
      const cplx xc = x(r, c);
      if (xc == cplx(0)) continue;
      row[loc[c]] += wr * xc * w[c];
    }
  }
  // remove rounding asymmetry before the eigensolver sees it
  return (out + adjoint(out)) * cplx(0.5);
}

}  // namespace detail

// <v_1 ... v_n| X |v_1 ... v_n>
inline double product_expectation(const ComplexMatrix& x, const PartyStructure& ps, const std::vector<ComplexVector>& v) {
  if (v.size() != ps.count()) throw DimensionMismatch("product_expectation: one vector per party required");
  ComplexVector joint = v.front();
  for (std::size_t p = 1; p < v.size(); ++p) joint = kron(std::span<const cplx>(joint), std::span<const cplx>(v[p]));
  if (joint.size() != x.rows()) throw DimensionMismatch("product_expectation: vector dimensions differ from operator");
  return expectation(x, joint).real();
}

// Alternating minimization of <v_1...v_n|X|v_1...v_n> over unit vectors:
// each step fixes all parties but one and takes the lowest eigenvector of
// the reduced operator, so the value never increases within a run.
inline SeesawResult seesaw(const ComplexMatrix& x, const PartyStructure& ps, const SeesawOptions& opt = {}) {
  if (!x.is_square() || x.rows() != ps.total()) throw DimensionMismatch("seesaw: operator does not match parties");
  if (hermiticity_defect(x) > tol::kHermiticity * std::max(1.0, frobenius_norm(x))) {
    throw std::invalid_argument("seesaw: operator is not Hermitian");
  }
  const std::size_t n = ps.count();
  const auto idx = detail::local_indices(ps);
  SeesawResult best;
  const std::size_t runs = opt.warm_starts.size() + opt.starts;
  for (std::size_t s = 0; s < runs; ++s) {
    std::vector<ComplexVector> v;
    if (s < opt.warm_starts.size()) {
      v = opt.warm_starts[s];
      if (v.size() != n) throw DimensionMismatch("seesaw: warm start needs one vector per party");
      for (std::size_t p = 0; p < n; ++p) {
        if (v[p].size() != ps.dim(p)) throw DimensionMismatch("seesaw: warm start vector dimension");
        const double nv = norm(v[p]);
        if (nv == 0) throw std::invalid_argument("seesaw: zero warm start vector");
        for (auto& e : v[p]) e /= nv;
      }
    } else {
      Rng rng = make_rng(opt.seed, s - opt.warm_starts.size());
      for (std::size_t p = 0; p < n; ++p) v.push_back(random_unit_vector(ps.dim(p), rng));
    }
    std::vector<double> history;
    double value = product_expectation(x, ps, v);
    std::size_t it = 0;
    while (it < opt.iterations) {
      ++it;
      double last = value;
      for (std::size_t p = 0; p < n; ++p) {
        const auto eig = hermitian_eig(detail::reduced_operator(x, ps, idx, v, p));
        // keep the old vector if the eigensolver cannot improve on it
        if (eig.values.front() <= last) {
          v[p] = eig.vector(0);
          last = eig.values.front();
        }
      }
      const double prev = value;
      value = product_expectation(x, ps, v);
      history.push_back(value);
      if (std::abs(prev - value) < opt.tolerance) break;
    }
    if (value < best.value) {
      best.vectors = v;
      best.value = value;
      best.iterations = it;
      best.start = s;
      best.history = std::move(history);
    }
  }
  return best;
}

// The tripartite operator rho2 ⊗ W^T whose product expectations are the
// witness values Tr[F rho2 F† W] of projected states. rho2 lives on k
// copies (each party 2^k dimensional), W on one copy.
inline ComplexMatrix witness_search_operator(const ComplexMatrix& rho2, const PartyStructure& ps2, const ComplexMatrix& w) {
  const PartyStructure single = PartyStructure::qubits(ps2.count());
  return party_kron(rho2, ps2, transpose(w), single);
}

}  // namespace gmeact
