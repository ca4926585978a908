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
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "states.hpp"
#include "tolerances.hpp"

namespace gmeact {

// One local filter per party, each mapping its k-copy space to a qubit.
struct ProjectionSet {
  std::vector<ComplexMatrix> filters;

  std::size_t parties() const { return filters.size(); }

  PartyStructure input_structure() const {
    std::vector<std::size_t> d;
    for (const auto& f : filters) d.push_back(f.cols());
    return PartyStructure(d);
  }

  ComplexMatrix joint() const {
    if (filters.empty()) throw std::invalid_argument("empty projection set");
    ComplexMatrix out = filters.front();
    for (std::size_t i = 1; i < filters.size(); ++i) out = kron(out, filters[i]);
    return out;
  }
};

// Largest singular value of a small matrix via the spectrum of F F†.
inline double operator_norm(const ComplexMatrix& f) {
  const auto eig = hermitian_eig(f * adjoint(f));
  return std::sqrt(std::max(0.0, eig.values.back()));
}

// Rescales every filter to unit operator norm. All quantities derived from
// projections (signs of expectation values, f/N ratios) are scale-invariant.
inline ProjectionSet normalized(ProjectionSet p) {
  for (auto& f : p.filters) {
    const double n = operator_norm(f);
    if (n <= 0) throw ZeroNormalization("projection filter is identically zero");
    f /= cplx(n);
  }
  return p;
}

// |0><0...0| + |1><1...1|
inline ComplexMatrix hadamard_isometry(std::size_t k) {
  if (k == 0) throw std::invalid_argument("hadamard_isometry: k must be at least 1");
  if (k > 20) throw std::invalid_argument("hadamard_isometry: k too large");
  const std::size_t d = std::size_t{1} << k;
  ComplexMatrix e(2, d);
  e(0, 0) = 1;
  e(1, d - 1) = 1;
  return e;
}

inline ProjectionSet hadamard_projections(std::size_t k, std::size_t parties = 3) {
  return ProjectionSet{std::vector<ComplexMatrix>(parties, hadamard_isometry(k))};
}

struct ProjectedState {
  ComplexMatrix op;       // normalized image
  double normalization;   // trace of the unnormalized image
};

// Unnormalized image F rho F†.
inline ComplexMatrix project_unnormalized(const ComplexMatrix& rho, const ProjectionSet& proj) {
  const ComplexMatrix f = proj.joint();
  if (f.cols() != rho.rows() || !rho.is_square()) throw DimensionMismatch("projection input dimension differs from state");
  return f * rho * adjoint(f);
}

inline ProjectedState apply_projection(const ComplexMatrix& rho, const ProjectionSet& proj) {
  ComplexMatrix img = project_unnormalized(rho, proj);
  const double n = trace(img).real();
  if (!(n > tol::kZeroNorm)) throw ZeroNormalization("projection annihilates the state");
  return {img / cplx(n), n};
}

// Reads a length-2d vector as a 2 x d filter, F(x, i) = conj(a[2 i + x]).
// With this layout <a|<b|<c| (rho ⊗ W^T) |a>|b>|c> = Tr[F rho F† W], where
// each party's vector is indexed (input index, output index) with the output
// qubit innermost.
inline ComplexMatrix vector_to_projection(std::span<const cplx> a) {
  if (a.size() < 2 || a.size() % 2 != 0) throw std::invalid_argument("projection vector must have even length");
  if (norm(a) == 0) throw std::invalid_argument("projection vector is zero");
  const std::size_t d = a.size() / 2;
  ComplexMatrix f(2, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t x = 0; x < 2; ++x) f(x, i) = std::conj(a[2 * i + x]);
  return f;
}

inline ComplexVector projection_to_vector(const ComplexMatrix& f) {
  if (f.rows() != 2) throw DimensionMismatch("projection must have two output rows");
  ComplexVector a(2 * f.cols());
  for (std::size_t i = 0; i < f.cols(); ++i)
    for (std::size_t x = 0; x < 2; ++x) a[2 * i + x] = std::conj(f(x, i));
  return a;
}

// k-fold Schur power, not normalized.
template <typename T>
Matrix<T> schur_power_raw(const Matrix<T>& rho, std::size_t k) {
  if (k == 0) throw std::invalid_argument("schur_power: k must be at least 1");
  Matrix<T> acc = rho;
  for (std::size_t i = 1; i < k; ++i) acc = schur_product(acc, rho);
  return acc;
}

template <typename T>
Matrix<T> schur_power(const Matrix<T>& rho, std::size_t k) {
  Matrix<T> acc = schur_power_raw(rho, k);
  const T tr = trace(acc);
  if (tr == T{}) throw ZeroNormalization("schur_power: vanishing trace");
  if constexpr (std::is_floating_point_v<T> || is_complex<T>::value) {
    if (std::abs(tr) <= tol::kZeroNorm) throw ZeroNormalization("schur_power: vanishing trace");
  }
  return acc / tr;
}

// W_k = E† w E with E the per-party Hadamard isometry; for N parties the
// value on rho^{⊗k} is sum_{x,y} w_{xy} (rho_{yx})^k.
class LiftedWitness {
 public:
  struct Term {
    std::size_t row;
    std::size_t col;
    cplx coefficient;
  };

  LiftedWitness(ComplexMatrix w, std::size_t k, std::size_t parties = 3) : w_(std::move(w)), k_(k), parties_(parties) {
    if (k == 0) throw std::invalid_argument("lift_witness: k must be at least 1");
    if (!w_.is_square() || w_.rows() != (std::size_t{1} << parties)) throw DimensionMismatch("lift_witness: witness dimension");
    if (hermiticity_defect(w_) > tol::kHermiticity * std::max(1.0, frobenius_norm(w_))) {
      throw std::invalid_argument("lift_witness: witness is not Hermitian");
    }
    for (std::size_t r = 0; r < w_.rows(); ++r)
      for (std::size_t c = 0; c < w_.cols(); ++c) {
        if (w_(r, c) == cplx(0)) continue;
        (r == c ? diagonal_ : off_diagonal_).push_back({r, c, w_(r, c)});
      }
  }

  std::size_t copies() const { return k_; }
  const ComplexMatrix& single_copy() const { return w_; }

  // Projector terms <x|rho|x>^k and antidiagonal-type coherences.
  const std::vector<Term>& diagonal_terms() const { return diagonal_; }
  const std::vector<Term>& off_diagonal_terms() const { return off_diagonal_; }

  // Tr(W_k rho^{⊗k}) from the single-copy matrix elements.
  double value(const ComplexMatrix& rho) const {
    if (rho.rows() != w_.rows() || !rho.is_square()) throw DimensionMismatch("lifted witness: state dimension");
    cplx s = 0;
    for (const auto* terms : {&diagonal_, &off_diagonal_})
      for (const auto& t : *terms) s += t.coefficient * std::pow(rho(t.col, t.row), static_cast<int>(k_));
    return s.real();
  }

  // Explicit operator on the k-copy space, party-major with copies innermost.
  ComplexMatrix dense() const {
    const std::size_t dim = std::size_t{1} << (parties_ * k_);
    if (dim > 512) throw std::invalid_argument("lifted witness too large for a dense operator");
    const ComplexMatrix e = hadamard_projections(k_, parties_).joint();
    return adjoint(e) * w_ * e;
  }

 private:
  ComplexMatrix w_;
  std::size_t k_;
  std::size_t parties_;
  std::vector<Term> diagonal_;
  std::vector<Term> off_diagonal_;
};

inline LiftedWitness lift_witness(const ComplexMatrix& w, std::size_t k, std::size_t parties = 3) {
  return LiftedWitness(w, k, parties);
}

// W_GHZ = I/2 - |GHZ+><GHZ+|
inline ComplexMatrix ghz_fidelity_witness(double kappa = 0.5) {
  return ComplexMatrix::identity(8) * cplx(kappa) - projector(ghz_basis_state(1, GhzSign::Plus));
}

namespace detail {

// |x><y z| for single-qubit kets given as 2-vectors.
inline ComplexMatrix ket_bra2(std::size_t x, const ComplexVector& y, const ComplexVector& z) {
  ComplexMatrix f(2, 4);
  const auto yz = kron(y, z);
  for (std::size_t i = 0; i < 4; ++i) f(x, i) = std::conj(yz[i]);
  return f;
}

}  // namespace detail

// F_A = |0><0+| + |1><1-|, F_B = |0><1+| + |1><0-|, F_C = |0><0+| + |1><1+|.
inline ProjectionSet d_projections() {
  const double s = 1 / std::sqrt(2.0);
  const ComplexVector k0 = {1, 0}, k1 = {0, 1}, kp = {s, s}, km = {s, -s};
  const ComplexMatrix fa = detail::ket_bra2(0, k0, kp) + detail::ket_bra2(1, k1, km);
  const ComplexMatrix fb = detail::ket_bra2(0, k1, kp) + detail::ket_bra2(1, k0, km);
  const ComplexMatrix fc = detail::ket_bra2(0, k0, kp) + detail::ket_bra2(1, k1, kp);
  return ProjectionSet{{fa, fb, fc}};
}

// GHZ-basis weights of the image of chi(1, mu, eps, delta)^{⊗2} under d_projections.
inline GhzDiagCoeffs projected_chi_closed_form(double mu, double eps, double delta) {
  if (!(1 >= mu && mu >= eps && eps >= delta && delta >= 0)) {
    throw std::invalid_argument("require 1 >= mu >= eps >= delta >= 0");
  }
  const double a = eps * (1 + mu), b = eps * (eps + delta), c = delta * (1 + mu), d = delta * (eps + delta);
  const double n = a + b + c + d;
  if (!(n > tol::kZeroNorm)) throw ZeroNormalization("projected chi state has zero normalization");
  GhzDiagCoeffs out;
  out[ghz_index(1, GhzSign::Plus)] = a / n;
  out[ghz_index(1, GhzSign::Minus)] = b / n;
  out[ghz_index(2, GhzSign::Plus)] = c / n;
  out[ghz_index(2, GhzSign::Minus)] = d / n;
  return out;
}

// f/N with f = Tr(rho~ |GHZ><GHZ|) and N = Tr(rho~).
inline double ghz_fidelity_after(const ComplexMatrix& rho2, const ProjectionSet& proj) {
  const ComplexMatrix img = project_unnormalized(rho2, proj);
  const double n = trace(img).real();
  if (!(n > tol::kZeroNorm)) throw ZeroNormalization("projection annihilates the state");
  const double f = expectation(img, ghz_basis_state(1, GhzSign::Plus)).real();
  return f / n;
}

}  // namespace gmeact
