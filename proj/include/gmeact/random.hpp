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
#include <random>

#include "linalg.hpp"

namespace gmeact {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; turns (seed, index) into an independent stream seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

// Standard complex Gaussian entries (E|z|^2 = 1).
inline ComplexVector random_complex_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  ComplexVector v(n);
  for (auto& x : v) {
    const double re = g(rng);
    const double im = g(rng);
    x = cplx(re, im);
  }
  return v;
}

inline ComplexVector random_unit_vector(std::size_t n, Rng& rng) {
  auto v = random_complex_vector(n, rng);
  const double nv = norm(v);
  for (auto& x : v) x /= nv;
  return v;
}

inline ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  for (auto& x : m.data()) {
    const double re = g(rng);
    const double im = g(rng);
    x = cplx(re, im);
  }
  return m;
}

// Haar-distributed unitary: Gram-Schmidt (QR) of a Ginibre matrix. Modified
// Gram-Schmidt leaves R with a positive diagonal, which is what makes Q Haar.
inline ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix q = random_ginibre(n, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      cplx proj = 0;
      for (std::size_t r = 0; r < n; ++r) proj += std::conj(q(r, i)) * q(r, j);
      for (std::size_t r = 0; r < n; ++r) q(r, j) -= proj * q(r, i);
    }
    double nn = 0;
    for (std::size_t r = 0; r < n; ++r) nn += std::norm(q(r, j));
    nn = std::sqrt(nn);
    for (std::size_t r = 0; r < n; ++r) q(r, j) /= nn;
  }
  return q;
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  ComplexMatrix g = random_ginibre(n, n, rng);
  ComplexMatrix h = g + adjoint(g);
  return h * cplx(0.5);
}

// Random density operator G G† / Tr(G G†), full rank almost surely.
inline ComplexMatrix random_density(std::size_t n, Rng& rng) {
  ComplexMatrix g = random_ginibre(n, n, rng);
  ComplexMatrix rho = g * adjoint(g);
  return rho / trace(rho);
}

}  // namespace gmeact
