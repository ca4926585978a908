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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"

// Three-qubit GHZ-diagonal families, GHZ-symmetric coordinates, and the
// two-qubit Werner-based tripartite families.
//
// GHZ basis ordering: index 2(m-1) + s with s = 0 for the + sign and 1 for -,
// GHZ_{±m} = (|b_m> ± |~b_m>)/sqrt2 and b_m in {000, 001, 010, 100}.

namespace gmeact {

enum class GhzSign { Plus, Minus };

inline constexpr std::array<std::size_t, 4> kGhzLowWord = {0b000, 0b001, 0b010, 0b100};

inline std::size_t ghz_index(int m, GhzSign sign) {
  if (m < 1 || m > 4) throw std::out_of_range("GHZ label m must lie in 1..4");
  return 2 * static_cast<std::size_t>(m - 1) + (sign == GhzSign::Minus ? 1 : 0);
}

inline ComplexVector ghz_basis_state(int m, GhzSign sign) {
  if (m < 1 || m > 4) throw std::out_of_range("GHZ label m must lie in 1..4");
  const std::size_t b = kGhzLowWord[m - 1];
  ComplexVector v(8, 0.0);
  const double s = 1 / std::sqrt(2.0);
  v[b] = s;
  v[7 - b] = sign == GhzSign::Plus ? s : -s;
  return v;
}

// Columns are the eight GHZ basis vectors in canonical order.
inline ComplexMatrix ghz_basis_matrix() {
  ComplexMatrix u(8, 8);
  for (int m = 1; m <= 4; ++m)
    for (auto sign : {GhzSign::Plus, GhzSign::Minus}) {
      const auto v = ghz_basis_state(m, sign);
      const auto col = ghz_index(m, sign);
      for (std::size_t r = 0; r < 8; ++r) u(r, col) = v[r];
    }
  return u;
}

// Weights on the GHZ basis, canonical order.
struct GhzDiagCoeffs {
  std::array<double, 8> weights{};

  double operator[](std::size_t i) const { return weights[i]; }
  double& operator[](std::size_t i) { return weights[i]; }
  double plus(int m) const { return weights[ghz_index(m, GhzSign::Plus)]; }
  double minus(int m) const { return weights[ghz_index(m, GhzSign::Minus)]; }
  double sum() const {
    double s = 0;
    for (double w : weights) s += w;
    return s;
  }
};

// X-form entries: diagonal lambda_m on |b_m>, |~b_m>, antidiagonal mu_m.
struct XState {
  std::array<double, 4> lambda{};
  std::array<double, 4> mu{};

  // lambda_m = (p_{+m} + p_{-m})/2, mu_m = (p_{+m} - p_{-m})/2.
  static XState from_weights(const GhzDiagCoeffs& c) {
    XState x;
    for (int m = 1; m <= 4; ++m) {
      x.lambda[m - 1] = (c.plus(m) + c.minus(m)) / 2;
      x.mu[m - 1] = (c.plus(m) - c.minus(m)) / 2;
    }
    return x;
  }

  GhzDiagCoeffs to_weights() const {
    GhzDiagCoeffs c;
    for (int m = 1; m <= 4; ++m) {
      c[ghz_index(m, GhzSign::Plus)] = lambda[m - 1] + mu[m - 1];
      c[ghz_index(m, GhzSign::Minus)] = lambda[m - 1] - mu[m - 1];
    }
    return c;
  }
};

// Unnormalized X-form matrix over any scalar field (exact types welcome).
template <typename T>
Matrix<T> x_state_matrix(const std::array<T, 4>& lambda, const std::array<T, 4>& mu) {
  Matrix<T> m(8, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t b = kGhzLowWord[i];
    m(b, b) = lambda[i];
    m(7 - b, 7 - b) = lambda[i];
    m(b, 7 - b) = mu[i];
    m(7 - b, b) = mu[i];
  }
  return m;
}

// chi(l1..l4) with the 2*sum(l) normalization applied.
template <typename T>
Matrix<T> chi_matrix(const std::array<T, 4>& lambda) {
  T z{};
  for (const auto& l : lambda) z += l;
  z *= T(2);
  if (z == T{}) throw std::invalid_argument("chi: all-zero parameters");
  Matrix<T> m = x_state_matrix(lambda, lambda);
  return m / z;
}

inline void require_chi_params(const std::array<double, 4>& l) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(l[i] >= 0)) throw std::invalid_argument("chi parameters must be nonnegative");
    if (i > 0 && l[i] > l[i - 1]) throw std::invalid_argument("chi parameters must be descending");
  }
  if (l[0] == 0) throw std::invalid_argument("chi: all-zero parameters");
}

inline ComplexMatrix make_chi(const std::array<double, 4>& lambda) {
  require_chi_params(lambda);
  return to_complex(chi_matrix(lambda));
}

inline ComplexMatrix make_x_state(const XState& x) {
  double z = 0;
  for (double l : x.lambda) z += 2 * l;
  if (z <= 0) throw std::invalid_argument("X-state: zero trace");
  for (std::size_t i = 0; i < 4; ++i)
    if (std::abs(x.mu[i]) > x.lambda[i] * (1 + 1e-12)) throw std::invalid_argument("X-state: |mu| exceeds lambda");
  return to_complex(x_state_matrix(x.lambda, x.mu)) / cplx(z);
}

inline ComplexMatrix ghz_diagonal_matrix(const GhzDiagCoeffs& c) {
  const ComplexMatrix u = ghz_basis_matrix();
  ComplexMatrix d(8, 8);
  for (std::size_t i = 0; i < 8; ++i) d(i, i) = c[i];
  return u * d * adjoint(u);
}

enum class SeparabilityClass { PartitionSeparable, Biseparable, GME };

inline const char* to_string(SeparabilityClass c) {
  switch (c) {
    case SeparabilityClass::PartitionSeparable: return "PartitionSeparable";
    case SeparabilityClass::Biseparable: return "Biseparable";
    case SeparabilityClass::GME: return "GME";
  }
  return "?";
}

// General X-state GME test: some |mu_i| exceeds the sum of the other lambdas.
template <typename T>
bool x_state_is_gme(const std::array<T, 4>& lambda, const std::array<T, 4>& mu) {
  for (std::size_t i = 0; i < 4; ++i) {
    T rest{};
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) rest += lambda[j];
    const T a = mu[i] < T{} ? T(-mu[i]) : mu[i];
    if (a > rest) return true;
  }
  return false;
}

// Classification of the chi family (mu = lambda). Equality tests are exact
// up to a relative 1e-12, enough for grid points given as decimal fractions.
inline SeparabilityClass classify_chi(const std::array<double, 4>& lambda) {
  require_chi_params(lambda);
  const double scale = lambda[0];
  const double eps = 1e-12 * scale;
  if (lambda[0] > lambda[1] + lambda[2] + lambda[3] + eps) return SeparabilityClass::GME;
  if (std::abs(lambda[0] - lambda[1]) <= eps && std::abs(lambda[2] - lambda[3]) <= eps) {
    return SeparabilityClass::PartitionSeparable;
  }
  return SeparabilityClass::Biseparable;
}

inline double ghz_fidelity(const ComplexMatrix& rho) {
  return expectation(rho, ghz_basis_state(1, GhzSign::Plus)).real();
}

// GHZ-basis weights <GHZ_i|rho|GHZ_i>.
inline GhzDiagCoeffs ghz_weights(const ComplexMatrix& rho) {
  if (rho.rows() != 8 || !rho.is_square()) throw DimensionMismatch("expected a three-qubit operator");
  GhzDiagCoeffs c;
  for (int m = 1; m <= 4; ++m)
    for (auto s : {GhzSign::Plus, GhzSign::Minus}) c[ghz_index(m, s)] = expectation(rho, ghz_basis_state(m, s)).real();
  return c;
}

namespace detail {

inline ComplexMatrix pauli(char p) {
  switch (p) {
    case 'I': return ComplexMatrix{{1, 0}, {0, 1}};
    case 'X': return ComplexMatrix{{0, 1}, {1, 0}};
    case 'Y': return ComplexMatrix{{0, cplx(0, -1)}, {cplx(0, 1), 0}};
    case 'Z': return ComplexMatrix{{1, 0}, {0, -1}};
  }
  throw std::invalid_argument(std::string("unknown Pauli letter ") + p);
}

inline ComplexMatrix pauli_string(const std::string& letters) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (char c : letters) out = kron(out, pauli(c));
  return out;
}

}  // namespace detail

// Group average over <ZZI, XXX, IZZ>, returned as GHZ-basis weights. The
// average of the group action is computed explicitly; any residual
// off-diagonal GHZ-basis element signals a broken group table.
inline GhzDiagCoeffs ghz_twirl(const ComplexMatrix& rho) {
  if (rho.rows() != 8 || !rho.is_square()) throw DimensionMismatch("ghz_twirl: expected 8x8 operator");
  const std::array<ComplexMatrix, 3> gens = {detail::pauli_string("ZZI"), detail::pauli_string("XXX"),
                                             detail::pauli_string("IZZ")};
  ComplexMatrix avg(8, 8);
  for (int mask = 0; mask < 8; ++mask) {
    ComplexMatrix g = ComplexMatrix::identity(8);
    for (int b = 0; b < 3; ++b)
      if (mask & (1 << b)) g = g * gens[b];
    avg += g * rho * adjoint(g);
  }
  avg /= cplx(8);
  const ComplexMatrix u = ghz_basis_matrix();
  const ComplexMatrix in_basis = adjoint(u) * avg * u;
  GhzDiagCoeffs c;
  for (std::size_t i = 0; i < 8; ++i) {
    c[i] = in_basis(i, i).real();
    for (std::size_t j = 0; j < 8; ++j)
      if (i != j && std::abs(in_basis(i, j)) > 1e-9 * std::max(1.0, frobenius_norm(rho))) {
        throw InvariantViolation("ghz_twirl: averaged operator is not GHZ-diagonal");
      }
  }
  return c;
}

// p*rho + (1-p)*I/d
inline ComplexMatrix mix_white_noise(const ComplexMatrix& rho, double p) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("mixing weight must lie in [0,1]");
  if (!rho.is_square()) throw DimensionMismatch("mix_white_noise: non-square operator");
  const double d = static_cast<double>(rho.rows());
  return rho * cplx(p) + ComplexMatrix::identity(rho.rows()) * cplx((1 - p) / d);
}

struct GhzSymmetricPoint {
  double x = 0;
  double y = 0;
};

inline GhzSymmetricPoint ghz_symmetric_coords(const ComplexMatrix& rho) {
  const double fp = expectation(rho, ghz_basis_state(1, GhzSign::Plus)).real();
  const double fm = expectation(rho, ghz_basis_state(1, GhzSign::Minus)).real();
  return {(fp - fm) / 2, (-0.25 + fp + fm) / std::sqrt(3.0)};
}

// GHZ-basis weights of the GHZ-symmetric state with the given coordinates.
// The remaining weight is spread evenly over the six GHZ_{±m}, m > 1.
inline GhzDiagCoeffs ghz_symmetric_weights(const GhzSymmetricPoint& pt) {
  const double sum = std::sqrt(3.0) * pt.y + 0.25;
  const double fp = sum / 2 + pt.x;
  const double fm = sum / 2 - pt.x;
  GhzDiagCoeffs c;
  c[0] = fp;
  c[1] = fm;
  for (std::size_t i = 2; i < 8; ++i) c[i] = (1 - fp - fm) / 6;
  for (double w : c.weights)
    if (w < -1e-12) throw std::invalid_argument("point lies outside the GHZ-symmetric triangle");
  return c;
}

// (I - |000><000| - |111><111|)/6
template <typename T = cplx>
Matrix<T> rho_sym() {
  Matrix<T> m(8, 8);
  for (std::size_t i = 1; i < 7; ++i) m(i, i) = T(1) / T(6);
  return m;
}

// (|GHZ+><GHZ+| + rho_sym)/2
template <typename T = cplx>
Matrix<T> rho_act() {
  Matrix<T> m = rho_sym<T>() / T(2);
  const T q = T(1) / T(4);
  m(0, 0) += q;
  m(7, 7) += q;
  m(0, 7) += q;
  m(7, 0) += q;
  return m;
}

// p |Psi-><Psi-| + (1-p) I/4
inline ComplexMatrix werner(double p) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("werner: p must lie in [0,1]");
  const double s = 1 / std::sqrt(2.0);
  const ComplexVector singlet = {0, s, -s, 0};
  return projector(singlet) * cplx(p) + ComplexMatrix::identity(4) * cplx((1 - p) / 4);
}

namespace detail {

// sigma on parties (i, j) and I/2 on the third, ordered A B C.
inline ComplexMatrix pair_embed(const ComplexMatrix& sigma, std::size_t i, std::size_t j) {
  const ComplexMatrix half_id = ComplexMatrix::identity(2) / cplx(2);
  const ComplexMatrix raw = kron(sigma, half_id);  // subsystems (i, j, other)
  const std::size_t other = 3 - i - j;
  std::vector<std::size_t> where = {i, j, other};  // raw subsystem r sits at party where[r]
  std::vector<std::size_t> perm(3);
  for (std::size_t r = 0; r < 3; ++r) perm[where[r]] = r;
  return permute_subsystems(raw, {2, 2, 2}, perm);
}

}  // namespace detail

// Symmetric mixture over the three pairs.
inline ComplexMatrix ice_symmetric(double p) {
  const ComplexMatrix s = werner(p);
  return (detail::pair_embed(s, 0, 1) + detail::pair_embed(s, 1, 2) + detail::pair_embed(s, 0, 2)) / cplx(3);
}

// Mixture over the pairs AB and BC only.
inline ComplexMatrix ice_unsymmetric(double p) {
  const ComplexMatrix s = werner(p);
  return (detail::pair_embed(s, 0, 1) + detail::pair_embed(s, 1, 2)) / cplx(2);
}

inline void require_probability_pair(double a, double b) {
  if (!(a >= 0 && b >= 0 && a + b <= 1 + 1e-12)) throw std::invalid_argument("weights must be nonnegative with sum <= 1");
}

// p+1 |GHZ+1><GHZ+1| + p-1 |GHZ-1><GHZ-1| + (1 - p+1 - p-1) I/8, as weights.
inline GhzDiagCoeffs rho1_weights(double p_plus1, double p_minus1) {
  require_probability_pair(p_plus1, p_minus1);
  GhzDiagCoeffs c;
  const double bg = (1 - p_plus1 - p_minus1) / 8;
  c.weights.fill(bg);
  c[ghz_index(1, GhzSign::Plus)] += p_plus1;
  c[ghz_index(1, GhzSign::Minus)] += p_minus1;
  return c;
}

inline GhzDiagCoeffs rho2_weights(double p_plus1, double p_plus2) {
  require_probability_pair(p_plus1, p_plus2);
  GhzDiagCoeffs c;
  const double bg = (1 - p_plus1 - p_plus2) / 8;
  c.weights.fill(bg);
  c[ghz_index(1, GhzSign::Plus)] += p_plus1;
  c[ghz_index(2, GhzSign::Plus)] += p_plus2;
  return c;
}

// p |GHZ+><GHZ+| + (1-p) I/8
inline ComplexMatrix ghz_with_noise(double p) {
  return mix_white_noise(projector(ghz_basis_state(1, GhzSign::Plus)), p);
}

// A named state together with its party structure.
struct NamedState {
  std::string family;
  std::vector<double> params;
  ComplexMatrix rho;
  PartyStructure parties;
};

// Family names: chi, rho-sym, rho-act, werner, ice-s, ice-u, rho1, rho2, ghz-noise.
inline NamedState make_family(const std::string& name, const std::vector<double>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw std::invalid_argument("family '" + name + "' expects " + std::to_string(n) + " parameter(s)");
    }
  };
  NamedState s{name, params, {}, PartyStructure::qubits(3)};
  if (name == "chi") {
    need(4);
    s.rho = make_chi({params[0], params[1], params[2], params[3]});
  } else if (name == "rho-sym") {
    need(0);
    s.rho = rho_sym();
  } else if (name == "rho-act") {
    need(0);
    s.rho = rho_act();
  } else if (name == "werner") {
    need(1);
    s.rho = werner(params[0]);
    s.parties = PartyStructure::qubits(2);
  } else if (name == "ice-s") {
    need(1);
    s.rho = ice_symmetric(params[0]);
  } else if (name == "ice-u") {
    need(1);
    s.rho = ice_unsymmetric(params[0]);
  } else if (name == "rho1") {
    need(2);
    s.rho = ghz_diagonal_matrix(rho1_weights(params[0], params[1]));
  } else if (name == "rho2") {
    need(2);
    s.rho = ghz_diagonal_matrix(rho2_weights(params[0], params[1]));
  } else if (name == "ghz-noise") {
    need(1);
    s.rho = ghz_with_noise(params[0]);
  } else {
    throw std::invalid_argument("unknown state family '" + name + "'");
  }
  return s;
}

// Parses "name" or "name:a,b,c".
inline NamedState parse_state_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad number '" + tok + "' in state spec");
      }
      if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "' in state spec");
      params.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return make_family(name, params);
}

}  // namespace gmeact
