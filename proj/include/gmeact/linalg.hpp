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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "tolerances.hpp"

// Dense linear algebra over small multipartite spaces.
//
// Index convention: a composite index over subsystems (d_0, ..., d_{n-1}) is
// row-major with subsystem 0 most significant. Multi-copy operators group
// subsystems party-major; inside a party the copy index is innermost, so two
// copies of a three-qubit state are ordered A1 A2 B1 B2 C1 C2.

namespace gmeact {

using cplx = std::complex<double>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
T conj_of(const T& x) {
  if constexpr (is_complex<T>::value) {
    return std::conj(x);
  } else {
    return x;
  }
}

// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(std::span<const T> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  Matrix& operator/=(const T& s) {
    for (auto& x : data_) x /= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator/(Matrix a, const T& s) { return a /= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        const T* brow = &b.data_[k * b.cols_];
        T* orow = &out.data_[i * out.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;
using ComplexVector = std::vector<cplx>;

// Local dimensions of the parties an operator acts on.
class PartyStructure {
 public:
  PartyStructure() = default;
  explicit PartyStructure(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("party structure needs at least one party");
    for (auto d : dims_) {
      if (d == 0 || (d & (d - 1)) != 0) {
        throw std::invalid_argument("party dimension " + std::to_string(d) + " is not a power of two");
      }
    }
  }
  PartyStructure(std::initializer_list<std::size_t> dims)
      : PartyStructure(std::vector<std::size_t>(dims)) {}

  // n parties of 2^copies dimensions each.
  static PartyStructure qubits(std::size_t parties, std::size_t copies = 1) {
    return PartyStructure(std::vector<std::size_t>(parties, std::size_t{1} << copies));
  }

  std::size_t count() const { return dims_.size(); }
  std::size_t dim(std::size_t party) const { return dims_.at(party); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
  }

  friend bool operator==(const PartyStructure&, const PartyStructure&) = default;

 private:
  std::vector<std::size_t> dims_;
};

// Kronecker product with a's indices major.
template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      if (aij == T{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

template <typename T>
std::vector<T> kron(std::span<const T> a, std::span<const T> b) {
  std::vector<T> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

template <typename T>
std::vector<T> kron(const std::vector<T>& a, const std::vector<T>& b) {
  return kron(std::span<const T>(a), std::span<const T>(b));
}

// Entrywise (Hadamard/Schur) product.
template <typename T>
Matrix<T> schur_product(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("schur_product: shapes differ");
  Matrix<T> out(a.rows(), a.cols());
  auto o = out.data();
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] * y[i];
  return out;
}

template <typename T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = conj_of(a(i, j));
  return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

template <typename T>
T trace(const Matrix<T>& a) {
  T t{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

template <typename T>
double frobenius_norm(const Matrix<T>& a) {
  double s = 0;
  for (const auto& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

// Largest |a_ij - conj(a_ji)|.
inline double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.is_square()) return INFINITY;
  double worst = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

inline ComplexMatrix outer(std::span<const cplx> ket, std::span<const cplx> bra) {
  ComplexMatrix m(ket.size(), bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

inline ComplexMatrix projector(std::span<const cplx> v) { return outer(v, v); }

inline ComplexVector matvec(const ComplexMatrix& m, std::span<const cplx> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("matvec: dimension mismatch");
  ComplexVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner: dimension mismatch");
  cplx s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm(std::span<const cplx> v) {
  double s = 0;
  for (auto x : v) s += std::norm(x);
  return std::sqrt(s);
}

// <v|m|v>
inline cplx expectation(const ComplexMatrix& m, std::span<const cplx> v) {
  return inner(v, matvec(m, v));
}

// Trace of a*b without forming the product.
template <typename T>
T trace_product(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionMismatch("trace_product: shapes differ");
  T s{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

namespace detail {

inline std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

inline void check_parties(const PartyStructure& ps, std::span<const std::size_t> parties) {
  for (auto p : parties)
    if (p >= ps.count()) throw std::invalid_argument("party index out of range");
}

// For every composite index, the part of it carried by the selected parties.
inline std::vector<std::size_t> party_offsets(const PartyStructure& ps, std::span<const std::size_t> parties) {
  const auto& dims = ps.dims();
  const auto strides = strides_of(dims);
  std::vector<bool> selected(dims.size(), false);
  for (auto p : parties) selected[p] = true;
  std::vector<std::size_t> out(ps.total());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
      if (selected[k]) off += ((idx / strides[k]) % dims[k]) * strides[k];
    out[idx] = off;
  }
  return out;
}

// Map from new composite index to old one when subsystem j of the result is
// subsystem perm[j] of the input.
inline std::vector<std::size_t> permutation_index_map(const std::vector<std::size_t>& dims,
                                                      const std::vector<std::size_t>& perm) {
  if (perm.size() != dims.size()) throw DimensionMismatch("permutation length differs from subsystem count");
  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t j = 0; j < perm.size(); ++j) new_dims[j] = dims.at(perm[j]);
  const auto old_strides = strides_of(dims);
  const auto new_strides = strides_of(new_dims);
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  std::vector<std::size_t> map(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t old = 0;
    for (std::size_t j = 0; j < perm.size(); ++j) old += ((idx / new_strides[j]) % new_dims[j]) * old_strides[perm[j]];
    map[idx] = old;
  }
  return map;
}

}  // namespace detail

// Transposes the indices of the listed parties.
template <typename T>
Matrix<T> partial_transpose(const Matrix<T>& op, const PartyStructure& ps, std::span<const std::size_t> parties) {
  if (!op.is_square() || op.rows() != ps.total()) throw DimensionMismatch("partial_transpose: operator does not match parties");
  detail::check_parties(ps, parties);
  const auto off = detail::party_offsets(ps, parties);
  Matrix<T> out(op.rows(), op.cols());
  for (std::size_t r = 0; r < op.rows(); ++r)
    for (std::size_t c = 0; c < op.cols(); ++c) out(r - off[r] + off[c], c - off[c] + off[r]) = op(r, c);
  return out;
}

template <typename T>
Matrix<T> partial_transpose(const Matrix<T>& op, const PartyStructure& ps, std::initializer_list<std::size_t> parties) {
  return partial_transpose(op, ps, std::span<const std::size_t>(parties.begin(), parties.size()));
}

// Traces out the listed parties; the result acts on the remaining ones in order.
template <typename T>
Matrix<T> partial_trace(const Matrix<T>& op, const PartyStructure& ps, std::span<const std::size_t> parties) {
  if (!op.is_square() || op.rows() != ps.total()) throw DimensionMismatch("partial_trace: operator does not match parties");
  detail::check_parties(ps, parties);
  const auto& dims = ps.dims();
  const auto strides = detail::strides_of(dims);
  std::vector<bool> traced(dims.size(), false);
  for (auto p : parties) traced[p] = true;
  std::vector<std::size_t> kept_dims, kept_strides, gone_dims, gone_strides;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    (traced[k] ? gone_dims : kept_dims).push_back(dims[k]);
    (traced[k] ? gone_strides : kept_strides).push_back(strides[k]);
  }
  auto embed = [](std::size_t idx, const std::vector<std::size_t>& sub_dims, const std::vector<std::size_t>& full_strides) {
    std::size_t full = 0;
    for (std::size_t k = sub_dims.size(); k-- > 0;) {
      full += (idx % sub_dims[k]) * full_strides[k];
      idx /= sub_dims[k];
    }
    return full;
  };
  std::size_t kept_total = 1, gone_total = 1;
  for (auto d : kept_dims) kept_total *= d;
  for (auto d : gone_dims) gone_total *= d;
  std::vector<std::size_t> kept_off(kept_total), gone_off(gone_total);
  for (std::size_t i = 0; i < kept_total; ++i) kept_off[i] = embed(i, kept_dims, kept_strides);
  for (std::size_t i = 0; i < gone_total; ++i) gone_off[i] = embed(i, gone_dims, gone_strides);
  Matrix<T> out(kept_total, kept_total);
  for (std::size_t r = 0; r < kept_total; ++r)
    for (std::size_t c = 0; c < kept_total; ++c) {
      T s{};
      for (auto g : gone_off) s += op(kept_off[r] + g, kept_off[c] + g);
      out(r, c) = s;
    }
  return out;
}

template <typename T>
Matrix<T> partial_trace(const Matrix<T>& op, const PartyStructure& ps, std::initializer_list<std::size_t> parties) {
  return partial_trace(op, ps, std::span<const std::size_t>(parties.begin(), parties.size()));
}

// Reorders tensor factors: subsystem j of the result is subsystem perm[j] of op.
template <typename T>
Matrix<T> permute_subsystems(const Matrix<T>& op, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  const auto map = detail::permutation_index_map(dims, perm);
  if (op.rows() != map.size() || !op.is_square()) throw DimensionMismatch("permute_subsystems: operator does not match dims");
  Matrix<T> out(op.rows(), op.cols());
  for (std::size_t r = 0; r < op.rows(); ++r)
    for (std::size_t c = 0; c < op.cols(); ++c) out(r, c) = op(map[r], map[c]);
  return out;
}

template <typename T>
std::vector<T> permute_subsystems(std::span<const T> v, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  const auto map = detail::permutation_index_map(dims, perm);
  if (v.size() != map.size()) throw DimensionMismatch("permute_subsystems: vector does not match dims");
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[map[i]];
  return out;
}

namespace detail {

// Subsystem order (a_0, b_0, a_1, b_1, ...) for kron(a, b) with n parties each.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> interleave(const PartyStructure& pa,
                                                                                const PartyStructure& pb) {
  if (pa.count() != pb.count()) throw DimensionMismatch("party_kron: party counts differ");
  const std::size_t n = pa.count();
  std::vector<std::size_t> dims(pa.dims());
  dims.insert(dims.end(), pb.dims().begin(), pb.dims().end());
  std::vector<std::size_t> perm;
  for (std::size_t k = 0; k < n; ++k) {
    perm.push_back(k);
    perm.push_back(n + k);
  }
  return {dims, perm};
}

}  // namespace detail

inline PartyStructure party_product(const PartyStructure& pa, const PartyStructure& pb) {
  if (pa.count() != pb.count()) throw DimensionMismatch("party_product: party counts differ");
  std::vector<std::size_t> d(pa.count());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = pa.dim(k) * pb.dim(k);
  return PartyStructure(d);
}

// a ⊗ b regrouped party-wise: party k of the result is (a_k, b_k) with a_k major.
template <typename T>
Matrix<T> party_kron(const Matrix<T>& a, const PartyStructure& pa, const Matrix<T>& b, const PartyStructure& pb) {
  if (a.rows() != pa.total() || b.rows() != pb.total()) throw DimensionMismatch("party_kron: operator does not match parties");
  auto [dims, perm] = detail::interleave(pa, pb);
  return permute_subsystems(kron(a, b), dims, perm);
}

template <typename T>
std::vector<T> party_kron(std::span<const T> a, const PartyStructure& pa, std::span<const T> b, const PartyStructure& pb) {
  if (a.size() != pa.total() || b.size() != pb.total()) throw DimensionMismatch("party_kron: vector does not match parties");
  auto [dims, perm] = detail::interleave(pa, pb);
  const auto joint = kron(a, b);
  return permute_subsystems(std::span<const T>(joint), dims, perm);
}

// op ⊗ op ⊗ ... (n factors)
template <typename T>
Matrix<T> kron_power(const Matrix<T>& op, std::size_t n) {
  if (n == 0) throw std::invalid_argument("kron_power: n must be at least 1");
  Matrix<T> acc = op;
  for (std::size_t i = 1; i < n; ++i) acc = kron(acc, op);
  return acc;
}

// k-fold tensor power with copies innermost inside each party.
template <typename T>
Matrix<T> tensor_power(const Matrix<T>& op, const PartyStructure& ps, std::size_t k) {
  if (k == 0) throw std::invalid_argument("tensor_power: k must be at least 1");
  Matrix<T> acc = op;
  PartyStructure acc_ps = ps;
  for (std::size_t i = 1; i < k; ++i) {
    acc = party_kron(acc, acc_ps, op, ps);
    acc_ps = party_product(acc_ps, ps);
  }
  return acc;
}

inline PartyStructure power_structure(const PartyStructure& ps, std::size_t k) {
  PartyStructure acc = ps;
  for (std::size_t i = 1; i < k; ++i) acc = party_product(acc, ps);
  return acc;
}

// Eigendecomposition of a Hermitian matrix. Columns of `vectors` are the
// eigenvectors, ordered by ascending eigenvalue.
struct EigDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;

  ComplexVector vector(std::size_t i) const {
    ComplexVector v(vectors.rows());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = vectors(r, i);
    return v;
  }
};

// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
// element, then applies a real Givens rotation that zeroes it.
inline EigDecomposition hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_square()) throw DimensionMismatch("hermitian_eig: matrix is not square");
  const double scale = std::max(1.0, frobenius_norm(h));
  if (hermiticity_defect(h) > tol::kHermiticity * scale) throw std::invalid_argument("hermitian_eig: input is not Hermitian");
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm2 = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return 2 * s;
  };
  const double target = 1e-30 * scale * scale;
  for (int sweep = 0; sweep < 100 && off_norm2() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        if (sweep > 3 && mag < 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = a(q, p) = 0;
          continue;
        }
        const cplx phase = apq / mag;  // e^{i phi}
        const double tau = (aqq - app) / (2 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = t * c;
        // J = diag-phase * rotation; columns p, q of J.
        const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.values[col] = a(src, src).real();
    // Fix the phase so that the first significant component is real positive.
    cplx phase = 1;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r, src)) > 1e-8) {
        phase = std::conj(v(r, src)) / std::abs(v(r, src));
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, col) = v(r, src) * phase;
  }
  return out;
}

inline double min_eigenvalue(const ComplexMatrix& h) { return hermitian_eig(h).values.front(); }

inline ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

// Basis vector |index> in dimension dim.
inline ComplexVector basis_vector(std::size_t dim, std::size_t index) {
  ComplexVector v(dim, 0.0);
  v.at(index) = 1.0;
  return v;
}

}  // namespace gmeact
