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
#include <cstddef>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "tolerances.hpp"

// Two-phase revised simplex for
//   minimize c.x  subject to  A x = b,  x_j >= lower_j  (lower_j may be -inf).

namespace gmeact {

struct LinearProgram {
  std::vector<double> objective;
  RealMatrix a_eq;
  std::vector<double> b_eq;
  std::vector<double> lower;  // -infinity marks a free variable; empty means all zero

  std::size_t variables() const { return objective.size(); }
  std::size_t constraints() const { return b_eq.size(); }

  void validate() const {
    if (a_eq.rows() != b_eq.size()) throw DimensionMismatch("LP: constraint rows differ from rhs length");
    if (a_eq.cols() != objective.size()) throw DimensionMismatch("LP: constraint columns differ from variable count");
    if (!lower.empty() && lower.size() != objective.size()) throw DimensionMismatch("LP: bound count differs from variable count");
    for (double v : a_eq.data())
      if (!std::isfinite(v)) throw std::invalid_argument("LP: non-finite constraint entry");
  }
};

enum class PivotRule {
  Bland,      // smallest-index entering variable throughout
  Dantzig,    // most negative reduced cost; falls back to Bland on degenerate streaks
};

struct LpOptions {
  PivotRule rule = PivotRule::Dantzig;
  std::size_t max_pivots = 200000;
  std::size_t degenerate_streak = 50;
  double perturbation = 1e-7;  // relative size of the anti-degeneracy shift; 0 disables
};

struct LpSolution {
  double optimum = 0;
  std::vector<double> x;      // primal solution in the caller's variables
  std::vector<double> duals;  // one per equality row; c - A^T y is the reduced cost
  double primal_residual = 0;       // max |A x - b|
  double bound_violation = 0;       // max (lower - x)_+
  double dual_infeasibility = 0;    // max violation of the reduced-cost sign conditions
  double duality_gap = 0;           // |c.x - (b.y + lower-bound terms)|
  std::size_t pivots = 0;
};

namespace detail {

// Solves M z = r (or M^T z = r) by Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(RealMatrix m, std::vector<double> r) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(m(i, col)) > std::abs(m(piv, col))) piv = i;
    if (std::abs(m(piv, col)) < 1e-300) throw InvariantViolation("LP: singular basis matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      std::swap(r[piv], r[col]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = m(i, col) / m(col, col);
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
      r[i] -= f * r[col];
    }
  }
  std::vector<double> z(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = r[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * z[j];
    z[i] = s / m(i, i);
  }
  return z;
}

// Inverts a square matrix by Gauss-Jordan elimination with partial pivoting.
inline RealMatrix dense_inverse(RealMatrix m) {
  const std::size_t n = m.rows();
  RealMatrix inv = RealMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(m(i, col)) > std::abs(m(piv, col))) piv = i;
    if (std::abs(m(piv, col)) < 1e-300) throw InvariantViolation("LP: singular basis matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double d = 1.0 / m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) *= d;
      inv(col, j) *= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = m(i, col);
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Revised simplex on min c.x, A x = b (b >= 0), x >= 0, with one artificial
// column per row for phase 1. Columns are stored sparsely; the basis inverse
// is kept explicitly and rebuilt from scratch at a fixed pivot interval.
class RevisedSimplex {
 public:
  RevisedSimplex(const RealMatrix& a, const std::vector<double>& b, const std::vector<double>& c, const LpOptions& opt)
      : m_(a.rows()), n_(a.cols()), opt_(opt), b_(b), b_true_(b), c_(c) {
    cols_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < m_; ++i)
        if (a(i, j) != 0) cols_[j].push_back({i, a(i, j)});
    basis_.resize(m_);
    is_basic_.assign(n_ + m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      is_basic_[n_ + i] = true;
    }
    binv_ = RealMatrix::identity(m_);
    xb_ = b_;
    // Crash: a column whose only entry is positive and sits in row i can
    // replace that row's artificial.
    for (std::size_t j = 0; j < n_; ++j) {
      if (cols_[j].size() != 1 || cols_[j][0].value <= 0) continue;
      const std::size_t i = cols_[j][0].row;
      if (basis_[i] < n_) continue;
      is_basic_[basis_[i]] = false;
      basis_[i] = j;
      is_basic_[j] = true;
      binv_(i, i) = 1.0 / cols_[j][0].value;
      xb_[i] = b_[i] / cols_[j][0].value;
    }
  }

  // Phase 1 then phase 2. Returns false when infeasible.
  bool solve() {
    phase_ = 1;
    run();
    double infeas = 0, scale = 1;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeas += xb_[i];
      scale = std::max(scale, std::abs(b_[i]));
    }
    if (infeas > tol::kLpFeasibility * scale) return false;
    drive_out_artificials();
    phase_ = 2;
    refactor();
    // Degenerate vertices stall the primal method; shift the basic values by
    // small deterministic amounts (equivalent to b + B delta), optimize, then
    // restore b and repair any slightly negative basics with dual pivots.
    if (opt_.perturbation > 0) {
      std::mt19937_64 gen(0x5eed);
      std::uniform_real_distribution<double> u(0.5, 1.0);
      std::vector<double> delta(m_, 0.0);
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] < n_) delta[i] = opt_.perturbation * (1 + std::abs(xb_[i])) * u(gen);
      std::vector<double> shift(m_, 0.0);
      for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t j = basis_[i];
        if (j < n_)
          for (const auto& e : cols_[j]) shift[e.row] += e.value * delta[i];
      }
      for (std::size_t i = 0; i < m_; ++i) b_[i] += shift[i];
      refactor();
      run();
      b_ = b_true_;
      refactor();
      dual_repair();
    }
    run();
    refactor();
    return true;
  }

  std::vector<double> basic_solution() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, xb_[i]);
    return x;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t pivots() const { return pivots_; }

 private:
  struct Entry {
    std::size_t row;
    double value;
  };

  double cost(std::size_t j) const {
    if (phase_ == 1) return j >= n_ ? 1.0 : 0.0;
    return j >= n_ ? 0.0 : c_[j];
  }

  // alpha = B^{-1} A_j
  std::vector<double> column(std::size_t j) const {
    std::vector<double> alpha(m_, 0.0);
    if (j >= n_) {
      for (std::size_t i = 0; i < m_; ++i) alpha[i] = binv_(i, j - n_);
      return alpha;
    }
    for (const auto& e : cols_[j])
      for (std::size_t i = 0; i < m_; ++i) alpha[i] += binv_(i, e.row) * e.value;
    return alpha;
  }

  double objective() const {
    double v = 0;
    for (std::size_t i = 0; i < m_; ++i) v += cost(basis_[i]) * xb_[i];
    return v;
  }

  void refactor() {
    RealMatrix bm(m_, m_);
    for (std::size_t s = 0; s < m_; ++s) {
      const std::size_t j = basis_[s];
      if (j >= n_) {
        bm(j - n_, s) = 1.0;
      } else {
        for (const auto& e : cols_[j]) bm(e.row, s) = e.value;
      }
    }
    binv_ = dense_inverse(bm);
    for (std::size_t i = 0; i < m_; ++i) {
      double v = 0;
      for (std::size_t k = 0; k < m_; ++k) v += binv_(i, k) * b_[k];
      xb_[i] = v;
    }
    since_refactor_ = 0;
  }

  void run() {
    std::size_t streak = 0;
    std::vector<double> y(m_);
    double cscale = 1;
    if (phase_ == 2)
      for (double v : c_) cscale = std::max(cscale, std::abs(v));
    const double dtol = tol::kLpOptimality * cscale;
    double last_obj = objective();
    for (;;) {
      // y^T = c_B^T B^{-1}
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t s = 0; s < m_; ++s) {
        const double cb = cost(basis_[s]);
        if (cb == 0) continue;
        for (std::size_t k = 0; k < m_; ++k) y[k] += cb * binv_(s, k);
      }
      const bool bland = opt_.rule == PivotRule::Bland || streak >= opt_.degenerate_streak;
      std::size_t e = SIZE_MAX;
      double best = -dtol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        double dj = cost(j);
        for (const auto& en : cols_[j]) dj -= y[en.row] * en.value;
        if (dj < best) {
          e = j;
          if (bland) break;
          best = dj;
        }
      }
      if (e == SIZE_MAX) return;
      const auto alpha = column(e);
      // Ratio test; ties go to the smallest basic index.
      std::size_t r = m_;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (alpha[i] <= kPivotTolerance) continue;
        const double q = std::max(0.0, xb_[i]) / alpha[i];
        if (q < ratio - 1e-12) {
          r = i;
          ratio = q;
        } else if (q <= ratio + 1e-12 && basis_[i] < basis_[r]) {
          r = i;
        }
      }
      if (r == m_) throw LpUnbounded("LP objective is unbounded below");
      pivot(r, e, alpha, ratio);
      // Stalling is measured on the objective, not on single steps, so
      // tiny nondegenerate moves cannot flip the rule back and forth.
      const double obj = objective();
      if (obj < last_obj - 1e-11 * (1 + std::abs(last_obj))) {
        last_obj = obj;
        streak = 0;
      } else {
        ++streak;
      }
    }
  }

  void pivot(std::size_t r, std::size_t e, const std::vector<double>& alpha, double step) {
    for (std::size_t i = 0; i < m_; ++i) xb_[i] -= step * alpha[i];
    xb_[r] = step;
    const double inv = 1.0 / alpha[r];
    double* prow = &binv_(r, 0);
    for (std::size_t k = 0; k < m_; ++k) prow[k] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0) continue;
      const double f = alpha[i];
      double* row = &binv_(i, 0);
      for (std::size_t k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    is_basic_[basis_[r]] = false;
    is_basic_[e] = true;
    basis_[r] = e;
    ++pivots_;
    if (pivots_ > opt_.max_pivots) throw InvariantViolation("LP: pivot limit exceeded");
    if (++since_refactor_ >= kRefactorInterval) refactor();
  }

  // Dual simplex pivots until every basic value is nonnegative; the basis
  // stays dual feasible throughout.
  void dual_repair() {
    std::vector<double> y(m_);
    for (;;) {
      std::size_t r = m_;
      double worst = -1e-12;
      for (std::size_t i = 0; i < m_; ++i)
        if (xb_[i] < worst) {
          worst = xb_[i];
          r = i;
        }
      if (r == m_) return;
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t s = 0; s < m_; ++s) {
        const double cb = cost(basis_[s]);
        if (cb == 0) continue;
        for (std::size_t k = 0; k < m_; ++k) y[k] += cb * binv_(s, k);
      }
      std::size_t e = SIZE_MAX;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        double arj = 0, dj = cost(j);
        for (const auto& en : cols_[j]) {
          arj += binv_(r, en.row) * en.value;
          dj -= y[en.row] * en.value;
        }
        if (arj >= -kPivotTolerance) continue;
        const double q = std::max(0.0, dj) / -arj;
        if (q < best - 1e-14) {
          best = q;
          e = j;
        }
      }
      if (e == SIZE_MAX) throw LpInfeasible("LP is infeasible");
      const auto alpha = column(e);
      pivot(r, e, alpha, xb_[r] / alpha[r]);
    }
  }

  // Swaps zero-level artificials for real columns; rows where no real column
  // has weight are redundant and keep their artificial at zero.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      std::size_t e = SIZE_MAX;
      double big = 1e-7;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        double v = 0;
        for (const auto& en : cols_[j]) v += binv_(r, en.row) * en.value;
        if (std::abs(v) > big) {
          big = std::abs(v);
          e = j;
        }
      }
      if (e != SIZE_MAX) pivot(r, e, column(e), 0.0);
    }
  }

  static constexpr std::size_t kRefactorInterval = 1000;
  static constexpr double kPivotTolerance = 1e-7;

  std::size_t m_, n_;
  LpOptions opt_;
  std::vector<double> b_, b_true_, c_;
  std::vector<std::vector<Entry>> cols_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  RealMatrix binv_;
  std::vector<double> xb_;
  int phase_ = 1;
  std::size_t pivots_ = 0;
  std::size_t since_refactor_ = 0;
};

}  // namespace detail

// Solves the LP and re-derives primal and dual values from the final basis by
// direct linear solves, then checks both against the original data.
inline LpSolution lp_solve(const LinearProgram& lp, const LpOptions& opt = {}) {
  lp.validate();
  const std::size_t n = lp.variables(), m = lp.constraints();
  std::vector<double> lower = lp.lower.empty() ? std::vector<double>(n, 0.0) : lp.lower;

  // Column map: x_j = lower_j + u_j, or u+_j - u-_j for free variables.
  std::vector<std::size_t> pos(n), neg(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos[j] = cols++;
    if (std::isinf(lower[j])) {
      if (lower[j] > 0) throw std::invalid_argument("LP: lower bound +inf");
      neg[j] = cols++;
    }
  }
  RealMatrix a(m, cols);
  std::vector<double> b(lp.b_eq), c(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = lp.a_eq(i, j);
      a(i, pos[j]) = v;
      if (neg[j] != SIZE_MAX) a(i, neg[j]) = -v;
      if (!std::isinf(lower[j])) b[i] -= v * lower[j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    c[pos[j]] = lp.objective[j];
    if (neg[j] != SIZE_MAX) c[neg[j]] = -lp.objective[j];
  }
  std::vector<double> sign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      sign[i] = -1;
      b[i] = -b[i];
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = -a(i, j);
    }

  detail::RevisedSimplex tab(a, b, c, opt);
  if (!tab.solve()) throw LpInfeasible("LP is infeasible");

  // Refine from the basis: B u_B = b, B^T y = c_B.
  std::vector<std::size_t> rows, bcols;
  for (std::size_t i = 0; i < m; ++i) {
    rows.push_back(i);
    bcols.push_back(tab.basis()[i]);
  }
  const std::size_t k = rows.size();
  RealMatrix bm(k, k), bt(k, k);
  std::vector<double> rb(k), cb(k);
  for (std::size_t r = 0; r < k; ++r) {
    rb[r] = b[rows[r]];
    cb[r] = bcols[r] < cols ? c[bcols[r]] : 0.0;
    for (std::size_t s = 0; s < k; ++s) {
      const std::size_t col = bcols[s];
      const double v = col < cols ? a(rows[r], col) : (col - cols == rows[r] ? 1.0 : 0.0);
      bm(r, s) = v;
      bt(s, r) = v;
    }
  }
  std::vector<double> u(cols, 0.0);
  {
    const auto ub = detail::dense_solve(bm, rb);
    for (std::size_t s = 0; s < k; ++s)
      if (bcols[s] < cols) u[bcols[s]] = std::max(0.0, ub[s]);
  }
  std::vector<double> y_std(m, 0.0);
  {
    const auto yb = detail::dense_solve(bt, cb);
    for (std::size_t r = 0; r < k; ++r) y_std[rows[r]] = yb[r];
  }

  LpSolution sol;
  sol.pivots = tab.pivots();
  sol.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] = u[pos[j]];
    if (neg[j] != SIZE_MAX) sol.x[j] -= u[neg[j]];
    else sol.x[j] += lower[j];
  }
  sol.duals.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) sol.duals[i] = sign[i] * y_std[i];

  // Checks against the caller's formulation.
  sol.optimum = 0;
  for (std::size_t j = 0; j < n; ++j) sol.optimum += lp.objective[j] * sol.x[j];
  for (std::size_t i = 0; i < m; ++i) {
    double s = -lp.b_eq[i];
    for (std::size_t j = 0; j < n; ++j) s += lp.a_eq(i, j) * sol.x[j];
    sol.primal_residual = std::max(sol.primal_residual, std::abs(s));
  }
  double dual_obj = 0;
  for (std::size_t i = 0; i < m; ++i) dual_obj += lp.b_eq[i] * sol.duals[i];
  for (std::size_t j = 0; j < n; ++j) {
    sol.bound_violation = std::max(sol.bound_violation, std::isinf(lower[j]) ? 0.0 : lower[j] - sol.x[j]);
    double red = lp.objective[j];
    for (std::size_t i = 0; i < m; ++i) red -= lp.a_eq(i, j) * sol.duals[i];
    if (std::isinf(lower[j])) {
      sol.dual_infeasibility = std::max(sol.dual_infeasibility, std::abs(red));
    } else {
      sol.dual_infeasibility = std::max(sol.dual_infeasibility, -red);
      dual_obj += red * lower[j];
    }
  }
  sol.duality_gap = std::abs(sol.optimum - dual_obj);
  return sol;
}

}  // namespace gmeact
