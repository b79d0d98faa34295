#pragma once

#include <utility>
#include <vector>

#include "curvedef/unipoly.hpp"

namespace curvedef {

/// Rectangular matrix of exact univariate polynomials (all in the same variable).
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

  static PolyMatrix identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = UniPoly::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  UniPoly& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const UniPoly& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    require(a.cols_ == b.rows_, ErrKind::InvalidInput, "matrix shape mismatch");
    PolyMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<UniPoly> e_;
};

namespace detail {

/// Scalar determinant over the Gaussian rationals by Gaussian elimination.
inline GaussRat det_scalar(std::vector<std::vector<GaussRat>> a) {
  const int n = static_cast<int>(a.size());
  GaussRat det(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!a[r][c].is_zero()) { piv = r; break; }
    if (piv < 0) return GaussRat(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    GaussRat inv = a[c][c].inv();
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      GaussRat f = a[r][c] * inv;
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Exact polynomial interpolation (Newton's divided differences).
inline UniPoly interpolate(const std::vector<GaussRat>& xs, const std::vector<GaussRat>& ys) {
  const size_t n = xs.size();
  std::vector<GaussRat> dd(ys);
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  UniPoly p;
  UniPoly basis = UniPoly::one();
  for (size_t i = 0; i < n; ++i) {
    p += dd[i] * basis;
    basis *= UniPoly(std::vector<GaussRat>{-xs[i], GaussRat(1)});
  }
  return p;
}

inline std::vector<GaussRat> sample_points(int count) {
  std::vector<GaussRat> xs;
  xs.reserve(static_cast<size_t>(count));
  xs.emplace_back(Rat(0));
  for (int k = 1; static_cast<int>(xs.size()) < count; ++k) {
    xs.emplace_back(Rat(k));
    if (static_cast<int>(xs.size()) < count) xs.emplace_back(Rat(-k));
  }
  return xs;
}

}  // namespace detail

/// Exact determinant by evaluation/interpolation: scalar determinants at
/// enough sample points, then Newton interpolation back to a polynomial.
inline UniPoly det(const PolyMatrix& m) {
  require(m.rows() == m.cols(), ErrKind::InvalidInput, "determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return UniPoly::one();
  int deg_bound = 0;
  for (int i = 0; i < n; ++i) {
    int row_max = 0;
    for (int j = 0; j < n; ++j) row_max = std::max(row_max, std::max(0, m.at(i, j).degree()));
    deg_bound += row_max;
  }
  auto xs = detail::sample_points(deg_bound + 1);
  std::vector<GaussRat> ys(xs.size());
  for (size_t s = 0; s < xs.size(); ++s) {
    std::vector<std::vector<GaussRat>> a(static_cast<size_t>(n), std::vector<GaussRat>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.at(i, j).eval(xs[s]);
    ys[s] = detail::det_scalar(std::move(a));
  }
  return detail::interpolate(xs, ys);
}

struct SmithResult {
  PolyMatrix U, D, V;       // U*M*V = D
  PolyMatrix Uinv, Vinv;    // exact inverses of the unimodular factors
};

/// Smith normal form over Q(i)[z]: U*M*V = D with U, V unimodular and D
/// diagonal with monic entries d_1 | d_2 | ... ; requires M square and
/// nonsingular (singular input raises rank-deficient with the computed rank).
inline SmithResult smith_normal_form(const PolyMatrix& m) {
  require(m.rows() == m.cols(), ErrKind::InvalidInput, "smith_normal_form: non-square matrix");
  const int n = m.rows();
  PolyMatrix A = m;
  PolyMatrix U = PolyMatrix::identity(n), Uinv = PolyMatrix::identity(n);
  PolyMatrix V = PolyMatrix::identity(n), Vinv = PolyMatrix::identity(n);

  auto swap_rows = [&](int i, int k) {
    if (i == k) return;
    for (int j = 0; j < n; ++j) {
      std::swap(A.at(i, j), A.at(k, j));
      std::swap(U.at(i, j), U.at(k, j));
      std::swap(Uinv.at(j, i), Uinv.at(j, k));
    }
  };
  auto swap_cols = [&](int i, int k) {
    if (i == k) return;
    for (int j = 0; j < n; ++j) {
      std::swap(A.at(j, i), A.at(j, k));
      std::swap(V.at(j, i), V.at(j, k));
      std::swap(Vinv.at(i, j), Vinv.at(k, j));
    }
  };
  // row_i -= q * row_t
  auto row_sub = [&](int i, int t, const UniPoly& q) {
    if (q.is_zero()) return;
    for (int j = 0; j < n; ++j) {
      A.at(i, j) -= q * A.at(t, j);
      U.at(i, j) -= q * U.at(t, j);
      Uinv.at(j, t) += q * Uinv.at(j, i);
    }
  };
  // col_j -= q * col_t
  auto col_sub = [&](int j, int t, const UniPoly& q) {
    if (q.is_zero()) return;
    for (int i = 0; i < n; ++i) {
      A.at(i, j) -= q * A.at(i, t);
      V.at(i, j) -= q * V.at(i, t);
      Vinv.at(t, i) += q * Vinv.at(j, i);
    }
  };
  auto scale_row = [&](int t, const GaussRat& u) {
    for (int j = 0; j < n; ++j) {
      A.at(t, j) = u * A.at(t, j);
      U.at(t, j) = u * U.at(t, j);
      Uinv.at(j, t) = u.inv() * Uinv.at(j, t);
    }
  };

  for (int t = 0; t < n; ++t) {
    // Pivot: nonzero entry of minimal degree in the trailing submatrix.
    int pr = -1, pc = -1, best = -1;
    for (int i = t; i < n; ++i)
      for (int j = t; j < n; ++j)
        if (!A.at(i, j).is_zero() && (best < 0 || A.at(i, j).degree() < best)) {
          best = A.at(i, j).degree();
          pr = i;
          pc = j;
        }
    if (pr < 0) throw Error(ErrKind::RankDeficient, "singular matrix in smith_normal_form").with_rank(t);
    swap_rows(pr, t);
    swap_cols(pc, t);

    for (bool clean = false; !clean;) {
      clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (A.at(i, t).is_zero()) continue;
        auto [q, r] = A.at(i, t).divmod(A.at(t, t));
        row_sub(i, t, q);
        if (!r.is_zero()) {
          swap_rows(i, t);  // remainder has lower degree, becomes the pivot
          clean = false;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (A.at(t, j).is_zero()) continue;
        auto [q, r] = A.at(t, j).divmod(A.at(t, t));
        col_sub(j, t, q);
        if (!r.is_zero()) {
          swap_cols(j, t);
          clean = false;
        }
      }
      if (!clean) continue;
      // Pivot must divide the whole trailing block; if not, pull the bad row in.
      for (int i = t + 1; i < n && clean; ++i)
        for (int j = t + 1; j < n && clean; ++j)
          if (!(A.at(i, j) % A.at(t, t)).is_zero()) {
            row_sub(t, i, UniPoly(GaussRat(-1)));  // row_t += row_i
            clean = false;
          }
    }
    scale_row(t, A.at(t, t).lead().inv());
  }

  return SmithResult{U, A, V, Uinv, Vinv};
}

}  // namespace curvedef
