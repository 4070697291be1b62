#include "universefan/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace uf {

Int dot(const VecI& a, const VecI& b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const VecQ& a, const VecI& b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

VecI primitive(VecI v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

int rank(MatQ m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    std::swap(m[r], m[pivot]);
    for (int i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

int rank_int(const MatI& m) {
  MatQ q(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    q[i].assign(m[i].begin(), m[i].end());
  return rank(std::move(q));
}

Int det(MatI m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  assert(static_cast<int>(m[0].size()) == n);
  // Bareiss fraction-free elimination.
  Int denom = 1;
  int sgn = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) { pivot = i; break; }
      if (pivot < 0) return 0;
      std::swap(m[k], m[pivot]);
      sgn = -sgn;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / denom;
      }
    denom = m[k][k];
  }
  return sgn > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

Int lattice_index(MatI m) {
  // Smith normal form by gcd-driven elimination; the matrix is small.
  std::size_t rows = m.size();
  if (rows == 0) return 1;
  std::size_t cols = m[0].size();
  Int result = 1;
  std::size_t r = 0, c = 0;
  while (r < rows && c < cols) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = r; i < rows && pi == rows; ++i)
      for (std::size_t j = c; j < cols; ++j)
        if (m[i][j] != 0) { pi = i; pj = j; break; }
    if (pi == rows) break;
    std::swap(m[r], m[pi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pj]);
    // Reduce until m[r][c] divides its row and column, then clear.
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        while (m[i][c] != 0) {
          Int q = m[i][c] / m[r][c];
          for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
          if (m[i][c] != 0) {
            std::swap(m[r], m[i]);
            again = true;
          }
        }
      }
      for (std::size_t j = c + 1; j < cols; ++j) {
        while (m[r][j] != 0) {
          Int q = m[r][j] / m[r][c];
          for (std::size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
          if (m[r][j] != 0) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][j]);
            again = true;
          }
        }
      }
    }
    result *= abs(m[r][c]);
    ++r;
    ++c;
  }
  return result;
}

std::optional<VecQ> solve_in_rows(const MatI& rows, const VecI& b) {
  std::size_t m = rows.size();
  if (b.empty()) return VecQ(m, Rat(0));
  std::size_t n = b.size();
  // Augmented system: columns are the unknown coefficients.
  MatQ a(n, VecQ(m + 1, Rat(0)));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) a[i][j] = Rat(rows[j][i]);
  for (std::size_t i = 0; i < n; ++i) a[i][m] = Rat(b[i]);

  std::vector<int> pivot_col(n, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = r; i < n; ++i)
      if (a[i][c] != 0) { p = i; break; }
    if (p == n) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (std::size_t j = c; j <= m; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col[r] = static_cast<int>(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (a[i][m] != 0) return std::nullopt;
  VecQ x(m, Rat(0));
  for (std::size_t i = 0; i < r; ++i)
    x[pivot_col[i]] = a[i][m] / a[i][pivot_col[i]];
  return x;
}

namespace {

// Phase-1 simplex on: find lambda >= 0 with lambda^T rows = b.
// Tiny dense exact implementation with Bland's rule.
bool simplex_feasible(const MatI& rows, const VecI& b) {
  std::size_t m = rows.size();
  std::size_t n = b.size();
  if (m == 0) {
    for (const Int& x : b)
      if (x != 0) return false;
    return true;
  }
  // Equalities sum_j lambda_j rows[j][i] = b[i]; make rhs nonnegative, add
  // artificial variables, minimize their sum.
  std::size_t cols = m + n;  // lambda's + artificials
  MatQ t(n + 1, VecQ(cols + 1, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    int s = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < m; ++j) t[i][j] = Rat(s * rows[j][i]);
    t[i][m + i] = 1;
    t[i][cols] = Rat(s * b[i]);
  }
  // Objective row: minimize sum of artificials -> row = -sum of constraint rows
  for (std::size_t j = 0; j <= cols; ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < n; ++i) s += t[i][j];
    t[n][j] = -s;
  }
  for (std::size_t i = 0; i < n; ++i) t[n][m + i] = 0;

  std::vector<std::size_t> basis(n);
  for (std::size_t i = 0; i < n; ++i) basis[i] = m + i;

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (t[n][j] < 0) { enter = j; break; }  // Bland
    if (enter == cols) break;
    std::size_t leave = n;
    Rat best;
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][cols] / t[i][enter];
      if (leave == n || ratio < best ||
          (ratio == best && basis[i] < basis[leave]))
        { leave = i; best = ratio; }
    }
    if (leave == n) break;  // unbounded; cannot happen for phase 1
    Rat piv = t[leave][enter];
    for (std::size_t j = 0; j <= cols; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return -t[n][cols] == 0;
}

}  // namespace

bool in_nonneg_row_span(const MatI& rows, const VecI& b) {
  return simplex_feasible(rows, b);
}

}  // namespace uf
