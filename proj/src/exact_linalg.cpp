#include "levy/exact_linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace levy::exact {

namespace {

using boost::multiprecision::abs;

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Gaussian elimination to RREF in place; returns pivot columns.
std::vector<std::size_t> reduce(std::vector<RationalVector>& m, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t              r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

}  // namespace

Echelon rref(const std::vector<RationalVector>& vectors, std::size_t n) {
  std::vector<RationalVector> m;
  for (const auto& v : vectors) {
    if (v.size() != n) throw std::invalid_argument("rref: dimension mismatch");
    m.push_back(v);
  }
  auto pivots = reduce(m, n);
  return {std::move(m), std::move(pivots)};
}

std::vector<RationalVector> canonical_span(const std::vector<RationalVector>& vectors,
                                           std::size_t n) {
  return rref(vectors, n).rows;
}

std::size_t rank(const std::vector<RationalVector>& vectors, std::size_t n) {
  return rref(vectors, n).rows.size();
}

std::vector<RationalVector> nullspace(const std::vector<RationalVector>& rows, std::size_t n) {
  auto e = rref(rows, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return canonical_span(basis, n);
}

std::vector<RationalVector> intersect_spans(const std::vector<RationalVector>& a,
                                            const std::vector<RationalVector>& b,
                                            std::size_t n) {
  auto constraints = nullspace(a, n);
  auto more        = nullspace(b, n);
  constraints.insert(constraints.end(), more.begin(), more.end());
  return nullspace(constraints, n);
}

std::optional<RationalVector> coordinates(const std::vector<RationalVector>& basis,
                                          const RationalVector& x) {
  const std::size_t r = basis.size();
  const std::size_t n = x.size();
  // Augmented system: n equations sum_i c_i basis[i][row] = x[row].
  std::vector<RationalVector> aug(n, RationalVector(r + 1));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t i = 0; i < r; ++i) {
      if (basis[i].size() != n) throw std::invalid_argument("coordinates: dimension mismatch");
      aug[row][i] = basis[i][row];
    }
    aug[row][r] = x[row];
  }
  auto pivots = reduce(aug, r + 1);
  if (!pivots.empty() && pivots.back() == r) return std::nullopt;  // inconsistent
  if (pivots.size() != r) throw std::invalid_argument("coordinates: basis is dependent");
  RationalVector c(r);
  for (std::size_t i = 0; i < r; ++i) c[pivots[i]] = aug[i][r];
  return c;
}

RationalVector project_off(const RationalVector& x, const std::vector<RationalVector>& basis) {
  if (basis.empty()) return x;
  const std::size_t r = basis.size();
  // Gram system G c = B x.
  std::vector<RationalVector> aug(r, RationalVector(r + 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug[i][j] = dot(basis[i], basis[j]);
    aug[i][r] = dot(basis[i], x);
  }
  auto pivots = reduce(aug, r + 1);
  if (pivots.size() != r) throw std::invalid_argument("project_off: basis is dependent");
  RationalVector y = x;
  for (std::size_t i = 0; i < r; ++i) y = axpy(-aug[i][r], basis[pivots[i]], std::move(y));
  return y;
}

std::optional<RationalVector> particular_solution(const std::vector<RationalVector>& rows,
                                                  const RationalVector& rhs, std::size_t n) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("particular_solution: size mismatch");
  std::vector<RationalVector> aug;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("particular_solution: dimension mismatch");
    RationalVector r = rows[i];
    r.push_back(rhs[i]);
    aug.push_back(std::move(r));
  }
  auto pivots = reduce(aug, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  RationalVector x(n);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][n];
  return x;
}

Integer common_denominator(const std::vector<RationalVector>& vectors) {
  Integer d = 1;
  for (const auto& v : vectors)
    for (const auto& q : v) d = lcm(d, boost::multiprecision::denominator(q));
  return d;
}

IntegerRows hermite_normal_form(IntegerRows a, std::size_t n) {
  std::size_t p = 0;
  for (std::size_t c = 0; c < n && p < a.size(); ++c) {
    for (;;) {
      std::size_t best = a.size();
      for (std::size_t i = p; i < a.size(); ++i)
        if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) best = i;
      if (best == a.size()) break;
      std::swap(a[p], a[best]);
      bool clear = true;
      for (std::size_t i = p + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        Integer q = a[i][c] / a[p][c];
        for (std::size_t j = c; j < n; ++j) a[i][j] -= q * a[p][j];
        if (a[i][c] != 0) clear = false;
      }
      if (clear) break;
    }
    if (a[p][c] == 0) continue;
    if (a[p][c] < 0)
      for (auto& v : a[p]) v = -v;
    for (std::size_t i = 0; i < p; ++i) {
      Integer q = floor_div(a[i][c], a[p][c]);
      if (q == 0) continue;
      for (std::size_t j = c; j < n; ++j) a[i][j] -= q * a[p][j];
    }
    ++p;
  }
  a.resize(p);
  return a;
}

Smith smith_normal_form(const IntegerRows& input, std::size_t k) {
  const std::size_t m = input.size();
  IntegerRows       d = input;
  IntegerRows       u(m, IntegerVector(m));
  IntegerRows       v(k, IntegerVector(k));
  for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
  for (std::size_t i = 0; i < k; ++i) v[i][i] = 1;

  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& q) {  // row_dst -= q row_src
    for (std::size_t j = 0; j < k; ++j) d[dst][j] -= q * d[src][j];
    for (std::size_t j = 0; j < m; ++j) u[dst][j] -= q * u[src][j];
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& q) {  // col_dst -= q col_src
    for (std::size_t i = 0; i < m; ++i) d[i][dst] -= q * d[i][src];
    for (std::size_t i = 0; i < k; ++i) v[i][dst] -= q * v[i][src];
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    std::swap(d[a], d[b]);
    std::swap(u[a], u[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (auto& r : d) std::swap(r[a], r[b]);
    for (auto& r : v) std::swap(r[a], r[b]);
  };

  std::vector<Integer> invariants;
  for (std::size_t t = 0; t < std::min(m, k); ++t) {
    bool found = false;
    for (;;) {
      std::size_t bi = m, bj = k;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < k; ++j)
          if (d[i][j] != 0 && (bi == m || abs(d[i][j]) < abs(d[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == m) break;
      found = true;
      swap_rows(t, bi);
      swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (d[i][t] != 0) {
          row_op(i, t, d[i][t] / d[t][t]);
          if (d[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < k; ++j)
        if (d[t][j] != 0) {
          col_op(j, t, d[t][j] / d[t][t]);
          if (d[t][j] != 0) clean = false;
        }
      if (!clean) continue;
      // Divisibility: pull an offending row into row t and iterate.
      std::size_t offender = m;
      for (std::size_t i = t + 1; i < m && offender == m; ++i)
        for (std::size_t j = t + 1; j < k; ++j)
          if (d[i][j] % d[t][t] != 0) {
            offender = i;
            break;
          }
      if (offender == m) break;
      row_op(t, offender, Integer(-1));
    }
    if (!found) break;
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
    invariants.push_back(d[t][t]);
  }
  return {std::move(d), std::move(u), std::move(v), std::move(invariants)};
}

IntegerRows integer_kernel(const std::vector<RationalVector>& rows, std::size_t cols) {
  IntegerRows m;
  for (const auto& r : rows) {
    Integer       den = common_denominator({r});
    IntegerVector ir(cols);
    for (std::size_t j = 0; j < cols; ++j)
      ir[j] = boost::multiprecision::numerator(Rational(r[j] * den));
    m.push_back(std::move(ir));
  }
  IntegerRows kernel;
  if (m.empty()) {
    for (std::size_t i = 0; i < cols; ++i) {
      IntegerVector e(cols);
      e[i] = 1;
      kernel.push_back(std::move(e));
    }
    return kernel;
  }
  auto s = smith_normal_form(m, cols);
  for (std::size_t j = s.invariants.size(); j < cols; ++j) {
    IntegerVector col(cols);
    for (std::size_t i = 0; i < cols; ++i) col[i] = s.right[i][j];
    kernel.push_back(std::move(col));
  }
  return kernel;
}

}  // namespace levy::exact
