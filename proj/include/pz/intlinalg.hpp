// Small exact linear algebra over Z and Q: row echelon forms, kernels,
// inverses and the 2-row Hermite normal form used for value lattices.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pz/error.hpp"
#include "pz/gauss_rat.hpp"

namespace pz {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

inline Integer gcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer g = gcd(a, b);
  Integer r = a / g * b;
  return r < 0 ? Integer(-r) : r;
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
inline std::tuple<Integer, Integer, Integer> xgcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray with first nonzero entry positive.
inline std::vector<Integer> primitive_integer(std::span<const Rational> v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, denominator_of(x));
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    out.push_back(numerator_of(x) * (den / denominator_of(x)));
    g = gcd(g, out.back());
  }
  if (g == 0) throw Error(Errc::domain, "primitive_integer of the zero vector");
  int lead = 0;
  for (const auto& x : out)
    if (x != 0) {
      lead = x.sign();
      break;
    }
  for (auto& x : out) x = x / g * lead;
  return out;
}

/// Reduced row echelon form with leftmost pivots. Zero rows are dropped.
struct Echelon {
  Matrix<Rational> rows;
  std::vector<std::size_t> pivots;
};

inline Echelon rref(Matrix<Rational> m, std::size_t ncols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    Rational piv = m[r][col];
    for (auto& x : m[r]) x /= piv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = 0; j < ncols; ++j) m[i][j] -= f * m[r][j];
    }
    e.pivots.push_back(col);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

/// Integer basis of the right kernel, one primitive vector per free column.
inline std::vector<std::vector<Integer>> kernel_basis(const Echelon& e, std::size_t ncols) {
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Integer>> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    out.push_back(primitive_integer(v));
  }
  return out;
}

/// Inverse of a square rational matrix by Gauss-Jordan; nullopt if singular.
inline std::optional<Matrix<Rational>> inverse(const Matrix<Rational>& m) {
  const std::size_t n = m.size();
  Matrix<Rational> aug(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  Echelon e = rref(std::move(aug), 2 * n);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<Rational> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
  return inv;
}

/// Lower-triangular Hermite normal form of the lattice spanned by integer
/// column vectors (x_k, y_k): a basis (h11, h21), (0, h22) with h11 > 0,
/// h22 > 0 and 0 <= h21 < h22. Returns nullopt when the rank is below 2.
struct Hnf2 {
  Integer h11, h21, h22;
};

inline std::optional<Hnf2> hermite_normal_form_2(std::vector<std::pair<Integer, Integer>> cols) {
  // Fold the first row into a single column by extended gcd column operations.
  std::pair<Integer, Integer> first{0, 0};
  std::vector<Integer> rest_y;
  for (auto& col : cols) {
    if (col.first == 0) {
      rest_y.push_back(col.second);
      continue;
    }
    if (first.first == 0) {
      first = col;
      continue;
    }
    auto [g, s, t] = xgcd(first.first, col.first);
    // [first col] -> s*first + t*col has top g; the complementary
    // combination has top 0 and keeps the transform unimodular.
    std::pair<Integer, Integer> merged{g, s * first.second + t * col.second};
    Integer u = col.first / g, v = first.first / g;
    Integer zero_y = u * first.second - v * col.second;
    first = merged;
    rest_y.push_back(zero_y);
  }
  if (first.first == 0) return std::nullopt;
  if (first.first < 0) first = {-first.first, -first.second};
  Integer h22 = 0;
  for (auto& y : rest_y) h22 = gcd(h22, y);
  if (h22 == 0) return std::nullopt;
  Integer h21 = first.second % h22;
  if (h21 < 0) h21 += h22;
  return Hnf2{first.first, h21, h22};
}

}  // namespace pz
