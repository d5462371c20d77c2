#include "lagstab/exact_algebra.hpp"

#include <algorithm>
#include <utility>

#include "lagstab/errors.hpp"

namespace lagstab {

std::optional<int> val(const LaurentPoly& p) {
  if (p.is_zero()) return std::nullopt;
  return p.valuation();
}

int det_val(const LaurentMatrix& m) {
  const int d = m.dim();
  if (d == 0) return 0;
  const PrimeField f = m.field();
  const int minval = m.min_valuation();
  if (minval == kInfiniteValuation) throw SingularMatrix();

  // Bareiss over F_p[eps] after clearing negative exponents.
  std::vector<std::vector<LaurentPoly>> a(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(i)].push_back(m.at(i, j).shifted(-minval));
  }
  LaurentPoly prev = LaurentPoly::constant(f, 1);
  for (int k = 0; k < d; ++k) {
    auto& rk = a[static_cast<std::size_t>(k)];
    if (rk[static_cast<std::size_t>(k)].is_zero()) {
      int swap_row = -1;
      for (int i = k + 1; i < d; ++i) {
        if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].is_zero()) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) throw SingularMatrix();
      std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(swap_row)]);
    }
    const auto& pivot_row = a[static_cast<std::size_t>(k)];
    const LaurentPoly& pivot = pivot_row[static_cast<std::size_t>(k)];
    for (int i = k + 1; i < d; ++i) {
      auto& ri = a[static_cast<std::size_t>(i)];
      for (int j = k + 1; j < d; ++j) {
        LaurentPoly num = ri[static_cast<std::size_t>(j)] * pivot -
                          ri[static_cast<std::size_t>(k)] * pivot_row[static_cast<std::size_t>(j)];
        auto [q, r] = poly_divmod(num, prev);
        if (!r.is_zero()) throw Error("det_val: inexact Bareiss division");
        ri[static_cast<std::size_t>(j)] = std::move(q);
      }
      ri[static_cast<std::size_t>(k)] = LaurentPoly(f);
    }
    prev = pivot;
  }
  const LaurentPoly& det = a[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(d - 1)];
  if (det.is_zero()) throw SingularMatrix();
  return det.valuation() + d * minval;
}

int containment_precision(const LaurentMatrix& m) {
  return det_val(m) - (m.dim() - 1) * m.min_valuation();
}

HermiteForm hermite_over_o(PrimeField field, int d, std::vector<LaurentVector> generators,
                           int precision) {
  const int n = precision;
  std::vector<LaurentVector> active;
  active.reserve(generators.size());
  for (auto& g : generators) {
    if (static_cast<int>(g.size()) != d) throw InvalidArgument("hermite_over_o: bad generator length");
    bool nonzero = false;
    for (auto& e : g) {
      e = e.below(n);
      nonzero = nonzero || !e.is_zero();
    }
    if (nonzero) active.push_back(std::move(g));
  }
  // eps^n e_k stay explicit: eliminating them against a pivot leaves residues
  // in the rows above that are not multiples of eps^n.
  for (int k = 0; k < d; ++k) {
    LaurentVector e(static_cast<std::size_t>(d), LaurentPoly(field));
    e[static_cast<std::size_t>(k)] = LaurentPoly::monomial(field, n);
    active.push_back(std::move(e));
  }

  std::vector<LaurentVector> basis(static_cast<std::size_t>(d));
  std::vector<int> pivots(static_cast<std::size_t>(d), n);

  for (int r = d - 1; r >= 0; --r) {
    const auto ur = static_cast<std::size_t>(r);
    // Minimal valuation in row r, ties to the lowest column index.
    std::size_t best = active.size();
    int best_val = n;
    for (std::size_t c = 0; c < active.size(); ++c) {
      int v = active[c][ur].valuation();
      if (v < best_val) {
        best_val = v;
        best = c;
      }
    }
    if (best == active.size()) {
      LaurentVector e(static_cast<std::size_t>(d), LaurentPoly(field));
      e[ur] = LaurentPoly::monomial(field, n);
      basis[ur] = std::move(e);
      pivots[ur] = n;
      continue;
    }
    const int a = best_val;
    LaurentVector pc = std::move(active[best]);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));

    const LaurentPoly uinv = unit_inverse_mod(pc[ur].shifted(-a), n - a);
    for (int k = 0; k <= r; ++k) {
      auto& e = pc[static_cast<std::size_t>(k)];
      e = (e * uinv).below(n);
    }

    std::vector<LaurentVector> next;
    next.reserve(active.size());
    for (auto& col : active) {
      const LaurentPoly x = col[ur];
      if (!x.is_zero()) {
        const LaurentPoly q = x.shifted(-a);
        for (int k = 0; k <= r; ++k) {
          auto& e = col[static_cast<std::size_t>(k)];
          e = (e - q * pc[static_cast<std::size_t>(k)]).below(n);
        }
      }
      bool nonzero = false;
      for (int k = 0; k < r && !nonzero; ++k) nonzero = !col[static_cast<std::size_t>(k)].is_zero();
      if (nonzero) next.push_back(std::move(col));
    }
    active = std::move(next);
    basis[ur] = std::move(pc);
    pivots[ur] = a;
  }

  // Reduce entries above each pivot modulo the pivot power of their row.
  for (int i = 1; i < d; ++i) {
    auto& col = basis[static_cast<std::size_t>(i)];
    for (int s = i - 1; s >= 0; --s) {
      const auto us = static_cast<std::size_t>(s);
      const int as = pivots[us];
      LaurentPoly high = col[us].at_or_above(as);
      if (high.is_zero()) continue;
      const LaurentPoly q = high.shifted(-as);
      const auto& ref = basis[us];
      for (int k = 0; k <= s; ++k) {
        auto& e = col[static_cast<std::size_t>(k)];
        e = (e - q * ref[static_cast<std::size_t>(k)]).below(n);
      }
    }
  }

  return {LaurentMatrix::from_columns(field, basis), std::move(pivots)};
}

LaurentMatrix column_reduce_over_o(const LaurentMatrix& m) {
  const int precision = containment_precision(m);
  return hermite_over_o(m.field(), m.dim(), m.columns(), precision).basis;
}

std::vector<LaurentVector> kernel_saturation(const LaurentMatrix& m, const std::vector<int>& rows) {
  const int d = m.dim();
  const PrimeField f = m.field();
  (void)det_val(m);  // validates nonsingularity

  std::vector<LaurentVector> u(static_cast<std::size_t>(d));  // columns of U
  for (int j = 0; j < d; ++j) {
    u[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(d), LaurentPoly(f));
    u[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = LaurentPoly::constant(f, 1);
  }
  if (rows.empty()) return u;

  int minval = kInfiniteValuation;
  for (int r : rows) {
    if (r < 0 || r >= d) throw InvalidArgument("kernel_saturation: row out of range");
    for (int j = 0; j < d; ++j) minval = std::min(minval, m.at(r, j).valuation());
  }
  // a[j][i]: column j, restricted row i, as polynomials in F_p[eps].
  std::vector<LaurentVector> a(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    for (int r : rows) a[static_cast<std::size_t>(j)].push_back(m.at(r, j).shifted(-minval));
  }

  std::size_t k = 0;
  for (std::size_t i = 0; i < rows.size() && k < static_cast<std::size_t>(d); ++i) {
    while (true) {
      std::size_t best = static_cast<std::size_t>(d);
      for (std::size_t j = k; j < static_cast<std::size_t>(d); ++j) {
        if (a[j][i].is_zero()) continue;
        if (best == static_cast<std::size_t>(d) || a[j][i].top_exponent() < a[best][i].top_exponent()) best = j;
      }
      if (best == static_cast<std::size_t>(d)) break;
      std::swap(a[k], a[best]);
      std::swap(u[k], u[best]);
      bool done = true;
      for (std::size_t j = k + 1; j < static_cast<std::size_t>(d); ++j) {
        if (a[j][i].is_zero()) continue;
        const LaurentPoly q = poly_divmod(a[j][i], a[k][i]).first;
        for (std::size_t t = 0; t < rows.size(); ++t) a[j][t] -= q * a[k][t];
        for (std::size_t t = 0; t < static_cast<std::size_t>(d); ++t) u[j][t] -= q * u[k][t];
        if (!a[j][i].is_zero()) done = false;
      }
      if (done) {
        ++k;
        break;
      }
    }
  }
  return {u.begin() + static_cast<std::ptrdiff_t>(k), u.end()};
}

namespace fp {

std::size_t leading_index(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return i;
  }
  return v.size();
}

Mat rref(const PrimeField& f, Mat rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const std::uint32_t inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint32_t factor = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::size_t rank(const PrimeField& f, Mat rows) { return rref(f, std::move(rows)).size(); }

Mat nullspace(const PrimeField& f, const Mat& a, std::size_t cols) {
  Mat red = rref(f, a);
  std::vector<std::size_t> pivot_cols;
  std::vector<bool> is_pivot(cols, false);
  for (const auto& row : red) {
    std::size_t c = leading_index(row);
    pivot_cols.push_back(c);
    is_pivot[c] = true;
  }
  Mat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec x(cols, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < red.size(); ++i) x[pivot_cols[i]] = f.neg(red[i][free]);
    basis.push_back(std::move(x));
  }
  return rref(f, std::move(basis));
}

std::uint32_t det(const PrimeField& f, Mat a) {
  const std::size_t n = a.size();
  std::uint32_t result = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      result = f.neg(result);
    }
    result = f.mul(result, a[c][c]);
    const std::uint32_t inv = f.inv(a[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const std::uint32_t factor = f.mul(a[i][c], inv);
      for (std::size_t j = c; j < n; ++j) a[i][j] = f.sub(a[i][j], f.mul(factor, a[c][j]));
    }
  }
  return result;
}

}  // namespace fp

}  // namespace lagstab
