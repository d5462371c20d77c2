#include "lagstab/polytope.hpp"

#include "lagstab/errors.hpp"

namespace lagstab {

namespace {

class Tableau {
 public:
  Tableau(const RationalMatrix& a, const std::vector<Rational>& b, std::size_t vars)
      : m_(a.size()), n_(vars), t_(m_, std::vector<Rational>(n_ + m_ + 1)), basis_(m_), active_(m_, true) {
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = b[i] < 0;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
      t_[i][n_ + i] = 1;
      t_[i][n_ + m_] = flip ? Rational(-b[i]) : b[i];
      basis_[i] = n_ + i;
    }
  }

  // Returns false when unbounded. Columns >= limit may not enter.
  bool maximize(const std::vector<Rational>& cost, std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit && enter == limit; ++j) {
        if (is_basic(j)) continue;
        Rational r = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
          if (active_[i] && t_[i][j] != 0) r -= cost[basis_[i]] * t_[i][j];
        }
        if (r > 0) enter = j;
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i] || t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][n_ + m_] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (active_[i]) v += cost[basis_[i]] * t_[i][n_ + m_];
    }
    return v;
  }

  // Pivots artificial variables out of the basis; rows where that is
  // impossible are redundant and get deactivated.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i] || basis_[i] < n_) continue;
      std::size_t j = 0;
      while (j < n_ && (t_[i][j] == 0 || is_basic(j))) ++j;
      if (j == n_) {
        active_[i] = false;
      } else {
        pivot(i, j);
      }
    }
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (active_[i] && basis_[i] < n_) x[basis_[i]] = t_[i][n_ + m_];
    }
    return x;
  }

 private:
  bool is_basic(std::size_t j) const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (active_[i] && basis_[i] == j) return true;
    }
    return false;
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j < t_[i].size(); ++j) {
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
      }
    }
    basis_[r] = c;
  }

  std::size_t m_, n_;
  RationalMatrix t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

}  // namespace

LpResult solve_lp(const RationalMatrix& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c) {
  const std::size_t m = a.size(), n = c.size();
  if (b.size() != m) throw ShapeMismatch("solve_lp: b has wrong length");
  for (const auto& row : a) {
    if (row.size() != n) throw ShapeMismatch("solve_lp: A has wrong width");
  }
  Tableau t(a, b, n);
  std::vector<Rational> phase1(n + m, 0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  t.maximize(phase1, n + m);
  LpResult out;
  if (t.objective(phase1) < 0) {
    out.status = LpResult::Status::infeasible;
    return out;
  }
  t.expel_artificials();
  std::vector<Rational> phase2(n + m, 0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!t.maximize(phase2, n)) {
    out.status = LpResult::Status::unbounded;
    return out;
  }
  out.status = LpResult::Status::optimal;
  out.value = t.objective(phase2);
  out.x = t.solution();
  return out;
}

int affine_rank(const RationalMatrix& points) {
  if (points.empty()) return -1;
  RationalMatrix rows;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<Rational> r(points[i].size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = points[i][j] - points[0][j];
    rows.push_back(std::move(r));
  }
  int rank = 0;
  const std::size_t cols = points[0].size();
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows.size(); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& pr = rows[static_cast<std::size_t>(rank)];
    for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / pr[c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * pr[j];
    }
    ++rank;
  }
  return rank;
}

bool in_convex_hull(const RationalMatrix& points, const std::vector<Rational>& target) {
  if (points.empty()) return false;
  const std::size_t k = target.size(), m = points.size();
  // sum mu_p p = target, sum mu_p = 1, mu >= 0.
  RationalMatrix a(k + 1, std::vector<Rational>(m));
  std::vector<Rational> b(k + 1);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t p = 0; p < m; ++p) a[r][p] = points[p][r];
    b[r] = target[r];
  }
  for (std::size_t p = 0; p < m; ++p) a[k][p] = 1;
  b[k] = 1;
  return solve_lp(a, b, std::vector<Rational>(m, 0)).status != LpResult::Status::infeasible;
}

bool in_hull_interior(const RationalMatrix& points, const std::vector<Rational>& target) {
  const std::size_t k = target.size(), m = points.size();
  if (points.empty() || affine_rank(points) < static_cast<int>(k)) return false;
  // Relative interior = strictly positive convex combinations. With
  // mu_p = nu_p + t: sum (nu_p + t)(p - target) = 0, sum nu_p + m t = 1,
  // nu, t >= 0; maximize t.
  RationalMatrix a(k + 1, std::vector<Rational>(m + 1));
  std::vector<Rational> b(k + 1, 0);
  for (std::size_t r = 0; r < k; ++r) {
    Rational total = 0;
    for (std::size_t p = 0; p < m; ++p) {
      a[r][p] = points[p][r] - target[r];
      total += a[r][p];
    }
    a[r][m] = total;
  }
  for (std::size_t p = 0; p < m; ++p) a[k][p] = 1;
  a[k][m] = static_cast<long>(m);
  b[k] = 1;
  std::vector<Rational> c(m + 1, 0);
  c[m] = 1;
  const LpResult r = solve_lp(a, b, c);
  return r.status == LpResult::Status::optimal && r.value > 0;
}

}  // namespace lagstab
