#pragma once

#include <vector>

#include "lagstab/rational.hpp"

namespace lagstab {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Maximizes c^T x subject to A x = b, x >= 0, by the two-phase simplex
/// method with Bland's rule in exact rational arithmetic.
LpResult solve_lp(const RationalMatrix& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c);

/// Dimension of the affine hull of the points (-1 for no points).
int affine_rank(const RationalMatrix& points);

/// target ∈ conv(points) (boundary allowed).
bool in_convex_hull(const RationalMatrix& points, const std::vector<Rational>& target);

/// target lies in the interior of conv(points) taken in the full ambient
/// space R^k, k = target.size(). Requires a full-dimensional hull.
bool in_hull_interior(const RationalMatrix& points, const std::vector<Rational>& target);

}  // namespace lagstab
