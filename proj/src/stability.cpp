#include "lagstab/stability.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "lagstab/errors.hpp"
#include "lagstab/polytope.hpp"

namespace lagstab {

namespace {
std::atomic<bool> g_flip_inequality{false};
}

void set_stability_fault_injection(bool enabled) { g_flip_inequality = enabled; }
bool stability_fault_injection() { return g_flip_inequality; }

Coweight h_borel_from_indices(const std::vector<int>& indices, const std::vector<int>& tau) {
  Coweight h(tau.size(), 0);
  unsigned mask = 0;
  int prev = 0;
  for (int j : tau) {
    mask |= 1u << j;
    const int cur = indices.at(mask);
    h.at(static_cast<std::size_t>(j)) = cur - prev;
    prev = cur;
  }
  return h;
}

Coweight h_borel(const Lattice& lattice, const std::vector<int>& tau) {
  const int d = lattice.dim();
  if (static_cast<int>(tau.size()) != d) throw ShapeMismatch("h_borel: permutation has wrong length");
  ParabolicType::borel(tau);  // validates tau
  Coweight h(tau.size(), 0);
  Subset prefix;
  int prev = 0;
  for (int j : tau) {
    prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), j), j);
    const int cur = intersect_coordinate(lattice, prefix).index;
    h[static_cast<std::size_t>(j)] = cur - prev;
    prev = cur;
  }
  return h;
}

std::vector<Coweight> ec_vertices_from_indices(const std::vector<int>& indices, int d) {
  std::set<Coweight> out;
  for (const auto& tau : all_permutations(d)) out.insert(h_borel_from_indices(indices, tau));
  return {out.begin(), out.end()};
}

std::vector<Coweight> ec_vertices(const Lattice& lattice) {
  return ec_vertices_from_indices(subset_indices(lattice), lattice.dim());
}

StabilityReport check_xi_stability_from_indices(const std::vector<int>& indices, const XiParam& xi) {
  const int d = xi.dim();
  const bool flip = g_flip_inequality;
  StabilityReport report;
  for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
    Rational sum = 0;
    for (int j = 0; j < d; ++j) {
      if (mask & (1u << j)) sum += xi[j];
    }
    const bool holds = flip ? sum >= indices.at(mask) : sum <= indices.at(mask);
    if (!holds) report.failing_subsets.push_back(subset_from_mask(mask, d));
  }
  report.stable = report.failing_subsets.empty();
  return report;
}

StabilityReport check_xi_stability(const Lattice& lattice, const XiParam& xi) {
  if (xi.dim() != lattice.dim()) throw ShapeMismatch("xi and lattice have different dimensions");
  if (lattice.index() != 0) throw NonZeroIndex(lattice.index());
  require_generic(xi);
  return check_xi_stability_from_indices(subset_indices(lattice), xi);
}

bool is_xi_stable(const Lattice& lattice, const XiParam& xi) {
  return check_xi_stability(lattice, xi).stable;
}

bool in_ec_hull(const Lattice& lattice, const RationalVector& xi) {
  RationalMatrix pts;
  for (const auto& v : ec_vertices(lattice)) {
    std::vector<Rational> p;
    for (int x : v) p.emplace_back(x);
    pts.push_back(std::move(p));
  }
  return in_convex_hull(pts, xi);
}

ArthurDifference arthur_difference(const Lattice& lattice, const std::vector<int>& tau,
                                   const std::vector<int>& tau_prime) {
  if (tau.size() != tau_prime.size()) throw NotAdjacent();
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] != tau_prime[i]) diff.push_back(i);
  }
  if (diff.size() != 2 || diff[1] != diff[0] + 1 || tau[diff[0]] != tau_prime[diff[1]] ||
      tau[diff[1]] != tau_prime[diff[0]]) {
    throw NotAdjacent();
  }
  const Coweight h = h_borel(lattice, tau);
  const Coweight hp = h_borel(lattice, tau_prime);
  const auto a = static_cast<std::size_t>(tau[diff[0]]);
  const auto b = static_cast<std::size_t>(tau[diff[1]]);
  ArthurDifference out;
  out.coroot.assign(tau.size(), 0);
  out.coroot[a] = 1;
  out.coroot[b] = -1;
  out.multiplicity = h[a] - hp[a];
  for (std::size_t j = 0; j < tau.size(); ++j) {
    if (h[j] - hp[j] != out.multiplicity * out.coroot[j]) {
      throw Error("arthur_difference: H-vectors do not differ by a multiple of the coroot");
    }
  }
  return out;
}

}  // namespace lagstab
