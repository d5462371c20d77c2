#pragma once

#include <vector>

#include "lagstab/lattice.hpp"
#include "lagstab/roots.hpp"

namespace lagstab {

/// H-vector of L for the Borel of the flag F e_{tau(0)} ⊂ F e_{tau(0)} + F e_{tau(1)} ⊂ ...:
/// the coweight whose prefix sums along tau are ind(L ∩ F^{tau(0..i)}).
Coweight h_borel(const Lattice& lattice, const std::vector<int>& tau);

/// Same, from precomputed subset_indices.
Coweight h_borel_from_indices(const std::vector<int>& indices, const std::vector<int>& tau);

/// Distinct H-vectors over all permutations, sorted.
std::vector<Coweight> ec_vertices(const Lattice& lattice);
std::vector<Coweight> ec_vertices_from_indices(const std::vector<int>& indices, int d);

struct StabilityReport {
  bool stable = false;
  /// Proper nonempty S with sum_{j in S} xi_j > ind(L ∩ F^S).
  std::vector<Subset> failing_subsets;
};

/// Subset-inequality test. Throws NonZeroIndex, NonGenericXi, ShapeMismatch.
StabilityReport check_xi_stability(const Lattice& lattice, const XiParam& xi);
bool is_xi_stable(const Lattice& lattice, const XiParam& xi);

/// Same test from subset_indices of an index-0 lattice; no validation.
StabilityReport check_xi_stability_from_indices(const std::vector<int>& indices, const XiParam& xi);

/// xi ∈ conv(ec_vertices(L)) by exact linear programming.
bool in_ec_hull(const Lattice& lattice, const RationalVector& xi);

struct ArthurDifference {
  /// e_{tau(i)} - e_{tau(i+1)} for the transposed position i.
  Coweight coroot;
  /// n with H_tau - H_tau' = n * coroot.
  int multiplicity = 0;
};

/// Throws NotAdjacent unless tau' is tau with one adjacent pair swapped.
ArthurDifference arthur_difference(const Lattice& lattice, const std::vector<int>& tau,
                                   const std::vector<int>& tau_prime);

/// Negative-control hook: when set, the subset inequality is evaluated
/// reversed. Only the self-test uses it.
void set_stability_fault_injection(bool enabled);
bool stability_fault_injection();

}  // namespace lagstab
