#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lagstab/lattice.hpp"
#include "lagstab/roots.hpp"

namespace lagstab {

/// Either the stable locus or the stratum S_P of a parabolic P != G.
struct StratumTag {
  std::optional<ParabolicType> parabolic;

  static StratumTag stable() { return {}; }
  static StratumTag of(ParabolicType p) { return {std::move(p)}; }
  bool is_stable() const { return !parabolic.has_value(); }
  /// "stable" or the 1-based block form of P.
  std::string to_string() const;

  friend bool operator==(const StratumTag&, const StratumTag&) = default;
  friend auto operator<=>(const StratumTag&, const StratumTag&) = default;
};

/// Associated graded of L along the flag of P: block i is the image of
/// L ∩ F^{S_1 ∪ ... ∪ S_i} in F^{S_i} (coordinates of S_i in increasing order).
std::vector<Lattice> retract(const Lattice& lattice, const ParabolicType& p);

/// Block indices of retract(L, P).
std::vector<long> h_p(const Lattice& lattice, const ParabolicType& p);

/// Stability of a lattice of any index for a parameter with the same total:
/// sum_{j in T} xi_j <= ind(L ∩ F^T) for every proper nonempty T.
bool block_stable(const Lattice& block, const RationalVector& xi);

/// Each block of retract(L, P) is stable for xi restricted to the block and
/// moved to the block's index, and h_P(L) passes in_sector.
/// Throws NonGenericXi, NonZeroIndex, ShapeMismatch.
bool in_cylinder(const Lattice& lattice, const ParabolicType& p, const XiParam& xi);

/// Stable when is_xi_stable, otherwise the unique P != G with in_cylinder.
/// Every parabolic is tested; throws PartitionViolation unless exactly one
/// tag applies.
StratumTag stratum(const Lattice& lattice, const XiParam& xi);

struct PartitionReport {
  long total = 0;
  /// Lattices per tag, stable first.
  std::vector<std::pair<StratumTag, long>> counts;
  /// Tagged S_P whose blocks or sector test failed on re-check.
  long sector_failures = 0;
  long count(const StratumTag& tag) const;
};

/// Tags every lattice of X_n(F_p). Throws BudgetExceeded, PartitionViolation.
PartitionReport partition_audit(const ShellSpec& shell, PrimeField field, const XiParam& xi,
                                std::uint64_t budget = default_enumeration_budget());

/// True when the flag of P refines that of Q.
bool refines(const ParabolicType& p, const ParabolicType& q);

/// retract(L, P) against retracting each block of retract(L, Q) along
/// P ∩ M_Q. Throws NotNested unless P refines Q.
bool transition_audit(const Lattice& lattice, const ParabolicType& q, const ParabolicType& p);

struct AuditCount {
  long checked = 0;
  long failures = 0;
};

/// transition_audit for every lattice of the shell and every nested pair.
AuditCount transition_sweep(const ShellSpec& shell, PrimeField field,
                            std::uint64_t budget = default_enumeration_budget());

/// Identity on the diagonal blocks of P, zero below them.
bool is_unipotent_for(const LaurentMatrix& u, const ParabolicType& p);

/// Random element of N_P(F): entries above the diagonal blocks have exponents
/// in [-2n, 2n] and at most three terms.
LaurentMatrix random_unipotent(PrimeField field, const ParabolicType& p, int n,
                               std::mt19937_64& rng);

/// retract and h_P are unchanged by u, and so is the stratum when it is S_P.
/// Throws NotUnipotentForP.
bool unipotent_audit(const Lattice& lattice, const ParabolicType& p, const LaurentMatrix& u,
                     const XiParam& xi);

/// `samples` seeded draws: lattice i mod |X_n|, a random P != G, a random u.
AuditCount unipotent_sweep(const ShellSpec& shell, PrimeField field, const XiParam& xi,
                           long samples, std::uint64_t seed,
                           std::uint64_t budget = default_enumeration_budget());

}  // namespace lagstab
