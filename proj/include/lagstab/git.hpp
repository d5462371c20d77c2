#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lagstab/exact_algebra.hpp"
#include "lagstab/lattice.hpp"
#include "lagstab/rational.hpp"
#include "lagstab/roots.hpp"

namespace lagstab {

/// E_1 ⊕ ... ⊕ E_d with dim E_j = dims[j]; basis vectors of E_j occupy a
/// contiguous block of ambient coordinates.
struct GradedSpaceSpec {
  std::vector<int> dims;

  int summands() const { return static_cast<int>(dims.size()); }
  int total() const;
  int offset(int j) const;
  /// Summand containing ambient coordinate k.
  int summand_of(int k) const;
  void validate() const;
};

/// Ambient space of the shell: E_j = eps^{(1-d)n} O e_j / eps^n O e_j, with
/// eps^a e_j at coordinate j*nd + (a - (1-d)n).
GradedSpaceSpec shell_space(const ShellSpec& shell);

/// Subspace of a graded space, kept in reduced row echelon form.
class GradedSubspace {
 public:
  GradedSubspace(GradedSpaceSpec spec, PrimeField field, fp::Mat rows);

  const GradedSpaceSpec& spec() const { return spec_; }
  const PrimeField& field() const { return field_; }
  const fp::Mat& rows() const { return rows_; }
  int dim() const { return static_cast<int>(rows_.size()); }

  /// dim(V ∩ ⊕_{j in mask} E_j).
  int dim_intersection(unsigned summand_mask) const;
  /// Rank of the projection of V onto ⊕_{j in mask} E_j.
  int dim_projection(unsigned summand_mask) const;
  /// True iff V is the sum of its intersections with the E_j.
  bool is_split() const;

 private:
  GradedSpaceSpec spec_;
  PrimeField field_;
  fp::Mat rows_;
};

/// Orthogonal complement for the pairing that matches coordinate a of E_j
/// with coordinate dims[j] - 1 - a of E_j.
GradedSubspace orthogonal_complement(const GradedSubspace& v);

/// The sub-torus acting on E_i (i < d) by t_i^{r_i} and on E_d by
/// prod t_i^{-s_i}; x are the associated rational weights.
struct TorusData {
  std::vector<long> r;
  std::vector<long> s;
  RationalVector x;

  /// Throws InvalidArgument unless r, s are positive and of equal length.
  static TorusData from_rs(std::vector<long> r, std::vector<long> s);
  int summands() const { return static_cast<int>(x.size()); }
};

/// x_i = (xi_i + n(d-1)) / (nd(d-1)); s_i / r_i is x_i / x_d in lowest terms.
/// Throws NonGenericXi, XiOutOfWindow.
TorusData torus_from_xi(const XiParam& xi, const ShellSpec& shell);

/// (1 + sum s_i/r_i) prod r_i.
Rational isogeny_determinant(const TorusData& torus);

/// L / eps^n L_0. Throws NotInShell.
GradedSubspace rho(const Lattice& lattice, const ShellSpec& shell);
/// Orthogonal complement of rho(L). Throws NotInShell.
GradedSubspace rho_perp(const Lattice& lattice, const ShellSpec& shell);

struct IntersectionIdentity {
  /// dim(rho_perp(L) ∩ ⊕_{j in S} E_j).
  int intersection_dim = 0;
  /// ind(L ∩ F^S) + n(d-1)|S|.
  int predicted = 0;
  /// Rank of the projection of rho_perp(L) onto ⊕_{j in S} E_j.
  int projection_dim = 0;
  /// n(d-1)|S| - ind(L ∩ F^{S^c}).
  int complement_formula = 0;
  bool holds() const { return intersection_dim == predicted; }
};

IntersectionIdentity intersection_identity(const Lattice& lattice, const ShellSpec& shell, const Subset& s);
/// dim(rho_perp(L) ∩ ⊕_{j in S} E_j) == ind(L ∩ F^S) + n(d-1)|S|.
bool intersection_identity_holds(const Lattice& lattice, const ShellSpec& shell, const Subset& s);

/// Column subsets I (sorted ambient coordinates, |I| = dim V) with nonzero
/// maximal minor. Throws BudgetExceeded when C(total, dim) exceeds the cap.
std::vector<std::vector<int>> pluecker_support(const GradedSubspace& v,
                                               std::uint64_t cap = 1'000'000);

/// Character of the Plücker coordinate I: component i is
/// r_i a_i(I) - s_i a_d(I), a_j(I) the number of elements of I in E_j.
std::vector<long> pluecker_weight(const GradedSpaceSpec& spec, const TorusData& torus,
                                  const std::vector<int>& subset);

/// Distinct Plücker weights of V.
std::vector<std::vector<long>> weight_points(const GradedSubspace& v, const TorusData& torus);

/// Origin in the interior of the weight polytope.
bool is_torus_stable(const GradedSubspace& v, const TorusData& torus);
/// Origin in the weight polytope.
bool is_torus_semistable(const GradedSubspace& v, const TorusData& torus);

/// Hilbert-Mumford weight of the cocharacter acting on E_i by t^{n_i r_i}
/// (i < d) and on E_d by t^{-sum n_j s_j}: minus the weight of the limit
/// Plücker line as t -> 0.
long mu_one_param(const GradedSubspace& v, const std::vector<long>& nvec, const TorusData& torus);

/// Orientation of the subset inequalities between dim(V ∩ E_S) and
/// dim(V) x_S.
enum class SubsetOrientation {
  intersection_below,  // dim(V ∩ E_S) < dim(V) x_S
  intersection_above,  // dim(V) x_S < dim(V ∩ E_S)
};

std::string to_string(SubsetOrientation o);

/// Subset inequalities over all proper nonempty S, strict for stability,
/// non-strict when `semistable`.
bool closed_form_subset_test(const GradedSubspace& v, const TorusData& torus,
                             SubsetOrientation orientation, bool semistable = false);

struct OrientationAudit {
  long checked = 0;
  long mismatches_below = 0;
  long mismatches_above = 0;
  SubsetOrientation chosen = SubsetOrientation::intersection_below;
};

/// Compares both orientations with is_torus_stable (and the semistable
/// variants with is_torus_semistable) on every subspace of E_1 ⊕ E_2 over
/// F_2 for dims (1,1) and (2,2) and a fixed family of tori; picks the
/// orientation with no mismatches.
OrientationAudit derive_subset_orientation();

/// closed_form_subset_test with the orientation from derive_subset_orientation.
bool closed_form_subset_test(const GradedSubspace& v, const TorusData& torus);

struct GitCompareReport {
  long checked = 0;
  /// is_xi_stable(L) != is_torus_stable(rho_perp(L)).
  long mismatches = 0;
  /// Semistable and stable verdicts differ.
  long semistable_mismatches = 0;
  /// Closed-form verdict differs from the polytope verdict.
  long closed_form_mismatches = 0;
  long stable_count = 0;
  /// (lattice, subset) pairs checked against the dimension equality.
  long intersection_identity_holdsed = 0;
  long identity_failures = 0;
  long identity_projection_failures = 0;
  long identity_complement_failures = 0;
};

GitCompareReport git_compare(const ShellSpec& shell, PrimeField field, const XiParam& xi,
                             std::uint64_t budget = default_enumeration_budget());

}  // namespace lagstab
