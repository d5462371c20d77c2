#pragma once

#include <string>
#include <vector>

#include "lagstab/lattice.hpp"
#include "lagstab/rational.hpp"

namespace lagstab {

/// Integer cocharacter of the diagonal torus.
using Coweight = std::vector<int>;
using RationalVector = std::vector<Rational>;

/// The stability parameter: a rational vector with zero sum.
class XiParam {
 public:
  /// Throws InvalidArgument when empty or the sum is nonzero.
  explicit XiParam(RationalVector entries);
  /// Comma-separated rationals, e.g. "1/4,-1/4".
  static XiParam parse(const std::string& text);

  int dim() const { return static_cast<int>(entries_.size()); }
  const RationalVector& entries() const { return entries_; }
  const Rational& operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  std::string to_string() const;

 private:
  RationalVector entries_;
};

/// No xi_i - xi_j is an integer for i != j.
bool is_generic(const RationalVector& xi);
inline bool is_generic(const XiParam& xi) { return is_generic(xi.entries()); }
/// Throws NonGenericXi unless is_generic(xi).
void require_generic(const XiParam& xi);

/// Unordered partition of the coordinates into blocks (a Levi M ⊇ T).
using BlockPartition = std::vector<std::vector<int>>;

/// Ordered set partition of {0..d-1}: the parabolic stabilizing the flag
/// F^{S_1} ⊂ F^{S_1 ∪ S_2} ⊂ ... . Blocks are kept sorted internally.
struct ParabolicType {
  BlockPartition blocks;

  int dim() const;
  bool is_group() const { return blocks.size() == 1; }
  /// Throws InvalidArgument unless the blocks partition {0..d-1}.
  void validate(int d) const;
  /// Block number of every coordinate.
  std::vector<int> block_of() const;

  static ParabolicType group(int d);
  /// Borel of the flag e_{tau(0)}, e_{tau(1)}, ...
  static ParabolicType borel(const std::vector<int>& tau);
  /// Text form uses 1-based coordinates: "1,2|3".
  static ParabolicType parse(const std::string& text, int d);
  std::string to_string() const;

  friend bool operator==(const ParabolicType&, const ParabolicType&) = default;
  friend auto operator<=>(const ParabolicType&, const ParabolicType&) = default;
};

/// Canonical unordered form of the blocks (sorted).
BlockPartition levi_of(const ParabolicType& p);

struct LeviProjection {
  RationalVector levi;        // block averages
  RationalVector complement;  // v minus block averages
};

LeviProjection project_levi(const RationalVector& v, const BlockPartition& blocks);

/// Block sums of mu.
std::vector<long> lambda_M_image(const Coweight& mu, const BlockPartition& blocks);

/// Sector test for the opposite parabolic: with lambda-bar the block averages
/// of lambda and xi-bar those of xi, requires
/// (lambda-bar - xi-bar) on a later block >= the same on an earlier block.
bool in_sector(const std::vector<long>& lambda, const ParabolicType& p, const XiParam& xi);

/// Prefix-sum dominance of partitions (shorter vectors are padded with 0).
/// Throws ShapeMismatch on unequal totals, InvalidArgument on increasing input.
bool dominance_leq(const Coweight& lambda, const Coweight& mu);

/// All mu with sum 0 and (1-d)n <= mu_i <= n, in decreasing lexicographic order.
std::vector<Coweight> fixed_points_shell(const ShellSpec& shell);

/// All ordered set partitions of {0..d-1}, the group first. Throws
/// BudgetExceeded when d > bound.
std::vector<ParabolicType> enumerate_parabolics(int d, int bound = 6);

/// Parabolics with Levi M: all orderings of its blocks.
std::vector<ParabolicType> parabolics_with_levi(const BlockPartition& blocks);

/// All permutations of {0..d-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int d);

}  // namespace lagstab
