#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lagstab/exact_algebra.hpp"
#include "lagstab/laurent.hpp"

namespace lagstab {

/// Full-rank O-lattice in F^d, stored through its canonical basis.
class Lattice {
 public:
  Lattice() = default;

  int dim() const { return basis_.dim(); }
  const PrimeField& field() const { return basis_.field(); }
  const LaurentMatrix& basis() const { return basis_; }
  /// Valuations of the diagonal of the canonical basis.
  const std::vector<int>& pivots() const { return pivots_; }
  int index() const { return index_; }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }

 private:
  friend Lattice lattice_from_form(HermiteForm h);
  LaurentMatrix basis_;
  std::vector<int> pivots_;
  int index_ = 0;
};

Lattice lattice_from_form(HermiteForm h);
Lattice lattice_from_matrix(const LaurentMatrix& m);
/// Lattice spanned by `generators` together with eps^precision O^d.
Lattice lattice_from_generators(PrimeField field, int d, std::vector<LaurentVector> generators,
                                int precision);
/// L_0 = O^d.
Lattice standard_lattice(PrimeField field, int d);

/// The shell X_n: index-0 lattices L with eps^n L_0 contained in L.
struct ShellSpec {
  int d = 2;
  int n = 1;
  /// Throws InvalidArgument unless d >= 1 and n >= 1.
  void validate() const;
};

enum class FormKind { gl_pairing, symplectic, symmetric_even, symmetric_odd };

FormKind parse_form_kind(const std::string& name);
std::string to_string(FormKind kind);

/// Coordinate subsets are sorted lists of 0-based coordinates.
using Subset = std::vector<int>;

Subset subset_from_mask(unsigned mask, int d);
unsigned mask_from_subset(const Subset& s);

struct Intersection {
  /// Index of L ∩ F^S as a lattice of F^S.
  int index = 0;
  /// Canonical basis of L ∩ F^S written in ambient coordinates (|S| vectors).
  std::vector<LaurentVector> basis;
};

/// L ∩ (⊕_{j in S} F e_j). Throws InvalidArgument for an empty or invalid S.
Intersection intersect_coordinate(const Lattice& lattice, const Subset& s);

/// ind(L ∩ F^S) for every subset mask S of {0..d-1}; entry 0 is 0.
std::vector<int> subset_indices(const Lattice& lattice);

/// eps^mu L, coordinate i scaled by eps^{mu_i}.
Lattice translate(const Lattice& lattice, const std::vector<int>& mu);

/// g L for an invertible Laurent matrix g.
Lattice act(const LaurentMatrix& g, const Lattice& lattice);

bool contains(const Lattice& lattice, const LaurentVector& v);

bool in_shell(const Lattice& lattice, const ShellSpec& shell);

/// Enumeration cap in search nodes; LAGSTAB_BUDGET overrides the default 10^7.
std::uint64_t default_enumeration_budget();

/// Calls `visit` once for every lattice of X_n(F_p), in a fixed order, and
/// returns the number of lattices. Throws BudgetExceeded once more than
/// `budget` search nodes are visited.
std::uint64_t enumerate_shell(const ShellSpec& shell, PrimeField field,
                              const std::function<void(const Lattice&)>& visit,
                              std::uint64_t budget = default_enumeration_budget());

std::vector<Lattice> shell_lattices(const ShellSpec& shell, PrimeField field,
                                    std::uint64_t budget = default_enumeration_budget());

/// {x : <x, L> ⊂ O} for the standard form of the given kind. Throws
/// FormDimensionMismatch when d does not fit the form.
Lattice dual_lattice(const Lattice& lattice, FormKind form);
bool is_self_dual(const Lattice& lattice, FormKind form);

}  // namespace lagstab
