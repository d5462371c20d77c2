#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lagstab/field.hpp"
#include "lagstab/laurent.hpp"

namespace lagstab {

/// Valuation of p; std::nullopt stands for +infinity (p == 0).
std::optional<int> val(const LaurentPoly& p);

/// Valuation of det(M), computed by fraction-free elimination over F_p[eps].
/// Throws SingularMatrix when det(M) == 0.
int det_val(const LaurentMatrix& m);

/// Canonical basis of an O-lattice: upper triangular, pivot (i,i) = eps^{a_i},
/// zeros below the diagonal, and entry (s,i) above a pivot reduced modulo
/// eps^{a_s} (only exponents < a_s). Prefix sums of the pivots along the
/// coordinate order are the indices of L ∩ (F e_1 + ... + F e_k).
struct HermiteForm {
  LaurentMatrix basis;
  std::vector<int> pivots;
};

/// Hermite form of the O-span of `generators` (each of length d), which must
/// contain eps^precision O^d. All arithmetic happens in
/// O^d-lattices modulo eps^precision, so it is exact and finite.
HermiteForm hermite_over_o(PrimeField field, int d, std::vector<LaurentVector> generators,
                           int precision);

/// Smallest N with eps^N O^d contained in the column span of a nonsingular M
/// (a valid bound from Cramer's rule, not necessarily sharp).
int containment_precision(const LaurentMatrix& m);

/// Canonical form of the O-column-span of a nonsingular M.
LaurentMatrix column_reduce_over_o(const LaurentMatrix& m);

/// Saturated generating set of {c in O^d : (Mc)_j = 0 for j in rows}, as
/// polynomial coefficient vectors. `rows` are 0-based.
std::vector<LaurentVector> kernel_saturation(const LaurentMatrix& m, const std::vector<int>& rows);

/// Dense linear algebra over F_p on row vectors.
namespace fp {

using Vec = std::vector<std::uint32_t>;
using Mat = std::vector<Vec>;

/// Reduced row echelon form; zero rows dropped. Pivots are the first nonzero
/// entries (value 1).
Mat rref(const PrimeField& f, Mat rows);
std::size_t rank(const PrimeField& f, Mat rows);
/// Basis (in rref) of {x : A x = 0} where A has `cols` columns.
Mat nullspace(const PrimeField& f, const Mat& a, std::size_t cols);
/// Determinant of a square matrix.
std::uint32_t det(const PrimeField& f, Mat a);
/// First nonzero position, or size() for the zero vector.
std::size_t leading_index(const Vec& v);

}  // namespace fp

}  // namespace lagstab
