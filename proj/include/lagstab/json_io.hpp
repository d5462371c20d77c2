#pragma once

#include <json.hpp>

#include "lagstab/acceptance.hpp"
#include "lagstab/git.hpp"
#include "lagstab/lattice.hpp"
#include "lagstab/poincare.hpp"
#include "lagstab/reduction.hpp"
#include "lagstab/stability.hpp"

namespace lagstab {

using Json = nlohmann::ordered_json;

/// [[exponent, coefficient], ...] in increasing exponent order.
Json poly_to_json(const LaurentPoly& p);
/// Coefficients may be integers or integer strings; they are reduced mod p.
LaurentPoly poly_from_json(const Json& j, PrimeField field);

/// {"p": p, "d": d, "basis": [row, ...]} with each row a list of polynomials.
Json matrix_to_json(const LaurentMatrix& m);
/// Throws InvalidArgument on malformed input.
LaurentMatrix matrix_from_json(const Json& j);

/// The canonical basis in matrix form.
Json lattice_to_json(const Lattice& l);
/// Throws InvalidArgument, SingularMatrix.
Lattice lattice_from_json(const Json& j);

/// Exact strings "a/b".
Json rationals_to_json(const std::vector<Rational>& v);
/// Subsets as 1-based coordinate lists.
Json subset_to_json(const Subset& s);

Json to_json(const StabilityReport& r);
Json to_json(const PartitionReport& r);
Json to_json(const GitCompareReport& r);
Json to_json(const CountReport& r);
Json to_json(const CompareReport& r);
Json to_json(const GrowthReport& r);
Json to_json(const std::vector<CriterionResult>& results);

}  // namespace lagstab
