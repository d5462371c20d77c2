#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lagstab/field.hpp"

namespace lagstab {

/// Valuation of the zero polynomial.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

/// Exact Laurent polynomial over F_p in the uniformizer eps.
///
/// Terms are kept sorted by strictly increasing exponent with nonzero
/// coefficients; the zero polynomial has no terms.
class LaurentPoly {
 public:
  struct Term {
    int exponent;
    std::uint32_t coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  explicit LaurentPoly(PrimeField field = PrimeField{}) : field_(field) {}

  /// Builds from arbitrary (exponent, coefficient) pairs; coefficients are
  /// reduced mod p and like terms merged.
  LaurentPoly(PrimeField field, std::vector<std::pair<int, std::int64_t>> terms);

  static LaurentPoly monomial(PrimeField field, int exponent, std::int64_t coeff = 1);
  static LaurentPoly constant(PrimeField field, std::int64_t c) {
    return monomial(field, 0, c);
  }

  const PrimeField& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Smallest exponent with a nonzero coefficient, kInfiniteValuation for 0.
  int valuation() const { return terms_.empty() ? kInfiniteValuation : terms_.front().exponent; }
  /// Largest exponent; only meaningful for nonzero polynomials.
  int top_exponent() const { return terms_.back().exponent; }
  std::uint32_t coeff_at(int exponent) const;
  std::uint32_t leading_coeff() const { return terms_.back().coeff; }
  std::uint32_t lowest_coeff() const { return terms_.front().coeff; }

  /// Multiplication by eps^k.
  LaurentPoly shifted(int k) const;
  LaurentPoly scaled(std::uint32_t c) const;
  /// Terms with exponent < bound.
  LaurentPoly below(int bound) const;
  /// Terms with exponent >= bound.
  LaurentPoly at_or_above(int bound) const;
  bool is_monomial() const { return terms_.size() == 1; }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  void normalize();
  PrimeField field_;
  std::vector<Term> terms_;
};

/// Inverse of a unit u of O (valuation 0) modulo eps^precision.
LaurentPoly unit_inverse_mod(const LaurentPoly& u, int precision);

/// Division with remainder in F_p[eps]; both operands must have nonnegative
/// exponents and the divisor must be nonzero.
std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b);

using LaurentVector = std::vector<LaurentPoly>;

/// Square d x d matrix of Laurent polynomials, row-major.
class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(PrimeField field, int d);
  LaurentMatrix(PrimeField field, int d, std::vector<LaurentPoly> entries);

  static LaurentMatrix identity(PrimeField field, int d);
  static LaurentMatrix diagonal_powers(PrimeField field, const std::vector<int>& exponents);
  /// Columns given as vectors of length d.
  static LaurentMatrix from_columns(PrimeField field, const std::vector<LaurentVector>& cols);

  int dim() const { return d_; }
  const PrimeField& field() const { return field_; }
  LaurentPoly& at(int r, int c) { return entries_[static_cast<std::size_t>(r * d_ + c)]; }
  const LaurentPoly& at(int r, int c) const {
    return entries_[static_cast<std::size_t>(r * d_ + c)];
  }
  const std::vector<LaurentPoly>& entries() const { return entries_; }

  LaurentVector column(int c) const;
  std::vector<LaurentVector> columns() const;
  /// Minimum valuation over all entries.
  int min_valuation() const;

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

 private:
  PrimeField field_{};
  int d_ = 0;
  std::vector<LaurentPoly> entries_;
};

}  // namespace lagstab
