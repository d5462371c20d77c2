#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lagstab/lattice.hpp"
#include "lagstab/rational.hpp"
#include "lagstab/reduction.hpp"
#include "lagstab/roots.hpp"

namespace lagstab {

/// Integer power series c_0 + c_1 t + ... + c_N t^N known up to order N.
/// Arithmetic results carry the smaller operand order; coefficient overflow
/// throws Error.
class PowerSeriesZ {
 public:
  /// Coefficients beyond `order` are dropped, missing ones are zero.
  PowerSeriesZ(std::vector<std::int64_t> coeffs, int order);

  static PowerSeriesZ one(int order) { return PowerSeriesZ({1}, order); }
  /// 1 / (1 - t^step).
  static PowerSeriesZ geometric(int step, int order);

  int order() const { return order_; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }
  /// Throws OrderExceeded when i > order.
  std::int64_t coeff(int i) const;

  friend PowerSeriesZ operator+(const PowerSeriesZ& a, const PowerSeriesZ& b);
  friend PowerSeriesZ operator-(const PowerSeriesZ& a, const PowerSeriesZ& b);
  friend PowerSeriesZ operator*(const PowerSeriesZ& a, const PowerSeriesZ& b);
  friend bool operator==(const PowerSeriesZ&, const PowerSeriesZ&) = default;

  bool is_zero() const;
  /// Value at t^2 = q of a series with only even terms.
  mpz_class evaluate_even(long q) const;
  std::string to_string() const;

 private:
  std::vector<std::int64_t> coeffs_;
  int order_;
};

/// Drops terms of degree > n. Throws OrderExceeded when n > f.order().
PowerSeriesZ truncate(const PowerSeriesZ& f, int n);

/// prod_{i=1}^{d-1} (1 - t^{2i})^{-1}. Throws InvalidArgument for d < 2.
PowerSeriesZ bott_series(int d, int order);

/// (1 - t^2)^{-(d-1)} prod_{i=1}^{d-1} (1 - t^{2i})^{-1}. The first factor is
/// expanded through binomial coefficients.
PowerSeriesZ quotient_series(int d, int order);

/// sum over fixed points mu of t^{2 sum_{i>=2} (i-1)(n - mu_i)}, of order
/// 2 dim_shell.
PowerSeriesZ cells_polynomial(const ShellSpec& shell);

/// nd(d-1).
int dim_shell(const ShellSpec& shell);
/// (d-1)n.
int codim_bound(const ShellSpec& shell);

/// Ascending coefficients of the polynomial of degree < points.size() through
/// the points. Throws InvalidArgument on repeated abscissae.
std::vector<Rational> lagrange_interpolate(const std::vector<std::pair<long, Rational>>& points);
/// Index of the last nonzero coefficient, -1 for the zero polynomial.
int polynomial_degree(const std::vector<Rational>& coeffs);
/// Ascending coefficients written as "1 + 2q^2", "0" for the zero polynomial.
std::string format_polynomial(const std::vector<Rational>& coeffs, const std::string& var = "q");

struct PrimeCount {
  std::uint32_t p = 2;
  long total = 0;
  long stable = 0;
  /// stable / (p-1)^{d-1}.
  long quotient = 0;
  std::vector<std::pair<StratumTag, long>> strata;
};

struct CountReport {
  ShellSpec shell;
  std::vector<Rational> xi;
  std::vector<PrimeCount> counts;
  /// Interpolated in q when there are enough primes for the degree bound:
  /// dim_shell + 1 points for the totals, dim_shell - d + 2 for the quotient.
  std::optional<std::vector<Rational>> total_poly;
  std::optional<std::vector<Rational>> stable_poly;
  std::optional<std::vector<Rational>> quotient_poly;
};

/// Brute-force census of X_n(F_p) for each prime. Throws BudgetExceeded,
/// NonIntegralQuotient, InvalidArgument for repeated or non-prime p.
CountReport count_points(const ShellSpec& shell, const std::vector<std::uint32_t>& primes,
                         const XiParam& xi, std::uint64_t budget = default_enumeration_budget());

struct CompareReport {
  CountReport counts;
  std::vector<Rational> quotient_poly;
  /// 2(d-1)n - 2: degrees in t where agreement is asserted.
  int window = 0;
  /// t^{2i} coefficients of quotient_series for 2i <= max(window, 2 deg Q).
  std::vector<std::int64_t> series;
  bool window_matches = false;
  /// Smallest t-degree where Q and the series differ, if any up to 2 deg Q + 2.
  std::optional<int> first_divergence;
  /// Largest t-degree up to which the interpolated |X_n(F_q)| agrees with
  /// bott_series; needs dim_shell + 1 primes.
  std::optional<int> bott_agreement_degree;
};

/// Throws InsufficientPrimes with fewer than dim_shell - d + 2 primes.
CompareReport compare_report(const ShellSpec& shell, const std::vector<std::uint32_t>& primes,
                             const XiParam& xi, std::uint64_t budget = default_enumeration_budget());

struct GrowthReport {
  std::vector<Rational> nonstable_poly;
  int degree = -1;
  /// n(d-1)^2.
  int bound = 0;
  bool holds = false;
};

/// Interpolates |X_n \ X_n^xi|(q) and compares its degree with n(d-1)^2.
/// Throws InsufficientPrimes with fewer than n(d-1)^2 + 2 primes.
GrowthReport nonstable_growth_check(const ShellSpec& shell, const std::vector<std::uint32_t>& primes,
                                    const XiParam& xi,
                                    std::uint64_t budget = default_enumeration_budget());

}  // namespace lagstab
