#include "lagstab/poincare.hpp"

#include <algorithm>
#include <set>

#include "lagstab/errors.hpp"

namespace lagstab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("power series coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("power series coefficient overflow");
  return r;
}

}  // namespace

PowerSeriesZ::PowerSeriesZ(std::vector<std::int64_t> coeffs, int order)
    : coeffs_(std::move(coeffs)), order_(order) {
  if (order < 0) throw InvalidArgument("power series order must be >= 0");
  coeffs_.resize(static_cast<std::size_t>(order) + 1, 0);
}

PowerSeriesZ PowerSeriesZ::geometric(int step, int order) {
  if (step < 1) throw InvalidArgument("geometric series step must be >= 1");
  std::vector<std::int64_t> c(static_cast<std::size_t>(order) + 1, 0);
  for (int i = 0; i <= order; i += step) c[static_cast<std::size_t>(i)] = 1;
  return PowerSeriesZ(std::move(c), order);
}

std::int64_t PowerSeriesZ::coeff(int i) const {
  if (i < 0) throw InvalidArgument("negative degree");
  if (i > order_) throw OrderExceeded("degree " + std::to_string(i) + " beyond order " + std::to_string(order_));
  return coeffs_[static_cast<std::size_t>(i)];
}

PowerSeriesZ operator+(const PowerSeriesZ& a, const PowerSeriesZ& b) {
  const int order = std::min(a.order_, b.order_);
  std::vector<std::int64_t> c(static_cast<std::size_t>(order) + 1);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_add(a.coeffs_[i], b.coeffs_[i]);
  return PowerSeriesZ(std::move(c), order);
}

PowerSeriesZ operator-(const PowerSeriesZ& a, const PowerSeriesZ& b) {
  const int order = std::min(a.order_, b.order_);
  std::vector<std::int64_t> c(static_cast<std::size_t>(order) + 1);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_add(a.coeffs_[i], checked_mul(-1, b.coeffs_[i]));
  return PowerSeriesZ(std::move(c), order);
}

PowerSeriesZ operator*(const PowerSeriesZ& a, const PowerSeriesZ& b) {
  const int order = std::min(a.order_, b.order_);
  std::vector<std::int64_t> c(static_cast<std::size_t>(order) + 1, 0);
  for (int i = 0; i <= order; ++i) {
    if (a.coeffs_[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j <= order; ++j) {
      const auto k = static_cast<std::size_t>(i + j);
      c[k] = checked_add(c[k], checked_mul(a.coeffs_[static_cast<std::size_t>(i)], b.coeffs_[static_cast<std::size_t>(j)]));
    }
  }
  return PowerSeriesZ(std::move(c), order);
}

bool PowerSeriesZ::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

mpz_class PowerSeriesZ::evaluate_even(long q) const {
  mpz_class value = 0, power = 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i % 2 == 1) {
      if (coeffs_[i] != 0) throw InvalidArgument("evaluate_even: series has odd terms");
      continue;
    }
    value += power * mpz_class(static_cast<long>(coeffs_[i]));
    power *= q;
  }
  return value;
}

std::string PowerSeriesZ::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const std::int64_t c = coeffs_[i];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (i == 0 || a != 1) out += std::to_string(a);
    if (i >= 1) out += "t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  if (out.empty()) out = "0";
  return out + " + O(t^" + std::to_string(order_ + 1) + ")";
}

PowerSeriesZ truncate(const PowerSeriesZ& f, int n) {
  if (n < 0) throw InvalidArgument("truncate: negative degree");
  if (n > f.order()) throw OrderExceeded("truncate: degree " + std::to_string(n) + " beyond order " + std::to_string(f.order()));
  return PowerSeriesZ(f.coefficients(), n);
}

PowerSeriesZ bott_series(int d, int order) {
  if (d < 2) throw InvalidArgument("bott_series needs d >= 2");
  PowerSeriesZ out = PowerSeriesZ::one(order);
  for (int i = 1; i < d; ++i) out = out * PowerSeriesZ::geometric(2 * i, order);
  return out;
}

PowerSeriesZ quotient_series(int d, int order) {
  if (d < 2) throw InvalidArgument("quotient_series needs d >= 2");
  // (1 - t^2)^{-(d-1)} = sum_k C(k + d - 2, d - 2) t^{2k}.
  std::vector<std::int64_t> c(static_cast<std::size_t>(order) + 1, 0);
  for (int k = 0; 2 * k <= order; ++k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k + d - 2), static_cast<unsigned long>(d - 2));
    if (!b.fits_slong_p()) throw Error("power series coefficient overflow");
    c[static_cast<std::size_t>(2 * k)] = b.get_si();
  }
  return PowerSeriesZ(std::move(c), order) * bott_series(d, order);
}

int dim_shell(const ShellSpec& shell) {
  shell.validate();
  return shell.n * shell.d * (shell.d - 1);
}

int codim_bound(const ShellSpec& shell) {
  shell.validate();
  return (shell.d - 1) * shell.n;
}

PowerSeriesZ cells_polynomial(const ShellSpec& shell) {
  const int order = 2 * dim_shell(shell);
  std::vector<std::int64_t> c(static_cast<std::size_t>(order) + 1, 0);
  for (const auto& mu : fixed_points_shell(shell)) {
    int cell = 0;
    for (int i = 1; i < shell.d; ++i) cell += i * (shell.n - mu[static_cast<std::size_t>(i)]);
    ++c[static_cast<std::size_t>(2 * cell)];
  }
  return PowerSeriesZ(std::move(c), order);
}

std::vector<Rational> lagrange_interpolate(const std::vector<std::pair<long, Rational>>& points) {
  const std::size_t k = points.size();
  std::vector<Rational> out(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    // Basis polynomial prod_{j != i} (q - x_j) / (x_i - x_j), built ascending.
    std::vector<Rational> basis{1};
    Rational denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      if (points[j].first == points[i].first) throw InvalidArgument("interpolation points repeat");
      std::vector<Rational> next(basis.size() + 1, 0);
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * points[j].first;
      }
      basis = std::move(next);
      denom *= points[i].first - points[j].first;
    }
    const Rational scale = points[i].second / denom;
    for (std::size_t t = 0; t < basis.size(); ++t) out[t] += basis[t] * scale;
  }
  for (auto& c : out) c.canonicalize();
  return out;
}

int polynomial_degree(const std::vector<Rational>& coeffs) {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    if (coeffs[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

std::string format_polynomial(const std::vector<Rational>& coeffs, const std::string& var) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Rational& c = coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const Rational a = abs(c);
    if (i == 0 || a != 1) out += format_rational(a);
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

namespace {

void validate_primes(const std::vector<std::uint32_t>& primes) {
  if (primes.empty()) throw InvalidArgument("at least one prime is required");
  std::set<std::uint32_t> seen;
  for (auto p : primes) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) throw InvalidArgument("prime " + std::to_string(p) + " repeated");
  }
}

std::vector<Rational> interpolate_counts(const CountReport& rep, long PrimeCount::*field) {
  std::vector<std::pair<long, Rational>> pts;
  for (const auto& c : rep.counts) pts.emplace_back(static_cast<long>(c.p), Rational(c.*field));
  return lagrange_interpolate(pts);
}

Rational coeff_or_zero(const std::vector<Rational>& poly, std::size_t i) {
  return i < poly.size() ? poly[i] : Rational(0);
}

}  // namespace

CountReport count_points(const ShellSpec& shell, const std::vector<std::uint32_t>& primes,
                         const XiParam& xi, std::uint64_t budget) {
  validate_primes(primes);
  shell.validate();
  if (xi.dim() != shell.d) throw ShapeMismatch("xi and shell have different dimensions");
  require_generic(xi);
  CountReport rep;
  rep.shell = shell;
  rep.xi = xi.entries();
  for (auto p : primes) {
    const auto audit = partition_audit(shell, PrimeField(p), xi, budget);
    PrimeCount c;
    c.p = p;
    c.total = audit.total;
    c.stable = audit.count(StratumTag::stable());
    c.strata = audit.counts;
    long divisor = 1;
    for (int i = 1; i < shell.d; ++i) divisor *= static_cast<long>(p) - 1;
    if (c.stable % divisor != 0) {
      throw NonIntegralQuotient(std::to_string(c.stable) + " stable points at p = " + std::to_string(p) +
                                " not divisible by " + std::to_string(divisor));
    }
    c.quotient = c.stable / divisor;
    rep.counts.push_back(std::move(c));
  }
  const auto k = static_cast<int>(primes.size());
  const int dim = dim_shell(shell);
  if (k >= dim + 1) {
    rep.total_poly = interpolate_counts(rep, &PrimeCount::total);
    rep.stable_poly = interpolate_counts(rep, &PrimeCount::stable);
  }
  if (k >= dim - shell.d + 2) rep.quotient_poly = interpolate_counts(rep, &PrimeCount::quotient);
  return rep;
}

CompareReport compare_report(const ShellSpec& shell, const std::vector<std::uint32_t>& primes,
                             const XiParam& xi, std::uint64_t budget) {
  const int needed = dim_shell(shell) - shell.d + 2;
  if (static_cast<int>(primes.size()) < needed) {
    throw InsufficientPrimes("compare needs at least " + std::to_string(needed) + " primes");
  }
  CompareReport rep;
  rep.counts = count_points(shell, primes, xi, budget);
  rep.quotient_poly = *rep.counts.quotient_poly;
  rep.window = 2 * (shell.d - 1) * shell.n - 2;
  const int deg = std::max(polynomial_degree(rep.quotient_poly), 0);
  const int top = std::max(rep.window / 2, deg + 1);
  const PowerSeriesZ series = quotient_series(shell.d, 2 * top);
  rep.window_matches = true;
  for (int i = 0; i <= top; ++i) {
    const std::int64_t s = series.coeff(2 * i);
    rep.series.push_back(s);
    const bool same = coeff_or_zero(rep.quotient_poly, static_cast<std::size_t>(i)) == Rational(s);
    if (!same && !rep.first_divergence) rep.first_divergence = 2 * i;
    if (!same && 2 * i <= rep.window) rep.window_matches = false;
  }
  if (rep.counts.total_poly) {
    const auto& total = *rep.counts.total_poly;
    const int tdeg = polynomial_degree(total);
    const PowerSeriesZ bott = bott_series(shell.d, 2 * (tdeg + 1));
    int agreed = -1;
    for (int i = 0; i <= tdeg + 1; ++i) {
      if (coeff_or_zero(total, static_cast<std::size_t>(i)) != Rational(bott.coeff(2 * i))) break;
      agreed = 2 * i;
    }
    rep.bott_agreement_degree = agreed;
  }
  return rep;
}

GrowthReport nonstable_growth_check(const ShellSpec& shell, const std::vector<std::uint32_t>& primes,
                                    const XiParam& xi, std::uint64_t budget) {
  shell.validate();
  GrowthReport rep;
  rep.bound = shell.n * (shell.d - 1) * (shell.d - 1);
  if (static_cast<int>(primes.size()) < rep.bound + 2) {
    throw InsufficientPrimes("growth check needs at least " + std::to_string(rep.bound + 2) + " primes");
  }
  const CountReport counts = count_points(shell, primes, xi, budget);
  std::vector<std::pair<long, Rational>> pts;
  for (const auto& c : counts.counts) pts.emplace_back(static_cast<long>(c.p), Rational(c.total - c.stable));
  rep.nonstable_poly = lagrange_interpolate(pts);
  rep.degree = polynomial_degree(rep.nonstable_poly);
  rep.holds = rep.degree <= rep.bound;
  return rep;
}

}  // namespace lagstab
