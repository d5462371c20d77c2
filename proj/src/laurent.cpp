#include "lagstab/laurent.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lagstab/errors.hpp"

namespace lagstab {

LaurentPoly::LaurentPoly(PrimeField field, std::vector<std::pair<int, std::int64_t>> terms)
    : field_(field) {
  std::map<int, std::uint32_t> acc;
  for (auto [e, c] : terms) {
    auto& slot = acc[e];
    slot = field_.add(slot, field_.reduce(c));
  }
  for (auto [e, c] : acc) {
    if (c != 0) terms_.push_back({e, c});
  }
}

LaurentPoly LaurentPoly::monomial(PrimeField field, int exponent, std::int64_t coeff) {
  LaurentPoly out(field);
  std::uint32_t c = field.reduce(coeff);
  if (c != 0) out.terms_.push_back({exponent, c});
  return out;
}

std::uint32_t LaurentPoly::coeff_at(int exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.exponent < e; });
  return (it != terms_.end() && it->exponent == exponent) ? it->coeff : 0;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.exponent += k;
  return out;
}

LaurentPoly LaurentPoly::scaled(std::uint32_t c) const {
  LaurentPoly out(field_);
  c %= field_.characteristic();
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.exponent, field_.mul(t.coeff, c)});
  return out;
}

LaurentPoly LaurentPoly::below(int bound) const {
  LaurentPoly out(field_);
  for (const auto& t : terms_) {
    if (t.exponent >= bound) break;
    out.terms_.push_back(t);
  }
  return out;
}

LaurentPoly LaurentPoly::at_or_above(int bound) const {
  LaurentPoly out(field_);
  for (const auto& t : terms_) {
    if (t.exponent >= bound) out.terms_.push_back(t);
  }
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.coeff = field_.neg(t.coeff);
  return out;
}

namespace {

template <class Combine>
std::vector<LaurentPoly::Term> merge_terms(const std::vector<LaurentPoly::Term>& a,
                                           const std::vector<LaurentPoly::Term>& b,
                                           const PrimeField& f, Combine combine) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exponent < b[j].exponent)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exponent < a[i].exponent) {
      out.push_back({b[j].exponent, combine(0u, b[j].coeff)});
      ++j;
    } else {
      std::uint32_t c = combine(a[i].coeff, b[j].coeff);
      if (c != 0) out.push_back({a[i].exponent, c});
      ++i;
      ++j;
    }
  }
  (void)f;
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    terms_ = o.terms_;
    field_ = o.field_;
    return *this;
  }
  if (!(field_ == o.field_)) throw InvalidArgument("mixed characteristics");
  const PrimeField f = field_;
  terms_ = merge_terms(terms_, o.terms_, f,
                       [&f](std::uint32_t x, std::uint32_t y) { return f.add(x, y); });
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = -o;
    return *this;
  }
  if (!(field_ == o.field_)) throw InvalidArgument("mixed characteristics");
  const PrimeField f = field_;
  terms_ = merge_terms(terms_, o.terms_, f,
                       [&f](std::uint32_t x, std::uint32_t y) { return f.sub(x, y); });
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.is_zero() ? a.field_ : b.field_);
  if (!(a.field_ == b.field_)) throw InvalidArgument("mixed characteristics");
  const PrimeField& f = a.field_;
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const auto& mono = a.terms_.size() == 1 ? a : b;
    const auto& other = a.terms_.size() == 1 ? b : a;
    return other.shifted(mono.terms_[0].exponent).scaled(mono.terms_[0].coeff);
  }
  int lo = a.terms_.front().exponent + b.terms_.front().exponent;
  int hi = a.terms_.back().exponent + b.terms_.back().exponent;
  std::vector<std::uint64_t> dense(static_cast<std::size_t>(hi - lo + 1), 0);
  const std::uint64_t p = f.characteristic();
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto& slot = dense[static_cast<std::size_t>(s.exponent + t.exponent - lo)];
      slot = (slot + static_cast<std::uint64_t>(s.coeff) * t.coeff) % p;
    }
  }
  LaurentPoly out(f);
  for (std::size_t k = 0; k < dense.size(); ++k) {
    if (dense[k] != 0) {
      out.terms_.push_back({lo + static_cast<int>(k), static_cast<std::uint32_t>(dense[k])});
    }
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    if (t.exponent == 0) {
      os << t.coeff;
      continue;
    }
    if (t.coeff != 1) os << t.coeff << "*";
    os << "e";
    if (t.exponent != 1) os << "^" << t.exponent;
  }
  return os.str();
}

LaurentPoly unit_inverse_mod(const LaurentPoly& u, int precision) {
  const PrimeField& f = u.field();
  if (u.valuation() != 0) throw InvalidArgument("unit_inverse_mod: not a unit of O");
  LaurentPoly out(f);
  if (precision <= 0) return out;
  // Power-series recurrence: v_0 = u_0^{-1}, v_k = -u_0^{-1} sum_{j=1..k} u_j v_{k-j}.
  const std::uint32_t inv0 = f.inv(u.coeff_at(0));
  std::vector<std::uint32_t> uc(static_cast<std::size_t>(precision), 0);
  for (const auto& t : u.terms()) {
    if (t.exponent < precision) uc[static_cast<std::size_t>(t.exponent)] = t.coeff;
  }
  std::vector<std::uint32_t> v(static_cast<std::size_t>(precision), 0);
  v[0] = inv0;
  for (int k = 1; k < precision; ++k) {
    std::uint32_t acc = 0;
    for (int j = 1; j <= k; ++j) {
      acc = f.add(acc, f.mul(uc[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(k - j)]));
    }
    v[static_cast<std::size_t>(k)] = f.mul(f.neg(acc), inv0);
  }
  std::vector<std::pair<int, std::int64_t>> terms;
  for (int k = 0; k < precision; ++k) {
    if (v[static_cast<std::size_t>(k)] != 0) terms.emplace_back(k, v[static_cast<std::size_t>(k)]);
  }
  return LaurentPoly(f, std::move(terms));
}

std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw InvalidArgument("poly_divmod: division by zero");
  if ((!a.is_zero() && a.valuation() < 0) || b.valuation() < 0) {
    throw InvalidArgument("poly_divmod: negative exponents");
  }
  const PrimeField& f = b.field();
  LaurentPoly q(f);
  LaurentPoly r = a;
  const int db = b.top_exponent();
  const std::uint32_t lead_inv = f.inv(b.leading_coeff());
  while (!r.is_zero() && r.top_exponent() >= db) {
    LaurentPoly step = LaurentPoly::monomial(f, r.top_exponent() - db, f.mul(r.leading_coeff(), lead_inv));
    q += step;
    r -= step * b;
  }
  return {q, r};
}

LaurentMatrix::LaurentMatrix(PrimeField field, int d)
    : field_(field), d_(d), entries_(static_cast<std::size_t>(d * d), LaurentPoly(field)) {}

LaurentMatrix::LaurentMatrix(PrimeField field, int d, std::vector<LaurentPoly> entries)
    : field_(field), d_(d), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(d * d)) {
    throw InvalidArgument("LaurentMatrix: expected d*d entries");
  }
}

LaurentMatrix LaurentMatrix::identity(PrimeField field, int d) {
  LaurentMatrix m(field, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = LaurentPoly::constant(field, 1);
  return m;
}

LaurentMatrix LaurentMatrix::diagonal_powers(PrimeField field, const std::vector<int>& exponents) {
  const int d = static_cast<int>(exponents.size());
  LaurentMatrix m(field, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = LaurentPoly::monomial(field, exponents[static_cast<std::size_t>(i)]);
  return m;
}

LaurentMatrix LaurentMatrix::from_columns(PrimeField field, const std::vector<LaurentVector>& cols) {
  const int d = static_cast<int>(cols.size());
  LaurentMatrix m(field, d);
  for (int c = 0; c < d; ++c) {
    if (static_cast<int>(cols[static_cast<std::size_t>(c)].size()) != d) {
      throw InvalidArgument("from_columns: column length mismatch");
    }
    for (int r = 0; r < d; ++r) m.at(r, c) = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
  }
  return m;
}

LaurentVector LaurentMatrix::column(int c) const {
  LaurentVector v;
  v.reserve(static_cast<std::size_t>(d_));
  for (int r = 0; r < d_; ++r) v.push_back(at(r, c));
  return v;
}

std::vector<LaurentVector> LaurentMatrix::columns() const {
  std::vector<LaurentVector> out;
  out.reserve(static_cast<std::size_t>(d_));
  for (int c = 0; c < d_; ++c) out.push_back(column(c));
  return out;
}

int LaurentMatrix::min_valuation() const {
  int m = kInfiniteValuation;
  for (const auto& e : entries_) m = std::min(m, e.valuation());
  return m;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.d_ != b.d_) throw InvalidArgument("matrix product: dimension mismatch");
  LaurentMatrix out(a.field_, a.d_);
  for (int i = 0; i < a.d_; ++i) {
    for (int k = 0; k < a.d_; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < a.d_; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  }
  return out;
}

}  // namespace lagstab
