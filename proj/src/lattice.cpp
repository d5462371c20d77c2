#include "lagstab/lattice.hpp"

#include <cstdlib>
#include <string>

#include "lagstab/errors.hpp"

namespace lagstab {

Lattice lattice_from_form(HermiteForm h) {
  Lattice l;
  int index = 0;
  for (int a : h.pivots) index += a;
  l.basis_ = std::move(h.basis);
  l.pivots_ = std::move(h.pivots);
  l.index_ = index;
  return l;
}

Lattice lattice_from_matrix(const LaurentMatrix& m) {
  const int precision = containment_precision(m);
  return lattice_from_form(hermite_over_o(m.field(), m.dim(), m.columns(), precision));
}

Lattice lattice_from_generators(PrimeField field, int d, std::vector<LaurentVector> generators,
                                int precision) {
  return lattice_from_form(hermite_over_o(field, d, std::move(generators), precision));
}

Lattice standard_lattice(PrimeField field, int d) {
  return lattice_from_matrix(LaurentMatrix::identity(field, d));
}

void ShellSpec::validate() const {
  if (d < 1) throw InvalidArgument("shell: d must be >= 1");
  if (n < 1) throw InvalidArgument("shell: n must be >= 1");
}

FormKind parse_form_kind(const std::string& name) {
  if (name == "gl_pairing") return FormKind::gl_pairing;
  if (name == "symplectic") return FormKind::symplectic;
  if (name == "symmetric_even") return FormKind::symmetric_even;
  if (name == "symmetric_odd") return FormKind::symmetric_odd;
  throw InvalidArgument("unknown form kind '" + name + "'");
}

std::string to_string(FormKind kind) {
  switch (kind) {
    case FormKind::gl_pairing:
      return "gl_pairing";
    case FormKind::symplectic:
      return "symplectic";
    case FormKind::symmetric_even:
      return "symmetric_even";
    case FormKind::symmetric_odd:
      return "symmetric_odd";
  }
  return "?";
}

Subset subset_from_mask(unsigned mask, int d) {
  Subset s;
  for (int i = 0; i < d; ++i) {
    if (mask & (1u << i)) s.push_back(i);
  }
  return s;
}

unsigned mask_from_subset(const Subset& s) {
  unsigned m = 0;
  for (int i : s) m |= 1u << i;
  return m;
}

Intersection intersect_coordinate(const Lattice& lattice, const Subset& s) {
  const int d = lattice.dim();
  const PrimeField f = lattice.field();
  if (s.empty()) throw InvalidArgument("intersect_coordinate: empty subset");
  std::vector<bool> in_s(static_cast<std::size_t>(d), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= d || (i > 0 && s[i] <= s[i - 1])) {
      throw InvalidArgument("intersect_coordinate: subset must be sorted, distinct, in range");
    }
    in_s[static_cast<std::size_t>(s[i])] = true;
  }
  if (static_cast<int>(s.size()) == d) return {lattice.index(), lattice.basis().columns()};

  std::vector<int> outside;
  for (int r = 0; r < d; ++r) {
    if (!in_s[static_cast<std::size_t>(r)]) outside.push_back(r);
  }
  const LaurentMatrix& b = lattice.basis();
  const auto kernel = kernel_saturation(b, outside);
  const int k = static_cast<int>(s.size());
  std::vector<LaurentVector> restricted;
  for (const auto& c : kernel) {
    LaurentVector g;
    for (int r : s) {
      LaurentPoly acc(f);
      for (int j = 0; j < d; ++j) acc += b.at(r, j) * c[static_cast<std::size_t>(j)];
      g.push_back(std::move(acc));
    }
    restricted.push_back(std::move(g));
  }
  const Lattice sub = lattice_from_matrix(LaurentMatrix::from_columns(f, restricted));
  Intersection out;
  out.index = sub.index();
  for (int c = 0; c < k; ++c) {
    LaurentVector v(static_cast<std::size_t>(d), LaurentPoly(f));
    for (int r = 0; r < k; ++r) v[static_cast<std::size_t>(s[static_cast<std::size_t>(r)])] = sub.basis().at(r, c);
    out.basis.push_back(std::move(v));
  }
  return out;
}

std::vector<int> subset_indices(const Lattice& lattice) {
  const int d = lattice.dim();
  std::vector<int> out(std::size_t{1} << d, 0);
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    out[mask] = intersect_coordinate(lattice, subset_from_mask(mask, d)).index;
  }
  return out;
}

Lattice translate(const Lattice& lattice, const std::vector<int>& mu) {
  const int d = lattice.dim();
  if (static_cast<int>(mu.size()) != d) throw ShapeMismatch("translate: mu has wrong length");
  LaurentMatrix m = lattice.basis();
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m.at(r, c) = m.at(r, c).shifted(mu[static_cast<std::size_t>(r)]);
  }
  return lattice_from_matrix(m);
}

Lattice act(const LaurentMatrix& g, const Lattice& lattice) {
  if (g.dim() != lattice.dim()) throw ShapeMismatch("act: dimension mismatch");
  return lattice_from_matrix(g * lattice.basis());
}

bool contains(const Lattice& lattice, const LaurentVector& v) {
  const int d = lattice.dim();
  if (static_cast<int>(v.size()) != d) throw ShapeMismatch("contains: vector has wrong length");
  LaurentVector w = v;
  const LaurentMatrix& b = lattice.basis();
  for (int r = d - 1; r >= 0; --r) {
    const auto ur = static_cast<std::size_t>(r);
    if (w[ur].is_zero()) continue;
    const LaurentPoly c = w[ur].shifted(-lattice.pivots()[ur]);
    if (c.valuation() < 0) return false;
    for (int k = 0; k <= r; ++k) w[static_cast<std::size_t>(k)] -= c * b.at(k, r);
  }
  return true;
}

bool in_shell(const Lattice& lattice, const ShellSpec& shell) {
  shell.validate();
  if (lattice.dim() != shell.d || lattice.index() != 0) return false;
  const PrimeField f = lattice.field();
  for (int j = 0; j < shell.d; ++j) {
    LaurentVector e(static_cast<std::size_t>(shell.d), LaurentPoly(f));
    e[static_cast<std::size_t>(j)] = LaurentPoly::monomial(f, shell.n);
    if (!contains(lattice, e)) return false;
  }
  return true;
}

std::uint64_t default_enumeration_budget() {
  constexpr std::uint64_t kDefault = 10'000'000;
  const char* env = std::getenv("LAGSTAB_BUDGET");
  if (env == nullptr || *env == '\0') return kDefault;
  try {
    std::size_t used = 0;
    const std::string s(env);
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size() || s[0] == '-') throw InvalidArgument("");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("LAGSTAB_BUDGET is not a nonnegative integer: ") + env);
  }
}

namespace {

// Depth-first search over reduced echelon forms of eps-stable subspaces of
// eps^{(1-d)n} L_0 / eps^n L_0. Coordinate pos = (a - (1-d)n) d + j stands for
// eps^a e_j, so multiplication by eps sends pos to pos + d.
class ShellSearch {
 public:
  ShellSearch(const ShellSpec& shell, PrimeField field,
              const std::function<void(const Lattice&)>& visit, std::uint64_t budget)
      : shell_(shell),
        f_(field),
        visit_(visit),
        budget_(budget),
        total_(static_cast<std::size_t>(shell.n * shell.d * shell.d)),
        target_(static_cast<std::size_t>(shell.n * shell.d)),
        rows_(total_),
        is_pivot_(total_, false) {}

  std::uint64_t run() {
    dfs(static_cast<long>(total_) - 1, 0);
    return found_;
  }

 private:
  fp::Vec shifted_unit(std::size_t pos) const {
    fp::Vec v(total_, 0);
    if (pos + static_cast<std::size_t>(shell_.d) < total_) v[pos + static_cast<std::size_t>(shell_.d)] = 1;
    return v;
  }

  void reduce(fp::Vec& w) const {
    for (std::size_t q = 0; q < total_; ++q) {
      if (!is_pivot_[q] || w[q] == 0) continue;
      const std::uint32_t c = w[q];
      const fp::Vec& row = rows_[q];
      for (std::size_t t = q; t < total_; ++t) {
        if (row[t] != 0) w[t] = f_.sub(w[t], f_.mul(c, row[t]));
      }
    }
  }

  void tick() {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("shell enumeration exceeded budget of " + std::to_string(budget_) +
                           " search nodes");
    }
  }

  void emit() {
    std::vector<LaurentVector> gens;
    const int d = shell_.d;
    const int low = (1 - d) * shell_.n;
    for (std::size_t q = 0; q < total_; ++q) {
      if (!is_pivot_[q]) continue;
      std::vector<std::vector<std::pair<int, std::int64_t>>> terms(static_cast<std::size_t>(d));
      for (std::size_t t = q; t < total_; ++t) {
        const std::uint32_t c = rows_[q][t];
        if (c == 0) continue;
        terms[t % static_cast<std::size_t>(d)].emplace_back(low + static_cast<int>(t / static_cast<std::size_t>(d)), c);
      }
      LaurentVector v;
      for (auto& tj : terms) v.emplace_back(f_, std::move(tj));
      gens.push_back(std::move(v));
    }
    ++found_;
    visit_(lattice_from_generators(f_, d, std::move(gens), shell_.n));
  }

  void dfs(long k, std::size_t dim) {
    tick();
    if (dim == target_) {
      emit();
      return;
    }
    if (k < 0) return;
    const auto uk = static_cast<std::size_t>(k);
    if (dim + uk >= target_) dfs(k - 1, dim);

    // Pivot at k: row e_k + sum c_f e_f over non-pivot f > k, with eps * row
    // in the span of the rows already chosen.
    std::vector<std::size_t> free_pos;
    for (std::size_t q = uk + 1; q < total_; ++q) {
      if (!is_pivot_[q]) free_pos.push_back(q);
    }
    const std::size_t m = free_pos.size();
    fp::Mat system(total_, fp::Vec(m + 1, 0));
    {
      fp::Vec r0 = shifted_unit(uk);
      reduce(r0);
      for (std::size_t i = 0; i < total_; ++i) system[i][m] = f_.neg(r0[i]);
      for (std::size_t c = 0; c < m; ++c) {
        fp::Vec rc = shifted_unit(free_pos[c]);
        reduce(rc);
        for (std::size_t i = 0; i < total_; ++i) system[i][c] = rc[i];
      }
    }
    fp::Mat red = fp::rref(f_, std::move(system));
    std::vector<bool> bound(m, false);
    fp::Vec particular(m, 0);
    for (const auto& row : red) {
      const std::size_t lead = fp::leading_index(row);
      if (lead == m) return;  // inconsistent
      bound[lead] = true;
      particular[lead] = row[m];
    }
    fp::Mat directions;
    for (std::size_t fr = 0; fr < m; ++fr) {
      if (bound[fr]) continue;
      fp::Vec x(m, 0);
      x[fr] = 1;
      for (const auto& row : red) x[fp::leading_index(row)] = f_.neg(row[fr]);
      directions.push_back(std::move(x));
    }

    const std::uint32_t p = f_.characteristic();
    std::vector<std::uint32_t> t(directions.size(), 0);
    is_pivot_[uk] = true;
    while (true) {
      fp::Vec row(total_, 0);
      row[uk] = 1;
      for (std::size_t c = 0; c < m; ++c) {
        std::uint32_t val = particular[c];
        for (std::size_t g = 0; g < directions.size(); ++g) {
          if (t[g] != 0) val = f_.add(val, f_.mul(t[g], directions[g][c]));
        }
        row[free_pos[c]] = val;
      }
      rows_[uk] = std::move(row);
      dfs(k - 1, dim + 1);
      std::size_t g = 0;
      while (g < t.size() && ++t[g] == p) t[g++] = 0;
      if (g == t.size()) break;
    }
    is_pivot_[uk] = false;
    rows_[uk].clear();
  }

  ShellSpec shell_;
  PrimeField f_;
  const std::function<void(const Lattice&)>& visit_;
  std::uint64_t budget_;
  std::size_t total_;
  std::size_t target_;
  std::vector<fp::Vec> rows_;
  std::vector<bool> is_pivot_;
  std::uint64_t nodes_ = 0;
  std::uint64_t found_ = 0;
};

}  // namespace

std::uint64_t enumerate_shell(const ShellSpec& shell, PrimeField field,
                              const std::function<void(const Lattice&)>& visit,
                              std::uint64_t budget) {
  shell.validate();
  return ShellSearch(shell, field, visit, budget).run();
}

std::vector<Lattice> shell_lattices(const ShellSpec& shell, PrimeField field, std::uint64_t budget) {
  std::vector<Lattice> out;
  enumerate_shell(shell, field, [&out](const Lattice& l) { out.push_back(l); }, budget);
  return out;
}

namespace {

// Signed permutation matrix J of the standard form <x, y> = x^T J y.
LaurentMatrix form_matrix(PrimeField f, int d, FormKind form) {
  LaurentMatrix j(f, d);
  switch (form) {
    case FormKind::gl_pairing:
      return LaurentMatrix::identity(f, d);
    case FormKind::symplectic:
      if (d % 2 != 0) throw FormDimensionMismatch("symplectic form needs even d");
      for (int i = 0; i < d; ++i) j.at(i, d - 1 - i) = LaurentPoly::constant(f, i < d / 2 ? 1 : -1);
      return j;
    case FormKind::symmetric_even:
    case FormKind::symmetric_odd:
      if ((form == FormKind::symmetric_even) != (d % 2 == 0)) {
        throw FormDimensionMismatch(to_string(form) + " form does not fit d = " + std::to_string(d));
      }
      for (int i = 0; i < d; ++i) j.at(i, d - 1 - i) = LaurentPoly::constant(f, 1);
      return j;
  }
  return j;
}

// Inverse of a canonical basis: upper triangular with monic monomial diagonal,
// so back substitution only divides by powers of eps.
LaurentMatrix canonical_inverse(const Lattice& lattice) {
  const int d = lattice.dim();
  const PrimeField f = lattice.field();
  const LaurentMatrix& b = lattice.basis();
  LaurentMatrix inv(f, d);
  for (int c = 0; c < d; ++c) {
    for (int r = d - 1; r >= 0; --r) {
      LaurentPoly acc = LaurentPoly::constant(f, r == c ? 1 : 0);
      for (int k = r + 1; k < d; ++k) acc -= b.at(r, k) * inv.at(k, c);
      inv.at(r, c) = acc.shifted(-lattice.pivots()[static_cast<std::size_t>(r)]);
    }
  }
  return inv;
}

}  // namespace

Lattice dual_lattice(const Lattice& lattice, FormKind form) {
  const int d = lattice.dim();
  const PrimeField f = lattice.field();
  const LaurentMatrix j = form_matrix(f, d, form);
  const LaurentMatrix inv = canonical_inverse(lattice);
  LaurentMatrix inv_t(f, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) inv_t.at(r, c) = inv.at(c, r);
  }
  // J is a signed permutation, so J^{-T} = J.
  return lattice_from_matrix(j * inv_t);
}

bool is_self_dual(const Lattice& lattice, FormKind form) {
  return dual_lattice(lattice, form) == lattice;
}

}  // namespace lagstab
