#include "lagstab/git.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "lagstab/errors.hpp"
#include "lagstab/polytope.hpp"
#include "lagstab/stability.hpp"

namespace lagstab {

int GradedSpaceSpec::total() const {
  int t = 0;
  for (int n : dims) t += n;
  return t;
}

int GradedSpaceSpec::offset(int j) const {
  int t = 0;
  for (int i = 0; i < j; ++i) t += dims[static_cast<std::size_t>(i)];
  return t;
}

int GradedSpaceSpec::summand_of(int k) const {
  for (int j = 0; j < summands(); ++j) {
    k -= dims[static_cast<std::size_t>(j)];
    if (k < 0) return j;
  }
  throw InvalidArgument("summand_of: coordinate out of range");
}

void GradedSpaceSpec::validate() const {
  if (dims.empty()) throw InvalidArgument("graded space needs at least one summand");
  for (int n : dims) {
    if (n < 1) throw InvalidArgument("graded space summands must have dimension >= 1");
  }
}

GradedSpaceSpec shell_space(const ShellSpec& shell) {
  shell.validate();
  return GradedSpaceSpec{std::vector<int>(static_cast<std::size_t>(shell.d), shell.n * shell.d)};
}

GradedSubspace::GradedSubspace(GradedSpaceSpec spec, PrimeField field, fp::Mat rows)
    : spec_(std::move(spec)), field_(field) {
  spec_.validate();
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != spec_.total()) throw ShapeMismatch("graded subspace: row length");
  }
  rows_ = fp::rref(field_, std::move(rows));
}

namespace {

fp::Mat restrict_columns(const fp::Mat& rows, const GradedSpaceSpec& spec, unsigned mask) {
  fp::Mat out;
  for (const auto& r : rows) {
    fp::Vec v;
    for (int j = 0; j < spec.summands(); ++j) {
      if (!(mask & (1u << j))) continue;
      const int off = spec.offset(j);
      for (int a = 0; a < spec.dims[static_cast<std::size_t>(j)]; ++a) v.push_back(r[static_cast<std::size_t>(off + a)]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

unsigned full_mask(int summands) { return (1u << summands) - 1; }

}  // namespace

int GradedSubspace::dim_projection(unsigned summand_mask) const {
  if (rows_.empty() || summand_mask == 0) return 0;
  return static_cast<int>(fp::rank(field_, restrict_columns(rows_, spec_, summand_mask)));
}

int GradedSubspace::dim_intersection(unsigned summand_mask) const {
  const unsigned rest = full_mask(spec_.summands()) & ~summand_mask;
  return dim() - dim_projection(rest);
}

bool GradedSubspace::is_split() const {
  int sum = 0;
  for (int j = 0; j < spec_.summands(); ++j) sum += dim_intersection(1u << j);
  return sum == dim();
}

GradedSubspace orthogonal_complement(const GradedSubspace& v) {
  const auto& spec = v.spec();
  fp::Mat paired;
  for (const auto& r : v.rows()) {
    fp::Vec w(r.size(), 0);
    for (int j = 0; j < spec.summands(); ++j) {
      const int off = spec.offset(j), n = spec.dims[static_cast<std::size_t>(j)];
      for (int a = 0; a < n; ++a) w[static_cast<std::size_t>(off + n - 1 - a)] = r[static_cast<std::size_t>(off + a)];
    }
    paired.push_back(std::move(w));
  }
  return GradedSubspace(spec, v.field(),
                        fp::nullspace(v.field(), paired, static_cast<std::size_t>(spec.total())));
}

TorusData TorusData::from_rs(std::vector<long> r, std::vector<long> s) {
  if (r.size() != s.size() || r.empty()) throw InvalidArgument("torus: r and s need equal positive length");
  Rational sum = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] <= 0 || s[i] <= 0) throw InvalidArgument("torus: r and s must be positive");
    sum += Rational(s[i], r[i]);
  }
  TorusData t;
  t.r = std::move(r);
  t.s = std::move(s);
  const Rational xd = 1 / sum;
  for (std::size_t i = 0; i < t.r.size(); ++i) t.x.push_back(Rational(t.s[i], t.r[i]) * xd);
  t.x.push_back(xd);
  for (auto& x : t.x) x.canonicalize();
  return t;
}

TorusData torus_from_xi(const XiParam& xi, const ShellSpec& shell) {
  shell.validate();
  if (xi.dim() != shell.d) throw ShapeMismatch("xi and shell have different dimensions");
  if (shell.d < 2) throw InvalidArgument("torus_from_xi needs d >= 2");
  require_generic(xi);
  const long d = shell.d, n = shell.n;
  RationalVector x;
  for (int i = 0; i < shell.d; ++i) {
    Rational xi_i = (xi[i] + n * (d - 1)) / Rational(n * d * (d - 1));
    if (xi_i <= 0) throw XiOutOfWindow();
    x.push_back(xi_i);
  }
  std::vector<long> r, s;
  for (int i = 0; i + 1 < shell.d; ++i) {
    Rational ratio = x[static_cast<std::size_t>(i)] / x.back();
    ratio.canonicalize();
    if (!ratio.get_num().fits_slong_p() || !ratio.get_den().fits_slong_p()) {
      throw InvalidArgument("torus_from_xi: weights too large");
    }
    s.push_back(ratio.get_num().get_si());
    r.push_back(ratio.get_den().get_si());
  }
  TorusData t = TorusData::from_rs(r, s);
  if (t.x != x) throw Error("torus_from_xi: reconstructed weights differ");
  return t;
}

Rational isogeny_determinant(const TorusData& torus) {
  Rational sum = 1, prod = 1;
  for (std::size_t i = 0; i < torus.r.size(); ++i) {
    sum += Rational(torus.s[i], torus.r[i]);
    prod *= torus.r[i];
  }
  Rational out = sum * prod;
  out.canonicalize();
  return out;
}

GradedSubspace rho(const Lattice& lattice, const ShellSpec& shell) {
  if (!in_shell(lattice, shell)) throw NotInShell();
  const int d = shell.d, n = shell.n, block = n * d, low = (1 - d) * n;
  const GradedSpaceSpec spec = shell_space(shell);
  fp::Mat rows;
  for (const auto& col : lattice.basis().columns()) {
    int minval = kInfiniteValuation;
    for (const auto& e : col) minval = std::min(minval, e.valuation());
    if (minval < low) throw NotInShell();
    for (int k = 0; minval + k < n; ++k) {
      fp::Vec v(static_cast<std::size_t>(spec.total()), 0);
      for (int j = 0; j < d; ++j) {
        for (const auto& t : col[static_cast<std::size_t>(j)].terms()) {
          const int a = t.exponent + k;
          if (a >= n) break;
          v[static_cast<std::size_t>(j * block + a - low)] = t.coeff;
        }
      }
      rows.push_back(std::move(v));
    }
  }
  return GradedSubspace(spec, lattice.field(), std::move(rows));
}

GradedSubspace rho_perp(const Lattice& lattice, const ShellSpec& shell) {
  return orthogonal_complement(rho(lattice, shell));
}

IntersectionIdentity intersection_identity(const Lattice& lattice, const ShellSpec& shell, const Subset& s) {
  const GradedSubspace v = rho_perp(lattice, shell);
  const int d = shell.d;
  const unsigned mask = mask_from_subset(s);
  const unsigned rest = full_mask(d) & ~mask;
  const int size = static_cast<int>(s.size());
  IntersectionIdentity out;
  out.intersection_dim = v.dim_intersection(mask);
  out.projection_dim = v.dim_projection(mask);
  out.predicted = intersect_coordinate(lattice, s).index + shell.n * (d - 1) * size;
  const int rest_index = rest == 0 ? 0 : intersect_coordinate(lattice, subset_from_mask(rest, d)).index;
  out.complement_formula = shell.n * (d - 1) * size - rest_index;
  return out;
}

bool intersection_identity_holds(const Lattice& lattice, const ShellSpec& shell, const Subset& s) {
  return intersection_identity(lattice, shell, s).holds();
}

namespace {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

}  // namespace

std::vector<std::vector<int>> pluecker_support(const GradedSubspace& v, std::uint64_t cap) {
  const int total = v.spec().total(), k = v.dim();
  if (binomial_capped(static_cast<std::uint64_t>(total), static_cast<std::uint64_t>(k), cap) > cap) {
    throw BudgetExceeded("pluecker_support: too many coordinate subsets");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == k) {
      fp::Mat minor;
      for (const auto& r : v.rows()) {
        fp::Vec m;
        for (int c : pick) m.push_back(r[static_cast<std::size_t>(c)]);
        minor.push_back(std::move(m));
      }
      if (k == 0 || fp::det(v.field(), std::move(minor)) != 0) out.push_back(pick);
      return;
    }
    for (int c = start; c + (k - static_cast<int>(pick.size())) <= total; ++c) {
      pick.push_back(c);
      rec(c + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<long> pluecker_weight(const GradedSpaceSpec& spec, const TorusData& torus,
                                  const std::vector<int>& subset) {
  const int d = spec.summands();
  if (torus.summands() != d) throw ShapeMismatch("torus and graded space have different summands");
  std::vector<long> count(static_cast<std::size_t>(d), 0);
  for (int k : subset) ++count[static_cast<std::size_t>(spec.summand_of(k))];
  std::vector<long> w;
  for (int i = 0; i + 1 < d; ++i) {
    w.push_back(torus.r[static_cast<std::size_t>(i)] * count[static_cast<std::size_t>(i)] -
                torus.s[static_cast<std::size_t>(i)] * count.back());
  }
  return w;
}

std::vector<std::vector<long>> weight_points(const GradedSubspace& v, const TorusData& torus) {
  std::set<std::vector<long>> pts;
  for (const auto& subset : pluecker_support(v)) pts.insert(pluecker_weight(v.spec(), torus, subset));
  return {pts.begin(), pts.end()};
}

namespace {

RationalMatrix to_rational(const std::vector<std::vector<long>>& pts) {
  RationalMatrix out;
  for (const auto& p : pts) {
    std::vector<Rational> q;
    for (long x : p) q.emplace_back(x);
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

bool is_torus_stable(const GradedSubspace& v, const TorusData& torus) {
  const auto pts = to_rational(weight_points(v, torus));
  return in_hull_interior(pts, std::vector<Rational>(static_cast<std::size_t>(torus.summands() - 1), 0));
}

bool is_torus_semistable(const GradedSubspace& v, const TorusData& torus) {
  const auto pts = to_rational(weight_points(v, torus));
  return in_convex_hull(pts, std::vector<Rational>(static_cast<std::size_t>(torus.summands() - 1), 0));
}

long mu_one_param(const GradedSubspace& v, const std::vector<long>& nvec, const TorusData& torus) {
  const int d = v.spec().summands();
  if (torus.summands() != d || static_cast<int>(nvec.size()) != d - 1) {
    throw ShapeMismatch("mu_one_param: nvec must have d - 1 entries");
  }
  if (std::all_of(nvec.begin(), nvec.end(), [](long x) { return x == 0; })) {
    throw InvalidArgument("mu_one_param: nvec must be nonzero");
  }
  std::vector<long> w;
  long last = 0;
  for (int i = 0; i + 1 < d; ++i) {
    w.push_back(nvec[static_cast<std::size_t>(i)] * torus.r[static_cast<std::size_t>(i)]);
    last -= nvec[static_cast<std::size_t>(i)] * torus.s[static_cast<std::size_t>(i)];
  }
  w.push_back(last);
  std::set<long> levels(w.begin(), w.end());
  auto mask_at_least = [&](long k, bool strict) {
    unsigned m = 0;
    for (int j = 0; j < d; ++j) {
      const long wj = w[static_cast<std::size_t>(j)];
      if (strict ? wj > k : wj >= k) m |= 1u << j;
    }
    return m;
  };
  // The limit keeps, at each weight level k, the piece
  // (V ∩ U_{>=k}) / (V ∩ U_{>k}) of the weight filtration.
  long r = 0;
  for (long k : levels) {
    const int piece = v.dim_intersection(mask_at_least(k, false)) - v.dim_intersection(mask_at_least(k, true));
    r += k * piece;
  }
  return -r;
}

std::string to_string(SubsetOrientation o) {
  return o == SubsetOrientation::intersection_below ? "dim(V∩E_S) < dim(V)·x_S"
                                                    : "dim(V)·x_S < dim(V∩E_S)";
}

bool closed_form_subset_test(const GradedSubspace& v, const TorusData& torus,
                             SubsetOrientation orientation, bool semistable) {
  const int d = v.spec().summands();
  if (torus.summands() != d) throw ShapeMismatch("torus and graded space have different summands");
  for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
    Rational weight = 0;
    for (int j = 0; j < d; ++j) {
      if (mask & (1u << j)) weight += torus.x[static_cast<std::size_t>(j)];
    }
    weight *= v.dim();
    const Rational inter = v.dim_intersection(mask);
    const Rational& lhs = orientation == SubsetOrientation::intersection_below ? inter : weight;
    const Rational& rhs = orientation == SubsetOrientation::intersection_below ? weight : inter;
    if (semistable ? !(lhs <= rhs) : !(lhs < rhs)) return false;
  }
  return true;
}

namespace {

void for_each_subspace(const PrimeField& f, std::size_t n, const std::function<void(fp::Mat)>& visit) {
  const std::uint32_t p = f.characteristic();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> piv;
    std::function<void(std::size_t)> choose = [&](std::size_t start) {
      if (piv.size() == k) {
        std::vector<bool> is_piv(n, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t r = 0; r < k; ++r) {
          for (std::size_t c = piv[r] + 1; c < n; ++c) {
            if (!is_piv[c]) cells.emplace_back(r, c);
          }
        }
        std::vector<std::uint32_t> val(cells.size(), 0);
        while (true) {
          fp::Mat rows(k, fp::Vec(n, 0));
          for (std::size_t r = 0; r < k; ++r) rows[r][piv[r]] = 1;
          for (std::size_t t = 0; t < cells.size(); ++t) rows[cells[t].first][cells[t].second] = val[t];
          visit(std::move(rows));
          std::size_t t = 0;
          while (t < val.size() && ++val[t] == p) val[t++] = 0;
          if (t == val.size()) break;
        }
        return;
      }
      for (std::size_t c = start; c + (k - piv.size()) <= n; ++c) {
        piv.push_back(c);
        choose(c + 1);
        piv.pop_back();
      }
    };
    choose(0);
  }
}

}  // namespace

OrientationAudit derive_subset_orientation() {
  static const OrientationAudit cached = [] {
    OrientationAudit audit;
    const PrimeField f(2);
    const std::vector<std::pair<long, long>> tori{{1, 1}, {1, 2}, {2, 1}, {3, 5}, {5, 3}, {1, 3}, {4, 1}};
    for (int dim : {1, 2}) {
      const GradedSpaceSpec spec{{dim, dim}};
      for_each_subspace(f, static_cast<std::size_t>(2 * dim), [&](fp::Mat rows) {
        const GradedSubspace v(spec, f, std::move(rows));
        for (auto [r, s] : tori) {
          const TorusData t = TorusData::from_rs({r}, {s});
          const bool st = is_torus_stable(v, t), ss = is_torus_semistable(v, t);
          ++audit.checked;
          if (closed_form_subset_test(v, t, SubsetOrientation::intersection_below) != st ||
              closed_form_subset_test(v, t, SubsetOrientation::intersection_below, true) != ss) {
            ++audit.mismatches_below;
          }
          if (closed_form_subset_test(v, t, SubsetOrientation::intersection_above) != st ||
              closed_form_subset_test(v, t, SubsetOrientation::intersection_above, true) != ss) {
            ++audit.mismatches_above;
          }
        }
      });
    }
    audit.chosen = audit.mismatches_below <= audit.mismatches_above ? SubsetOrientation::intersection_below
                                                                    : SubsetOrientation::intersection_above;
    return audit;
  }();
  return cached;
}

bool closed_form_subset_test(const GradedSubspace& v, const TorusData& torus) {
  return closed_form_subset_test(v, torus, derive_subset_orientation().chosen);
}

GitCompareReport git_compare(const ShellSpec& shell, PrimeField field, const XiParam& xi,
                             std::uint64_t budget) {
  const TorusData torus = torus_from_xi(xi, shell);
  const SubsetOrientation orientation = derive_subset_orientation().chosen;
  const int d = shell.d;
  GitCompareReport rep;
  enumerate_shell(
      shell, field,
      [&](const Lattice& l) {
        const auto idx = subset_indices(l);
        const bool xi_stable = check_xi_stability_from_indices(idx, xi).stable;
        const GradedSubspace v = rho_perp(l, shell);
        const bool st = is_torus_stable(v, torus);
        const bool ss = is_torus_semistable(v, torus);
        ++rep.checked;
        rep.stable_count += xi_stable ? 1 : 0;
        rep.mismatches += xi_stable != st ? 1 : 0;
        rep.semistable_mismatches += ss != st ? 1 : 0;
        rep.closed_form_mismatches += closed_form_subset_test(v, torus, orientation) != st ? 1 : 0;
        for (unsigned mask = 1; mask < (1u << d); ++mask) {
          const unsigned rest = full_mask(d) & ~mask;
          const int size = __builtin_popcount(mask);
          const int predicted = idx[mask] + shell.n * (d - 1) * size;
          const int complement = shell.n * (d - 1) * size - idx[rest];
          ++rep.intersection_identity_holdsed;
          rep.identity_failures += v.dim_intersection(mask) != predicted ? 1 : 0;
          rep.identity_projection_failures += v.dim_projection(mask) != predicted ? 1 : 0;
          rep.identity_complement_failures += v.dim_intersection(mask) != complement ? 1 : 0;
        }
      },
      budget);
  return rep;
}

}  // namespace lagstab
