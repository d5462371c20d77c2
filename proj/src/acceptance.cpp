#include "lagstab/acceptance.hpp"

#include <functional>
#include <sstream>

#include "lagstab/errors.hpp"
#include "lagstab/git.hpp"
#include "lagstab/poincare.hpp"
#include "lagstab/reduction.hpp"
#include "lagstab/stability.hpp"

namespace lagstab {

namespace {

struct Instance {
  ShellSpec shell;
  std::uint32_t p;
  long count;
};

// Frozen from the subspace-enumeration oracle.
const std::vector<Instance> kInstances{
    {{2, 1}, 2, 7}, {{2, 1}, 3, 13}, {{2, 1}, 5, 31}, {{2, 2}, 2, 31}, {{2, 2}, 3, 121}, {{3, 1}, 2, 155},
};

XiParam xi_for(int d) {
  return d == 2 ? XiParam::parse("1/4,-1/4") : XiParam::parse("1/5,1/7,-12/35");
}

std::string name(const Instance& in) {
  return "(" + std::to_string(in.shell.d) + "," + std::to_string(in.shell.n) + "," + std::to_string(in.p) + ")";
}

/// Body returns true on pass and fills detail/info.
using Body = std::function<bool(CriterionResult&)>;

CriterionResult run(int id, std::string title, const Body& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  try {
    r.status = body(r) ? CriterionStatus::pass : CriterionStatus::fail;
  } catch (const BudgetExceeded& e) {
    r.status = CriterionStatus::skipped;
    r.detail = std::string("skipped: ") + e.what();
  } catch (const std::exception& e) {
    r.status = CriterionStatus::fail;
    r.detail = std::string("error: ") + e.what();
  }
  return r;
}

bool census(const AcceptanceConfig& cfg, CriterionResult& r) {
  bool ok = true;
  std::ostringstream detail;
  for (const auto& in : kInstances) {
    const auto got = enumerate_shell(in.shell, PrimeField(in.p), [](const Lattice&) {}, cfg.budget);
    const mpz_class cells = cells_polynomial(in.shell).evaluate_even(in.p);
    ok = ok && static_cast<long>(got) == in.count && cells == in.count;
    detail << name(in) << "=" << got << "/" << cells.get_str() << " ";
  }
  r.detail = "census/cells " + detail.str();
  return ok;
}

bool stability_cross_check(const AcceptanceConfig& cfg, CriterionResult& r) {
  long checked = 0, mismatches = 0;
  for (const auto& in : kInstances) {
    const auto rep = git_compare(in.shell, PrimeField(in.p), xi_for(in.shell.d), cfg.budget);
    checked += rep.checked;
    mismatches += rep.mismatches;
    r.info.push_back(name(in) + " stable=" + std::to_string(rep.stable_count) + " closed-form mismatches=" +
                     std::to_string(rep.closed_form_mismatches));
  }
  const auto audit = derive_subset_orientation();
  r.info.push_back("subset orientation " + to_string(audit.chosen) + " (mismatches below=" +
                   std::to_string(audit.mismatches_below) + ", above=" + std::to_string(audit.mismatches_above) + ")");
  r.detail = std::to_string(checked) + " lattices, " + std::to_string(mismatches) + " mismatches";
  return mismatches == 0;
}

bool intersection_identity_criterion(const AcceptanceConfig& cfg, CriterionResult& r) {
  long checked = 0, failures = 0, projection = 0, complement = 0;
  for (const auto& in : kInstances) {
    const auto rep = git_compare(in.shell, PrimeField(in.p), xi_for(in.shell.d), cfg.budget);
    checked += rep.intersection_identity_holdsed;
    failures += rep.identity_failures;
    projection += rep.identity_projection_failures;
    complement += rep.identity_complement_failures;
  }
  r.detail = std::to_string(checked) + " (lattice, subset) pairs, " + std::to_string(failures) +
             " violate dim(V ∩ E_S) = ind(L ∩ F^S) + n(d-1)|S|";
  r.info.push_back("projection rank(pr_S V) = ind(L ∩ F^S) + n(d-1)|S|: " + std::to_string(projection) + " failures");
  r.info.push_back("dim(V ∩ E_S) = n(d-1)|S| - ind(L ∩ F^{S^c}): " + std::to_string(complement) + " failures");
  return failures == 0;
}

bool stratification(const AcceptanceConfig& cfg, CriterionResult& r) {
  bool ok = true;
  std::ostringstream detail;
  for (const auto& in : kInstances) {
    const auto rep = partition_audit(in.shell, PrimeField(in.p), xi_for(in.shell.d), cfg.budget);
    long sum = 0;
    for (const auto& [tag, c] : rep.counts) sum += c;
    ok = ok && sum == rep.total && rep.total == in.count && rep.sector_failures == 0;
    detail << name(in) << " strata=" << rep.counts.size() << " ";
    if (in.shell.d == 2 && in.shell.n == 1) {
      const long q = in.p;
      const long s = rep.count(StratumTag::stable());
      const long b = rep.count(StratumTag::of(ParabolicType::parse("1|2", 2)));
      const long bm = rep.count(StratumTag::of(ParabolicType::parse("2|1", 2)));
      ok = ok && s == q * q - 1 && b == q + 1 && bm == 1;
      r.info.push_back(name(in) + " stable/S_B/S_B- = " + std::to_string(s) + "/" + std::to_string(b) + "/" +
                       std::to_string(bm));
    }
  }
  r.detail = detail.str() + "one tag per lattice";
  return ok;
}

bool truncation(const AcceptanceConfig& cfg, CriterionResult& r) {
  struct Case {
    ShellSpec shell;
    std::vector<std::uint32_t> primes;
    std::vector<long> expected;
  };
  bool ok = true;
  for (const auto& c : {Case{{2, 1}, {2, 3, 5}, {1}}, Case{{2, 2}, {2, 3, 5, 7}, {1, 2}}}) {
    const auto rep = compare_report(c.shell, c.primes, xi_for(c.shell.d), cfg.budget);
    bool match = rep.window_matches;
    for (std::size_t i = 0; i < c.expected.size(); ++i) {
      match = match && i < rep.quotient_poly.size() && rep.quotient_poly[i] == c.expected[i] &&
              rep.series[i] == c.expected[i];
    }
    ok = ok && match;
    const std::string tag = "d=" + std::to_string(c.shell.d) + " n=" + std::to_string(c.shell.n);
    r.info.push_back(tag + " Q(q) = " + format_polynomial(rep.quotient_poly) + ", window t^" +
                     std::to_string(rep.window) + ", first divergence " +
                     (rep.first_divergence ? "t^" + std::to_string(*rep.first_divergence) : "none"));
  }
  r.detail = "quotient counts match (1-t^2)^{-(d-1)} prod (1-t^{2i})^{-1} inside 2(d-1)n-2";
  return ok;
}

bool divisibility(const AcceptanceConfig& cfg, CriterionResult& r) {
  std::ostringstream detail;
  for (const auto& in : kInstances) {
    const auto rep = count_points(in.shell, {in.p}, xi_for(in.shell.d), cfg.budget);
    const auto& c = rep.counts.front();
    detail << name(in) << " " << c.stable << "->" << c.quotient << " ";
  }
  r.detail = "stable/quotient " + detail.str();
  return true;
}

bool arthur(const AcceptanceConfig& cfg, CriterionResult& r) {
  long checked = 0, negative = 0;
  for (const auto& in : kInstances) {
    const int d = in.shell.d;
    const auto perms = all_permutations(d);
    enumerate_shell(
        in.shell, PrimeField(in.p),
        [&](const Lattice& l) {
          for (const auto& tau : perms) {
            for (int i = 0; i + 1 < d; ++i) {
              auto tp = tau;
              std::swap(tp[static_cast<std::size_t>(i)], tp[static_cast<std::size_t>(i) + 1]);
              ++checked;
              if (arthur_difference(l, tau, tp).multiplicity < 0) ++negative;
            }
          }
        },
        cfg.budget);
  }
  r.detail = std::to_string(checked) + " adjacent pairs, " + std::to_string(negative) + " negative";
  return negative == 0;
}

bool transition_unipotent(const AcceptanceConfig& cfg, CriterionResult& r) {
  const auto t = transition_sweep({3, 1}, PrimeField(2), cfg.budget);
  const auto u2 = unipotent_sweep({2, 1}, PrimeField(2), xi_for(2), cfg.unipotent_samples, cfg.seed, cfg.budget);
  const auto u3 =
      unipotent_sweep({3, 1}, PrimeField(2), xi_for(3), cfg.unipotent_samples, cfg.seed + 1, cfg.budget);
  r.detail = "transition " + std::to_string(t.failures) + "/" + std::to_string(t.checked) + " failures, unipotent " +
             std::to_string(u2.failures + u3.failures) + "/" + std::to_string(u2.checked + u3.checked) +
             " failures";
  return t.failures == 0 && u2.failures == 0 && u3.failures == 0 && u2.checked >= 1000 && u3.checked >= 1000;
}

bool dimensions(const AcceptanceConfig& cfg, CriterionResult& r) {
  bool ok = true;
  for (const ShellSpec s : {ShellSpec{2, 1}, ShellSpec{2, 2}, ShellSpec{3, 1}, ShellSpec{3, 2}, ShellSpec{4, 1}}) {
    const auto cells = cells_polynomial(s);
    ok = ok && cells.coeff(2 * dim_shell(s)) != 0;
  }
  struct Case {
    ShellSpec shell;
    std::vector<std::uint32_t> primes;
  };
  for (const auto& c : {Case{{2, 1}, {2, 3, 5}}, Case{{2, 2}, {2, 3, 5, 7, 11}}}) {
    const auto g = nonstable_growth_check(c.shell, c.primes, xi_for(c.shell.d), cfg.budget);
    ok = ok && g.holds;
    r.info.push_back("n=" + std::to_string(c.shell.n) + " nonstable(q) = " + format_polynomial(g.nonstable_poly) +
                     ", degree " + std::to_string(g.degree) + " <= " + std::to_string(g.bound));
  }
  r.detail = "top cell degree 2nd(d-1); nonstable growth within n(d-1)^2";
  return ok;
}

bool series(CriterionResult& r) {
  bool ok = true;
  for (int d = 2; d <= 4; ++d) {
    PowerSeriesZ rhs = bott_series(d, 200);
    for (int i = 1; i < d; ++i) rhs = rhs * PowerSeriesZ::geometric(2, 200);
    ok = ok && (quotient_series(d, 200) - rhs).is_zero();
  }
  const auto b = bott_series(3, 8);
  std::vector<std::int64_t> even;
  for (int i = 0; i <= 8; i += 2) even.push_back(b.coeff(i));
  ok = ok && even == std::vector<std::int64_t>{1, 1, 2, 2, 3};
  r.detail = "identity to order 200 for d=2..4; Bott d=3 t^0..t^8 = (1,1,2,2,3)";
  return ok;
}

}  // namespace

std::string to_string(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::pass:
      return "PASS";
    case CriterionStatus::fail:
      return "FAIL";
    case CriterionStatus::skipped:
      return "SKIP";
  }
  return "?";
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
  std::vector<CriterionResult> out;
  out.push_back(run(1, "census identities", [&](auto& r) { return census(cfg, r); }));
  out.push_back(run(2, "stability cross-check", [&](auto& r) { return stability_cross_check(cfg, r); }));
  out.push_back(run(3, "intersection dimension identity", [&](auto& r) { return intersection_identity_criterion(cfg, r); }));
  out.push_back(run(4, "stratification", [&](auto& r) { return stratification(cfg, r); }));
  out.push_back(run(5, "main-theorem truncation", [&](auto& r) { return truncation(cfg, r); }));
  out.push_back(run(6, "free-action divisibility", [&](auto& r) { return divisibility(cfg, r); }));
  out.push_back(run(7, "Arthur monotonicity", [&](auto& r) { return arthur(cfg, r); }));
  out.push_back(run(8, "transition and unipotent audits", [&](auto& r) { return transition_unipotent(cfg, r); }));
  out.push_back(run(9, "dimension formulas", [&](auto& r) { return dimensions(cfg, r); }));
  out.push_back(run(10, "series algebra", [&](auto& r) { return series(r); }));
  return out;
}

std::string format_result_line(const CriterionResult& r) {
  std::string id = std::to_string(r.id);
  if (id.size() < 2) id = " " + id;
  return to_string(r.status) + " " + id + "  " + r.title + ": " + r.detail;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (r.status == CriterionStatus::fail) return false;
  }
  return true;
}

}  // namespace lagstab
