// lagstab: command-line front end. Exit codes: 0 ok, 1 check failure,
// 2 usage or validation error.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lagstab/acceptance.hpp"
#include "lagstab/errors.hpp"
#include "lagstab/json_io.hpp"

namespace {

using namespace lagstab;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Options {
  int d = 2;
  int n = 1;
  std::uint32_t p = 2;
  std::string primes = "2,3,5";
  std::string xi;
  std::string lattice_file;
  std::string format;
  std::string emit = "json";
  std::string out_dir;
  std::uint64_t budget = 0;
  bool budget_set = false;
  std::uint64_t seed = 0;
  long samples = 1000;
  bool inject_fault = false;
};

std::uint64_t budget_of(const Options& o) { return o.budget_set ? o.budget : default_enumeration_budget(); }

ShellSpec shell_of(const Options& o) {
  ShellSpec s{o.d, o.n};
  s.validate();
  return s;
}

XiParam xi_of(const Options& o) {
  if (!o.xi.empty()) return XiParam::parse(o.xi);
  if (o.d == 2) return XiParam::parse("1/4,-1/4");
  if (o.d == 3) return XiParam::parse("1/5,1/7,-12/35");
  throw InvalidArgument("--xi is required for d = " + std::to_string(o.d));
}

std::vector<std::uint32_t> primes_of(const Options& o) {
  std::vector<std::uint32_t> out;
  for (const auto& q : parse_rational_list(o.primes)) {
    if (!is_integer(q) || q < 2 || q > INT32_MAX) throw InvalidArgument("--primes must list primes");
    out.push_back(static_cast<std::uint32_t>(q.get_num().get_ui()));
  }
  return out;
}

Lattice read_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read lattice file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
  return lattice_from_json(j);
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_row(const std::string& label, const std::vector<Rational>& poly) {
  std::string row = label;
  for (const auto& c : poly) row += "," + format_rational(c);
  return row + "\n";
}

std::string compare_csv(const CompareReport& rep) {
  std::string out = "series,coefficients in ascending powers of q\n";
  out += csv_row("quotient", rep.quotient_poly);
  if (rep.counts.total_poly) out += csv_row("total", *rep.counts.total_poly);
  if (rep.counts.stable_poly) out += csv_row("stable", *rep.counts.stable_poly);
  std::vector<Rational> series(rep.series.begin(), rep.series.end());
  out += csv_row("quotient_series", series);
  return out;
}

std::string compare_table(const CompareReport& rep) {
  std::ostringstream out;
  out << "p      total  stable  quotient\n";
  for (const auto& c : rep.counts.counts) {
    out << c.p << "\t" << c.total << "\t" << c.stable << "\t" << c.quotient << "\n";
  }
  out << "Q(q) = " << format_polynomial(rep.quotient_poly) << "\n";
  out << "window t^" << rep.window << ": " << (rep.window_matches ? "matches" : "differs") << "\n";
  if (rep.first_divergence) out << "first divergence at t^" << *rep.first_divergence << "\n";
  if (rep.bott_agreement_degree) out << "agrees with Bott's series up to t^" << *rep.bott_agreement_degree << "\n";
  return out.str();
}

int cmd_stability(const Options& o) {
  const Lattice l = read_lattice(o.lattice_file);
  Options local = o;
  local.d = l.dim();
  const XiParam xi = xi_of(local);
  const auto rep = check_xi_stability(l, xi);
  Json j = to_json(rep);
  Json vertices = Json::array();
  for (const auto& v : ec_vertices(l)) vertices.push_back(v);
  j["ec_vertices"] = std::move(vertices);
  if (o.format == "table") {
    std::cout << "stable: " << (rep.stable ? "true" : "false") << "\n";
    for (const auto& s : rep.failing_subsets) std::cout << "failing subset: " << subset_to_json(s).dump() << "\n";
  } else {
    print(j);
  }
  return kOk;
}

int cmd_reduce(const Options& o) {
  const Lattice l = read_lattice(o.lattice_file);
  Options local = o;
  local.d = l.dim();
  const XiParam xi = xi_of(local);
  const StratumTag tag = stratum(l, xi);
  const ParabolicType p = tag.parabolic ? *tag.parabolic : ParabolicType::group(l.dim());
  Json blocks = Json::array();
  for (const auto& b : retract(l, p)) blocks.push_back(b.pivots());
  print(Json{{"stratum", tag.to_string()}, {"h_P", h_p(l, p)}, {"retract_indices", std::move(blocks)}});
  return kOk;
}

int cmd_partition(const Options& o) {
  const auto rep = partition_audit(shell_of(o), PrimeField(o.p), xi_of(o), budget_of(o));
  print(to_json(rep));
  return rep.sector_failures == 0 ? kOk : kCheckFailed;
}

int cmd_transition(const Options& o) {
  const auto rep = transition_sweep(shell_of(o), PrimeField(o.p), budget_of(o));
  print(Json{{"checked", rep.checked}, {"failures", rep.failures}});
  return rep.failures == 0 ? kOk : kCheckFailed;
}

int cmd_unipotent(const Options& o) {
  const auto rep = unipotent_sweep(shell_of(o), PrimeField(o.p), xi_of(o), o.samples, o.seed, budget_of(o));
  print(Json{{"checked", rep.checked}, {"failures", rep.failures}, {"seed", o.seed}});
  return rep.failures == 0 ? kOk : kCheckFailed;
}

int cmd_git(const Options& o) {
  const auto rep = git_compare(shell_of(o), PrimeField(o.p), xi_of(o), budget_of(o));
  print(to_json(rep));
  return rep.mismatches == 0 ? kOk : kCheckFailed;
}

int cmd_poincare(const Options& o) {
  const auto rep = compare_report(shell_of(o), primes_of(o), xi_of(o), budget_of(o));
  if (o.emit == "csv") {
    std::cout << compare_csv(rep);
  } else if (o.emit == "table") {
    std::cout << compare_table(rep);
  } else {
    print(to_json(rep));
    std::cout << compare_table(rep);
  }
  return rep.window_matches ? kOk : kCheckFailed;
}

int cmd_count(const Options& o) {
  print(to_json(count_points(shell_of(o), primes_of(o), xi_of(o), budget_of(o))));
  return kOk;
}

int cmd_enumerate(const Options& o) {
  Json out = Json::array();
  enumerate_shell(shell_of(o), PrimeField(o.p), [&](const Lattice& l) { out.push_back(lattice_to_json(l)); },
                  budget_of(o));
  print(out);
  return kOk;
}

int cmd_selftest(const Options& o) {
  if (o.inject_fault) set_stability_fault_injection(true);
  AcceptanceConfig cfg;
  cfg.budget = budget_of(o);
  cfg.seed = o.seed;
  cfg.unipotent_samples = o.samples;
  const auto results = run_acceptance(cfg);
  if (o.format == "json") {
    print(to_json(results));
  } else {
    for (const auto& r : results) {
      std::cout << format_result_line(r) << "\n";
      for (const auto& line : r.info) std::cout << "     INFO " << line << "\n";
    }
  }
  for (const auto& r : results) {
    if (r.status == CriterionStatus::fail) {
      std::cerr << "first failing check: " << r.id << " " << r.title << "\n";
      return kCheckFailed;
    }
  }
  return kOk;
}

int cmd_report(const Options& o) {
  namespace fs = std::filesystem;
  if (o.out_dir.empty() || !fs::is_directory(o.out_dir)) {
    throw InvalidArgument("output directory does not exist: " + o.out_dir);
  }
  const auto rep = compare_report(shell_of(o), primes_of(o), xi_of(o), budget_of(o));
  const fs::path json_path = fs::path(o.out_dir) / "report.json";
  const fs::path csv_path = fs::path(o.out_dir) / "report.csv";
  std::ofstream js(json_path), cs(csv_path);
  if (!js || !cs) throw InvalidArgument("cannot write into " + o.out_dir);
  js << to_json(rep).dump(2) << "\n";
  cs << compare_csv(rep);
  if (!js || !cs) throw InvalidArgument("write failed in " + o.out_dir);
  std::cout << json_path.string() << "\n" << csv_path.string() << "\n";
  return rep.window_matches ? kOk : kCheckFailed;
}

void add_shell_options(CLI::App* cmd, Options& o, bool with_p) {
  cmd->add_option("--d", o.d, "Rank d")->check(CLI::Range(1, 8));
  cmd->add_option("--n", o.n, "Shell radius n")->check(CLI::Range(1, 64));
  if (with_p) cmd->add_option("--p", o.p, "Prime p");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lagstab: lattice stability, reduction and point-count audits"};
  app.require_subcommand(1);
  Options o;
  auto* budget = app.add_option("--budget", o.budget, "Enumeration cap in search nodes (overrides LAGSTAB_BUDGET)");
  app.add_option("--seed", o.seed, "Seed for randomized audits");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));

  int (*action)(const Options&) = nullptr;

  auto* stab = app.add_subcommand("stability", "xi-stability of a lattice");
  stab->require_subcommand(1);
  auto* stab_check = stab->add_subcommand("check", "Check a lattice file");
  stab_check->add_option("--lattice", o.lattice_file, "Lattice JSON file")->required();
  stab_check->add_option("--xi", o.xi, "Stability parameter, e.g. \"1/4,-1/4\"");
  stab_check->callback([&] { action = cmd_stability; });

  auto* reduce = app.add_subcommand("reduce", "Stratum, H_P and retraction of a lattice");
  reduce->add_option("--lattice", o.lattice_file, "Lattice JSON file")->required();
  reduce->add_option("--xi", o.xi, "Stability parameter");
  reduce->callback([&] { action = cmd_reduce; });

  auto* audit = app.add_subcommand("audit", "Audits of the reduction");
  audit->require_subcommand(1);
  auto* partition = audit->add_subcommand("partition", "Stratum census of X_n(F_p)");
  add_shell_options(partition, o, true);
  partition->add_option("--xi", o.xi, "Stability parameter");
  partition->callback([&] { action = cmd_partition; });
  auto* transition = audit->add_subcommand("transition", "Transition property on X_n(F_p)");
  add_shell_options(transition, o, true);
  transition->callback([&] { action = cmd_transition; });
  auto* unipotent = audit->add_subcommand("unipotent", "Sampled unipotent invariance");
  add_shell_options(unipotent, o, true);
  unipotent->add_option("--xi", o.xi, "Stability parameter");
  unipotent->add_option("--samples", o.samples, "Number of samples")->check(CLI::NonNegativeNumber);
  unipotent->add_option("--seed", o.seed, "Seed");
  unipotent->callback([&] { action = cmd_unipotent; });

  auto* git = app.add_subcommand("git", "Comparison with the torus quotient");
  git->require_subcommand(1);
  auto* git_cmp = git->add_subcommand("compare", "xi-stability against the weight polytope test");
  add_shell_options(git_cmp, o, true);
  git_cmp->add_option("--xi", o.xi, "Stability parameter");
  git_cmp->callback([&] { action = cmd_git; });

  auto* poincare = app.add_subcommand("poincare", "Quotient counts against the Poincare series");
  add_shell_options(poincare, o, false);
  poincare->add_option("--primes", o.primes, "Comma-separated primes");
  poincare->add_option("--xi", o.xi, "Stability parameter");
  poincare->add_option("--emit", o.emit, "json, table or csv")->check(CLI::IsMember({"json", "table", "csv"}));
  poincare->callback([&] { action = cmd_poincare; });

  auto* count = app.add_subcommand("count", "Point counts of X_n and X_n^xi");
  add_shell_options(count, o, false);
  count->add_option("--primes", o.primes, "Comma-separated primes");
  count->add_option("--xi", o.xi, "Stability parameter");
  count->callback([&] { action = cmd_count; });

  auto* enumerate = app.add_subcommand("enumerate", "List the lattices of X_n(F_p)");
  add_shell_options(enumerate, o, true);
  enumerate->callback([&] { action = cmd_enumerate; });

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
  selftest->add_option("--samples", o.samples, "Unipotent samples per shell")->check(CLI::NonNegativeNumber);
  selftest->add_flag("--inject-fault", o.inject_fault, "Reverse one stability inequality (negative control)");
  selftest->callback([&] { action = cmd_selftest; });

  auto* report = app.add_subcommand("report", "Write report.json and report.csv");
  add_shell_options(report, o, false);
  report->add_option("--primes", o.primes, "Comma-separated primes");
  report->add_option("--xi", o.xi, "Stability parameter");
  report->add_option("--out", o.out_dir, "Existing output directory")->required();
  report->callback([&] { action = cmd_report; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  o.budget_set = budget->count() > 0;
  if (o.format == "table" && o.emit == "json") o.emit = "table";
  try {
    return action(o);
  } catch (const PartitionViolation& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const NonIntegralQuotient& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
