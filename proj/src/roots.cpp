#include "lagstab/roots.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lagstab/errors.hpp"

namespace lagstab {

XiParam::XiParam(RationalVector entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("xi must be nonempty");
  Rational sum = 0;
  for (const auto& x : entries_) sum += x;
  if (sum != 0) throw InvalidArgument("xi must have zero sum, got " + format_rational(sum));
}

XiParam XiParam::parse(const std::string& text) { return XiParam(parse_rational_list(text)); }

std::string XiParam::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += format_rational(entries_[i]);
  }
  return out;
}

bool is_generic(const RationalVector& xi) {
  for (std::size_t i = 0; i < xi.size(); ++i) {
    for (std::size_t j = i + 1; j < xi.size(); ++j) {
      if (is_integer(Rational(xi[i] - xi[j]))) return false;
    }
  }
  return true;
}

void require_generic(const XiParam& xi) {
  if (!is_generic(xi)) throw NonGenericXi();
}

int ParabolicType::dim() const {
  int d = 0;
  for (const auto& b : blocks) d += static_cast<int>(b.size());
  return d;
}

void ParabolicType::validate(int d) const {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(d, 0)), false);
  int count = 0;
  for (const auto& b : blocks) {
    if (b.empty()) throw InvalidArgument("parabolic: empty block");
    for (int j : b) {
      if (j < 0 || j >= d || seen[static_cast<std::size_t>(j)]) {
        throw InvalidArgument("parabolic: blocks must partition the coordinates");
      }
      seen[static_cast<std::size_t>(j)] = true;
      ++count;
    }
  }
  if (count != d) throw InvalidArgument("parabolic: blocks must cover every coordinate");
}

std::vector<int> ParabolicType::block_of() const {
  std::vector<int> out(static_cast<std::size_t>(dim()), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int j : blocks[b]) out[static_cast<std::size_t>(j)] = static_cast<int>(b);
  }
  return out;
}

ParabolicType ParabolicType::group(int d) {
  ParabolicType p;
  p.blocks.emplace_back(static_cast<std::size_t>(d));
  std::iota(p.blocks[0].begin(), p.blocks[0].end(), 0);
  return p;
}

ParabolicType ParabolicType::borel(const std::vector<int>& tau) {
  ParabolicType p;
  for (int j : tau) p.blocks.push_back({j});
  p.validate(static_cast<int>(tau.size()));
  return p;
}

ParabolicType ParabolicType::parse(const std::string& text, int d) {
  ParabolicType p;
  std::stringstream ss(text);
  std::string block;
  while (std::getline(ss, block, '|')) {
    std::vector<int> b;
    std::stringstream bs(block);
    std::string item;
    while (std::getline(bs, item, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw InvalidArgument("");
        b.push_back(v - 1);
      } catch (const std::exception&) {
        throw InvalidArgument("malformed parabolic '" + text + "'");
      }
    }
    std::sort(b.begin(), b.end());
    p.blocks.push_back(std::move(b));
  }
  p.validate(d);
  return p;
}

std::string ParabolicType::to_string() const {
  std::string out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += "|";
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      if (i) out += ",";
      out += std::to_string(blocks[b][i] + 1);
    }
  }
  return out;
}

BlockPartition levi_of(const ParabolicType& p) {
  BlockPartition m = p.blocks;
  for (auto& b : m) std::sort(b.begin(), b.end());
  std::sort(m.begin(), m.end());
  return m;
}

LeviProjection project_levi(const RationalVector& v, const BlockPartition& blocks) {
  LeviProjection out{RationalVector(v.size()), RationalVector(v.size())};
  std::vector<bool> covered(v.size(), false);
  for (const auto& b : blocks) {
    if (b.empty()) throw InvalidArgument("project_levi: empty block");
    Rational avg = 0;
    for (int j : b) {
      if (j < 0 || static_cast<std::size_t>(j) >= v.size() || covered[static_cast<std::size_t>(j)]) {
        throw InvalidArgument("project_levi: blocks must partition the coordinates");
      }
      covered[static_cast<std::size_t>(j)] = true;
      avg += v[static_cast<std::size_t>(j)];
    }
    avg /= static_cast<long>(b.size());
    for (int j : b) {
      out.levi[static_cast<std::size_t>(j)] = avg;
      out.complement[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] - avg;
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw InvalidArgument("project_levi: blocks must cover every coordinate");
  }
  return out;
}

std::vector<long> lambda_M_image(const Coweight& mu, const BlockPartition& blocks) {
  std::vector<long> out;
  for (const auto& b : blocks) {
    long s = 0;
    for (int j : b) s += mu.at(static_cast<std::size_t>(j));
    out.push_back(s);
  }
  return out;
}

bool in_sector(const std::vector<long>& lambda, const ParabolicType& p, const XiParam& xi) {
  require_generic(xi);
  p.validate(xi.dim());
  if (lambda.size() != p.blocks.size()) throw ShapeMismatch("in_sector: one value per block expected");
  std::vector<Rational> diff;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const long size = static_cast<long>(p.blocks[b].size());
    Rational xi_sum = 0;
    for (int j : p.blocks[b]) xi_sum += xi[j];
    diff.push_back(Rational(lambda[b], size) - xi_sum / size);
  }
  for (std::size_t i = 0; i < diff.size(); ++i) {
    for (std::size_t j = i + 1; j < diff.size(); ++j) {
      if (diff[j] - diff[i] < 0) return false;
    }
  }
  return true;
}

bool dominance_leq(const Coweight& lambda, const Coweight& mu) {
  const std::size_t len = std::max(lambda.size(), mu.size());
  Coweight a = lambda, b = mu;
  a.resize(len, 0);
  b.resize(len, 0);
  if (std::accumulate(a.begin(), a.end(), 0L) != std::accumulate(b.begin(), b.end(), 0L)) {
    throw ShapeMismatch("dominance_leq: unequal totals");
  }
  for (std::size_t i = 1; i < len; ++i) {
    if ((i < lambda.size() && a[i] > a[i - 1]) || (i < mu.size() && b[i] > b[i - 1])) {
      throw InvalidArgument("dominance_leq: inputs must be weakly decreasing");
    }
  }
  long pa = 0, pb = 0;
  for (std::size_t i = 0; i < len; ++i) {
    pa += a[i];
    pb += b[i];
    if (pa > pb) return false;
  }
  return true;
}

std::vector<Coweight> fixed_points_shell(const ShellSpec& shell) {
  shell.validate();
  const int d = shell.d, lo = (1 - d) * shell.n, hi = shell.n;
  std::vector<Coweight> out;
  Coweight mu(static_cast<std::size_t>(d));
  // Fill coordinates left to right, largest values first; the last one is forced.
  auto rec = [&](auto&& self, int i, int sum) -> void {
    if (i == d - 1) {
      const int last = -sum;
      if (last >= lo && last <= hi) {
        mu[static_cast<std::size_t>(i)] = last;
        out.push_back(mu);
      }
      return;
    }
    for (int v = hi; v >= lo; --v) {
      mu[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, sum + v);
    }
  };
  rec(rec, 0, 0);
  return out;
}

namespace {

void ordered_partitions(std::vector<int> remaining, ParabolicType& current,
                        std::vector<ParabolicType>& out) {
  if (remaining.empty()) {
    out.push_back(current);
    return;
  }
  const std::size_t r = remaining.size();
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    std::vector<int> block, rest;
    for (std::size_t i = 0; i < r; ++i) ((mask >> i) & 1u ? block : rest).push_back(remaining[i]);
    current.blocks.push_back(block);
    ordered_partitions(rest, current, out);
    current.blocks.pop_back();
  }
}

}  // namespace

std::vector<ParabolicType> enumerate_parabolics(int d, int bound) {
  if (d < 1) throw InvalidArgument("enumerate_parabolics: d must be >= 1");
  if (d > bound) {
    throw BudgetExceeded("enumerate_parabolics: d = " + std::to_string(d) + " exceeds bound " +
                         std::to_string(bound));
  }
  std::vector<int> all(static_cast<std::size_t>(d));
  std::iota(all.begin(), all.end(), 0);
  std::vector<ParabolicType> out;
  ParabolicType current;
  ordered_partitions(all, current, out);
  std::stable_sort(out.begin(), out.end(), [](const ParabolicType& a, const ParabolicType& b) {
    return a.blocks.size() < b.blocks.size();
  });
  return out;
}

std::vector<ParabolicType> parabolics_with_levi(const BlockPartition& blocks) {
  std::vector<std::size_t> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<ParabolicType> out;
  do {
    ParabolicType p;
    for (auto i : order) p.blocks.push_back(blocks[i]);
    out.push_back(std::move(p));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::vector<std::vector<int>> all_permutations(int d) {
  std::vector<int> tau(static_cast<std::size_t>(d));
  std::iota(tau.begin(), tau.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(tau);
  } while (std::next_permutation(tau.begin(), tau.end()));
  return out;
}

}  // namespace lagstab
