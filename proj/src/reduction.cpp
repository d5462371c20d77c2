#include "lagstab/reduction.hpp"

#include <algorithm>
#include <map>

#include "lagstab/errors.hpp"
#include "lagstab/stability.hpp"

namespace lagstab {

std::string StratumTag::to_string() const {
  return parabolic ? parabolic->to_string() : "stable";
}

std::vector<Lattice> retract(const Lattice& lattice, const ParabolicType& p) {
  const int d = lattice.dim();
  p.validate(d);
  std::vector<int> order;
  for (const auto& b : p.blocks) order.insert(order.end(), b.begin(), b.end());
  LaurentMatrix m(lattice.field(), d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m.at(r, c) = lattice.basis().at(order[static_cast<std::size_t>(r)], c);
  }
  // In the permuted canonical form the diagonal blocks are the graded pieces.
  const LaurentMatrix h = lattice_from_matrix(m).basis();
  std::vector<Lattice> out;
  int off = 0;
  for (const auto& b : p.blocks) {
    const int k = static_cast<int>(b.size());
    LaurentMatrix sub(lattice.field(), k);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) sub.at(r, c) = h.at(off + r, off + c);
    }
    out.push_back(lattice_from_matrix(sub));
    off += k;
  }
  return out;
}

std::vector<long> h_p(const Lattice& lattice, const ParabolicType& p) {
  std::vector<long> h;
  for (const auto& b : retract(lattice, p)) h.push_back(b.index());
  return h;
}

bool block_stable(const Lattice& block, const RationalVector& xi) {
  const int d = block.dim();
  if (static_cast<int>(xi.size()) != d) throw ShapeMismatch("block_stable: xi has wrong length");
  const auto idx = subset_indices(block);
  for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
    Rational sum = 0;
    for (int j = 0; j < d; ++j) {
      if (mask & (1u << j)) sum += xi[static_cast<std::size_t>(j)];
    }
    if (sum > idx[mask]) return false;
  }
  return true;
}

namespace {

void require_cylinder_input(const Lattice& lattice, const XiParam& xi) {
  if (xi.dim() != lattice.dim()) throw ShapeMismatch("xi and lattice have different dimensions");
  require_generic(xi);
  if (lattice.index() != 0) throw NonZeroIndex(lattice.index());
}

bool blocks_stable(const std::vector<Lattice>& blocks, const ParabolicType& p, const XiParam& xi) {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& coords = p.blocks[b];
    const long m = static_cast<long>(coords.size());
    Rational mean = 0;
    for (int j : coords) mean += xi[j];
    mean /= m;
    RationalVector local;
    for (int j : coords) local.push_back(xi[j] - mean + Rational(blocks[b].index(), m));
    if (!block_stable(blocks[b], local)) return false;
  }
  return true;
}

}  // namespace

bool in_cylinder(const Lattice& lattice, const ParabolicType& p, const XiParam& xi) {
  require_cylinder_input(lattice, xi);
  const auto blocks = retract(lattice, p);
  std::vector<long> h;
  for (const auto& b : blocks) h.push_back(b.index());
  return blocks_stable(blocks, p, xi) && in_sector(h, p, xi);
}

StratumTag stratum(const Lattice& lattice, const XiParam& xi) {
  require_cylinder_input(lattice, xi);
  std::vector<StratumTag> tags;
  if (is_xi_stable(lattice, xi)) tags.push_back(StratumTag::stable());
  for (const auto& p : enumerate_parabolics(lattice.dim())) {
    if (!p.is_group() && in_cylinder(lattice, p, xi)) tags.push_back(StratumTag::of(p));
  }
  if (tags.size() != 1) {
    std::string names;
    for (const auto& t : tags) names += (names.empty() ? "" : ", ") + t.to_string();
    throw PartitionViolation("lattice matches " + std::to_string(tags.size()) + " strata: {" + names + "}");
  }
  return tags.front();
}

long PartitionReport::count(const StratumTag& tag) const {
  for (const auto& [t, c] : counts) {
    if (t == tag) return c;
  }
  return 0;
}

PartitionReport partition_audit(const ShellSpec& shell, PrimeField field, const XiParam& xi,
                                std::uint64_t budget) {
  std::map<StratumTag, long> counts;
  PartitionReport rep;
  enumerate_shell(
      shell, field,
      [&](const Lattice& l) {
        const StratumTag tag = stratum(l, xi);
        ++counts[tag];
        ++rep.total;
        if (!tag.is_stable()) {
          const auto& p = *tag.parabolic;
          const auto blocks = retract(l, p);
          if (!blocks_stable(blocks, p, xi) || !in_sector(h_p(l, p), p, xi)) ++rep.sector_failures;
        }
      },
      budget);
  rep.counts.assign(counts.begin(), counts.end());
  return rep;
}

bool refines(const ParabolicType& p, const ParabolicType& q) {
  if (p.dim() != q.dim()) return false;
  std::size_t i = 0;
  for (const auto& qb : q.blocks) {
    std::vector<int> acc;
    while (acc.size() < qb.size() && i < p.blocks.size()) {
      acc.insert(acc.end(), p.blocks[i].begin(), p.blocks[i].end());
      ++i;
    }
    std::sort(acc.begin(), acc.end());
    if (acc != qb) return false;
  }
  return i == p.blocks.size();
}

bool transition_audit(const Lattice& lattice, const ParabolicType& q, const ParabolicType& p) {
  p.validate(lattice.dim());
  q.validate(lattice.dim());
  if (!refines(p, q)) throw NotNested();
  const auto direct = retract(lattice, p);
  const auto coarse = retract(lattice, q);
  std::vector<Lattice> composed;
  std::size_t i = 0;
  for (std::size_t k = 0; k < q.blocks.size(); ++k) {
    const auto& qb = q.blocks[k];
    ParabolicType local;
    std::size_t covered = 0;
    while (covered < qb.size()) {
      std::vector<int> block;
      for (int j : p.blocks[i]) {
        block.push_back(static_cast<int>(std::lower_bound(qb.begin(), qb.end(), j) - qb.begin()));
      }
      covered += block.size();
      local.blocks.push_back(std::move(block));
      ++i;
    }
    for (auto& l : retract(coarse[k], local)) composed.push_back(std::move(l));
  }
  return composed == direct;
}

AuditCount transition_sweep(const ShellSpec& shell, PrimeField field, std::uint64_t budget) {
  const auto parabolics = enumerate_parabolics(shell.d);
  std::vector<std::pair<ParabolicType, ParabolicType>> pairs;
  for (const auto& q : parabolics) {
    for (const auto& p : parabolics) {
      if (refines(p, q)) pairs.emplace_back(q, p);
    }
  }
  AuditCount out;
  enumerate_shell(
      shell, field,
      [&](const Lattice& l) {
        for (const auto& [q, p] : pairs) {
          ++out.checked;
          if (!transition_audit(l, q, p)) ++out.failures;
        }
      },
      budget);
  return out;
}

bool is_unipotent_for(const LaurentMatrix& u, const ParabolicType& p) {
  const int d = u.dim();
  p.validate(d);
  const auto block = p.block_of();
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const int br = block[static_cast<std::size_t>(r)], bc = block[static_cast<std::size_t>(c)];
      if (br < bc) continue;
      const LaurentPoly expected = LaurentPoly::constant(u.field(), r == c ? 1 : 0);
      if (br > bc ? !u.at(r, c).is_zero() : u.at(r, c) != expected) return false;
    }
  }
  return true;
}

LaurentMatrix random_unipotent(PrimeField field, const ParabolicType& p, int n, std::mt19937_64& rng) {
  const int d = p.dim();
  const auto block = p.block_of();
  std::uniform_int_distribution<int> exp_dist(-2 * n, 2 * n);
  std::uniform_int_distribution<int> count_dist(0, 3);
  std::uniform_int_distribution<std::int64_t> coeff_dist(1, field.characteristic() - 1);
  LaurentMatrix u = LaurentMatrix::identity(field, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (block[static_cast<std::size_t>(r)] >= block[static_cast<std::size_t>(c)]) continue;
      std::vector<std::pair<int, std::int64_t>> terms;
      const int count = count_dist(rng);
      for (int t = 0; t < count; ++t) terms.emplace_back(exp_dist(rng), coeff_dist(rng));
      u.at(r, c) = LaurentPoly(field, std::move(terms));
    }
  }
  return u;
}

bool unipotent_audit(const Lattice& lattice, const ParabolicType& p, const LaurentMatrix& u,
                     const XiParam& xi) {
  if (!is_unipotent_for(u, p)) throw NotUnipotentForP();
  const Lattice moved = act(u, lattice);
  if (retract(moved, p) != retract(lattice, p)) return false;
  if (h_p(moved, p) != h_p(lattice, p)) return false;
  const StratumTag tag = StratumTag::of(p);
  return stratum(lattice, xi) != tag || stratum(moved, xi) == tag;
}

AuditCount unipotent_sweep(const ShellSpec& shell, PrimeField field, const XiParam& xi, long samples,
                           std::uint64_t seed, std::uint64_t budget) {
  const auto lattices = shell_lattices(shell, field, budget);
  auto parabolics = enumerate_parabolics(shell.d);
  parabolics.erase(parabolics.begin());
  if (parabolics.empty() || lattices.empty()) throw InvalidArgument("unipotent_sweep needs d >= 2");
  std::vector<StratumTag> tags;
  for (const auto& l : lattices) tags.push_back(stratum(l, xi));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, parabolics.size() - 1);
  AuditCount out;
  for (long i = 0; i < samples; ++i) {
    const std::size_t k = static_cast<std::size_t>(i) % lattices.size();
    const ParabolicType p = tags[k].is_stable() ? parabolics[pick(rng)] : *tags[k].parabolic;
    const LaurentMatrix u = random_unipotent(field, p, shell.n, rng);
    ++out.checked;
    if (!unipotent_audit(lattices[k], p, u, xi)) ++out.failures;
  }
  return out;
}

}  // namespace lagstab
