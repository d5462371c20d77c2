#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lagstab/exact_algebra.hpp"
#include "lagstab/lattice.hpp"

namespace lagstab::testing {

/// Calls `visit` with the rref rows of every k-dimensional subspace of
/// F_p^n, enumerated pivot set by pivot set with every free entry filled.
inline void for_each_subspace(const PrimeField& f, std::size_t n, std::size_t k,
                              const std::function<void(const fp::Mat&)>& visit) {
  const std::uint32_t p = f.characteristic();
  std::vector<std::size_t> piv(k);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t i, std::size_t start) {
    if (i == k) {
      // Free cells: row r, column c > piv[r], c not a pivot.
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      std::vector<bool> is_piv(n, false);
      for (auto c : piv) is_piv[c] = true;
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
        visit(rows);
        std::size_t t = 0;
        while (t < val.size() && ++val[t] == p) val[t++] = 0;
        if (t == val.size()) break;
      }
      return;
    }
    for (std::size_t c = start; c + (k - i) <= n; ++c) {
      piv[i] = c;
      choose(i + 1, c + 1);
    }
  };
  choose(0, 0);
}

/// Lattices of X_n(F_p) by brute force: every nd-dimensional subspace of
/// eps^{(1-d)n} L_0 / eps^n L_0 (basis eps^a e_j ordered by j, then a) that
/// is stable under eps.
inline std::vector<Lattice> brute_force_shell(const ShellSpec& shell, const PrimeField& f) {
  const int d = shell.d, n = shell.n;
  const std::size_t block = static_cast<std::size_t>(n * d);
  const std::size_t total = block * static_cast<std::size_t>(d);
  const int low = (1 - d) * n;
  std::vector<Lattice> out;
  for_each_subspace(f, total, block, [&](const fp::Mat& rows) {
    fp::Mat with_image = rows;
    for (const auto& r : rows) {
      fp::Vec img(total, 0);
      for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) {
        for (std::size_t a = 0; a + 1 < block; ++a) img[j * block + a + 1] = r[j * block + a];
      }
      with_image.push_back(img);
    }
    if (fp::rank(f, with_image) != rows.size()) return;
    std::vector<LaurentVector> gens;
    for (const auto& r : rows) {
      LaurentVector v;
      for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) {
        std::vector<std::pair<int, std::int64_t>> terms;
        for (std::size_t a = 0; a < block; ++a) {
          if (r[j * block + a] != 0) terms.emplace_back(low + static_cast<int>(a), r[j * block + a]);
        }
        v.emplace_back(f, std::move(terms));
      }
      gens.push_back(std::move(v));
    }
    out.push_back(lattice_from_generators(f, d, std::move(gens), n));
  });
  return out;
}

}  // namespace lagstab::testing
