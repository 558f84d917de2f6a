#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarize/errors.hpp"

namespace polarize {

/// Finite group as a multiplication table of indices: mul[i][j] is the index
/// of g_i g_j. Validation checks the Latin-square property, the identity
/// row/column and full associativity, and reports the first failing triple.
struct GroupTable {
  std::size_t order = 0;
  std::size_t identity = 0;
  std::vector<std::vector<std::uint32_t>> mul;
  std::string name = "group";

  void validate() const {
    const std::size_t n = order;
    if (n == 0) throw ValidationError(name + ": group order must be positive");
    if (identity >= n) throw ValidationError(name + ": identity index out of range");
    if (mul.size() != n) throw ValidationError(name + ": table must have `order` rows");
    for (std::size_t i = 0; i < n; ++i) {
      if (mul[i].size() != n) throw ValidationError(name + ": table row has wrong length");
      for (auto v : mul[i])
        if (v >= n) throw ValidationError(name + ": table entry out of range");
    }
    // Latin square: every row and column is a permutation.
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<bool> row(n, false), col(n, false);
      for (std::size_t j = 0; j < n; ++j) {
        if (row[mul[i][j]])
          throw ValidationError(name + ": row " + std::to_string(i) + " repeats entry");
        row[mul[i][j]] = true;
        if (col[mul[j][i]])
          throw ValidationError(name + ": column " + std::to_string(i) + " repeats entry");
        col[mul[j][i]] = true;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (mul[identity][i] != i || mul[i][identity] != i)
        throw ValidationError(name + ": identity law fails at index " + std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (mul[mul[i][j]][k] != mul[i][mul[j][k]])
            throw ValidationError(name + ": associativity fails at triple (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
  }

  /// Inverse of each element, derived from the table.
  std::vector<std::uint32_t> inverses() const {
    std::vector<std::uint32_t> inv(order, 0);
    for (std::size_t g = 0; g < order; ++g) {
      bool found = false;
      for (std::size_t x = 0; x < order; ++x) {
        if (mul[g][x] == identity) {
          if (mul[x][g] != identity)
            throw ValidationError(name + ": one-sided inverse at index " + std::to_string(g));
          inv[g] = static_cast<std::uint32_t>(x);
          found = true;
          break;
        }
      }
      if (!found) throw ValidationError(name + ": no inverse at index " + std::to_string(g));
    }
    return inv;
  }

  /// Conjugacy class id per element (class of the smallest representative).
  std::vector<std::uint32_t> conjugacy_classes() const {
    const auto inv = inverses();
    std::vector<std::uint32_t> cls(order, UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t g = 0; g < order; ++g) {
      if (cls[g] != UINT32_MAX) continue;
      for (std::size_t x = 0; x < order; ++x) {
        const std::uint32_t c = mul[mul[x][g]][inv[x]];
        cls[c] = next;
      }
      ++next;
    }
    return cls;
  }
};

/// r2(g) = #{x : x^2 = g}, the square-root counting function. Its sum over
/// the group is |G|, and mu_2 of the group algebra is reproducible from it.
inline std::vector<std::size_t> square_root_counts(const GroupTable& table) {
  std::vector<std::size_t> r2(table.order, 0);
  for (std::size_t x = 0; x < table.order; ++x) ++r2[table.mul[x][x]];
  return r2;
}

// ---- built-in tables used by catalog groups and tests ------------------

/// Cyclic group of order n.
inline GroupTable cyclic_group_table(std::size_t n) {
  GroupTable t;
  t.order = n;
  t.identity = 0;
  t.name = "Z" + std::to_string(n);
  t.mul.assign(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.mul[i][j] = static_cast<std::uint32_t>((i + j) % n);
  return t;
}

/// Quaternion group Q8 with element order 1, -1, i, -i, j, -j, k, -k.
inline GroupTable quaternion_group_table() {
  // Encode +/- g as 2*g + sign with g in {1, i, j, k}.
  auto idx = [](int g, int s) { return static_cast<std::uint32_t>(2 * g + s); };
  // Products of the positive units, sgn = 1 for a negative result:
  // i*j = k, j*i = -k, i*i = j*j = k*k = -1.
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  GroupTable t;
  t.order = 8;
  t.identity = 0;
  t.name = "Q8";
  t.mul.assign(8, std::vector<std::uint32_t>(8));
  for (int g = 0; g < 4; ++g)
    for (int sg = 0; sg < 2; ++sg)
      for (int h = 0; h < 4; ++h)
        for (int sh = 0; sh < 2; ++sh)
          t.mul[idx(g, sg)][idx(h, sh)] = idx(unit[g][h], (sg + sh + sgn[g][h]) % 2);
  return t;
}

}  // namespace polarize
