#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarize/algebra.hpp"
#include "polarize/constructors.hpp"

namespace polarize {

namespace detail {

/// Coordinate-keyed element lookup: ordered map on the exact backend,
/// eps-ball linear scan on floats. Orders stay small enough for the scan.
template <typename S>
class ElementSet {
 public:
  explicit ElementSet(double eps) : eps_(eps) {}

  std::optional<std::size_t> find(const std::vector<S>& coords) const {
    if constexpr (scalar_traits<S>::exact) {
      auto it = map_.find(coords);
      if (it == map_.end()) return std::nullopt;
      return it->second;
    } else {
      for (const auto& [c, idx] : items_) {
        bool same = true;
        for (std::size_t i = 0; i < c.size() && same; ++i)
          same = scalar_traits<S>::eq(c[i], coords[i], eps_);
        if (same) return idx;
      }
      return std::nullopt;
    }
  }

  void add(const std::vector<S>& coords, std::size_t idx) {
    if constexpr (scalar_traits<S>::exact) {
      map_.emplace(coords, idx);
    } else {
      items_.emplace_back(coords, idx);
    }
  }

 private:
  double eps_;
  std::map<std::vector<S>, std::size_t> map_;
  std::vector<std::pair<std::vector<S>, std::size_t>> items_;
};

inline std::vector<std::vector<std::uint32_t>> close_permutations(
    std::size_t n, std::vector<std::vector<std::uint32_t>> gens) {
  for (const auto& g : gens) {
    if (g.size() != n) throw ValidationError("permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (auto v : g) {
      if (v >= n || seen[v]) throw ValidationError("not a permutation");
      seen[v] = true;
    }
  }
  std::vector<std::uint32_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::map<std::vector<std::uint32_t>, std::size_t> visited;
  std::vector<std::vector<std::uint32_t>> out{id};
  visited.emplace(id, 0);
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<std::uint32_t> comp(n);
      for (std::size_t i = 0; i < n; ++i) comp[i] = g[out[head][i]];
      if (visited.emplace(comp, out.size()).second) out.push_back(std::move(comp));
      if (out.size() > 40320) throw SizeLimitError("permutation group too large");
    }
  }
  return out;
}

inline bool is_transitive(std::size_t n, const std::vector<std::vector<std::uint32_t>>& perms) {
  std::vector<bool> orbit(n, false);
  orbit[0] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& p : perms)
      for (std::size_t i = 0; i < n; ++i)
        if (orbit[i] && !orbit[p[i]]) {
          orbit[p[i]] = true;
          grew = true;
        }
  }
  for (bool b : orbit)
    if (!b) return false;
  return true;
}

}  // namespace detail

/// Explicit finite subgroup of the unitary group of its parent algebra.
/// Elements are stored in a fixed canonical order (closure BFS order or
/// enumeration order); moment sums always follow it, so float results are
/// deterministic.
template <typename S>
class UnitaryGroup {
 public:
  UnitaryGroup(AlgebraPtr<S> parent, std::vector<Element<S>> elements, std::size_t identity_pos,
               std::string id, bool check_unitary = true)
      : parent_(std::move(parent)),
        elems_(std::move(elements)),
        identity_pos_(identity_pos),
        id_(std::move(id)) {
    if (elems_.empty()) throw ValidationError("group must be nonempty");
    if (identity_pos_ >= elems_.size()) throw ValidationError("identity index out of range");
    if (elems_[identity_pos_] != parent_->unit())
      throw ValidationError("identity position does not hold 1");
    if (check_unitary) {
      for (const auto& e : elems_)
        if (!is_unitary(e))
          throw ValidationError(id_ + ": group contains a non-unitary element");
    }
  }

  const AlgebraPtr<S>& parent() const { return parent_; }
  std::size_t size() const { return elems_.size(); }
  const Element<S>& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Element<S>>& elements() const { return elems_; }
  std::size_t identity_pos() const { return identity_pos_; }
  const std::string& id() const { return id_; }

  std::optional<std::size_t> find(const Element<S>& e) const {
    ensure_index();
    return index_->find(e.coords());
  }

  /// N x N index table (computed once, only up to the given order cap).
  const std::optional<std::vector<std::vector<std::uint32_t>>>& closure_table(
      std::size_t cap = 512) const {
    if (!table_ && elems_.size() <= cap) {
      std::vector<std::vector<std::uint32_t>> t(elems_.size());
      for (std::size_t i = 0; i < elems_.size(); ++i) {
        t[i].resize(elems_.size());
        for (std::size_t j = 0; j < elems_.size(); ++j) {
          auto k = find(elems_[i] * elems_[j]);
          if (!k) throw ValidationError(id_ + ": not closed under multiplication");
          t[i][j] = static_cast<std::uint32_t>(*k);
        }
      }
      table_ = std::move(t);
    }
    return table_;
  }

 private:
  void ensure_index() const {
    if (index_) return;
    index_.emplace(parent_->epsilon());
    for (std::size_t i = 0; i < elems_.size(); ++i) index_->add(elems_[i].coords(), i);
  }

  AlgebraPtr<S> parent_;
  std::vector<Element<S>> elems_;
  std::size_t identity_pos_;
  std::string id_;
  mutable std::optional<detail::ElementSet<S>> index_;
  mutable std::optional<std::vector<std::vector<std::uint32_t>>> table_;
};

/// Polarizing-subgroup certificate: spans the algebra and has vanishing
/// first moment.
template <typename S>
struct PolarizationCertificate {
  bool spans = false;
  Element<S> first_moment;
  S first_moment_norm = scalar_traits<S>::zero();
  bool is_polarizing = false;
};

template <typename S>
Element<S> group_average(const UnitaryGroup<S>& group, unsigned power) {
  const auto& alg = group.parent();
  std::vector<S> acc(alg->dim(), scalar_traits<S>::zero());
  for (std::size_t i = 0; i < group.size(); ++i) {
    Element<S> g = alg->unit();
    for (unsigned t = 0; t < power; ++t) g = g * group[i];
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += g[c];
  }
  const S inv_n = scalar_traits<S>::one() / scalar_traits<S>::from_int(
                                                static_cast<long long>(group.size()));
  for (auto& v : acc) v = v * inv_n;
  return alg->element(std::move(acc));
}

template <typename S>
PolarizationCertificate<S> certify_polarizing(const UnitaryGroup<S>& group) {
  PolarizationCertificate<S> cert;
  cert.spans = span_rank(group.elements()) == group.parent()->dim();
  cert.first_moment = group_average(group, 1);
  cert.first_moment_norm = cert.first_moment.max_abs();
  cert.is_polarizing = cert.spans && cert.first_moment.is_zero();
  return cert;
}

/// Breadth-first closure of unitary generators; fails once the order would
/// exceed max_order (an infinite or too-large group).
template <typename S>
UnitaryGroup<S> close_group(const std::vector<Element<S>>& generators, std::size_t max_order,
                            std::string id = "closure") {
  if (generators.empty()) throw PreconditionError("closure needs at least one generator");
  const auto parent = generators.front().parent();
  for (const auto& g : generators) {
    if (g.parent() != parent) throw StructuralError("generators from different algebras");
    if (!is_unitary(g)) throw PreconditionError("generator is not unitary");
  }
  std::vector<Element<S>> elems{parent->unit()};
  detail::ElementSet<S> seen(parent->epsilon());
  seen.add(elems[0].coords(), 0);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : generators) {
      Element<S> next = elems[head] * g;
      if (!seen.find(next.coords())) {
        if (elems.size() >= max_order)
          throw NotClosedError(id + ": closure exceeds max order " + std::to_string(max_order));
        seen.add(next.coords(), elems.size());
        elems.push_back(std::move(next));
      }
    }
  }
  return UnitaryGroup<S>(parent, std::move(elems), 0, std::move(id));
}

// ---- catalog groups -----------------------------------------------------

inline constexpr std::size_t kRootsCap = 4096;

/// Cyclic group of N-th roots of unity in C. Exact for N in {1, 2, 4};
/// other N require the float backend.
template <typename S>
UnitaryGroup<S> roots_of_unity_group(const AlgebraPtr<S>& c_algebra, std::size_t n) {
  if (!c_algebra->provenance() ||
      c_algebra->provenance()->kind != Provenance<S>::Kind::DivisionC)
    throw PreconditionError("roots group lives in the complex algebra C");
  if (n == 0 || n > kRootsCap) throw ValidationError("roots order out of range");
  std::vector<Element<S>> elems;
  elems.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (4 * j % n == 0) {
      // Quarter turns are exact on both backends.
      const std::size_t quarter = 4 * j / n;
      const long long re[4] = {1, 0, -1, 0}, im[4] = {0, 1, 0, -1};
      elems.push_back(c_algebra->element({scalar_traits<S>::from_int(re[quarter % 4]),
                                          scalar_traits<S>::from_int(im[quarter % 4])}));
    } else if constexpr (scalar_traits<S>::exact) {
      throw PreconditionError("roots:" + std::to_string(n) +
                              " has irrational entries; use the float backend");
    } else {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      elems.push_back(c_algebra->element({std::cos(theta), std::sin(theta)}));
    }
  }
  return UnitaryGroup<S>(c_algebra, std::move(elems), 0, "roots:" + std::to_string(n));
}

enum class QuaternionGroupName { BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral, BinaryDihedral };

inline std::size_t quaternion_group_order(QuaternionGroupName name, unsigned n) {
  switch (name) {
    case QuaternionGroupName::BinaryTetrahedral: return 24;
    case QuaternionGroupName::BinaryOctahedral: return 48;
    case QuaternionGroupName::BinaryIcosahedral: return 120;
    case QuaternionGroupName::BinaryDihedral: return 4 * static_cast<std::size_t>(n);
  }
  throw LookupError("unknown quaternion group");
}

/// Finite polarizing subgroups of the unit quaternions. The closed group's
/// order is checked against the expected catalog order and any deviation is
/// an error.
template <typename S>
UnitaryGroup<S> quaternion_catalog(const AlgebraPtr<S>& h_algebra, QuaternionGroupName name,
                                   unsigned n = 0) {
  if (!h_algebra->provenance() ||
      h_algebra->provenance()->kind != Provenance<S>::Kind::DivisionH)
    throw PreconditionError("quaternion catalog groups live in H");
  if (name == QuaternionGroupName::BinaryDihedral && n < 2)
    throw ValidationError("binary dihedral requires n >= 2");

  std::vector<Element<S>> gens;
  std::string id;
  auto omega = [&] {  // (-1 + i + j + k) / 2
    return h_algebra->element({scalar_traits<S>::from_ratio(-1, 2), scalar_traits<S>::from_ratio(1, 2),
                               scalar_traits<S>::from_ratio(1, 2), scalar_traits<S>::from_ratio(1, 2)});
  };
  auto quaternion_i = [&] {
    return h_algebra->element({scalar_traits<S>::zero(), scalar_traits<S>::one(),
                               scalar_traits<S>::zero(), scalar_traits<S>::zero()});
  };
  auto quaternion_j = [&] {
    return h_algebra->element({scalar_traits<S>::zero(), scalar_traits<S>::zero(),
                               scalar_traits<S>::one(), scalar_traits<S>::zero()});
  };

  switch (name) {
    case QuaternionGroupName::BinaryTetrahedral:
      gens = {omega(), quaternion_i()};
      id = "quaternion:2A4";
      break;
    case QuaternionGroupName::BinaryDihedral:
      if (n == 2) {
        gens = {quaternion_i(), quaternion_j()};
      } else if constexpr (scalar_traits<S>::exact) {
        throw PreconditionError("2D_2n with n != 2 has irrational entries; use float backend");
      } else {
        const double a = std::numbers::pi / static_cast<double>(n);
        gens = {h_algebra->element({std::cos(a), std::sin(a), 0.0, 0.0}), quaternion_j()};
      }
      id = "quaternion:2D_2n:" + std::to_string(n);
      break;
    case QuaternionGroupName::BinaryOctahedral:
      if constexpr (scalar_traits<S>::exact) {
        throw PreconditionError("2S4 has irrational entries; use the float backend");
      } else {
        const double r = 1.0 / std::sqrt(2.0);
        gens = {omega(), h_algebra->element({0.0, 0.0, r, r})};
      }
      id = "quaternion:2S4";
      break;
    case QuaternionGroupName::BinaryIcosahedral:
      if constexpr (scalar_traits<S>::exact) {
        throw PreconditionError("2A5 has irrational entries; use the float backend");
      } else {
        const double s5 = std::sqrt(5.0);
        gens = {omega(),
                h_algebra->element({0.0, 0.5, (s5 - 1.0) / 4.0, (s5 + 1.0) / 4.0})};
      }
      id = "quaternion:2A5";
      break;
  }

  const std::size_t expected = quaternion_group_order(name, n);
  UnitaryGroup<S> group = close_group(gens, expected, id);
  if (group.size() != expected)
    throw ValidationError(id + ": closed to order " + std::to_string(group.size()) +
                          ", expected " + std::to_string(expected));
  return group;
}

/// The group {D P} of G-diagonal matrices times transitive permutation
/// matrices inside M_n(A). Enumerated explicitly; sizes past the cap are
/// refused rather than represented lazily.
template <typename S>
UnitaryGroup<S> delta_gh_group(const AlgebraPtr<S>& matrix_algebra, const UnitaryGroup<S>& g_base,
                               std::vector<std::vector<std::uint32_t>> h_generators = {}) {
  const auto& prov = matrix_algebra->provenance();
  if (!prov || prov->kind != Provenance<S>::Kind::MatrixOver)
    throw PreconditionError("delta-gh group lives in a matrix algebra M(n, base)");
  if (prov->base != g_base.parent())
    throw StructuralError("base group does not live in the matrix algebra's base");
  const std::size_t n = prov->n;
  if (n < 2) throw PreconditionError("delta-gh needs n >= 2");
  const std::size_t d = prov->base->dim();

  if (h_generators.empty()) {
    // Default H: cyclic group of the n-cycle.
    std::vector<std::uint32_t> shift(n);
    for (std::size_t i = 0; i < n; ++i) shift[i] = static_cast<std::uint32_t>((i + 1) % n);
    h_generators.push_back(std::move(shift));
  }
  const auto perms = detail::close_permutations(n, std::move(h_generators));
  if (!detail::is_transitive(n, perms))
    throw ValidationError("permutation group H is not transitive");

  const std::size_t g_order = g_base.size();
  std::size_t total = perms.size();
  for (std::size_t i = 0; i < n; ++i) {
    total *= g_order;
    if (total > kGroupEnumerationCap)
      throw SizeLimitError("delta-gh enumeration exceeds cap of " +
                           std::to_string(kGroupEnumerationCap));
  }

  auto idx = [&](std::size_t r, std::size_t c, std::size_t a) { return (r * n + c) * d + a; };
  std::vector<Element<S>> elems;
  elems.reserve(total);
  std::size_t identity_pos = 0;
  for (const auto& sigma : perms) {
    std::vector<std::size_t> digits(n, 0);
    while (true) {
      std::vector<S> coords(matrix_algebra->dim(), scalar_traits<S>::zero());
      for (std::size_t col = 0; col < n; ++col) {
        const std::size_t row = sigma[col];
        const auto& g = g_base[digits[row]];
        for (std::size_t a = 0; a < d; ++a) coords[idx(row, col, a)] = g[a];
      }
      elems.emplace_back(matrix_algebra->element(std::move(coords)));
      // Odometer over the diagonal entries.
      std::size_t pos = 0;
      while (pos < n && ++digits[pos] == g_order) digits[pos++] = 0;
      if (pos == n) break;
    }
  }
  // Locate the identity (identity permutation with identity diagonal).
  {
    detail::ElementSet<S> set(matrix_algebra->epsilon());
    set.add(matrix_algebra->unit().coords(), 0);
    bool found = false;
    for (std::size_t i = 0; i < elems.size() && !found; ++i) {
      if (set.find(elems[i].coords())) {
        identity_pos = i;
        found = true;
      }
    }
    if (!found) throw ValidationError("delta-gh enumeration lost the identity");
  }

  UnitaryGroup<S> group(matrix_algebra, std::move(elems), identity_pos,
                        "delta-gh:" + std::to_string(n));
  // Star-membership and sampled closure, member-wise.
  for (std::size_t i = 0; i < group.size(); ++i)
    if (!group.find(group[i].star()))
      throw ValidationError("delta-gh group is not closed under star");
  SplitMix64 rng(0x64656C7461ull);
  const std::size_t trials = std::min<std::size_t>(200, group.size() * group.size());
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& a = group[rng.below(group.size())];
    const auto& b = group[rng.below(group.size())];
    if (!group.find(a * b)) throw ValidationError("delta-gh group is not closed under product");
  }
  return group;
}

/// {(+-1) g : g in G} inside the group algebra R[G].
template <typename S>
UnitaryGroup<S> signed_group_algebra_group(const AlgebraPtr<S>& group_algebra) {
  const auto& prov = group_algebra->provenance();
  if (!prov || prov->kind != Provenance<S>::Kind::GroupAlgebra)
    throw PreconditionError("signed group lives in a group algebra");
  const std::size_t n = group_algebra->dim();
  std::vector<Element<S>> elems;
  elems.reserve(2 * n);
  elems.push_back(group_algebra->basis_element(prov->group_identity));
  elems.push_back(-elems[0]);
  for (std::size_t g = 0; g < n; ++g) {
    if (g == prov->group_identity) continue;
    elems.push_back(group_algebra->basis_element(g));
    elems.push_back(-elems.back());
  }
  return UnitaryGroup<S>(group_algebra, std::move(elems), 0, "signed-group");
}

/// G_{p,q} = { +-e_I } inside a Clifford algebra.
template <typename S>
UnitaryGroup<S> clifford_group(const AlgebraPtr<S>& clifford_algebra) {
  const auto& prov = clifford_algebra->provenance();
  if (!prov || prov->kind != Provenance<S>::Kind::Clifford)
    throw PreconditionError("clifford group lives in a Clifford algebra");
  std::vector<Element<S>> elems;
  elems.reserve(2 * clifford_algebra->dim());
  for (std::size_t i = 0; i < clifford_algebra->dim(); ++i) {
    elems.push_back(clifford_algebra->basis_element(i));
    elems.push_back(-elems.back());
  }
  return UnitaryGroup<S>(clifford_algebra, std::move(elems), 0, "clifford");
}

/// Product group G_1 x ... x G_N of per-part groups inside a *-direct sum.
template <typename S>
UnitaryGroup<S> direct_sum_product_group(const AlgebraPtr<S>& sum_algebra,
                                         const std::vector<UnitaryGroup<S>>& part_groups) {
  const auto& prov = sum_algebra->provenance();
  if (!prov || prov->kind != Provenance<S>::Kind::DirectSum)
    throw PreconditionError("product group lives in a *-direct sum");
  if (part_groups.size() != prov->parts.size())
    throw StructuralError("need one group per direct summand");
  std::size_t total = 1;
  for (std::size_t p = 0; p < part_groups.size(); ++p) {
    if (part_groups[p].parent() != prov->parts[p])
      throw StructuralError("part group does not live in the matching summand");
    total *= part_groups[p].size();
    if (total > kGroupEnumerationCap) throw SizeLimitError("product group exceeds enumeration cap");
  }
  std::vector<Element<S>> elems;
  elems.reserve(total);
  std::vector<std::size_t> digits(part_groups.size(), 0);
  std::size_t identity_pos = 0;
  while (true) {
    std::vector<S> coords(sum_algebra->dim(), scalar_traits<S>::zero());
    bool all_identity = true;
    for (std::size_t p = 0; p < part_groups.size(); ++p) {
      const auto& g = part_groups[p][digits[p]];
      if (digits[p] != part_groups[p].identity_pos()) all_identity = false;
      for (std::size_t a = 0; a < g.dim(); ++a) coords[prov->part_offsets[p] + a] = g[a];
    }
    if (all_identity) identity_pos = elems.size();
    elems.emplace_back(sum_algebra->element(std::move(coords)));
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == part_groups[pos].size()) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  return UnitaryGroup<S>(sum_algebra, std::move(elems), identity_pos, "product");
}

/// Gram matrix of the group-averaged inner product, starting from the
/// standard coordinate dot product.
template <typename S>
Matrix<S> averaged_inner_product(const UnitaryGroup<S>& group) {
  const std::size_t n = group.parent()->dim();
  Matrix<S> gram(n, n);
  for (std::size_t i = 0; i < group.size(); ++i) {
    const Matrix<S> l = left_regular(group[i]);
    gram = gram + l.transpose() * l;
  }
  const S inv_n =
      scalar_traits<S>::one() / scalar_traits<S>::from_int(static_cast<long long>(group.size()));
  gram.scale(inv_n);
  return gram;
}

}  // namespace polarize
