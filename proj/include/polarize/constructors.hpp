#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polarize/algebra.hpp"
#include "polarize/group_table.hpp"

namespace polarize {

enum class DivisionAlgebra { R, C, H };

struct CliffordSignature {
  unsigned p = 0;
  unsigned q = 0;
};

/// Wedderburn decomposition data: (n_j, delta_j) per matrix block, with
/// delta_j the real dimension of the division algebra (1, 2 or 4).
struct DecompositionData {
  std::vector<std::pair<std::size_t, int>> blocks;
};

namespace detail {

template <typename S>
TermList<S> single_term(std::uint32_t k, const S& c) {
  return TermList<S>{{k, c}};
}

}  // namespace detail

/// R, C or H with the standard conjugation involution.
template <typename S>
AlgebraPtr<S> make_division_algebra(DivisionAlgebra which, double eps = kDefaultEpsilon) {
  using T = scalar_traits<S>;
  typename Algebra<S>::Spec sp;
  sp.epsilon = eps;
  const S one = T::one();
  if (which == DivisionAlgebra::R) {
    sp.name = "R";
    sp.basis_labels = {"1"};
    sp.table = {detail::single_term<S>(0, one)};
    sp.unit = {one};
    sp.involution_rows = {detail::single_term<S>(0, one)};
    sp.provenance = Provenance<S>{Provenance<S>::Kind::DivisionR};
  } else if (which == DivisionAlgebra::C) {
    sp.name = "C";
    sp.basis_labels = {"1", "i"};
    sp.table.resize(4);
    sp.table[0] = detail::single_term<S>(0, one);
    sp.table[1] = detail::single_term<S>(1, one);
    sp.table[2] = detail::single_term<S>(1, one);
    sp.table[3] = detail::single_term<S>(0, -one);
    sp.unit = {one, T::zero()};
    sp.involution_rows = {detail::single_term<S>(0, one), detail::single_term<S>(1, -one)};
    sp.provenance = Provenance<S>{Provenance<S>::Kind::DivisionC};
  } else {
    sp.name = "H";
    sp.basis_labels = {"1", "i", "j", "k"};
    // Quaternion relations: i*j = k and cyclic, squares -1.
    static const int unit_of[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int neg_of[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    sp.table.resize(16);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        sp.table[a * 4 + b] = detail::single_term<S>(
            static_cast<std::uint32_t>(unit_of[a][b]), neg_of[a][b] ? -one : one);
    sp.unit = {one, T::zero(), T::zero(), T::zero()};
    sp.involution_rows.resize(4);
    sp.involution_rows[0] = detail::single_term<S>(0, one);
    for (std::uint32_t a = 1; a < 4; ++a) sp.involution_rows[a] = detail::single_term<S>(a, -one);
    sp.provenance = Provenance<S>{Provenance<S>::Kind::DivisionH};
  }
  return Algebra<S>::create(std::move(sp));
}

/// M_n(base) with the involution induced by the base involution composed
/// with the transpose. Basis is row-major over (i, j), then base index.
template <typename S>
AlgebraPtr<S> make_matrix_algebra(const AlgebraPtr<S>& base, std::size_t n,
                                  CheckMode checks = CheckMode::automatic) {
  if (n == 0) throw ValidationError("matrix algebra needs n >= 1");
  const std::size_t d = base->dim();
  const std::size_t dim = n * n * d;
  if (dim > kDimensionCap) throw SizeLimitError("matrix algebra dimension exceeds cap");

  typename Algebra<S>::Spec sp;
  sp.epsilon = base->epsilon();
  sp.checks = checks;
  sp.name = "M(" + std::to_string(n) + "," + base->name() + ")";
  auto idx = [&](std::size_t i, std::size_t j, std::size_t a) { return (i * n + j) * d + a; };

  sp.basis_labels.resize(dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < d; ++a)
        sp.basis_labels[idx(i, j, a)] = "E" + std::to_string(i + 1) + std::to_string(j + 1) +
                                        ":" + base->label(a);

  sp.table.assign(dim * dim, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < d; ++a) {
        const std::size_t row = idx(i, j, a);
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t b = 0; b < d; ++b) {
            // (E_ij e_a)(E_jl e_b) = E_il (e_a e_b); other column blocks vanish.
            TermList<S> terms;
            for (const auto& t : base->product_terms(a, b))
              terms.push_back({static_cast<std::uint32_t>(idx(i, l, t.k)), t.coeff});
            sp.table[row * dim + idx(j, l, b)] = std::move(terms);
          }
      }

  sp.unit.assign(dim, scalar_traits<S>::zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a) sp.unit[idx(i, i, a)] = base->unit_coords()[a];

  sp.involution_rows.assign(dim, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < d; ++a) {
        TermList<S> row;
        for (const auto& t : base->star_terms(a))
          row.push_back({static_cast<std::uint32_t>(idx(j, i, t.k)), t.coeff});
        sp.involution_rows[idx(i, j, a)] = std::move(row);
      }

  Provenance<S> prov{Provenance<S>::Kind::MatrixOver};
  prov.n = n;
  prov.base = base;
  sp.provenance = std::move(prov);
  return Algebra<S>::create(std::move(sp));
}

/// *-direct sum: blockwise product and involution, concatenated units.
template <typename S>
AlgebraPtr<S> make_direct_sum(const std::vector<AlgebraPtr<S>>& parts,
                              CheckMode checks = CheckMode::automatic) {
  if (parts.empty()) throw ValidationError("direct sum of zero parts");
  std::size_t dim = 0;
  std::vector<std::size_t> offsets;
  double eps = 0.0;
  for (const auto& p : parts) {
    offsets.push_back(dim);
    dim += p->dim();
    eps = std::max(eps, p->epsilon());
  }
  if (dim > kDimensionCap) throw SizeLimitError("direct sum dimension exceeds cap");

  typename Algebra<S>::Spec sp;
  sp.epsilon = eps;
  sp.checks = checks;
  sp.name = "Sum(";
  for (std::size_t p = 0; p < parts.size(); ++p)
    sp.name += (p ? "," : "") + parts[p]->name();
  sp.name += ")";

  sp.basis_labels.resize(dim);
  sp.table.assign(dim * dim, {});
  sp.unit.assign(dim, scalar_traits<S>::zero());
  sp.involution_rows.assign(dim, {});
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& part = *parts[p];
    const std::size_t off = offsets[p];
    for (std::size_t a = 0; a < part.dim(); ++a) {
      sp.basis_labels[off + a] = std::to_string(p + 1) + ":" + part.label(a);
      sp.unit[off + a] = part.unit_coords()[a];
      TermList<S> srow;
      for (const auto& t : part.star_terms(a))
        srow.push_back({static_cast<std::uint32_t>(off + t.k), t.coeff});
      sp.involution_rows[off + a] = std::move(srow);
      for (std::size_t b = 0; b < part.dim(); ++b) {
        TermList<S> terms;
        for (const auto& t : part.product_terms(a, b))
          terms.push_back({static_cast<std::uint32_t>(off + t.k), t.coeff});
        sp.table[(off + a) * dim + (off + b)] = std::move(terms);
      }
    }
  }

  Provenance<S> prov{Provenance<S>::Kind::DirectSum};
  prov.parts = parts;
  prov.part_offsets = offsets;
  sp.provenance = std::move(prov);
  return Algebra<S>::create(std::move(sp));
}

/// Real group algebra R[G] with the inversion involution.
template <typename S>
AlgebraPtr<S> make_group_algebra(const GroupTable& table, double eps = kDefaultEpsilon) {
  table.validate();
  const std::size_t n = table.order;
  typename Algebra<S>::Spec sp;
  sp.epsilon = eps;
  sp.name = "R[" + table.name + "]";
  sp.basis_labels.resize(n);
  for (std::size_t g = 0; g < n; ++g)
    sp.basis_labels[g] = g == table.identity ? "e" : "g" + std::to_string(g);
  const S one = scalar_traits<S>::one();
  sp.table.assign(n * n, {});
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      sp.table[g * n + h] = detail::single_term<S>(table.mul[g][h], one);
  sp.unit.assign(n, scalar_traits<S>::zero());
  sp.unit[table.identity] = one;
  const auto inv = table.inverses();
  sp.involution_rows.resize(n);
  for (std::size_t g = 0; g < n; ++g) sp.involution_rows[g] = detail::single_term<S>(inv[g], one);

  Provenance<S> prov{Provenance<S>::Kind::GroupAlgebra};
  prov.group_mul = table.mul;
  prov.group_identity = table.identity;
  sp.provenance = std::move(prov);
  return Algebra<S>::create(std::move(sp));
}

namespace detail {

/// (result mask, negative?) of a blade product in C_{p,q}. The sign counts
/// the transpositions that merge the two sorted index lists, then picks up
/// e_i^2 = +1 (i <= p) or -1 (i > p) on the shared indices.
inline std::pair<std::uint32_t, bool> blade_mul(std::uint32_t a, std::uint32_t b, unsigned p) {
  int swaps = 0;
  std::uint32_t walker = a >> 1;
  while (walker != 0) {
    swaps += std::popcount(walker & b);
    walker >>= 1;
  }
  bool neg = (swaps % 2) != 0;
  std::uint32_t common = a & b;
  // Bits at position >= p square to -1 (positions are 0-based; generator
  // indices are 1-based, so bit t corresponds to e_{t+1}).
  const std::uint32_t negative_mask = ~((p >= 32 ? 0xFFFFFFFFu : (1u << p) - 1u));
  if (std::popcount(common & negative_mask) % 2 != 0) neg = !neg;
  return {a ^ b, neg};
}

}  // namespace detail

/// Clifford algebra C_{p,q}: e_i^2 = 1 for i <= p, e_i^2 = -1 above, with
/// e_i e_j = -e_j e_i. The involution fixes the first p generators, negates
/// the rest, and extends anti-multiplicatively (reversal on blades).
template <typename S>
AlgebraPtr<S> make_clifford(CliffordSignature sig, double eps = kDefaultEpsilon,
                            CheckMode checks = CheckMode::automatic) {
  const unsigned d = sig.p + sig.q;
  if (d > 12) throw SizeLimitError("Clifford signature exceeds p+q <= 12 cap");
  const std::size_t dim = std::size_t(1) << d;

  // Basis ordered by (blade size, lexicographic index list).
  std::vector<std::uint32_t> masks(dim);
  for (std::size_t m = 0; m < dim; ++m) masks[m] = static_cast<std::uint32_t>(m);
  auto indices_of = [](std::uint32_t m) {
    std::vector<unsigned> ix;
    for (unsigned t = 0; t < 32; ++t)
      if (m & (1u << t)) ix.push_back(t + 1);
    return ix;
  };
  std::sort(masks.begin(), masks.end(), [&](std::uint32_t x, std::uint32_t y) {
    const auto ax = indices_of(x), ay = indices_of(y);
    if (ax.size() != ay.size()) return ax.size() < ay.size();
    return ax < ay;
  });
  std::vector<std::uint32_t> pos(dim);
  for (std::size_t r = 0; r < dim; ++r) pos[masks[r]] = static_cast<std::uint32_t>(r);

  typename Algebra<S>::Spec sp;
  sp.epsilon = eps;
  sp.checks = checks;
  sp.name = "Clifford(" + std::to_string(sig.p) + "," + std::to_string(sig.q) + ")";
  const S one = scalar_traits<S>::one();

  sp.basis_labels.resize(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto ix = indices_of(masks[r]);
    if (ix.empty()) {
      sp.basis_labels[r] = "1";
    } else {
      std::string lbl = "e";
      const bool wide = d >= 10;
      for (std::size_t t = 0; t < ix.size(); ++t)
        lbl += (t && wide ? "_" : "") + std::to_string(ix[t]);
      sp.basis_labels[r] = lbl;
    }
  }

  sp.table.assign(dim * dim, {});
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t s = 0; s < dim; ++s) {
      const auto [mask, neg] = detail::blade_mul(masks[r], masks[s], sig.p);
      sp.table[r * dim + s] = detail::single_term<S>(pos[mask], neg ? -one : one);
    }

  sp.unit.assign(dim, scalar_traits<S>::zero());
  sp.unit[pos[0]] = one;

  // e_I^* computed by multiplying out the reversed generator word, each
  // generator carrying its own sign.
  sp.involution_rows.resize(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto ix = indices_of(masks[r]);
    std::uint32_t acc = 0;
    bool neg = false;
    for (auto it = ix.rbegin(); it != ix.rend(); ++it) {
      const unsigned gen = *it;
      if (gen > sig.p) neg = !neg;
      const auto [m2, n2] = detail::blade_mul(acc, 1u << (gen - 1), sig.p);
      acc = m2;
      if (n2) neg = !neg;
    }
    sp.involution_rows[r] = detail::single_term<S>(pos[acc], neg ? -one : one);
  }

  Provenance<S> prov{Provenance<S>::Kind::Clifford};
  prov.p = sig.p;
  prov.q = sig.q;
  sp.provenance = std::move(prov);
  return Algebra<S>::create(std::move(sp));
}

/// Per-block polarization constant of a *-direct sum of matrix algebras:
/// the coefficient n d / ((n-1) d + 2) of each identity block.
template <typename S>
std::vector<S> kappa_closed_form(const DecompositionData& data) {
  if (data.blocks.empty()) throw ValidationError("decomposition data must be nonempty");
  std::vector<S> out;
  for (const auto& [n, delta] : data.blocks) {
    if (n == 0) throw ValidationError("block size must be positive");
    if (delta != 1 && delta != 2 && delta != 4)
      throw ValidationError("division algebra dimension must be 1, 2 or 4");
    const long long nn = static_cast<long long>(n);
    out.push_back(scalar_traits<S>::from_ratio(nn * delta, (nn - 1) * delta + 2));
  }
  return out;
}

}  // namespace polarize
