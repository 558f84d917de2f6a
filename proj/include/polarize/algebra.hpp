#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polarize/errors.hpp"
#include "polarize/linalg.hpp"
#include "polarize/rng.hpp"
#include "polarize/scalar.hpp"
#include "polarize/version.hpp"

namespace polarize {

template <typename S>
class Algebra;
template <typename S>
class Element;

template <typename S>
using AlgebraPtr = std::shared_ptr<const Algebra<S>>;

/// One term of a basis product: e_i e_j = sum of coeff * e_k.
template <typename S>
struct Term {
  std::uint32_t k;
  S coeff;
};

template <typename S>
using TermList = std::vector<Term<S>>;

// Provenance lets catalog machinery recognize how an algebra was built
// (the construction, not just the structure constants).
template <typename S>
struct Provenance {
  enum class Kind { DivisionR, DivisionC, DivisionH, MatrixOver, DirectSum, GroupAlgebra, Clifford };
  Kind kind;
  std::size_t n = 0;            // MatrixOver: block count per side
  AlgebraPtr<S> base;           // MatrixOver
  std::vector<AlgebraPtr<S>> parts;  // DirectSum
  std::vector<std::size_t> part_offsets;
  unsigned p = 0, q = 0;        // Clifford signature
  std::vector<std::vector<std::uint32_t>> group_mul;  // GroupAlgebra table
  std::size_t group_identity = 0;
};

enum class CheckMode {
  automatic,  // full associativity for dim <= 64, 200 sampled triples above
  full,
  sampled,
};

/// Finite-dimensional real involutive algebra given by structure constants,
/// unit and involution matrix. Immutable after construction; construction
/// verifies associativity, the unit laws and that the involution is an
/// order-two anti-automorphism.
template <typename S>
class Algebra : public std::enable_shared_from_this<Algebra<S>> {
 public:
  struct Spec {
    std::string name;
    std::vector<std::string> basis_labels;
    std::vector<TermList<S>> table;  // dim*dim entries, row-major (i, j)
    std::vector<S> unit;
    std::vector<TermList<S>> involution_rows;  // star(e_i) as sparse row
    double epsilon = kDefaultEpsilon;
    CheckMode checks = CheckMode::automatic;
    std::optional<Provenance<S>> provenance;
  };

  static AlgebraPtr<S> create(Spec spec) {
    auto alg = std::shared_ptr<Algebra<S>>(new Algebra<S>(std::move(spec)));
    alg->validate();
    return alg;
  }

  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  double epsilon() const { return eps_; }
  const std::optional<Provenance<S>>& provenance() const { return provenance_; }

  std::span<const Term<S>> product_terms(std::size_t i, std::size_t j) const {
    return table_[i * dim_ + j];
  }
  std::span<const Term<S>> star_terms(std::size_t i) const { return star_rows_[i]; }
  const std::vector<S>& unit_coords() const { return unit_; }

  Element<S> element(std::vector<S> coords) const;
  Element<S> zero() const;
  Element<S> unit() const;
  Element<S> basis_element(std::size_t i) const;
  Element<S> scalar_element(const S& value) const;

 private:
  explicit Algebra(Spec spec)
      : dim_(spec.basis_labels.size()),
        name_(std::move(spec.name)),
        labels_(std::move(spec.basis_labels)),
        table_(std::move(spec.table)),
        unit_(std::move(spec.unit)),
        star_rows_(std::move(spec.involution_rows)),
        eps_(spec.epsilon),
        checks_(spec.checks),
        provenance_(std::move(spec.provenance)) {}

  void validate() const;

  std::size_t dim_;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<TermList<S>> table_;
  std::vector<S> unit_;
  std::vector<TermList<S>> star_rows_;
  double eps_;
  CheckMode checks_;
  std::optional<Provenance<S>> provenance_;
};

/// Immutable coordinate vector in its parent algebra's basis. All arithmetic
/// is structure-constant driven and only allowed between elements of the
/// same parent.
template <typename S>
class Element {
 public:
  Element() = default;
  Element(AlgebraPtr<S> parent, std::vector<S> coords)
      : parent_(std::move(parent)), coords_(std::move(coords)) {
    if (coords_.size() != parent_->dim())
      throw StructuralError("coordinate length does not match algebra dimension");
  }

  const AlgebraPtr<S>& parent() const { return parent_; }
  const std::vector<S>& coords() const { return coords_; }
  const S& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t dim() const { return coords_.size(); }

  Element operator+(const Element& o) const {
    same_parent(o);
    std::vector<S> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return Element(parent_, std::move(c));
  }

  Element operator-(const Element& o) const {
    same_parent(o);
    std::vector<S> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return Element(parent_, std::move(c));
  }

  Element operator-() const {
    std::vector<S> c = coords_;
    for (auto& v : c) v = -v;
    return Element(parent_, std::move(c));
  }

  Element operator*(const Element& o) const {
    same_parent(o);
    std::vector<S> c(coords_.size(), scalar_traits<S>::zero());
    const auto& alg = *parent_;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (scalar_traits<S>::strictly_zero(coords_[i])) continue;
      for (std::size_t j = 0; j < o.coords_.size(); ++j) {
        if (scalar_traits<S>::strictly_zero(o.coords_[j])) continue;
        const S ab = coords_[i] * o.coords_[j];
        for (const auto& t : alg.product_terms(i, j)) c[t.k] += ab * t.coeff;
      }
    }
    return Element(parent_, std::move(c));
  }

  /// Scalar multiple (real scalars act centrally).
  Element scaled(const S& v) const {
    std::vector<S> c = coords_;
    for (auto& x : c) x = x * v;
    return Element(parent_, std::move(c));
  }

  /// Image under the involution: coords' = S^T coords.
  Element star() const {
    std::vector<S> c(coords_.size(), scalar_traits<S>::zero());
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (scalar_traits<S>::strictly_zero(coords_[i])) continue;
      for (const auto& t : parent_->star_terms(i)) c[t.k] += coords_[i] * t.coeff;
    }
    return Element(parent_, std::move(c));
  }

  bool operator==(const Element& o) const {
    if (parent_ != o.parent_) return false;
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (!scalar_traits<S>::eq(coords_[i], o.coords_[i], parent_->epsilon())) return false;
    return true;
  }
  bool operator!=(const Element& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& v : coords_)
      if (!scalar_traits<S>::is_zero(v, parent_->epsilon())) return false;
    return true;
  }

  /// Max-abs coordinate, as the backend scalar.
  S max_abs() const {
    S m = scalar_traits<S>::zero();
    for (const auto& v : coords_) {
      S a = scalar_traits<S>::abs(v);
      if (a > m) m = a;
    }
    return m;
  }

  std::string to_string() const {
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (scalar_traits<S>::strictly_zero(coords_[i])) continue;
      if (!first) out += " + ";
      out += scalar_traits<S>::to_string(coords_[i]) + "*" + parent_->label(i);
      first = false;
    }
    return first ? "0" : out;
  }

 private:
  void same_parent(const Element& o) const {
    if (parent_ != o.parent_)
      throw StructuralError("elements belong to different parent algebras");
  }

  AlgebraPtr<S> parent_;
  std::vector<S> coords_;
};

template <typename S>
Element<S> Algebra<S>::element(std::vector<S> coords) const {
  return Element<S>(this->shared_from_this(), std::move(coords));
}

template <typename S>
Element<S> Algebra<S>::zero() const {
  return element(std::vector<S>(dim_, scalar_traits<S>::zero()));
}

template <typename S>
Element<S> Algebra<S>::unit() const {
  return element(unit_);
}

template <typename S>
Element<S> Algebra<S>::basis_element(std::size_t i) const {
  std::vector<S> c(dim_, scalar_traits<S>::zero());
  c[i] = scalar_traits<S>::one();
  return element(std::move(c));
}

template <typename S>
Element<S> Algebra<S>::scalar_element(const S& value) const {
  std::vector<S> c = unit_;
  for (auto& v : c) v = v * value;
  return element(std::move(c));
}

namespace detail {

// Sparse accumulator keyed by basis index; keeps construction checks cheap
// even for large algebras whose basis products are short term lists.
template <typename S>
using SparseVec = std::map<std::uint32_t, S>;

template <typename S>
void sparse_add(SparseVec<S>& acc, std::uint32_t k, const S& v) {
  auto [it, inserted] = acc.emplace(k, v);
  if (!inserted) it->second += v;
}

template <typename S>
bool sparse_eq(const SparseVec<S>& a, const SparseVec<S>& b, double eps) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    const S other = it == b.end() ? scalar_traits<S>::zero() : it->second;
    if (!scalar_traits<S>::eq(v, other, eps)) return false;
  }
  for (const auto& [k, v] : b) {
    if (a.find(k) == a.end() && !scalar_traits<S>::is_zero(v, eps)) return false;
  }
  return true;
}

}  // namespace detail

template <typename S>
void Algebra<S>::validate() const {
  if (dim_ == 0) throw ValidationError("algebra must have positive dimension");
  if (dim_ > kDimensionCap) throw SizeLimitError("algebra dimension exceeds cap");
  if (table_.size() != dim_ * dim_) throw ValidationError("structure table has wrong shape");
  if (unit_.size() != dim_) throw ValidationError("unit vector has wrong length");
  if (star_rows_.size() != dim_) throw ValidationError("involution matrix has wrong shape");
  for (const auto& row : table_)
    for (const auto& t : row)
      if (t.k >= dim_) throw ValidationError("structure constant index out of range");
  for (const auto& row : star_rows_)
    for (const auto& t : row)
      if (t.k >= dim_) throw ValidationError("involution index out of range");

  using detail::SparseVec;
  using detail::sparse_add;
  using detail::sparse_eq;

  // Unit laws on every basis vector.
  for (std::size_t j = 0; j < dim_; ++j) {
    SparseVec<S> left, right, ej;
    ej.emplace(static_cast<std::uint32_t>(j), scalar_traits<S>::one());
    for (std::size_t i = 0; i < dim_; ++i) {
      if (scalar_traits<S>::strictly_zero(unit_[i])) continue;
      for (const auto& t : product_terms(i, j)) sparse_add(left, t.k, unit_[i] * t.coeff);
      for (const auto& t : product_terms(j, i)) sparse_add(right, t.k, unit_[i] * t.coeff);
    }
    if (!sparse_eq(left, ej, eps_) || !sparse_eq(right, ej, eps_))
      throw ValidationError(name_ + ": unit law fails at basis index " + std::to_string(j));
  }

  // Involution of order two.
  for (std::size_t i = 0; i < dim_; ++i) {
    SparseVec<S> twice, ei;
    ei.emplace(static_cast<std::uint32_t>(i), scalar_traits<S>::one());
    for (const auto& t : star_rows_[i])
      for (const auto& u : star_rows_[t.k]) sparse_add(twice, u.k, t.coeff * u.coeff);
    if (!sparse_eq(twice, ei, eps_))
      throw ValidationError(name_ + ": involution is not of order two at index " +
                            std::to_string(i));
  }

  // star(e_i e_j) = star(e_j) star(e_i) for a basis pair.
  auto check_anti = [&](std::size_t i, std::size_t j) {
    SparseVec<S> lhs, rhs;
    for (const auto& t : product_terms(i, j))
      for (const auto& u : star_rows_[t.k]) sparse_add(lhs, u.k, t.coeff * u.coeff);
    for (const auto& a : star_rows_[j])
      for (const auto& b : star_rows_[i]) {
        const S ab = a.coeff * b.coeff;
        for (const auto& t : product_terms(a.k, b.k)) sparse_add(rhs, t.k, ab * t.coeff);
      }
    if (!sparse_eq(lhs, rhs, eps_))
      throw ValidationError(name_ + ": involution fails anti-automorphism at pair (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
  };

  // (e_i e_j) e_k = e_i (e_j e_k).
  auto check_assoc = [&](std::size_t i, std::size_t j, std::size_t k) {
    SparseVec<S> lhs, rhs;
    for (const auto& t : product_terms(i, j))
      for (const auto& u : product_terms(t.k, k)) sparse_add(lhs, u.k, t.coeff * u.coeff);
    for (const auto& t : product_terms(j, k))
      for (const auto& u : product_terms(i, t.k)) sparse_add(rhs, u.k, t.coeff * u.coeff);
    if (!sparse_eq(lhs, rhs, eps_))
      throw ValidationError(name_ + ": associativity fails at triple (" + std::to_string(i) +
                            "," + std::to_string(j) + "," + std::to_string(k) + ")");
  };

  // Full scan for small algebras, seeded sampling above the cap.
  const bool full =
      checks_ == CheckMode::full || (checks_ == CheckMode::automatic && dim_ <= 64);
  if (full) {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) check_anti(i, j);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) check_assoc(i, j, k);
  } else {
    SplitMix64 rng(0x706F6C61726973ull);  // fixed seed: checks are deterministic
    for (int t = 0; t < 400; ++t) check_anti(rng.below(dim_), rng.below(dim_));
    for (int t = 0; t < 200; ++t)
      check_assoc(rng.below(dim_), rng.below(dim_), rng.below(dim_));
  }
}

// ---- algebra-core operations ------------------------------------------

template <typename S>
Element<S> mul(const Element<S>& a, const Element<S>& b) {
  return a * b;
}

template <typename S>
Element<S> star(const Element<S>& a) {
  return a.star();
}

/// Matrix of left multiplication by `a`: column j holds coords(a * e_j).
template <typename S>
Matrix<S> left_regular(const Element<S>& a) {
  const auto& alg = *a.parent();
  const std::size_t n = alg.dim();
  Matrix<S> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (scalar_traits<S>::strictly_zero(a[i])) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : alg.product_terms(i, j)) m.at(t.k, j) += a[i] * t.coeff;
  }
  return m;
}

/// Two-sided inverse, solved through the left regular representation.
template <typename S>
Element<S> invert(const Element<S>& a) {
  const Matrix<S> l = left_regular(a);
  auto x = l.solve(a.parent()->unit_coords(), a.parent()->epsilon());
  if (!x) throw NotInvertibleError("element is not invertible");
  return a.parent()->element(std::move(*x));
}

/// u u* = u* u = 1 (both orders asserted).
template <typename S>
bool is_unitary(const Element<S>& a) {
  const Element<S> s = a.star();
  const Element<S> one = a.parent()->unit();
  return a * s == one && s * a == one;
}

/// Rank of the coordinate matrix of the given elements.
template <typename S>
std::size_t span_rank(const std::vector<Element<S>>& elements) {
  if (elements.empty()) throw PreconditionError("span_rank of empty element list");
  const auto& parent = elements.front().parent();
  std::vector<std::vector<S>> rows;
  rows.reserve(elements.size());
  for (const auto& e : elements) {
    if (e.parent() != parent) throw StructuralError("span_rank across different algebras");
    rows.push_back(e.coords());
  }
  return Matrix<S>::from_rows(rows).rank(parent->epsilon());
}

}  // namespace polarize
