#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polarize/group_table.hpp"
#include "polarize/unitary_group.hpp"

namespace polarize {

/// k-th discrete Haar moment: the average of g^k over the group, summed in
/// the group's canonical element order.
template <typename S>
Element<S> moment(const UnitaryGroup<S>& group, unsigned k) {
  return group_average(group, k);
}

/// Polarization-constant computation record: kappa = (1 + mu2)^-1 with the
/// residual of both products kappa(1+mu2) and (1+mu2)kappa against 1, plus
/// an optional closed-form cross-check.
template <typename S>
struct KappaReport {
  std::string algebra_id;
  std::string group_id;
  Element<S> mu2;
  Element<S> kappa;
  S residual = scalar_traits<S>::zero();
  std::optional<Element<S>> closed_form;
  std::optional<S> closed_form_error;
};

template <typename S>
KappaReport<S> kappa_numeric(const UnitaryGroup<S>& group) {
  const auto cert = certify_polarizing(group);
  if (!cert.is_polarizing)
    throw PreconditionError(group.id() + ": group is not polarizing (spans=" +
                            (cert.spans ? std::string("yes") : std::string("no")) +
                            ", |mu1|=" + scalar_traits<S>::to_string(cert.first_moment_norm) +
                            ")");
  KappaReport<S> rep;
  rep.algebra_id = group.parent()->name();
  rep.group_id = group.id();
  rep.mu2 = moment(group, 2);
  const Element<S> one_plus = group.parent()->unit() + rep.mu2;
  rep.kappa = invert(one_plus);
  const S r1 = (rep.kappa * one_plus - group.parent()->unit()).max_abs();
  const S r2 = (one_plus * rep.kappa - group.parent()->unit()).max_abs();
  rep.residual = r1 > r2 ? r1 : r2;
  return rep;
}

template <typename S>
void attach_closed_form(KappaReport<S>& rep, const Element<S>& expected) {
  rep.closed_form = expected;
  rep.closed_form_error = (rep.kappa - expected).max_abs();
}

/// The element (1/n) mu2(base) I inside M_n(base).
template <typename S>
Element<S> embed_scaled_identity(const AlgebraPtr<S>& matrix_algebra, const Element<S>& base_value) {
  const auto& prov = matrix_algebra->provenance();
  if (!prov || prov->kind != Provenance<S>::Kind::MatrixOver)
    throw PreconditionError("expected a matrix algebra");
  const std::size_t n = prov->n;
  const std::size_t d = prov->base->dim();
  const S inv_n = scalar_traits<S>::one() / scalar_traits<S>::from_int(static_cast<long long>(n));
  std::vector<S> coords(matrix_algebra->dim(), scalar_traits<S>::zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a) coords[(i * n + i) * d + a] = base_value[a] * inv_n;
  return matrix_algebra->element(std::move(coords));
}

/// mu2(M_n(A)) = (1/n) mu2(A) I, checked by brute summation over the
/// delta-gh group generated from the base group.
template <typename S>
bool mu2_matrix_identity_check(const AlgebraPtr<S>& matrix_algebra, const UnitaryGroup<S>& g_base,
                               std::vector<std::vector<std::uint32_t>> h_generators = {}) {
  const UnitaryGroup<S> group = delta_gh_group(matrix_algebra, g_base, std::move(h_generators));
  const Element<S> brute = moment(group, 2);
  const Element<S> expected = embed_scaled_identity(matrix_algebra, moment(g_base, 2));
  return brute == expected;
}

template <typename S>
bool mu2_matrix_identity_check(const UnitaryGroup<S>& g_base, std::size_t n) {
  return mu2_matrix_identity_check(make_matrix_algebra(g_base.parent(), n), g_base);
}

/// mu2 agreement across two spanning groups of the same algebra.
template <typename S>
bool mu2_group_invariance_check(const UnitaryGroup<S>& g1, const UnitaryGroup<S>& g2) {
  if (g1.parent() != g2.parent())
    throw PreconditionError("groups live in different algebras");
  if (span_rank(g1.elements()) != g1.parent()->dim() ||
      span_rank(g2.elements()) != g2.parent()->dim())
    throw PreconditionError("both groups must span the algebra");
  return moment(g1, 2) == moment(g2, 2);
}

// ---- Clifford closed forms ----------------------------------------------

/// mu2(C_{p,q}) = 2^{-(p+q-1)/2} cos((p-q-1) pi / 4). The value is always
/// rational: it equals Re[(1-i)^p (1+i)^{q+1}] / 2^{p+q}, evaluated here in
/// exact Gaussian-integer arithmetic.
template <typename S>
S mu2_clifford_closed_form(unsigned p, unsigned q) {
  long long re = 1, im = 0;
  auto mul_by = [&](long long a, long long b) {
    const long long nre = re * a - im * b;
    const long long nim = re * b + im * a;
    re = nre;
    im = nim;
  };
  for (unsigned t = 0; t < p; ++t) mul_by(1, -1);
  for (unsigned t = 0; t < q + 1; ++t) mul_by(1, 1);
  const long long denom = 1ll << (p + q);
  return scalar_traits<S>::from_ratio(re, denom);
}

/// kappa(C_{p,q}) = 1 / (1 + mu2(C_{p,q})), as the identity-blade coefficient.
template <typename S>
S kappa_clifford_closed_form(unsigned p, unsigned q) {
  const S mu2 = mu2_clifford_closed_form<S>(p, q);
  const S denom = scalar_traits<S>::one() + mu2;
  if (scalar_traits<S>::is_zero(denom, 1e-12))
    throw NotInvertibleError("1 + mu2 vanishes");  // cannot happen for polarizable signatures
  return scalar_traits<S>::one() / denom;
}

// ---- group algebras via character tables ---------------------------------

/// Irreducible complex character table supplied as data (values per
/// conjugacy class), with degrees and Frobenius-Schur indicators.
struct CharacterTable {
  struct ConjClass {
    std::size_t size = 0;
    std::size_t representative = 0;
  };
  struct Irr {
    std::size_t degree = 0;
    int fs_indicator = 0;
    std::vector<std::complex<double>> values;  // one per class
  };
  std::string group_name;
  std::vector<ConjClass> classes;
  std::vector<Irr> chars;
};

namespace detail {

struct ClassifiedGroup {
  std::vector<std::uint32_t> class_of;     // computed class id per element
  std::vector<std::size_t> provided_class; // provided class column per computed id
};

inline ClassifiedGroup match_character_classes(const CharacterTable& ct, const GroupTable& gt,
                                               double tol) {
  if (ct.classes.empty() || ct.chars.empty())
    throw ValidationError("character table must contain classes and characters");
  if (ct.chars.size() != ct.classes.size())
    throw ValidationError("character table must be square (#chars == #classes)");
  std::size_t total = 0;
  for (const auto& c : ct.classes) total += c.size;
  if (total != gt.order)
    throw ValidationError("class sizes do not sum to the group order");
  for (const auto& ch : ct.chars) {
    if (ch.values.size() != ct.classes.size())
      throw ValidationError("character row has wrong length");
    if (ch.fs_indicator < -1 || ch.fs_indicator > 1)
      throw ValidationError("Frobenius-Schur indicator outside {-1, 0, 1}");
    if (ch.degree == 0) throw ValidationError("character degree must be positive");
  }

  ClassifiedGroup out;
  out.class_of = gt.conjugacy_classes();
  const std::uint32_t num_classes =
      *std::max_element(out.class_of.begin(), out.class_of.end()) + 1;
  if (num_classes != ct.classes.size())
    throw ValidationError("character table class count does not match the group");
  out.provided_class.assign(num_classes, SIZE_MAX);
  std::vector<std::size_t> computed_sizes(num_classes, 0);
  for (auto c : out.class_of) ++computed_sizes[c];
  for (std::size_t col = 0; col < ct.classes.size(); ++col) {
    const auto& cls = ct.classes[col];
    if (cls.representative >= gt.order)
      throw ValidationError("class representative index out of range");
    const std::uint32_t cid = out.class_of[cls.representative];
    if (out.provided_class[cid] != SIZE_MAX)
      throw ValidationError("two provided classes share a conjugacy class");
    if (computed_sizes[cid] != cls.size)
      throw ValidationError("provided class size disagrees with the group table");
    out.provided_class[cid] = col;
  }

  // Row orthonormality with class-size weights.
  for (std::size_t a = 0; a < ct.chars.size(); ++a)
    for (std::size_t b = a; b < ct.chars.size(); ++b) {
      std::complex<double> ip(0.0, 0.0);
      for (std::size_t col = 0; col < ct.classes.size(); ++col)
        ip += static_cast<double>(ct.classes[col].size) * ct.chars[a].values[col] *
              std::conj(ct.chars[b].values[col]);
      ip /= static_cast<double>(gt.order);
      const double expect = a == b ? 1.0 : 0.0;
      if (std::abs(ip.real() - expect) > tol || std::abs(ip.imag()) > tol)
        throw ValidationError("character table rows are not orthonormal");
    }

  // Cross-check the supplied indicators against s(chi) = avg chi(g^2).
  for (const auto& ch : ct.chars) {
    std::complex<double> s(0.0, 0.0);
    for (std::size_t g = 0; g < gt.order; ++g) {
      const std::uint32_t cid = out.class_of[gt.mul[g][g]];
      s += ch.values[out.provided_class[cid]];
    }
    s /= static_cast<double>(gt.order);
    if (std::abs(s.real() - ch.fs_indicator) > tol || std::abs(s.imag()) > tol)
      throw ValidationError("Frobenius-Schur indicator disagrees with avg chi(g^2)");
  }
  return out;
}

inline long long lcm_of_factors(const CharacterTable& ct) {
  long long l = 1;
  for (const auto& ch : ct.chars) {
    const long long f = static_cast<long long>(ch.degree) + ch.fs_indicator;
    if (f > 0) l = std::lcm(l, f);
  }
  return l;
}

}  // namespace detail

/// kappa(R[G]) assembled from a supplied character table:
///   kappa = sum_chi deg/(deg + s(chi)) eps_chi,
///   eps_chi = (deg/|G|) sum_g chi(g^-1) g.
/// chi(g^-1) is read through the table's inverse permutation. Imaginary
/// parts must cancel within tol; on the exact backend the (provably
/// rational) coefficients are reconstructed from bounded-denominator
/// rationalization and re-checked against tol.
template <typename S>
Element<S> kappa_group_algebra_characters(const AlgebraPtr<S>& group_algebra,
                                          const CharacterTable& ct, double tol = 1e-9) {
  const auto& prov = group_algebra->provenance();
  if (!prov || prov->kind != Provenance<S>::Kind::GroupAlgebra)
    throw PreconditionError("character kappa needs a group algebra");
  GroupTable gt;
  gt.order = group_algebra->dim();
  gt.identity = prov->group_identity;
  gt.mul = prov->group_mul;
  gt.name = ct.group_name;

  const auto matched = detail::match_character_classes(ct, gt, tol);
  const auto inv = gt.inverses();

  std::vector<S> coords(gt.order, scalar_traits<S>::zero());
  const long long denom_bound = 4ll * static_cast<long long>(gt.order) * detail::lcm_of_factors(ct);
  for (std::size_t g = 0; g < gt.order; ++g) {
    std::complex<double> acc(0.0, 0.0);
    const std::size_t col = matched.provided_class[matched.class_of[inv[g]]];
    for (const auto& ch : ct.chars) {
      const double deg = static_cast<double>(ch.degree);
      acc += (deg * deg / ((deg + ch.fs_indicator) * static_cast<double>(gt.order))) *
             ch.values[col];
    }
    if (std::abs(acc.imag()) >= tol)
      throw NumericFailure("imaginary parts fail to cancel in character kappa");
    if constexpr (scalar_traits<S>::exact) {
      const Rational r = rationalize(acc.real(), static_cast<std::uint64_t>(denom_bound));
      if (std::abs(static_cast<double>(r) - acc.real()) >= tol)
        throw NumericFailure("character kappa coefficient is not rational within bound");
      coords[g] = r;
    } else {
      coords[g] = acc.real();
    }
  }
  return group_algebra->element(std::move(coords));
}

/// eps_chi = (deg/|G|) sum_g chi(g^-1) g, the central idempotent of chi.
/// Exposed for tests; same numeric conventions as the kappa assembly.
template <typename S>
Element<S> central_idempotent(const AlgebraPtr<S>& group_algebra, const CharacterTable& ct,
                              std::size_t chi_index, double tol = 1e-9) {
  const auto& prov = group_algebra->provenance();
  if (!prov || prov->kind != Provenance<S>::Kind::GroupAlgebra)
    throw PreconditionError("central idempotent needs a group algebra");
  GroupTable gt;
  gt.order = group_algebra->dim();
  gt.identity = prov->group_identity;
  gt.mul = prov->group_mul;
  gt.name = ct.group_name;
  const auto matched = detail::match_character_classes(ct, gt, tol);
  const auto inv = gt.inverses();
  const auto& ch = ct.chars.at(chi_index);
  std::vector<S> coords(gt.order, scalar_traits<S>::zero());
  for (std::size_t g = 0; g < gt.order; ++g) {
    const std::size_t col = matched.provided_class[matched.class_of[inv[g]]];
    const std::complex<double> v =
        (static_cast<double>(ch.degree) / static_cast<double>(gt.order)) * ch.values[col];
    if (std::abs(v.imag()) >= tol)
      throw NumericFailure("imaginary parts fail to cancel in central idempotent");
    if constexpr (scalar_traits<S>::exact) {
      coords[g] = rationalize(v.real(), 4ull * gt.order * ch.degree);
    } else {
      coords[g] = v.real();
    }
  }
  return group_algebra->element(std::move(coords));
}

}  // namespace polarize
