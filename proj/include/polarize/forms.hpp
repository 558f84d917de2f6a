#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "polarize/moments.hpp"
#include "polarize/rng.hpp"
#include "polarize/unitary_group.hpp"

namespace polarize {

/// Vector in the free left module A^m.
template <typename S>
class ModuleVector {
 public:
  ModuleVector(AlgebraPtr<S> parent, std::vector<Element<S>> entries)
      : parent_(std::move(parent)), entries_(std::move(entries)) {
    for (const auto& e : entries_)
      if (e.parent() != parent_) throw StructuralError("module entries from different algebras");
  }

  const AlgebraPtr<S>& parent() const { return parent_; }
  std::size_t rank() const { return entries_.size(); }
  const Element<S>& operator[](std::size_t i) const { return entries_[i]; }

  ModuleVector operator+(const ModuleVector& o) const {
    check_rank(o);
    std::vector<Element<S>> out;
    out.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) out.push_back(entries_[i] + o.entries_[i]);
    return ModuleVector(parent_, std::move(out));
  }

  ModuleVector operator-(const ModuleVector& o) const {
    check_rank(o);
    std::vector<Element<S>> out;
    out.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) out.push_back(entries_[i] - o.entries_[i]);
    return ModuleVector(parent_, std::move(out));
  }

  /// Left scalar action: every entry becomes a * entry.
  ModuleVector left_scaled(const Element<S>& a) const {
    std::vector<Element<S>> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(a * e);
    return ModuleVector(parent_, std::move(out));
  }

  ModuleVector real_scaled(const S& v) const {
    std::vector<Element<S>> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.scaled(v));
    return ModuleVector(parent_, std::move(out));
  }

  static ModuleVector zero(const AlgebraPtr<S>& parent, std::size_t rank) {
    std::vector<Element<S>> out(rank, parent->zero());
    return ModuleVector(parent, std::move(out));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i)
      s += (i ? "; " : "") + entries_[i].to_string();
    return s + ")";
  }

 private:
  void check_rank(const ModuleVector& o) const {
    if (parent_ != o.parent_ || entries_.size() != o.entries_.size())
      throw StructuralError("module vectors have mismatched parent or rank");
  }

  AlgebraPtr<S> parent_;
  std::vector<Element<S>> entries_;
};

/// Hermitian m x m matrix of algebra elements: H[i][j]* = H[j][i]. Defines
/// Q(x, y) = sum_{i,j} x_i H[i][j] y_j* on A^m.
template <typename S>
class HermitianForm {
 public:
  HermitianForm(AlgebraPtr<S> parent, std::vector<std::vector<Element<S>>> entries)
      : parent_(std::move(parent)), h_(std::move(entries)) {
    const std::size_t m = h_.size();
    for (const auto& row : h_) {
      if (row.size() != m) throw StructuralError("form matrix must be square");
      for (const auto& e : row)
        if (e.parent() != parent_) throw StructuralError("form entries from different algebras");
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (h_[i][j].star() != h_[j][i])
          throw ValidationError("matrix is not Hermitian under the algebra involution");
  }

  const AlgebraPtr<S>& parent() const { return parent_; }
  std::size_t rank() const { return h_.size(); }
  const Element<S>& at(std::size_t i, std::size_t j) const { return h_[i][j]; }

 private:
  AlgebraPtr<S> parent_;
  std::vector<std::vector<Element<S>>> h_;
};

template <typename S>
Element<S> eval_form(const HermitianForm<S>& form, const ModuleVector<S>& x,
                     const ModuleVector<S>& y) {
  if (form.rank() != x.rank() || form.rank() != y.rank())
    throw StructuralError("form/vector rank mismatch");
  Element<S> acc = form.parent()->zero();
  for (std::size_t j = 0; j < form.rank(); ++j) {
    const Element<S> ys = y[j].star();
    for (std::size_t i = 0; i < form.rank(); ++i) acc = acc + x[i] * (form.at(i, j) * ys);
  }
  return acc;
}

enum class QuadranceProvenance { FromForm, UserTable, Custom };

/// Quadrance q : A^m -> A. For q from a form, q(x) = Q(x, x); user-supplied
/// quadrances are sampled against the axioms, never proven.
template <typename S>
struct Quadrance {
  AlgebraPtr<S> parent;
  std::size_t rank = 1;
  QuadranceProvenance provenance = QuadranceProvenance::Custom;
  std::function<Element<S>(const ModuleVector<S>&)> eval;

  Element<S> operator()(const ModuleVector<S>& x) const { return eval(x); }
};

template <typename S>
Quadrance<S> quadrance_of(const HermitianForm<S>& form) {
  Quadrance<S> q;
  q.parent = form.parent();
  q.rank = form.rank();
  q.provenance = QuadranceProvenance::FromForm;
  q.eval = [form](const ModuleVector<S>& x) { return eval_form(form, x, x); };
  return q;
}

/// The polarization average kappa * avg_G q(x + g y) g.
template <typename S>
Element<S> polarize(const Quadrance<S>& q, const UnitaryGroup<S>& group, const Element<S>& kappa,
                    const ModuleVector<S>& x, const ModuleVector<S>& y) {
  if (q.parent != group.parent() || kappa.parent() != group.parent())
    throw StructuralError("quadrance, group and kappa must share one algebra");
  if (x.parent() != q.parent || y.parent() != q.parent)
    throw StructuralError("vectors live in a different algebra");
  std::vector<S> acc(group.parent()->dim(), scalar_traits<S>::zero());
  for (std::size_t t = 0; t < group.size(); ++t) {
    const Element<S>& g = group[t];
    const Element<S> value = q(x + y.left_scaled(g)) * g;
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += value[c];
  }
  const S inv_n =
      scalar_traits<S>::one() / scalar_traits<S>::from_int(static_cast<long long>(group.size()));
  for (auto& v : acc) v = v * inv_n;
  return kappa * group.parent()->element(std::move(acc));
}

// ---- seeded random inputs -------------------------------------------------

template <typename S>
Element<S> random_element(const AlgebraPtr<S>& algebra, SplitMix64& rng) {
  std::vector<S> coords(algebra->dim());
  for (auto& c : coords) c = uniform_pm1<S>(rng);
  return algebra->element(std::move(coords));
}

template <typename S>
ModuleVector<S> random_module_vector(const AlgebraPtr<S>& algebra, std::size_t rank,
                                     SplitMix64& rng) {
  std::vector<Element<S>> entries;
  entries.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) entries.push_back(random_element(algebra, rng));
  return ModuleVector<S>(algebra, std::move(entries));
}

/// Random Hermitian form H = B + B^{*T} with coordinates drawn from the
/// seeded dyadic grid in [-1, 1]; the same seed reproduces the same form on
/// both backends.
template <typename S>
HermitianForm<S> random_hermitian_form(const AlgebraPtr<S>& algebra, std::size_t rank,
                                       std::uint64_t seed) {
  SplitMix64 rng = substream(seed, 0x666F726Dull);
  std::vector<std::vector<Element<S>>> b(rank);
  for (auto& row : b) {
    row.reserve(rank);
    for (std::size_t j = 0; j < rank; ++j) row.push_back(random_element(algebra, rng));
  }
  std::vector<std::vector<Element<S>>> h(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    h[i].reserve(rank);
    for (std::size_t j = 0; j < rank; ++j) h[i].push_back(b[i][j] + b[j][i].star());
  }
  return HermitianForm<S>(algebra, std::move(h));
}

// ---- verification drivers ---------------------------------------------------

/// Max residual of the polarization identity over seeded random vector pairs.
template <typename S>
S verify_polarization(const HermitianForm<S>& form, const UnitaryGroup<S>& group,
                      std::size_t trials, std::uint64_t seed) {
  const auto kappa = kappa_numeric(group).kappa;
  const auto q = quadrance_of(form);
  S worst = scalar_traits<S>::zero();
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 rng = substream(seed, t);
    const auto x = random_module_vector(form.parent(), form.rank(), rng);
    const auto y = random_module_vector(form.parent(), form.rank(), rng);
    const S r = (polarize(q, group, kappa, x, y) - eval_form(form, x, y)).max_abs();
    if (r > worst) worst = r;
  }
  return worst;
}

/// Max residual of q(x+y) + q(x-y) - 2(q(x) + q(y)) over seeded trials.
template <typename S>
S check_classical_parallelogram(const Quadrance<S>& q, std::size_t trials, std::uint64_t seed) {
  S worst = scalar_traits<S>::zero();
  const S two = scalar_traits<S>::from_int(2);
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 rng = substream(seed, t);
    const auto x = random_module_vector(q.parent, q.rank, rng);
    const auto y = random_module_vector(q.parent, q.rank, rng);
    const Element<S> lhs = q(x + y) + q(x - y);
    const Element<S> rhs = (q(x) + q(y)).scaled(two);
    const S r = (lhs - rhs).max_abs();
    if (r > worst) worst = r;
  }
  return worst;
}

/// Generalized parallelogram identity q(x) + q(y) = avg_H q(x + h y), under
/// the preconditions mu1(H) = 0 and q(h x) = q(x) (sampled). Precondition
/// failures are reported distinctly from identity failures.
template <typename S>
S check_generalized_parallelogram(const Quadrance<S>& q, const UnitaryGroup<S>& h_group,
                                  std::size_t trials, std::uint64_t seed) {
  if (q.parent != h_group.parent())
    throw StructuralError("quadrance and group must share one algebra");
  if (!moment(h_group, 1).is_zero())
    throw PreconditionError("generalized parallelogram requires mu1(H) = 0");
  {
    SplitMix64 rng = substream(seed, 0x70726563ull);
    for (std::size_t t = 0; t < std::min<std::size_t>(trials, 8); ++t) {
      const auto x = random_module_vector(q.parent, q.rank, rng);
      for (std::size_t hi = 0; hi < h_group.size(); ++hi)
        if (q(x.left_scaled(h_group[hi])) != q(x))
          throw PreconditionError("generalized parallelogram requires q(hx) = q(x) on H");
    }
  }
  S worst = scalar_traits<S>::zero();
  const S inv_n = scalar_traits<S>::one() /
                  scalar_traits<S>::from_int(static_cast<long long>(h_group.size()));
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 rng = substream(seed, t);
    const auto x = random_module_vector(q.parent, q.rank, rng);
    const auto y = random_module_vector(q.parent, q.rank, rng);
    Element<S> avg = q.parent->zero();
    for (std::size_t hi = 0; hi < h_group.size(); ++hi)
      avg = avg + q(x + y.left_scaled(h_group[hi]));
    avg = avg.scaled(inv_n);
    const S r = (q(x) + q(y) - avg).max_abs();
    if (r > worst) worst = r;
  }
  return worst;
}

/// Verification record for the Jordan-von Neumann reconstruction.
template <typename S>
struct JvnReport {
  std::size_t trials = 0;
  S parallelogram_residual = scalar_traits<S>::zero();
  S diagonal_residual = scalar_traits<S>::zero();
  S hermitian_residual = scalar_traits<S>::zero();
  S additivity_residual = scalar_traits<S>::zero();
  S equivariance_residual = scalar_traits<S>::zero();
  S rational_homogeneity_residual = scalar_traits<S>::zero();
  double float_homogeneity_residual = 0.0;
};

template <typename S>
struct JvnResult {
  std::function<Element<S>(const ModuleVector<S>&, const ModuleVector<S>&)> reconstructed;
  JvnReport<S> report;
};

/// Reconstructs the Hermitian form Q_G(x, y) = kappa avg_G q(x+gy) g from a
/// quadrance satisfying the classical parallelogram identity, and samples
/// the form properties (diagonal recovery, Hermitian symmetry, additivity,
/// G-equivariance, homogeneity). Throws ParallelogramViolation or
/// ReconstructionFailure with a witness.
template <typename S>
JvnResult<S> jvn_reconstruct(const Quadrance<S>& q, const UnitaryGroup<S>& group,
                             const Element<S>& kappa, std::size_t trials, std::uint64_t seed,
                             double tol = 1e-8) {
  JvnResult<S> out;
  out.report.trials = trials;
  // Exact backend tolerates no residual at all.
  const double tol_eff = scalar_traits<S>::exact ? 0.0 : tol;

  // Gate: the classical parallelogram identity, with a witness on failure.
  const S two = scalar_traits<S>::from_int(2);
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 rng = substream(seed, t);
    const auto x = random_module_vector(q.parent, q.rank, rng);
    const auto y = random_module_vector(q.parent, q.rank, rng);
    const S r = (q(x + y) + q(x - y) - (q(x) + q(y)).scaled(two)).max_abs();
    if (r > out.report.parallelogram_residual) out.report.parallelogram_residual = r;
    if (to_double(r) > tol_eff)
      throw ParallelogramViolation(
          "quadrance violates the classical parallelogram identity",
          "{\"x\": \"" + x.to_string() + "\", \"y\": \"" + y.to_string() +
              "\", \"residual\": \"" + scalar_traits<S>::to_string(r) + "\"}");
  }

  auto reconstructed = [q, group, kappa](const ModuleVector<S>& x, const ModuleVector<S>& y) {
    return polarize(q, group, kappa, x, y);
  };

  auto fail = [](const char* what, const ModuleVector<S>& x, const ModuleVector<S>& y, const S& r) {
    throw ReconstructionFailure(std::string("reconstructed form fails ") + what,
                                "{\"x\": \"" + x.to_string() + "\", \"y\": \"" + y.to_string() +
                                    "\", \"residual\": \"" + scalar_traits<S>::to_string(r) +
                                    "\"}");
  };

  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 rng = substream(seed ^ 0x6A766Eull, t);
    const auto x = random_module_vector(q.parent, q.rank, rng);
    const auto y = random_module_vector(q.parent, q.rank, rng);
    const auto z = random_module_vector(q.parent, q.rank, rng);

    const S diag = (reconstructed(x, x) - q(x)).max_abs();
    if (diag > out.report.diagonal_residual) out.report.diagonal_residual = diag;
    if (to_double(diag) > tol_eff) fail("diagonal recovery", x, x, diag);

    const S herm = (reconstructed(x, y).star() - reconstructed(y, x)).max_abs();
    if (herm > out.report.hermitian_residual) out.report.hermitian_residual = herm;
    if (to_double(herm) > tol_eff) fail("Hermitian symmetry", x, y, herm);

    const S add =
        (reconstructed(x + y, z) - reconstructed(x, z) - reconstructed(y, z)).max_abs();
    if (add > out.report.additivity_residual) out.report.additivity_residual = add;
    if (to_double(add) > tol_eff) fail("additivity", x, y, add);

    const Element<S>& h = group[rng.below(group.size())];
    const S equi = (reconstructed(x.left_scaled(h), y) - h * reconstructed(x, y)).max_abs();
    if (equi > out.report.equivariance_residual) out.report.equivariance_residual = equi;
    if (to_double(equi) > tol_eff) fail("G-equivariance", x, y, equi);

    // Rational homogeneity is exact on the rational backend; real-lambda
    // homogeneity is sampled at float lambda with a looser tolerance.
    const auto [num, den] = small_ratio(rng);
    const S lambda = scalar_traits<S>::from_ratio(num, den);
    const S hom =
        (reconstructed(x.real_scaled(lambda), y) - reconstructed(x, y).scaled(lambda)).max_abs();
    if (hom > out.report.rational_homogeneity_residual)
      out.report.rational_homogeneity_residual = hom;
    if (to_double(hom) > tol_eff) fail("rational homogeneity", x, y, hom);
  }

  if constexpr (!scalar_traits<S>::exact) {
    SplitMix64 rng = substream(seed ^ 0x7265616Cull, 1);
    for (std::size_t t = 0; t < std::min<std::size_t>(trials, 16); ++t) {
      const auto x = random_module_vector(q.parent, q.rank, rng);
      const auto y = random_module_vector(q.parent, q.rank, rng);
      const double lambda = 2.0 * (static_cast<double>(rng.below(1u << 20)) / double(1u << 20)) - 1.0;
      const double r = to_double(
          (reconstructed(x.real_scaled(lambda), y) - reconstructed(x, y).scaled(lambda)).max_abs());
      if (r > out.report.float_homogeneity_residual) out.report.float_homogeneity_residual = r;
      if (r > 1e-7) fail("real homogeneity", x, y, r);
    }
  }

  out.reconstructed = std::move(reconstructed);
  return out;
}

}  // namespace polarize
