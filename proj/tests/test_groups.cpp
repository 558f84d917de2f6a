#include <catch_amalgamated.hpp>

#include <thread>

#include "polarize/moments.hpp"
#include "polarize/unitary_group.hpp"
#include "support/helpers.hpp"

using namespace polarize;
using testing_support::elem;

namespace {

template <typename S>
AlgebraPtr<S> complex_alg() {
  return make_division_algebra<S>(DivisionAlgebra::C);
}

template <typename S>
AlgebraPtr<S> quaternion_alg() {
  return make_division_algebra<S>(DivisionAlgebra::H);
}

}  // namespace

TEST_CASE("closure of <i> in C is the fourth roots") {
  auto c = complex_alg<Rational>();
  auto g = close_group<Rational>({c->basis_element(1)}, 8, "gen-i");
  CHECK(g.size() == 4);
  CHECK(g.identity_pos() == 0);
  const auto& table = g.closure_table();
  REQUIRE(table.has_value());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(g[(*table)[i][j]] == g[i] * g[j]);
}

TEST_CASE("closure of <i, j> in H is the 8 element quaternion group") {
  auto h = quaternion_alg<Rational>();
  auto g = close_group<Rational>({h->basis_element(1), h->basis_element(2)}, 16, "ij");
  CHECK(g.size() == 8);
  CHECK(span_rank(g.elements()) == 4);
}

TEST_CASE("closure failure on an infinite unitary subgroup") {
  auto c = complex_alg<Rational>();
  // 3/5 + 4/5 i is unitary but not a root of unity.
  const auto g = elem(c, {3, 4}, 5);
  REQUIRE(is_unitary(g));
  CHECK_THROWS_AS(close_group<Rational>({g}, 100, "infinite"), NotClosedError);
}

TEST_CASE("non-unitary generators are rejected") {
  auto c = complex_alg<Rational>();
  CHECK_THROWS_AS(close_group<Rational>({c->unit().scaled(make_rational(2))}, 4, "bad"),
                  PreconditionError);
}

TEST_CASE("polarizing certificates") {
  auto c = complex_alg<Rational>();
  auto roots4 = roots_of_unity_group(c, 4);
  const auto cert = certify_polarizing(roots4);
  CHECK(cert.spans);
  CHECK(cert.is_polarizing);
  CHECK(cert.first_moment.is_zero());

  auto pm = close_group<Rational>({-(c->unit())}, 2, "pm");
  const auto cert2 = certify_polarizing(pm);
  CHECK_FALSE(cert2.spans);  // spans only R inside C
  CHECK_FALSE(cert2.is_polarizing);
  CHECK(cert2.first_moment.is_zero());
}

TEST_CASE("roots of unity groups") {
  auto c = complex_alg<Rational>();
  auto r4 = roots_of_unity_group(c, 4);
  CHECK(r4.size() == 4);
  CHECK(r4[1] == c->basis_element(1));
  CHECK(r4[2] == -(c->unit()));

  CHECK_THROWS_AS(roots_of_unity_group(c, 3), PreconditionError);

  auto cf = complex_alg<double>();
  auto r3 = roots_of_unity_group(cf, 3);
  CHECK(r3.size() == 3);
  CHECK(certify_polarizing(r3).is_polarizing);
  auto r2 = roots_of_unity_group(cf, 2);
  CHECK_FALSE(certify_polarizing(r2).spans);

  auto h = quaternion_alg<Rational>();
  CHECK_THROWS_AS(roots_of_unity_group(h, 4), PreconditionError);
}

TEST_CASE("quaternion catalog closes to the stated orders") {
  auto h = quaternion_alg<Rational>();
  CHECK(quaternion_catalog(h, QuaternionGroupName::BinaryTetrahedral).size() == 24);
  CHECK(quaternion_catalog(h, QuaternionGroupName::BinaryDihedral, 2).size() == 8);
  CHECK_THROWS_AS(quaternion_catalog(h, QuaternionGroupName::BinaryOctahedral),
                  PreconditionError);
  CHECK_THROWS_AS(quaternion_catalog(h, QuaternionGroupName::BinaryDihedral, 1),
                  ValidationError);

  auto hf = quaternion_alg<double>();
  CHECK(quaternion_catalog(hf, QuaternionGroupName::BinaryOctahedral).size() == 48);
  CHECK(quaternion_catalog(hf, QuaternionGroupName::BinaryIcosahedral).size() == 120);
  for (unsigned n = 2; n <= 4; ++n)
    CHECK(quaternion_catalog(hf, QuaternionGroupName::BinaryDihedral, n).size() == 4 * n);
}

TEST_CASE("delta-gh group over R matches the signed permutation enumeration") {
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  auto pm = close_group<Rational>({-(r->unit())}, 2, "pm-one");
  auto m2 = make_matrix_algebra(r, 2);
  auto dg = delta_gh_group(m2, pm);
  CHECK(dg.size() == 8);

  // Independent enumeration: all 2x2 signed permutation matrices.
  std::vector<Element<Rational>> expected;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      expected.push_back(elem(m2, {s1, 0, 0, s2}));
      expected.push_back(elem(m2, {0, s1, s2, 0}));
    }
  for (const auto& e : expected) CHECK(dg.find(e).has_value());

  const auto cert = certify_polarizing(dg);
  CHECK(cert.spans);
  CHECK(cert.is_polarizing);
  CHECK(span_rank(dg.elements()) == 4);
  CHECK(dg.find(m2->unit()).has_value());
}

TEST_CASE("delta-gh over C has order 32 and polarizes M2(C)") {
  auto c = complex_alg<Rational>();
  auto roots4 = roots_of_unity_group(c, 4);
  auto m2c = make_matrix_algebra(c, 2);
  auto dg = delta_gh_group(m2c, roots4);
  CHECK(dg.size() == 32);
  CHECK(certify_polarizing(dg).is_polarizing);
}

TEST_CASE("delta-gh rejects intransitive H and oversized enumerations") {
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  auto pm = close_group<Rational>({-(r->unit())}, 2, "pm-one");
  auto m2 = make_matrix_algebra(r, 2);
  std::vector<std::vector<std::uint32_t>> trivial{{0, 1}};
  CHECK_THROWS_AS(delta_gh_group(m2, pm, trivial), ValidationError);

  auto h = quaternion_alg<Rational>();
  auto g24 = quaternion_catalog(h, QuaternionGroupName::BinaryTetrahedral);
  auto m3h = make_matrix_algebra(h, 3);
  CHECK_THROWS_AS(delta_gh_group(m3h, g24), SizeLimitError);  // 24^3 * 3 > 20000
}

TEST_CASE("signed group of a group algebra") {
  auto z2 = make_group_algebra<Rational>(cyclic_group_table(2));
  auto sg = signed_group_algebra_group(z2);
  CHECK(sg.size() == 4);
  CHECK(certify_polarizing(sg).is_polarizing);

  auto q8 = make_group_algebra<Rational>(quaternion_group_table());
  auto sgq = signed_group_algebra_group(q8);
  CHECK(sgq.size() == 16);
  // -e and the group element z = -1 are different algebra elements
  const auto minus_e = -(q8->unit());
  const auto z = q8->basis_element(1);
  CHECK(minus_e != z);
  CHECK(sgq.find(minus_e).has_value());
  CHECK(sgq.find(z).has_value());
  CHECK(moment(sgq, 1).is_zero());
}

TEST_CASE("clifford group orders and the C(0,1) isomorphism with C") {
  auto c01 = make_clifford<Rational>({0, 1});
  auto g = clifford_group(c01);
  CHECK(g.size() == 4);
  CHECK(certify_polarizing(g).is_polarizing);
  // mu2 matches mu2({+-1, +-i}) = 0 under the isomorphism with C
  CHECK(moment(g, 2).is_zero());

  for (unsigned p = 0; p <= 3; ++p)
    for (unsigned q = 0; p + q <= 3; ++q) {
      auto alg = make_clifford<Rational>({p, q});
      CHECK(clifford_group(alg).size() == (std::size_t(2) << (p + q)));
    }
}

TEST_CASE("averaged inner product is invariant and selfadjoint-compatible") {
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  auto triv = close_group<Rational>({r->unit()}, 1, "trivial");
  const auto gram1 = averaged_inner_product(triv);
  CHECK(gram1.approx_equal(Matrix<Rational>::identity(1), 0.0));

  auto h = quaternion_alg<Rational>();
  auto g24 = quaternion_catalog(h, QuaternionGroupName::BinaryTetrahedral);
  const auto gram = averaged_inner_product(g24);
  CHECK(gram.is_positive_definite(0.0));

  auto ip = [&](const Element<Rational>& a, const Element<Rational>& b) {
    Rational acc(0);
    const auto gb = gram * b.coords();
    for (std::size_t t = 0; t < a.dim(); ++t) acc += a[t] * gb[t];
    return acc;
  };
  SplitMix64 rng(41);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_element(h, rng);
    const auto b = random_element(h, rng);
    const auto& g = g24[rng.below(g24.size())];
    CHECK(ip(g * a, g * b) == ip(a, b));
    const auto eta = random_element(h, rng);
    CHECK(ip(eta * a, b) == ip(a, eta.star() * b));
  }
}

TEST_CASE("mu1 vanishes for spanning groups of simple algebras") {
  auto c = complex_alg<Rational>();
  CHECK(moment(roots_of_unity_group(c, 4), 1).is_zero());
  auto h = quaternion_alg<Rational>();
  CHECK(moment(quaternion_catalog(h, QuaternionGroupName::BinaryTetrahedral), 1).is_zero());
  auto cf = complex_alg<double>();
  CHECK(moment(roots_of_unity_group(cf, 3), 1).is_zero());
}

TEST_CASE("groups are safely shareable across threads") {
  auto h = quaternion_alg<Rational>();
  auto g = quaternion_catalog(h, QuaternionGroupName::BinaryTetrahedral);
  std::vector<Element<Rational>> results;
  results.reserve(4);
  for (int t = 0; t < 4; ++t) results.push_back(h->zero());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] { results[t] = moment(g, 2); });
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) CHECK(results[t] == results[0]);
}
