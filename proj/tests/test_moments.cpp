#include <catch_amalgamated.hpp>

#include "polarize/io.hpp"
#include "polarize/moments.hpp"
#include "support/helpers.hpp"

using namespace polarize;
using testing_support::elem;
using testing_support::fixture;

TEST_CASE("zeroth and second moments of the division-algebra groups") {
  auto c = make_division_algebra<Rational>(DivisionAlgebra::C);
  auto roots4 = roots_of_unity_group(c, 4);
  CHECK(moment(roots4, 0) == c->unit());
  CHECK(moment(roots4, 2).is_zero());  // (1 + 1 - 1 - 1)/4

  auto h = make_division_algebra<Rational>(DivisionAlgebra::H);
  auto q8 = quaternion_catalog(h, QuaternionGroupName::BinaryDihedral, 2);
  CHECK(moment(q8, 0) == h->unit());
  CHECK(moment(q8, 2) == h->unit().scaled(make_rational(-1, 2)));  // (2 - 6)/8

  // mu2(D) = 2/delta - 1
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  auto pm = close_group<Rational>({-(r->unit())}, 2, "pm-one");
  CHECK(moment(pm, 2) == r->unit());
}

TEST_CASE("moments lie in the center of the group span") {
  auto h = make_division_algebra<Rational>(DivisionAlgebra::H);
  auto g24 = quaternion_catalog(h, QuaternionGroupName::BinaryTetrahedral);
  for (unsigned k = 1; k <= 3; ++k) {
    const auto mk = moment(g24, k);
    for (std::size_t i = 0; i < g24.size(); ++i) CHECK(g24[i] * mk == mk * g24[i]);
  }
}

TEST_CASE("kappa by numeric inversion matches the paper table") {
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  auto pm = close_group<Rational>({-(r->unit())}, 2, "pm-one");
  auto rep_r = kappa_numeric(pm);
  CHECK(rep_r.kappa == r->unit().scaled(make_rational(1, 2)));
  CHECK(rep_r.residual == 0);

  auto c = make_division_algebra<Rational>(DivisionAlgebra::C);
  auto rep_c = kappa_numeric(roots_of_unity_group(c, 4));
  CHECK(rep_c.kappa == c->unit());

  auto h = make_division_algebra<Rational>(DivisionAlgebra::H);
  auto rep_h = kappa_numeric(quaternion_catalog(h, QuaternionGroupName::BinaryDihedral, 2));
  CHECK(rep_h.kappa == h->unit().scaled(make_rational(2)));
}

TEST_CASE("kappa refuses non-polarizing groups") {
  auto c = make_division_algebra<Rational>(DivisionAlgebra::C);
  auto pm = close_group<Rational>({-(c->unit())}, 2, "pm");
  CHECK_THROWS_AS(kappa_numeric(pm), PreconditionError);
}

TEST_CASE("kappa of R[Q8] from the brute mu2") {
  auto q8alg = make_group_algebra<Rational>(quaternion_group_table());
  auto sg = signed_group_algebra_group(q8alg);

  // Oracle: mu2 = (1/16) sum over the 16 signed elements of g^2; squares of
  // +-g coincide, so mu2 = (1/8)(2 e + 6 z) with z the group element -1.
  std::vector<Rational> acc(8, Rational(0));
  const auto table = quaternion_group_table();
  for (std::size_t g = 0; g < 8; ++g) acc[table.mul[g][g]] += Rational(2);
  for (auto& v : acc) v /= 16;
  const auto mu2_expected = q8alg->element(acc);
  CHECK(moment(sg, 2) == mu2_expected);
  CHECK(mu2_expected == elem(q8alg, {2, 6, 0, 0, 0, 0, 0, 0}, 8));

  auto rep = kappa_numeric(sg);
  CHECK(rep.kappa == elem(q8alg, {5, -3, 0, 0, 0, 0, 0, 0}, 4));
  CHECK(rep.residual == 0);
}

TEST_CASE("matrix second moment identity mu2(M_n(A)) = mu2(A) I / n") {
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  auto pm = close_group<Rational>({-(r->unit())}, 2, "pm-one");
  CHECK(mu2_matrix_identity_check(pm, 2));

  auto c = make_division_algebra<Rational>(DivisionAlgebra::C);
  auto roots4 = roots_of_unity_group(c, 4);
  CHECK(mu2_matrix_identity_check(roots4, 2));

  auto h = make_division_algebra<Rational>(DivisionAlgebra::H);
  auto q8 = quaternion_catalog(h, QuaternionGroupName::BinaryDihedral, 2);
  auto m2h = make_matrix_algebra(h, 2);
  CHECK(mu2_matrix_identity_check(m2h, q8));
  // order-128 group; expected value is -(1/4) I
  const auto dg = delta_gh_group(m2h, q8);
  CHECK(dg.size() == 128);
  CHECK(moment(dg, 2) == embed_scaled_identity(m2h, moment(q8, 2)));
}

TEST_CASE("mu2 is group independent across spanning groups") {
  auto cf = make_division_algebra<double>(DivisionAlgebra::C);
  CHECK(mu2_group_invariance_check(roots_of_unity_group(cf, 3), roots_of_unity_group(cf, 4)));

  auto h = make_division_algebra<Rational>(DivisionAlgebra::H);
  CHECK(mu2_group_invariance_check(quaternion_catalog(h, QuaternionGroupName::BinaryDihedral, 2),
                                   quaternion_catalog(h, QuaternionGroupName::BinaryTetrahedral)));

  auto c = make_division_algebra<Rational>(DivisionAlgebra::C);
  CHECK_THROWS_AS(
      mu2_group_invariance_check(roots_of_unity_group(c, 4), roots_of_unity_group(c, 2)),
      PreconditionError);
}

TEST_CASE("clifford closed forms at the paper anchors") {
  CHECK(mu2_clifford_closed_form<Rational>(0, 0) == 1);   // R with {+-1}
  CHECK(mu2_clifford_closed_form<Rational>(0, 2) == make_rational(-1, 2));
  CHECK(mu2_clifford_closed_form<Rational>(1, 1) == make_rational(1, 2));
  CHECK(kappa_clifford_closed_form<Rational>(0, 1) == 1);
  CHECK(kappa_clifford_closed_form<Rational>(0, 2) == 2);
  CHECK(kappa_clifford_closed_form<Rational>(1, 0) == make_rational(1, 2));
}

TEST_CASE("clifford brute mu2 equals the closed form for p+q <= 5") {
  for (unsigned p = 0; p + 0 <= 5; ++p)
    for (unsigned q = 0; p + q <= 5; ++q) {
      auto alg = make_clifford<Rational>({p, q});
      auto g = clifford_group(alg);
      const auto brute = moment(g, 2);
      const auto closed = alg->scalar_element(mu2_clifford_closed_form<Rational>(p, q));
      INFO("p=" << p << " q=" << q);
      CHECK(brute == closed);
      // and the float evaluation of the paper formula agrees
      const double formula = std::pow(2.0, -0.5 * (double(p) + q - 1)) *
                             std::cos((double(p) - q - 1) * std::numbers::pi / 4.0);
      CHECK(std::abs(to_double(mu2_clifford_closed_form<Rational>(p, q)) - formula) < 1e-12);
    }
}

TEST_CASE("square root counts") {
  const auto z2 = cyclic_group_table(2);
  CHECK(square_root_counts(z2) == std::vector<std::size_t>{2, 0});

  const auto q8 = quaternion_group_table();
  const auto r2 = square_root_counts(q8);
  CHECK(r2[0] == 2);
  CHECK(r2[1] == 6);
  for (std::size_t g = 2; g < 8; ++g) CHECK(r2[g] == 0);
  std::size_t total = 0;
  for (auto v : r2) total += v;
  CHECK(total == q8.order);

  // r2 is a class function on Q8 and S3
  for (const char* name : {"q8.json", "s3.json"}) {
    const auto table = ingest_group_table(fixture(name));
    const auto counts = square_root_counts(table);
    const auto classes = table.conjugacy_classes();
    for (std::size_t a = 0; a < table.order; ++a)
      for (std::size_t b = 0; b < table.order; ++b)
        if (classes[a] == classes[b]) CHECK(counts[a] == counts[b]);
  }

  // mu2(R[G]) is reproducible from r2 through (1/|G|) sum r2(g^-1) g
  auto q8alg = make_group_algebra<Rational>(q8);
  const auto inv = q8.inverses();
  std::vector<Rational> coords(8, Rational(0));
  for (std::size_t g = 0; g < 8; ++g)
    coords[g] = make_rational(static_cast<long long>(r2[inv[g]]), 8);
  CHECK(moment(signed_group_algebra_group(q8alg), 2) == q8alg->element(coords));
}
