#include <catch_amalgamated.hpp>

#include "polarize/constructors.hpp"
#include "support/clifford_oracle.hpp"
#include "support/helpers.hpp"

using namespace polarize;
using testing_support::elem;

TEST_CASE("division algebra construction") {
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  CHECK(r->dim() == 1);
  CHECK(r->basis_element(0).star() == r->basis_element(0));

  auto c = make_division_algebra<Rational>(DivisionAlgebra::C);
  CHECK(c->dim() == 2);
  CHECK(c->basis_element(1).star() == -c->basis_element(1));

  auto h = make_division_algebra<Rational>(DivisionAlgebra::H);
  CHECK(h->dim() == 4);
  for (std::size_t b = 1; b < 4; ++b) CHECK(h->basis_element(b).star() == -h->basis_element(b));
  CHECK(h->basis_element(1) * h->basis_element(2) == h->basis_element(3));
}

TEST_CASE("matrix algebra over R is transpose-involutive") {
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  auto m2 = make_matrix_algebra(r, 2);
  CHECK(m2->dim() == 4);
  // basis order: E11, E12, E21, E22; star is the transpose
  CHECK(m2->basis_element(1).star() == m2->basis_element(2));
  CHECK(m2->basis_element(0).star() == m2->basis_element(0));
  // E12 * E21 = E11, E12 * E12 = 0
  CHECK(m2->basis_element(1) * m2->basis_element(2) == m2->basis_element(0));
  CHECK((m2->basis_element(1) * m2->basis_element(1)).is_zero());
}

TEST_CASE("matrix algebra over C is the conjugate transpose") {
  auto c = make_division_algebra<Rational>(DivisionAlgebra::C);
  auto m2c = make_matrix_algebra(c, 2);
  CHECK(m2c->dim() == 8);
  // (E12 i)* = -E21 i
  const auto e12_i = m2c->basis_element(1 * 2 + 1);
  const auto e21_i = m2c->basis_element(2 * 2 + 1);
  CHECK(e12_i.star() == -e21_i);
}

TEST_CASE("induced involution on M2(H) reverses products") {
  auto h = make_division_algebra<Rational>(DivisionAlgebra::H);
  auto m2h = make_matrix_algebra(h, 2);
  CHECK(m2h->dim() == 16);
  SplitMix64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_element(m2h, rng);
    const auto b = random_element(m2h, rng);
    CHECK((a * b).star() == b.star() * a.star());
  }
}

TEST_CASE("matrix algebra dimension cap") {
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  CHECK_THROWS_AS(make_matrix_algebra(r, 65), SizeLimitError);
}

TEST_CASE("direct sums multiply blockwise") {
  auto r = make_division_algebra<Rational>(DivisionAlgebra::R);
  auto c = make_division_algebra<Rational>(DivisionAlgebra::C);
  auto rr = make_direct_sum<Rational>({r, r});
  CHECK(rr->dim() == 2);
  CHECK(rr->basis_element(0) * rr->basis_element(1) == rr->zero());

  auto rc = make_direct_sum<Rational>({r, c});
  CHECK(rc->unit() == elem(rc, {1, 1, 0}));
  SplitMix64 rng(37);
  for (int t = 0; t < 8; ++t) {
    // (x, 0) * (0, y) = 0 for the block embeddings
    auto x = random_element(r, rng);
    auto y = random_element(c, rng);
    const auto xe = rc->element({x[0], Rational(0), Rational(0)});
    const auto ye = rc->element({Rational(0), y[0], y[1]});
    CHECK((xe * ye).is_zero());
  }
}

TEST_CASE("group algebras carry the inversion involution") {
  auto z2 = make_group_algebra<Rational>(cyclic_group_table(2));
  const auto z = z2->basis_element(1);
  CHECK(z * z == z2->unit());

  auto q8 = make_group_algebra<Rational>(quaternion_group_table());
  CHECK(q8->dim() == 8);
  // i (index 2) inverts to -i (index 3)
  CHECK(q8->basis_element(2).star() == q8->basis_element(3));
  for (std::size_t g = 0; g < 8; ++g) {
    CHECK(q8->basis_element(g) * q8->basis_element(g).star() == q8->unit());
    CHECK(q8->basis_element(g).star().star() == q8->basis_element(g));
  }
}

TEST_CASE("group table validation names the first failing triple") {
  GroupTable latin_broken;
  latin_broken.order = 2;
  latin_broken.identity = 0;
  latin_broken.mul = {{0, 1}, {1, 1}};
  CHECK_THROWS_WITH(latin_broken.validate(), Catch::Matchers::ContainsSubstring("repeats"));

  GroupTable bad_id;
  bad_id.order = 2;
  bad_id.identity = 1;
  bad_id.mul = {{0, 1}, {1, 0}};
  CHECK_THROWS_WITH(bad_id.validate(), Catch::Matchers::ContainsSubstring("identity law"));
}

TEST_CASE("clifford generators satisfy the signature relations") {
  auto c01 = make_clifford<Rational>({0, 1});
  CHECK(c01->dim() == 2);
  CHECK(c01->basis_element(1) * c01->basis_element(1) == -(c01->unit()));

  auto c02 = make_clifford<Rational>({0, 2});
  const auto e12 = c02->basis_element(3);
  CHECK(e12 * e12 == -(c02->unit()));

  auto c11 = make_clifford<Rational>({1, 1});
  const auto e1 = c11->basis_element(1), e2 = c11->basis_element(2), b = c11->basis_element(3);
  CHECK(e1 * e2 == b);
  CHECK(e2 * e1 == -b);
  CHECK(b * b == c11->unit());
}

TEST_CASE("clifford blade arithmetic agrees with the word oracle") {
  for (unsigned p = 0; p <= 3; ++p)
    for (unsigned q = 0; p + q <= 3; ++q) {
      auto alg = make_clifford<Rational>({p, q});
      const unsigned d = p + q;
      // Recover each basis position's index set from its label-independent
      // square/product behaviour: multiply singleton generators.
      std::vector<std::vector<unsigned>> words(alg->dim());
      std::vector<Element<Rational>> blades;
      for (std::size_t r = 0; r < alg->dim(); ++r) blades.push_back(alg->basis_element(r));
      // position of each single generator e_g: it is the blade equal to the
      // product of nothing but itself; find by matching against products of
      // generators taken from labels is avoided - instead build all subset
      // words in (size, lex) order mirroring the documented basis order.
      std::vector<std::vector<unsigned>> subsets;
      for (std::uint32_t m = 0; m < (1u << d); ++m) {
        std::vector<unsigned> w;
        for (unsigned t = 0; t < d; ++t)
          if (m & (1u << t)) w.push_back(t + 1);
        subsets.push_back(std::move(w));
      }
      std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
      });

      auto element_of = [&](const oracle::Blade& blade) {
        // locate position whose subset equals blade.word
        for (std::size_t r = 0; r < subsets.size(); ++r)
          if (subsets[r] == blade.word)
            return blade.sign > 0 ? blades[r] : -blades[r];
        FAIL("blade not found");
        return blades[0];
      };

      for (std::size_t a = 0; a < subsets.size(); ++a)
        for (std::size_t b2 = 0; b2 < subsets.size(); ++b2) {
          const oracle::Blade lhs{subsets[a], 1}, rhs{subsets[b2], 1};
          const auto expected = element_of(oracle::mul(lhs, rhs, p));
          CHECK(blades[a] * blades[b2] == expected);
        }
      for (std::size_t a = 0; a < subsets.size(); ++a) {
        const auto expected = element_of(oracle::star({subsets[a], 1}, p));
        CHECK(blades[a].star() == expected);
      }
    }
}

TEST_CASE("blade squares follow the sign rule (-1)^(k(k+1)/2) (-1)^l for p+q <= 6") {
  for (unsigned p = 0; p <= 6; ++p)
    for (unsigned q = 0; p + q <= 6; ++q) {
      auto alg = make_clifford<double>({p, q});
      const unsigned d = p + q;
      std::vector<std::vector<unsigned>> subsets;
      for (std::uint32_t m = 0; m < (1u << d); ++m) {
        std::vector<unsigned> w;
        for (unsigned t = 0; t < d; ++t)
          if (m & (1u << t)) w.push_back(t + 1);
        subsets.push_back(std::move(w));
      }
      std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
      });
      for (std::size_t r = 0; r < alg->dim(); ++r) {
        const std::size_t k = subsets[r].size();
        std::size_t l = 0;
        for (unsigned g : subsets[r])
          if (g <= p) ++l;
        const int expected = ((k * (k + 1) / 2 + l) % 2 == 0) ? 1 : -1;
        const auto blade = alg->basis_element(r);
        const auto square = blade * blade;
        CHECK(square == (expected > 0 ? alg->unit() : -(alg->unit())));
        CHECK(is_unitary(blade));
      }
    }
}

TEST_CASE("kappa closed form per decomposition block") {
  const auto one_block = kappa_closed_form<Rational>({{{1, 1}}});
  CHECK(one_block.front() == make_rational(1, 2));
  CHECK(kappa_closed_form<Rational>({{{1, 4}}}).front() == make_rational(2));
  CHECK(kappa_closed_form<Rational>({{{2, 1}}}).front() == make_rational(2, 3));
  CHECK(kappa_closed_form<Rational>({{{1, 2}}}).front() == make_rational(1));
  CHECK_THROWS_AS(kappa_closed_form<Rational>({{{1, 3}}}), ValidationError);
  CHECK_THROWS_AS(kappa_closed_form<Rational>(DecompositionData{}), ValidationError);
}

TEST_CASE("clifford cap") {
  CHECK_THROWS_AS(make_clifford<double>({7, 6}), SizeLimitError);
}
