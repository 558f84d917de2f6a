#include <catch_amalgamated.hpp>

#include "polarize/rng.hpp"
#include "polarize/scalar.hpp"

using namespace polarize;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
  const Rational r = make_rational(6, -4);
  CHECK(numerator(r) == -3);
  CHECK(denominator(r) == 2);
  CHECK(scalar_traits<Rational>::to_string(r) == "-3/2");
  CHECK(scalar_traits<Rational>::to_string(make_rational(5)) == "5/1");
  CHECK_THROWS_AS(make_rational(1, 0), StructuralError);
}

TEST_CASE("double formatting round-trips") {
  for (double v : {0.1, -1.0 / 3.0, 1e-9, 123456.789, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("rationalize snaps near-exact values") {
  CHECK(rationalize(0.5, 64) == make_rational(1, 2));
  CHECK(rationalize(-5.0 / 6.0 + 1e-14, 64) == make_rational(-5, 6));
  CHECK(rationalize(0.0, 64) == 0);
  CHECK(rationalize(3.0, 64) == 3);
  CHECK(rationalize(1.25, 64) == make_rational(5, 4));
}

TEST_CASE("splitmix64 streams are deterministic and seed-separated") {
  SplitMix64 a(42), b(42), c(43);
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
  }
  bool differs = false;
  SplitMix64 a2(42);
  for (int i = 0; i < 16; ++i) differs |= (a2.next() != c.next());
  CHECK(differs);

  SplitMix64 s0 = substream(7, 0), s1 = substream(7, 1), s0b = substream(7, 0);
  CHECK(s0.next() == s0b.next());
  CHECK(s0.next() != s1.next());
}

TEST_CASE("uniform draws agree across backends and stay in [-1, 1]") {
  SplitMix64 r1(99), r2(99);
  for (int i = 0; i < 200; ++i) {
    const Rational q = uniform_pm1<Rational>(r1);
    const double d = uniform_pm1<double>(r2);
    CHECK(static_cast<double>(q) == d);
    CHECK(q >= -1);
    CHECK(q <= 1);
  }
}
