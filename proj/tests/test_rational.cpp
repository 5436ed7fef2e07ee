#include "cuspmag/error.hpp"
#include "cuspmag/model.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cuspmag;

TEST_CASE("rational parsing is exact") {
  CHECK(*parse_rational("-3/4") == Rational(-3, 4));
  CHECK(*parse_rational("0.125") == Rational(1, 8));
  CHECK(*parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(*parse_rational("1e4") == 10000);
  CHECK(*parse_rational("010/08") == Rational(5, 4));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("abc"));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-4, 2)) == "-2");
}

TEST_CASE("pi scalars") {
  const PiScalar a = *parse_pi_scalar("4pi^2");
  CHECK(a.coefficient == 4);
  CHECK(a.pi_power == 2);
  CHECK(parse_pi_scalar("2*pi")->pi_power == 1);
  CHECK(parse_pi_scalar("-pi")->coefficient == -1);
  CHECK(parse_pi_scalar("3/2")->pi_power == 0);
  CHECK(parse_pi_scalar("2pi")->value() == doctest::Approx(2 * M_PI));
  CHECK_FALSE(parse_pi_scalar("pi^x"));
}

TEST_CASE("exact linear algebra") {
  const RationalMatrix m{{2, 1}, {1, 1}};
  CHECK(determinant(m) == 1);
  const RationalMatrix inv = inverse(m);
  CHECK(inv[0][0] == 1);
  CHECK(inv[0][1] == -1);
  CHECK(rank(RationalMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(lcm(Integer(4), Integer(6)) == 12);
}

TEST_CASE("radial coordinate and volumes") {
  const Config c = circle_config("2", "1", "1/2");
  CHECK(radial_origin(c.spec) == doctest::Approx(std::log(10.0)));
  // vol of {x < x0} with metric x^{-2}(dx^2 + dtheta^2): 2pi * x0
  CHECK(end_volume(c.spec, c.spec.ends[0]) == doctest::Approx(2 * M_PI / 10));
  const Config half = circle_config("2", "1/2", "1/2", "1/4");
  // L(x) = x^{p-1}/(1-p) for p < 1, so r0 = 2 * (1/4)^{-1/2} = 4
  CHECK(radial_origin(half.spec) == doctest::Approx(4.0));
  for (double x : {0.01, 0.1, 0.5})
    CHECK(boundary_coordinate(Rational(1, 2), radial_coordinate(Rational(1, 2), x)) == doctest::Approx(x));
}

TEST_CASE("grids") {
  const Grid g = Grid::spanning(1.0, 6.0, 0.5);
  CHECK(g.cells == 10);
  CHECK(g.interior() == 9);
  CHECK(g.node(0) == doctest::Approx(1.5));
  CHECK(g.r_max() == doctest::Approx(6.0));
  CHECK_THROWS_AS(Grid::spanning(1.0, 3.0, 0.5), PreconditionError);
}
