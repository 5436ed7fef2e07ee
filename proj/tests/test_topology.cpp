#include "cuspmag/error.hpp"
#include "cuspmag/topology.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace cuspmag;

namespace {

IntegerMatrix random_matrix(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
  const int r = dim(rng), c = dim(rng);
  IntegerMatrix a(r, std::vector<Integer>(c));
  for (auto& row : a)
    for (auto& x : row) x = entry(rng);
  return a;
}

bool unimodular(const IntegerMatrix& m) {
  const Integer d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 200; ++trial) {
    const IntegerMatrix a = random_matrix(rng);
    const SmithForm s = smith_normal_form(a);
    CHECK(multiply(multiply(s.U, a), s.V) == s.D);
    CHECK(unimodular(s.U));
    CHECK(unimodular(s.V));
    const std::size_t k = std::min(a.size(), a[0].size());
    for (std::size_t i = 0; i < s.D.size(); ++i)
      for (std::size_t j = 0; j < s.D[i].size(); ++j)
        if (i != j) CHECK(s.D[i][j] == 0);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      CHECK(s.D[i][i] >= 0);
      if (s.D[i][i] != 0) CHECK(s.D[i + 1][i + 1] % s.D[i][i] == 0);
      else CHECK(s.D[i + 1][i + 1] == 0);
    }
  }
}

TEST_CASE("smith normal form of known matrices") {
  const IntegerMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const SmithForm s = smith_normal_form(a);
  CHECK(s.D[0][0] == 2);
  CHECK(s.D[1][1] == 6);
  CHECK(s.D[2][2] == 12);
  const SmithForm z = smith_normal_form(IntegerMatrix{{0, 0}, {0, 0}});
  CHECK(z.D == IntegerMatrix{{0, 0}, {0, 0}});
}

TEST_CASE("potential classification by component") {
  Config c = circle_config("2", "1", "1/2");
  Verdict v = classify_potential(c.spec, c.potential);
  CHECK(v.trapping);
  CHECK(reason_code(v.components[0].reason) == "flux-nonintegral");

  c = circle_config("2", "1", "-3");
  v = classify_potential(c.spec, c.potential);
  CHECK_FALSE(v.trapping);
  CHECK(v.maximal_non_trapping);
  CHECK(reason_code(v.components[0].reason) == "integral");

  c = parse_config("n = 2\np = 1\n[end.A]\nlength = 2pi\nflux = [0]\nphi0 = [0, 1]\n");
  CHECK(reason_code(classify_potential(c.spec, c.potential).components[0].reason) == "phi0-nonconstant");
  c = parse_config("n = 2\np = 1\n[end.A]\nlength = 2pi\nflux = [0]\nclosed = false\n");
  CHECK(reason_code(classify_potential(c.spec, c.potential).components[0].reason) == "theta0-nonclosed");
}

TEST_CASE("one integral end is enough to be non-trapping") {
  const Config c = parse_config(
      "n = 3\np = 1\n[end.A]\ngram = [[4pi^2, 0], [0, 4pi^2]]\nflux = [1/2, 0]\n"
      "[end.B]\ngram = [[4pi^2, 0], [0, 4pi^2]]\nflux = [1, -2]\n");
  const Verdict v = classify_potential(c.spec, c.potential);
  CHECK_FALSE(v.trapping);
  CHECK_FALSE(v.maximal_non_trapping);
  CHECK(v.components[0].trapping);
  CHECK_FALSE(v.components[1].trapping);
}

TEST_CASE("coupling group of a class vector") {
  CHECK(coupling_group(RationalVector{Rational(1, 2)}).generator == 2);
  CHECK(coupling_group(RationalVector{Rational(2, 3), Rational(1, 4)}).generator == 12);
  CHECK(coupling_group(RationalVector{Rational(0)}).all_reals);
  const CyclicGroup g = coupling_group(RationalVector{Rational(3, 4)});
  CHECK(g.generator == Rational(4, 3));
  CHECK(g.contains(Rational(8)));
  CHECK_FALSE(g.contains(Rational(2)));
}

TEST_CASE("field classification needs H^1(X) = 0") {
  FieldClass f;
  f.h1_zero = true;
  f.vanishes_on = {"A", "B"};
  f.class_components = {{"A", {Rational(1, 2)}}, {"B", {Rational(1, 3)}}};
  CHECK(classify_field(f));
  const GroupDescription g = coupling_group(f);
  CHECK(g.contains(Rational(2)));
  CHECK(g.contains(Rational(3)));
  CHECK_FALSE(g.contains(Rational(1)));
  CHECK_FALSE(g.is_group());
  f.class_components["B"] = {Rational(2)};
  CHECK_FALSE(classify_field(f));
  f.h1_zero = false;
  CHECK_THROWS_AS(classify_field(f), PreconditionError);
}

TEST_CASE("surface gauge table") {
  auto t = surface_gauge_options(1, true, Rational(1));
  CHECK(t.non_trapping_exists);
  CHECK_FALSE(t.trapping_exists);
  t = surface_gauge_options(1, true, Rational(1, 2));
  CHECK(t.trapping_exists);
  CHECK_FALSE(t.non_trapping_exists);
  for (const Rational b : {Rational(1), Rational(1, 2)}) {
    t = surface_gauge_options(2, true, b);
    CHECK((t.trapping_exists && t.non_trapping_exists));
    t = surface_gauge_options(1, false, b);
    CHECK((t.trapping_exists && t.non_trapping_exists));
  }
  CHECK_THROWS_AS(surface_gauge_options(0, true, Rational(1)), PreconditionError);
}

TEST_CASE("three-manifold presentations") {
  CohomologyPresentation p;
  p.boundary_rank = {2, 2};
  // columns (1,0,0,1) and (0,1,1,0): isotropic, onto on both cusps
  p.l_basis = {{1, 0}, {0, 1}, {0, 1}, {1, 0}};
  ThreeManifoldGauge g = three_manifold_gauge(p, {Rational(1, 7), Rational(2, 9)});
  CHECK(g.non_trapping_exists);
  CHECK(g.cusps[0].surjective);
  CHECK(g.q == 1);

  p.l_basis = {{1, 0}, {3, 0}, {0, 2}, {0, 5}};
  g = three_manifold_gauge(p, {Rational(1, 3), Rational(1, 2)});
  CHECK(g.cusps[0].generator == Rational(1, 3));
  CHECK(g.cusps[1].generator == Rational(1, 5));
  CHECK(g.q == 15);
  CHECK(g.cusps[0].member);
  CHECK_FALSE(g.cusps[1].member);

  p.l_basis = {{1, 0}, {0, 1}, {1, 0}, {0, 1}};  // (1,0,1,0) and (0,1,0,1) pair to 2
  CHECK_THROWS_AS(validate(p), ConfigError);
  p.boundary_rank = {2, 1};
  CHECK_THROWS_AS(validate(p), ConfigError);
}
