#include <doctest.h>

#include <random>

#include "cbundle/conic.hpp"
#include "cbundle/errors.hpp"
#include "support/oracles.hpp"

using namespace cbundle;

namespace {

std::vector<long double> to_ld(const BinaryForm& f) {
  std::vector<long double> out;
  for (const auto& c : f.coeffs()) out.push_back(static_cast<long double>(c.get_d()));
  return out;
}

}  // namespace

TEST_CASE("smoothness") {
  CHECK(conic_is_smooth(TernaryConic::from_quadratic(1, 1, -1, 0, 0, 0)));
  CHECK_FALSE(conic_is_smooth(TernaryConic::from_quadratic(1, -1, 0, 0, 0, 0)));
  // z^2 - st in (s, t, z): det = -(disc q)/4 with disc(st) = 1
  const auto q = TernaryConic::from_quadratic(0, 0, 1, -1, 0, 0);
  CHECK(conic_is_smooth(q));
  CHECK(q.determinant() == Rat(-1, 4));
}

TEST_CASE("bilinear form is symmetric and polarizes the value") {
  std::mt19937 rng(2);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int t = 0; t < 50; ++t) {
    const auto q = TernaryConic::from_quadratic(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
    const Point3 p{d(rng), d(rng), d(rng)}, r{d(rng), d(rng), d(rng)};
    CHECK(q.bilinear(p, r) == q.bilinear(r, p));
    const Point3 s{p[0] + r[0], p[1] + r[1], p[2] + r[2]};
    CHECK(q.value(s) == q.value(p) + q.value(r) + 2 * q.bilinear(p, r));
  }
}

TEST_CASE("Pythagorean parametrization") {
  const auto q = TernaryConic::from_quadratic(1, 1, -1, 0, 0, 0);
  const auto phi = parametrize_through_point(q, {0, 1, 1});
  CHECK(phi.identity_holds(q));
  // any correct map agrees with (2st : t^2 - s^2 : t^2 + s^2) up to reparametrization:
  // every point of that map is hit, and every point of this map is on the circle
  for (long s = -4; s <= 4; ++s)
    for (long t = -4; t <= 4; ++t) {
      if (s == 0 && t == 0) continue;
      const Point3 x{2 * s * t, t * t - s * s, t * t + s * s};
      const auto par = phi.parameter_of(x);
      const auto back = phi.at(par[0], par[1]);
      std::array<Int, 3> xi{2 * s * t, t * t - s * s, t * t + s * s};
      make_primitive(xi);
      CHECK(back == xi);
    }
}

TEST_CASE("x^2 + y^2 - 2z^2 through (1:1:1)") {
  const auto q = TernaryConic::from_quadratic(1, 1, -2, 0, 0, 0);
  const auto phi = parametrize_through_point(q, {1, 1, 1});
  CHECK(phi.identity_holds(q));
  // symbolic expansion by hand: Q(f0, f1, f2) coefficientwise
  const auto& f = phi.forms();
  const auto expanded = f[0] * f[0] + f[1] * f[1] - f[2] * f[2] * Rat(2);
  CHECK(expanded.is_zero());
  CHECK(f[0].degree() == 2);
}

TEST_CASE("parametrization preconditions") {
  CHECK_THROWS_AS(parametrize_through_point(TernaryConic::from_quadratic(1, -1, 0, 0, 0, 0), {1, 1, 0}),
                  DegenerateConicError);
  CHECK_THROWS_AS(parametrize_through_point(TernaryConic::from_quadratic(1, 1, -1, 0, 0, 0), {1, 1, 1}),
                  PreconditionError);
  CHECK_THROWS_AS(parametrize_through_point(TernaryConic::from_quadratic(1, 1, -1, 0, 0, 0), {0, 0, 0}),
                  InvalidInputError);
}

TEST_CASE("random conics: identity and surjectivity against brute force") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<long> d(-4, 4);
  int done = 0;
  while (done < 25) {
    // conic through a random point P: pick five coefficients, solve the sixth
    const Point3 P{d(rng), d(rng), d(rng)};
    if (P[2] == 0) continue;
    const long xx = d(rng), yy = d(rng), xy = d(rng), xz = d(rng), yz = d(rng);
    const Rat rest = xx * P[0] * P[0] + yy * P[1] * P[1] + xy * P[0] * P[1] + xz * P[0] * P[2] + yz * P[1] * P[2];
    const Rat zz = -rest / (P[2] * P[2]);
    auto q = TernaryConic::from_quadratic(xx, yy, zz, xy, xz, yz);
    if (!conic_is_smooth(q)) continue;
    ++done;
    const auto phi = parametrize_through_point(q, P);
    CHECK(phi.identity_holds(q));
    for (long x = -6; x <= 6; ++x)
      for (long y = -6; y <= 6; ++y)
        for (long z = -6; z <= 6; ++z) {
          const Point3 X{x, y, z};
          if ((x == 0 && y == 0 && z == 0) || q.value(X) != 0) continue;
          const auto par = phi.parameter_of(X);
          std::array<Int, 3> xi{x, y, z};
          make_primitive(xi);
          auto img = phi.at(par[0], par[1]);
          CHECK(img == xi);
        }
  }
}

TEST_CASE("branch loci of double covers") {
  const auto uv = discriminant_of_double_cover(BinaryForm{0, 1, 0});
  REQUIRE(uv.rational_points.size() == 2);
  CHECK(uv.squarefree);
  const auto u2 = discriminant_of_double_cover(BinaryForm{1, 0, 0});
  REQUIRE(u2.rational_points.size() == 1);
  CHECK(u2.rational_points[0].multiplicity == 2);
  CHECK_FALSE(u2.squarefree);
  const auto conj = discriminant_of_double_cover(BinaryForm{1, 0, -2});
  CHECK(conj.rational_points.empty());
  CHECK(conj.form == BinaryForm{1, 0, -2});
  CHECK_THROWS_AS(discriminant_of_double_cover(BinaryForm{0, 0, 0}), NonReducedError);
}

TEST_CASE("branch loci disjointness") {
  CHECK(branch_loci_disjoint(BinaryForm{0, 1, 0}, BinaryForm{1, 0, -1}));
  CHECK_FALSE(branch_loci_disjoint(BinaryForm{0, 1, 0}, BinaryForm{1, 1, 0}));
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int t = 0; t < 200; ++t) {
    const BinaryForm r1{d(rng), d(rng), d(rng)}, r2{d(rng), d(rng), d(rng)};
    if (r1.is_zero() || r2.is_zero()) continue;
    CHECK(branch_loci_disjoint(r1, r2) == (gcd(r1, r2).degree() == 0));
  }
}

TEST_CASE("fibre product irreducibility") {
  CHECK(fibre_product_irreducible(BinaryForm{0, 1, 0}, BinaryForm{1, -3, 2}));
  CHECK_FALSE(fibre_product_irreducible(BinaryForm{0, 1, 0}, BinaryForm{0, 1, 0}));
  CHECK_FALSE(fibre_product_irreducible(BinaryForm{1, 2, 1}, BinaryForm{0, 1, 0}));
  CHECK_FALSE(fibre_product_irreducible(BinaryForm{1, 2, 1}, BinaryForm{1, 0, -7}));
  // shared branch point but still irreducible: u v and u (u + v)
  CHECK(fibre_product_irreducible(BinaryForm{0, 1, 0}, BinaryForm{1, 1, 0}));
  // r1 r2 a square: proportional forms
  CHECK_FALSE(fibre_product_irreducible(BinaryForm{1, 0, -2}, BinaryForm{3, 0, -6}));
}

TEST_CASE("fibre product criterion agrees with the numeric root oracle") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int t = 0; t < 300; ++t) {
    BinaryForm r1{d(rng), d(rng), d(rng)}, r2{d(rng), d(rng), d(rng)};
    if (t % 5 == 0) r2 = r1 * Rat(d(rng) == 0 ? 1 : 2);
    if (t % 7 == 0) r1 = BinaryForm::linear(d(rng), 1) * BinaryForm::linear(d(rng), 1);
    if (r1.is_zero() || r2.is_zero()) continue;
    const auto rep = analyse_fibre_product(r1, r2);
    CHECK(rep.irreducible == oracles::numeric_fibre_product_irreducible(to_ld(r1), to_ld(r2)));
    CHECK(rep.disjoint_branch == !oracles::numeric_share_root(to_ld(r1), to_ld(r2)));
  }
}
