#include <doctest.h>

#include <omp.h>

#include "cbundle/errors.hpp"
#include "cbundle/oracle.hpp"
#include "cbundle/propagate.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace cbundle;

namespace {

SurfacePoint tri(Proj1 x, Proj1 y, Proj1 z) { return {{x, y, z}, std::nullopt}; }

PropagationConfig config(int depth, long sample_bound, long cap = 1000000) {
  PropagationConfig c;
  c.depth = depth;
  c.sample_bound = sample_bound;
  c.height_cap = cap;
  return c;
}

}  // namespace

TEST_CASE("depth one on x0y0z0 - x1y1z1") {
  const auto s = fixtures::toric();
  const auto seed = tri({1, 1}, {1, 1}, {1, 1});
  const auto res = propagate(s, seed, config(1, 2));
  // one point per normalized primitive parameter of height <= 2
  std::vector<SurfacePoint> expected;
  for (const auto& [a, b] : oracles::normalized_pairs(2))
    expected.push_back(canonicalize(ModelKind::trilinear, tri({1, 1}, {a, b}, {b, a})));
  std::sort(expected.begin(), expected.end());
  CHECK(res.points == expected);
  CHECK(res.points.size() == 8);
  CHECK(res.rounds.size() == 1);

  const auto ys = fibre_images(res.points, 1);
  CHECK(ys.size() == 8);
  CHECK(fibre_images(res.points, 0) == std::vector<Proj1>{{1, 1}});
  CHECK(fibre_images({}, 0).empty());
}

TEST_CASE("sample bound one forces the three basic parameters") {
  const auto res = propagate(fixtures::toric(), tri({1, 1}, {1, 1}, {1, 1}), config(1, 1));
  CHECK(res.points.size() >= 3);
  for (const auto& y : std::vector<Proj1>{{1, 0}, {0, 1}, {1, 1}}) {
    Proj1 z{y[1], y[0]};
    CHECK(std::find(res.points.begin(), res.points.end(), tri({1, 1}, y, z)) != res.points.end());
  }
}

TEST_CASE("config validation") {
  const auto s = fixtures::toric();
  const auto seed = tri({1, 1}, {1, 1}, {1, 1});
  CHECK_THROWS_AS(propagate(s, seed, config(0, 2)), PreconditionError);
  CHECK_THROWS_AS(propagate(s, seed, config(1, 0)), PreconditionError);
  CHECK_THROWS_AS(propagate(s, seed, config(1, 1, 0)), PreconditionError);
  CHECK_THROWS_AS(propagate(s, tri({1, 0}, {1, 0}, {1, 0}), config(1, 1)), PreconditionError);
  auto c = config(1, 1);
  c.axes = {0, 0};
  CHECK_THROWS_AS(propagate(s, seed, c), PreconditionError);
  // ((1:0),(0:1),(1:0)) lies on degenerate fibres of axes 0 and 1
  CHECK_THROWS_AS(propagate(s, tri({1, 0}, {0, 1}, {1, 0}), config(1, 1)), NoSmoothStartError);
}

TEST_CASE("soundness, degenerate skipping and oracle containment") {
  const auto s = fixtures::acceptance_surface();
  const auto res = propagate(s, fixtures::acceptance_seed(), config(3, 3));
  const Int cap = 1000000;
  for (const auto& p : res.points) {
    CHECK(contains(s, p));
    CHECK(point_height(p) <= cap);
    CHECK(is_canonical(ModelKind::trilinear, p));
  }
  // every point apart from the seed was produced on a smooth fibre of one of the axes
  const auto d0 = discriminant_form(s, 0), d1 = discriminant_form(s, 1);
  for (const auto& p : res.points) {
    const bool smooth0 = d0.evaluate(Rat(p.factors[0][0]), Rat(p.factors[0][1])) != 0;
    const bool smooth1 = d1.evaluate(Rat(p.factors[1][0]), Rat(p.factors[1][1])) != 0;
    CHECK((smooth0 || smooth1));
  }
  std::vector<SurfacePoint> low;
  for (const auto& p : res.points)
    if (point_height(p) <= 12) low.push_back(p);
  const auto all = oracle::enumerate_points(s, 12);
  CHECK(std::includes(all.begin(), all.end(), low.begin(), low.end()));
}

TEST_CASE("growth across rounds") {
  const auto res = propagate(fixtures::acceptance_surface(), fixtures::acceptance_seed(), config(3, 3));
  REQUIRE(res.rounds.size() == 3);
  CHECK(res.points.size() >= 50);
  CHECK(res.rounds[0].current_images < res.rounds[1].current_images);
  CHECK(res.rounds[1].current_images < res.rounds[2].current_images);
  for (int a = 0; a < 2; ++a) {
    CHECK(res.rounds[0].images[a] <= res.rounds[1].images[a]);
    CHECK(res.rounds[1].images[a] <= res.rounds[2].images[a]);
    CHECK(res.rounds[0].images[a] < res.rounds[2].images[a]);
  }
  for (std::size_t i = 1; i < res.rounds.size(); ++i)
    CHECK(res.rounds[i].total_points >= res.rounds[i - 1].total_points);
}

TEST_CASE("height cap truncates and reports") {
  const auto s = fixtures::acceptance_surface();
  const auto full = propagate(s, fixtures::acceptance_seed(), config(3, 3));
  const auto capped = propagate(s, fixtures::acceptance_seed(), config(3, 3, 50));
  std::size_t truncated = 0;
  for (const auto& r : capped.rounds) truncated += r.truncated;
  CHECK(truncated > 0);
  for (const auto& p : capped.points) CHECK(point_height(p) <= 50);
  CHECK(capped.points.size() < full.points.size());
}

TEST_CASE("depth monotonicity") {
  const auto s = fixtures::acceptance_surface();
  std::vector<SurfacePoint> prev;
  for (int d = 1; d <= 3; ++d) {
    const auto res = propagate(s, fixtures::acceptance_seed(), config(d, 2));
    CHECK(std::includes(res.points.begin(), res.points.end(), prev.begin(), prev.end()));
    prev = res.points;
  }
}

TEST_CASE("parallel and serial runs agree at any thread count") {
  const auto s = fixtures::acceptance_surface();
  const auto ref = propagate_serial(s, fixtures::acceptance_seed(), config(3, 3));
  for (int t : {1, 2, 4, 7}) {
    omp_set_num_threads(t);
    const auto par = propagate(s, fixtures::acceptance_seed(), config(3, 3));
    CHECK(par.points == ref.points);
    REQUIRE(par.rounds.size() == ref.rounds.size());
    for (std::size_t i = 0; i < ref.rounds.size(); ++i) {
      CHECK(par.rounds[i].new_points == ref.rounds[i].new_points);
      CHECK(par.rounds[i].images == ref.rounds[i].images);
    }
  }
}

TEST_CASE("cover model propagation") {
  const auto s = fixtures::cover_surface();
  const auto res = propagate(s, fixtures::cover_seed(), config(2, 2, 100000));
  CHECK(res.points.size() > 10);
  for (const auto& p : res.points) {
    CHECK(contains(s, p));
    CHECK(is_canonical(ModelKind::cover, p));
  }
  CHECK(propagate_serial(s, fixtures::cover_seed(), config(2, 2, 100000)).points == res.points);
}

TEST_CASE("start axis selection") {
  const auto s = fixtures::acceptance_surface();
  auto c = config(1, 2);
  c.start_axis = 1;
  const auto res = propagate(s, fixtures::acceptance_seed(), c);
  CHECK(res.start_axis == 1);
  CHECK(fibre_images(res.points, 1).size() == 1);
  c.start_axis = 2;
  CHECK_THROWS_AS(propagate(s, fixtures::acceptance_seed(), c), PreconditionError);
  c.axes = {1, 2};
  CHECK(propagate(s, fixtures::acceptance_seed(), c).start_axis == 2);
}
