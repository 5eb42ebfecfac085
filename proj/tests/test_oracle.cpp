#include <doctest.h>

#include <omp.h>

#include "cbundle/oracle.hpp"
#include "cbundle/propagate.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace cbundle;

namespace {

std::set<oracles::TriplePoint> as_triples(const std::vector<SurfacePoint>& pts) {
  std::set<oracles::TriplePoint> out;
  auto pr = [](const Proj1& p) { return oracles::Pair{p[0].get_si(), p[1].get_si()}; };
  for (const auto& p : pts) out.insert({pr(p.factors[0]), pr(p.factors[1]), pr(p.factors[2])});
  return out;
}

std::set<oracles::CoverPoint> as_cover(const std::vector<SurfacePoint>& pts) {
  std::set<oracles::CoverPoint> out;
  auto pr = [](const Proj1& p) { return oracles::Pair{p[0].get_si(), p[1].get_si()}; };
  for (const auto& p : pts) out.insert({pr(p.factors[0]), pr(p.factors[1]), p.z->get_si()});
  return out;
}

}  // namespace

TEST_CASE("x0y0z0 - x1y1z1 at height one") {
  const auto pts = oracle::enumerate_points(fixtures::toric(), 1);
  auto has = [&](SurfacePoint p) { return std::binary_search(pts.begin(), pts.end(), p); };
  CHECK(has({{Proj1{1, 1}, Proj1{1, 1}, Proj1{1, 1}}, std::nullopt}));
  CHECK(has({{Proj1{1, 0}, Proj1{0, 1}, Proj1{1, 1}}, std::nullopt}));
  CHECK(has({{Proj1{1, 0}, Proj1{0, 1}, Proj1{1, -1}}, std::nullopt}));
  const long toric[8] = {1, 0, 0, 0, 0, 0, 0, -1};
  CHECK(as_triples(pts) == oracles::brute_trilinear(toric, 1));
}

TEST_CASE("trilinear counts match brute force") {
  const auto s = fixtures::acceptance_surface();
  // frozen from oracles::brute_trilinear
  const std::pair<long, std::size_t> counts[] = {{1, 9}, {5, 372}, {10, 1765}};
  for (const auto& [B, n] : counts) {
    const auto pts = oracle::enumerate_points(s, B);
    CHECK(pts.size() == n);
    CHECK(as_triples(pts) == oracles::brute_trilinear(fixtures::kAcceptanceCoeffs, B));
  }
}

TEST_CASE("cover counts match brute force") {
  const auto s = fixtures::cover_surface();
  for (long B : {1, 3, 6}) CHECK(as_cover(oracle::enumerate_points(s, B)) == oracles::brute_cover(fixtures::kCoverCoeffs, B));
}

TEST_CASE("serial and parallel enumeration agree") {
  for (const auto& s : {fixtures::acceptance_surface(), fixtures::cover_surface()})
    for (int t : {1, 3, 4}) {
      omp_set_num_threads(t);
      CHECK(oracle::enumerate_points(s, 9) == oracle::enumerate_points_serial(s, 9));
    }
}

TEST_CASE("fibres with points") {
  const auto s = fixtures::acceptance_surface();
  std::vector<Proj1> prev;
  for (long B = 1; B <= 8; ++B)
    for (int axis = 0; axis < 3; ++axis) {
      const auto f = oracle::fibres_with_points(s, axis, B);
      CHECK(f == fibre_images(oracle::enumerate_points(s, B), axis));
      if (axis == 0) {
        CHECK(std::includes(f.begin(), f.end(), prev.begin(), prev.end(),
                            [](const Proj1& a, const Proj1& b) { return compare(a, b) < 0; }));
        prev = f;
      }
    }
  // frozen regression values, axis 0
  CHECK(oracle::fibres_with_points(s, 0, 5).size() == 40);
  CHECK(oracle::fibres_with_points(s, 0, 10).size() == 128);
}

TEST_CASE("boxed class enumeration") {
  using namespace cbundle::pic;
  oracle::ClassBox box{0, 4, -3, 10};
  CHECK(oracle::enumerate_classes_boxed(Lattice(3), kExceptional, box).size() == 6);
  const auto c = oracle::enumerate_classes_boxed(Lattice(1), kConic, {});
  REQUIRE(c.size() == 1);
  CHECK(c[0] == DivisorClass{1, -1});
  // the default box is too small in degree 1; stabilization must enlarge it
  const auto small = oracle::enumerate_classes_boxed(Lattice(8), kConic, {});
  const auto st = oracle::enumerate_classes_stabilized(Lattice(8), kConic);
  CHECK(small.size() < st.classes.size());
  CHECK(st.classes.size() == 2160);
  CHECK(st.enlargements > 0);
  CHECK(oracle::enumerate_classes_boxed(Lattice(8), kConic, st.box.enlarged(2)) == st.classes);
}
