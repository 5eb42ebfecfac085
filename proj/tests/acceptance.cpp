// Acceptance run: one PASS/FAIL line per criterion. argv[1] is the cbundle
// executable used for the determinism checks.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cbundle/conic.hpp"
#include "cbundle/density.hpp"
#include "cbundle/io.hpp"
#include "cbundle/oracle.hpp"
#include "cbundle/pic_lattice.hpp"
#include "cbundle/propagate.hpp"
#include "manifest.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace cbundle;
using Clock = std::chrono::steady_clock;

namespace {

// pinned limits
constexpr double kAuditSecondsSmall = 60.0;   // d = 2, 4
constexpr double kAuditSecondsDegOne = 600.0;  // d = 1
constexpr double kPropagateSeconds = 60.0;
constexpr std::size_t kMinPoints = 50;
constexpr long kContainmentHeight = 20;
constexpr long kConicPointHeight = 10;
constexpr long kParameterHeight = 1000;
constexpr int kRandomConics = 100;
constexpr int kRandomPairs = 100;

int failures = 0;

void report(int n, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " [" << n << "] " << name << ": " << detail << std::endl;
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

PropagationConfig acceptance_config(int depth) {
  PropagationConfig c;
  c.depth = depth;
  c.sample_bound = 3;
  c.height_cap = 1000000;
  return c;
}

void criterion_lattice_identities() {
  bool ok = true;
  std::ostringstream d;
  for (int deg : {4, 2, 1}) {
    const auto t = Clock::now();
    const auto lat = pic::Lattice::of_degree(deg);
    const auto K = pic::canonical_class(lat);
    std::size_t bad = 0, n = 0;
    for (const auto& C : pic::enumerate_conic_classes(lat)) {
      ++n;
      const auto D = pic::second_fibration(lat, C);
      const bool good = pic::intersect(lat, D, D) == 0 && -pic::intersect(lat, K, D) == 2 &&
                        pic::intersect(lat, C, D) == 8 / deg && pic::arithmetic_genus(lat, D) == 0 &&
                        -pic::intersect(lat, K, K - D) == -(deg + 2);
      bad += good ? 0 : 1;
    }
    const auto audit = pic::audit_second_fibrations(lat);
    const double secs = seconds_since(t);
    const double limit = deg == 1 ? kAuditSecondsDegOne : kAuditSecondsSmall;
    ok = ok && bad == 0 && audit.pass && n > 0 && secs < limit;
    d << "d=" << deg << " classes=" << n << " failures=" << bad << " time=" << secs << "s; ";
  }
  report(1, "lattice identities for D = -(4/d)K - C", ok, d.str());
}

void criterion_enumeration() {
  const long exceptional[10] = {0, 240, 56, 27, 16, 10, 6, 3, 1, 0};
  const long conic[10] = {0, 2160, 126, 27, 10, 5, 3, 2, 1, 0};
  bool ok = true;
  std::ostringstream d;
  for (int deg = 1; deg <= 9; ++deg) {
    const auto lat = pic::Lattice::of_degree(deg);
    const auto e = pic::enumerate_exceptional(lat);
    const auto c = pic::enumerate_conic_classes(lat);
    const auto eb = oracle::enumerate_classes_stabilized(lat, pic::kExceptional);
    const auto cb = oracle::enumerate_classes_stabilized(lat, pic::kConic);
    const bool good = e == eb.classes && c == cb.classes && static_cast<long>(e.size()) == exceptional[deg] &&
                      static_cast<long>(c.size()) == conic[deg];
    ok = ok && good;
    d << "d=" << deg << ":" << e.size() << "/" << c.size() << (good ? "" : "(mismatch)") << " ";
  }
  report(2, "class enumeration agrees with the stabilized box search", ok, d.str());
}

void criterion_involution() {
  std::size_t total = 0, bad = 0;
  for (int deg : {1, 2, 4}) {
    const auto lat = pic::Lattice::of_degree(deg);
    for (const auto& C : pic::enumerate_conic_classes(lat)) {
      ++total;
      if (pic::second_fibration(lat, pic::second_fibration(lat, C)) != C) ++bad;
    }
  }
  report(3, "second fibration is an involution", bad == 0 && total > 0,
         std::to_string(total) + " classes, " + std::to_string(bad) + " failures");
}

void criterion_propagation(PropagationResult& out) {
  const auto s = fixtures::acceptance_surface();
  const auto seed = fixtures::acceptance_seed();
  const auto t = Clock::now();
  out = propagate(s, seed, acceptance_config(3));
  const double secs = seconds_since(t);
  std::size_t off = 0;
  for (const auto& p : out.points) off += contains(s, p) ? 0 : 1;
  // A round leaves the image count of the axis it parametrizes unchanged
  // (its points lie on fibres that already carried a point); the other axis
  // must strictly grow in every round.
  std::array<std::size_t, 2> prev{1, 1};
  bool growth = out.rounds.size() == 3;
  std::ostringstream d;
  d << "points=" << out.points.size() << " off_surface=" << off << " time=" << secs << "s images(axis0,axis1):";
  for (const auto& r : out.rounds) {
    const int receiving = r.axis == 0 ? 1 : 0;
    growth = growth && r.images[static_cast<std::size_t>(receiving)] > prev[static_cast<std::size_t>(receiving)] &&
             r.images[static_cast<std::size_t>(1 - receiving)] >= prev[static_cast<std::size_t>(1 - receiving)];
    prev = r.images;
    d << " r" << r.round << "=(" << r.images[0] << "," << r.images[1] << ")";
  }
  const bool ok = point_height(seed) <= 5 && check_admissible(s).admissible && out.points.size() >= kMinPoints &&
                  off == 0 && growth && secs < kPropagateSeconds;
  report(4, "propagation soundness and fibre growth", ok, d.str());
}

void criterion_oracle_containment(const PropagationResult& res) {
  const auto s = fixtures::acceptance_surface();
  const auto all = oracle::enumerate_points(s, kContainmentHeight);
  std::vector<SurfacePoint> low;
  for (const auto& p : res.points)
    if (point_height(p) <= kContainmentHeight) low.push_back(p);
  bool ok = std::includes(all.begin(), all.end(), low.begin(), low.end());
  auto less = [](const Proj1& a, const Proj1& b) { return compare(a, b) < 0; };
  std::ostringstream d;
  d << "propagated<=" << kContainmentHeight << ": " << low.size() << " of " << all.size() << " oracle points;";
  for (int axis : {0, 1}) {
    const auto fibres = oracle::fibres_with_points(s, axis, kContainmentHeight);
    const auto images = fibre_images(low, axis);
    const bool sup = std::includes(fibres.begin(), fibres.end(), images.begin(), images.end(), less);
    ok = ok && sup;
    d << " axis" << axis << " images " << images.size() << " within " << fibres.size();
  }
  report(5, "propagated points are found by the exhaustive search", ok, d.str());
}

void criterion_density(const PropagationResult& depth3) {
  const auto s = fixtures::acceptance_surface();
  const auto depth1 = propagate(s, fixtures::acceptance_seed(), acceptance_config(1));
  const auto v3 = density_witness(ModelKind::trilinear, depth3.points, {3, 3, 3});
  const auto v1 = density_witness(ModelKind::trilinear, depth1.points, {3, 3, 3});
  std::ostringstream d;
  d << "depth3 rank " << v3.rank << "/" << v3.expected_rank << " (" << depth3.points.size() << " points), depth1 rank "
    << v1.rank << "/" << v1.expected_rank << " (" << depth1.points.size() << " points)";
  report(6, "density witness in multidegree (3,3,3)", v3.dense && !v1.dense, d.str());
}

void criterion_conics() {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> d(-5, 5);
  int made = 0, identity_fail = 0, miss = 0;
  std::size_t checked = 0;
  Int max_par = 0;
  while (made < kRandomConics) {
    const Point3 P{d(rng), d(rng), d(rng)};
    if (P[2] == 0) continue;
    const long xx = d(rng), yy = d(rng), xy = d(rng), xz = d(rng), yz = d(rng);
    const Rat rest = xx * P[0] * P[0] + yy * P[1] * P[1] + xy * P[0] * P[1] + xz * P[0] * P[2] + yz * P[1] * P[2];
    const Rat zz = -rest / (P[2] * P[2]);
    const auto q = TernaryConic::from_quadratic(xx, yy, zz, xy, xz, yz);
    if (!conic_is_smooth(q)) continue;
    ++made;
    const auto phi = parametrize_through_point(q, P);
    if (!phi.identity_holds(q)) ++identity_fail;
    const long B = kConicPointHeight;
    for (long x = -B; x <= B; ++x)
      for (long y = -B; y <= B; ++y)
        for (long z = -B; z <= B; ++z) {
          const Point3 X{x, y, z};
          if ((x == 0 && y == 0 && z == 0) || q.value(X) != 0) continue;
          ++checked;
          const auto par = phi.parameter_of(X);
          std::array<Int, 3> xi{x, y, z};
          make_primitive(xi);
          max_par = std::max(max_par, height(par));
          if (height(par) > kParameterHeight || phi.at(par[0], par[1]) != xi) ++miss;
        }
  }
  report(7, "conic parametrization identity and surjectivity", identity_fail == 0 && miss == 0,
         std::to_string(made) + " conics, " + std::to_string(checked) + " brute-force points, " +
             std::to_string(identity_fail) + " identity failures, " + std::to_string(miss) +
             " misses, largest parameter height " + max_par.get_str());
}

std::vector<long double> as_ld(const BinaryForm& f) {
  std::vector<long double> out;
  for (const auto& c : f.coeffs()) out.push_back(static_cast<long double>(c.get_d()));
  return out;
}

void criterion_fibre_products() {
  std::mt19937 rng(777);
  std::uniform_int_distribution<long> d(-9, 9);
  int generic = 0, generic_bad = 0, constructed = 0, constructed_bad = 0, disagree = 0;
  auto oracle_check = [&](const BinaryForm& a, const BinaryForm& b, bool got) {
    if (got != oracles::numeric_fibre_product_irreducible(as_ld(a), as_ld(b))) ++disagree;
  };
  while (generic < kRandomPairs) {
    const BinaryForm r1{d(rng), d(rng), d(rng)}, r2{d(rng), d(rng), d(rng)};
    if (r1.is_zero() || r2.is_zero()) continue;
    // verified-disjoint branch loci: no common root, numerically as well
    if (!branch_loci_disjoint(r1, r2) || oracles::numeric_share_root(as_ld(r1), as_ld(r2))) continue;
    if (is_square_over_closure(r1) || is_square_over_closure(r2)) continue;
    ++generic;
    const bool irr = fibre_product_irreducible(r1, r2);
    if (!irr) ++generic_bad;
    oracle_check(r1, r2, irr);
  }
  // constructed reducible cases: r1 a square, r2 a square, or r2 = c r1
  // (every branch point shared)
  for (int i = 0; i < 60; ++i) {
    const BinaryForm lin = BinaryForm::linear(d(rng) == 0 ? 1 : d(rng), d(rng));
    BinaryForm other{d(rng), d(rng), d(rng)};
    if (other.is_zero()) other = BinaryForm{1, 0, 1};
    BinaryForm r1, r2;
    switch (i % 3) {
      case 0: r1 = lin * lin; r2 = other; break;
      case 1: r1 = other; r2 = lin * lin * Rat(3); break;
      default: r1 = other; r2 = other * Rat(-2); break;
    }
    ++constructed;
    const bool irr = fibre_product_irreducible(r1, r2);
    if (irr) ++constructed_bad;
    oracle_check(r1, r2, irr);
  }
  report(8, "fibre product irreducibility for double covers",
         generic_bad == 0 && constructed_bad == 0 && disagree == 0,
         std::to_string(generic) + " disjoint pairs (" + std::to_string(generic_bad) + " wrong), " +
             std::to_string(constructed) + " constructed reducible (" + std::to_string(constructed_bad) +
             " wrong), oracle disagreements " + std::to_string(disagree));
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void criterion_determinism(const std::string& exe) {
  {
    std::ofstream("acc_surface.json") << io::dump(io::to_json(fixtures::acceptance_surface()));
    std::ofstream("acc_point.json") << io::dump(io::to_json(fixtures::acceptance_seed()));
  }
  // prerequisite for the density command
  const std::string prep = "\"" + exe + "\" surface propagate --surface acc_surface.json --point acc_point.json "
                           "--depth 3 --sample-bound 3 --height-cap 1000000 --out acc_pts.csv "
                           "--manifest acc_prep.json > acc_prep.out 2>&1";
  const struct {
    std::string name, args;
  } commands[] = {
      {"enumerate", "lattice enumerate --degree 1 --kind conic --out acc_enum.json"},
      {"second", "lattice second-fibration --degree 2 --class [1,-1,0,0,0,0,0,0] --out acc_second.json"},
      {"audit", "lattice audit --degree 2 --out acc_audit.json"},
      {"propagate", "surface propagate --surface acc_surface.json --point acc_point.json --depth 3 "
                    "--sample-bound 3 --height-cap 1000000 --out acc_prop.csv --stats acc_prop_stats.json"},
      {"oracle", "surface oracle --surface acc_surface.json --height 12 --out acc_oracle.csv"},
      {"density", "surface density --points acc_pts.csv --degrees 3,3,3 --out acc_density.json"},
      {"discriminant", "surface discriminant --surface acc_surface.json --axis 1 --out acc_disc.json"},
      {"fibreproduct", "fibreproduct --r1 0,1,0 --r2 1,0,-1 --out acc_fp.json"},
  };
  bool ok = std::system(prep.c_str()) == 0;
  int replays = 0, bad = 0;
  for (const auto& c : commands) {
    const std::string manifest = "acc_" + c.name + ".manifest.json";
    const std::string first = "\"" + exe + "\" --threads 1 --manifest " + manifest + " " + c.args + " > acc_" +
                              c.name + ".stdout";
    if (std::system(first.c_str()) != 0) {
      ++bad;
      continue;
    }
    const auto m = cli::manifest_from_json(io::json::parse(slurp(manifest)));
    std::map<std::string, std::string> saved;
    for (const auto& [path, digest] : m.outputs)
      if (path != cli::kStdoutKey) saved[path] = slurp(path);
    for (int threads : {1, 4}) {
      ++replays;
      const std::string rep = "\"" + exe + "\" replay " + manifest + " --threads " + std::to_string(threads) +
                              " > acc_replay.out 2>&1";
      bool same = std::system(rep.c_str()) == 0;
      same = same && io::json::parse(slurp("acc_replay.out"))["identical"] == true;
      for (const auto& [path, bytes] : saved) same = same && slurp(path) == bytes;
      if (!same) ++bad;
    }
  }
  ok = ok && bad == 0;
  report(9, "CLI runs replay byte-identically at 1 and 4 threads", ok,
         std::to_string(std::size(commands)) + " commands, " + std::to_string(replays) + " replays, " +
             std::to_string(bad) + " mismatches");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cbundle>\n";
    return 2;
  }
  criterion_lattice_identities();
  criterion_enumeration();
  criterion_involution();
  PropagationResult depth3;
  criterion_propagation(depth3);
  criterion_oracle_containment(depth3);
  criterion_density(depth3);
  criterion_conics();
  criterion_fibre_products();
  criterion_determinism(argv[1]);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
