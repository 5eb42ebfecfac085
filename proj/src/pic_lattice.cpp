#include "cbundle/pic_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "cbundle/errors.hpp"

namespace cbundle::pic {

Lattice::Lattice(int blowups) : r_(blowups) {
  if (blowups < 0 || blowups > 8)
    throw PreconditionError("blow-up count must be in [0, 8], got " + std::to_string(blowups));
}

Lattice Lattice::of_degree(int degree) {
  if (degree < 1 || degree > 9)
    throw PreconditionError("degree must be in [1, 9], got " + std::to_string(degree));
  return Lattice(9 - degree);
}

DivisorClass::DivisorClass(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
}

DivisorClass DivisorClass::zero(const Lattice& lat) {
  return DivisorClass(std::vector<Int>(static_cast<std::size_t>(lat.dimension()), Int(0)));
}

DivisorClass DivisorClass::basis(const Lattice& lat, int index) {
  if (index < 0 || index >= lat.dimension()) throw DimensionError("basis index out of range");
  auto c = zero(lat);
  c.coeffs_[static_cast<std::size_t>(index)] = 1;
  return c;
}

namespace {

void require_same_length(const DivisorClass& a, const DivisorClass& b) {
  if (a.size() != b.size())
    throw DimensionError("class lengths differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
}

void require_in(const Lattice& lat, const DivisorClass& a) {
  if (a.size() != static_cast<std::size_t>(lat.dimension()))
    throw DimensionError("class " + a.to_string() + " does not have length " +
                         std::to_string(lat.dimension()));
}

}  // namespace

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
  require_same_length(*this, o);
  std::vector<Int> r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeffs_[i] + o.coeffs_[i];
  return DivisorClass(std::move(r));
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const {
  require_same_length(*this, o);
  std::vector<Int> r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeffs_[i] - o.coeffs_[i];
  return DivisorClass(std::move(r));
}

DivisorClass DivisorClass::operator-() const {
  std::vector<Int> r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = -coeffs_[i];
  return DivisorClass(std::move(r));
}

DivisorClass operator*(const Int& k, const DivisorClass& c) {
  std::vector<Int> r(c.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = k * c[i];
  return DivisorClass(std::move(r));
}

bool DivisorClass::operator==(const DivisorClass& o) const { return coeffs_ == o.coeffs_; }

bool DivisorClass::operator<(const DivisorClass& o) const {
  return compare(coeffs_, o.coeffs_) < 0;
}

std::string DivisorClass::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
  os << ']';
  return os.str();
}

Int intersect(const Lattice& lat, const DivisorClass& a, const DivisorClass& b) {
  require_same_length(a, b);
  require_in(lat, a);
  Int s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

DivisorClass canonical_class(const Lattice& lat) {
  std::vector<Int> k(static_cast<std::size_t>(lat.dimension()), Int(1));
  k[0] = -3;
  return DivisorClass(std::move(k));
}

Int arithmetic_genus(const Lattice& lat, const DivisorClass& d) {
  Int num = intersect(lat, d, d) + intersect(lat, canonical_class(lat), d);
  if (mpz_odd_p(num.get_mpz_t()))
    throw NonIntegralGenusError("D^2 + K.D = " + num.get_str() + " is odd for D = " +
                                d.to_string());
  return 1 + num / 2;
}

Rat riemann_roch_chi(const Lattice& lat, const DivisorClass& d) {
  Rat half_product(intersect(lat, d, d - canonical_class(lat)), 2);
  half_product.canonicalize();
  return half_product + 1;
}

DegreeWindow degree_window(const Lattice& lat, ClassConstraint c) {
  const long d = lat.degree();
  const long k = c.canonical_degree;
  const long r = lat.blowups();
  const long constant = k * k + r * c.self_intersection;
  auto feasible = [&](long a) { return d * a * a + 6 * k * a + constant <= 0; };
  const long double disc = 36.0L * k * k - 4.0L * d * constant;
  if (disc < 0) return {1, 0};
  const long double root = std::sqrt(disc);
  long lo = static_cast<long>(std::floor((-6.0L * k - root) / (2.0L * d))) - 1;
  long hi = static_cast<long>(std::ceil((-6.0L * k + root) / (2.0L * d))) + 1;
  while (lo <= hi && !feasible(lo)) ++lo;
  while (hi >= lo && !feasible(hi)) --hi;
  return {lo, hi};
}

namespace {

// Non-increasing integer vectors of length `len` with the given sum and sum
// of squares.
void sorted_solutions(int len, long sum, long squares, std::vector<std::vector<long>>& out) {
  std::vector<long> cur;
  cur.reserve(static_cast<std::size_t>(len));
  std::function<void(long, long, long)> rec = [&](long cap, long s, long q) {
    const int k = len - static_cast<int>(cur.size());
    if (k == 0) {
      if (s == 0 && q == 0) out.push_back(cur);
      return;
    }
    if (q < 0) return;
    // Cauchy-Schwarz on the remaining k entries.
    if (s * s > static_cast<long>(k) * q) return;
    const long root = static_cast<long>(std::floor(std::sqrt(static_cast<long double>(q))));
    long top = std::min(cap, root);
    // The largest remaining entry is at least the mean.
    long bottom = std::max(-root, s >= 0 ? (s + k - 1) / k : -((-s) / k));
    for (long c = top; c >= bottom; --c) {
      cur.push_back(c);
      rec(c, s - c, q - c * c);
      cur.pop_back();
    }
  };
  rec(std::numeric_limits<long>::max(), sum, squares);
}

std::vector<DivisorClass> classes_with_degree(const Lattice& lat, ClassConstraint c, long a) {
  const int r = lat.blowups();
  std::vector<DivisorClass> out;
  const long sum = 3 * a + c.canonical_degree;  // sum of -b_i
  const long squares = a * a - c.self_intersection;
  if (squares < 0) return out;
  std::vector<std::vector<long>> sorted;
  sorted_solutions(r, sum, squares, sorted);
  for (auto& v : sorted) {
    std::sort(v.begin(), v.end());
    do {
      std::vector<Int> coeffs;
      coeffs.reserve(static_cast<std::size_t>(r) + 1);
      coeffs.emplace_back(a);
      for (long x : v) coeffs.emplace_back(-x);
      out.emplace_back(std::move(coeffs));
    } while (std::next_permutation(v.begin(), v.end()));
  }
  return out;
}

std::vector<DivisorClass> merge_sorted(std::vector<std::vector<DivisorClass>>& parts) {
  std::vector<DivisorClass> all;
  for (auto& p : parts)
    for (auto& x : p) all.push_back(std::move(x));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace

std::vector<DivisorClass> enumerate_classes(const Lattice& lat, ClassConstraint c) {
  const auto w = degree_window(lat, c);
  if (w.lo > w.hi) return {};
  const long n = w.hi - w.lo + 1;
  std::vector<std::vector<DivisorClass>> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) parts[static_cast<std::size_t>(i)] = classes_with_degree(lat, c, w.lo + i);
  return merge_sorted(parts);
}

std::vector<DivisorClass> enumerate_classes_serial(const Lattice& lat, ClassConstraint c) {
  const auto w = degree_window(lat, c);
  if (w.lo > w.hi) return {};
  std::vector<std::vector<DivisorClass>> parts;
  for (long a = w.lo; a <= w.hi; ++a) parts.push_back(classes_with_degree(lat, c, a));
  return merge_sorted(parts);
}

std::vector<DivisorClass> enumerate_exceptional(const Lattice& lat) {
  return enumerate_classes(lat, kExceptional);
}

std::vector<DivisorClass> enumerate_conic_classes(const Lattice& lat) {
  if (lat.blowups() == 0) return {};
  return enumerate_classes(lat, kConic);
}

bool is_conic_class(const Lattice& lat, const DivisorClass& c) {
  if (c.size() != static_cast<std::size_t>(lat.dimension())) return false;
  return intersect(lat, c, c) == kConic.self_intersection &&
         intersect(lat, canonical_class(lat), c) == kConic.canonical_degree;
}

namespace {

long anticanonical_multiplier(const Lattice& lat) {
  const int d = lat.degree();
  if (d != 1 && d != 2 && d != 4)
    throw NonIntegralClassError("degree must be in {1,2,4} for -(4/d)K to be integral, got " +
                                std::to_string(d));
  return 4 / d;
}

}  // namespace

DivisorClass second_fibration(const Lattice& lat, const DivisorClass& conic) {
  const long m = anticanonical_multiplier(lat);
  require_in(lat, conic);
  if (!is_conic_class(lat, conic))
    throw PreconditionError("not a conic class (need C^2 = 0, K.C = -2): " + conic.to_string());
  const auto k = canonical_class(lat);
  DivisorClass d = Int(-m) * k - conic;
  if (intersect(lat, d, d) != 0 || intersect(lat, k, d) != -2 ||
      intersect(lat, conic, d) != 8 / lat.degree() || arithmetic_genus(lat, d) != 0)
    throw Error("second fibration numerics failed for " + conic.to_string());
  return d;
}

FibrationAudit audit_second_fibrations(const Lattice& lat) {
  anticanonical_multiplier(lat);
  const auto k = canonical_class(lat);
  const int d = lat.degree();
  const auto conics = enumerate_conic_classes(lat);
  std::set<DivisorClass> conic_set(conics.begin(), conics.end());

  FibrationAudit audit{d, conics.size(), {}, true};
  audit.entries.reserve(conics.size());
  for (const auto& c : conics) {
    ConicAudit entry;
    entry.conic = c;
    entry.second = Int(-(4 / d)) * k - c;
    const auto& dd = entry.second;
    auto add = [&](std::string name, Int expected, Int actual) {
      bool ok = expected == actual;
      entry.checks.push_back({std::move(name), std::move(expected), std::move(actual), ok});
    };
    add("self_intersection", 0, intersect(lat, dd, dd));
    add("anticanonical_degree", 2, -intersect(lat, k, dd));
    add("fibre_intersection", 8 / d, intersect(lat, c, dd));
    Int genus;
    try {
      genus = arithmetic_genus(lat, dd);
    } catch (const NonIntegralGenusError&) {
      genus = -1;
    }
    add("arithmetic_genus", 0, genus);
    Rat chi = riemann_roch_chi(lat, dd);
    add("euler_characteristic", 2, chi.get_den() == 1 ? Int(chi.get_num()) : Int(-1));
    add("residual_anticanonical", -(d + 2), -intersect(lat, k, k - dd));
    add("is_conic_class", 1, conic_set.count(dd) ? 1 : 0);
    add("involution", 1, (Int(-(4 / d)) * k - dd) == c ? 1 : 0);
    entry.pass = std::all_of(entry.checks.begin(), entry.checks.end(),
                             [](const IdentityCheck& ch) { return ch.pass; });
    audit.pass = audit.pass && entry.pass;
    audit.entries.push_back(std::move(entry));
  }
  return audit;
}

}  // namespace cbundle::pic
