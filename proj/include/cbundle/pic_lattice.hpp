#pragma once

// Intersection theory on Pic(S) = Z^{1+r} for a blow-up S of the plane in
// r points, in the basis (L, E1, ..., Er) with form diag(1, -1, ..., -1).

#include <string>
#include <vector>

#include "cbundle/arith.hpp"

namespace cbundle::pic {

class Lattice {
 public:
  /// r blow-ups, 0 <= r <= 8.
  explicit Lattice(int blowups);
  static Lattice of_degree(int degree);

  int blowups() const { return r_; }
  int degree() const { return 9 - r_; }
  int dimension() const { return r_ + 1; }

  bool operator==(const Lattice&) const = default;

 private:
  int r_;
};

/// aL + sum b_i E_i, stored as (a, b_1, ..., b_r).
class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {}
  DivisorClass(std::initializer_list<long> coeffs);

  static DivisorClass zero(const Lattice& lat);
  /// L or E_i (index 0 is L).
  static DivisorClass basis(const Lattice& lat, int index);

  std::size_t size() const { return coeffs_.size(); }
  const Int& operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  DivisorClass operator+(const DivisorClass& o) const;
  DivisorClass operator-(const DivisorClass& o) const;
  DivisorClass operator-() const;
  friend DivisorClass operator*(const Int& k, const DivisorClass& c);

  bool operator==(const DivisorClass& o) const;
  bool operator<(const DivisorClass& o) const;

  std::string to_string() const;

 private:
  std::vector<Int> coeffs_;
};

/// a0*b0 - sum ai*bi. Throws DimensionError on length mismatch.
Int intersect(const Lattice& lat, const DivisorClass& a, const DivisorClass& b);

/// K = -3L + E1 + ... + Er.
DivisorClass canonical_class(const Lattice& lat);

/// 1 + (D^2 + K.D)/2; NonIntegralGenusError when D^2 + K.D is odd.
Int arithmetic_genus(const Lattice& lat, const DivisorClass& d);

/// Riemann-Roch: D.(D - K)/2 + chi(O_S), with chi(O_S) = 1 on a rational
/// surface.
Rat riemann_roch_chi(const Lattice& lat, const DivisorClass& d);

/// Numerical type of a class: self-intersection and degree against K.
struct ClassConstraint {
  long self_intersection;
  long canonical_degree;
};

inline constexpr ClassConstraint kExceptional{-1, -1};
inline constexpr ClassConstraint kConic{0, -2};

/// Closed interval of L-coefficients that can carry a class of the given
/// type. Follows from Cauchy-Schwarz applied to the E-coefficients:
///   d a^2 + 6 (K.X) a + ((K.X)^2 + r X^2) <= 0.
/// Empty when lo > hi.
struct DegreeWindow {
  long lo;
  long hi;
};
DegreeWindow degree_window(const Lattice& lat, ClassConstraint c);

/// All classes X with X^2 and K.X as given, sorted lexicographically.
/// OpenMP-parallel over the L-coefficient; output is schedule independent.
std::vector<DivisorClass> enumerate_classes(const Lattice& lat, ClassConstraint c);
/// Serial reference for enumerate_classes.
std::vector<DivisorClass> enumerate_classes_serial(const Lattice& lat, ClassConstraint c);

/// E^2 = -1, K.E = -1.
std::vector<DivisorClass> enumerate_exceptional(const Lattice& lat);
/// C^2 = 0, K.C = -2. Empty for r = 0.
std::vector<DivisorClass> enumerate_conic_classes(const Lattice& lat);

bool is_conic_class(const Lattice& lat, const DivisorClass& c);

/// D = -(4/d)K - C for a conic class C on a surface of degree d in {1,2,4}.
/// Throws NonIntegralClassError for other degrees and PreconditionError if C
/// is not a conic class. The result is checked to be a conic class meeting
/// C in 8/d points.
DivisorClass second_fibration(const Lattice& lat, const DivisorClass& conic);

struct IdentityCheck {
  std::string name;
  Int expected;
  Int actual;
  bool pass;
};

struct ConicAudit {
  DivisorClass conic;
  DivisorClass second;
  std::vector<IdentityCheck> checks;
  bool pass;
};

struct FibrationAudit {
  int degree;
  std::size_t classes;
  std::vector<ConicAudit> entries;
  bool pass;
};

/// Recomputes, for every conic class C, the numerics of D = -(4/d)K - C:
/// D^2 = 0, -K.D = 2, C.D = 8/d, p_a(D) = 0, chi(D) = 2, -K.(K - D) = -(d+2)
/// and that D is again a conic class with second_fibration(D) = C.
FibrationAudit audit_second_fibrations(const Lattice& lat);

}  // namespace cbundle::pic
