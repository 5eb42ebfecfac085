#pragma once

// Plane conics, their parametrization through a rational point, and the
// double-cover criteria built on binary forms.

#include <array>
#include <string>
#include <vector>

#include "cbundle/arith.hpp"
#include "cbundle/binary_form.hpp"

namespace cbundle {

using Point3 = std::array<Rat, 3>;

/// Symmetric 3x3 rational matrix M; the conic is X^T M X = 0.
class TernaryConic {
 public:
  /// Row-major entries; throws InvalidInputError if not symmetric or zero.
  explicit TernaryConic(std::array<Rat, 9> entries);
  /// From the quadratic form sum c_ij x_i x_j given by its six coefficients
  /// (xx, yy, zz, xy, xz, yz).
  static TernaryConic from_quadratic(const Rat& xx, const Rat& yy, const Rat& zz, const Rat& xy,
                                     const Rat& xz, const Rat& yz);

  const Rat& at(int i, int j) const { return m_[static_cast<std::size_t>(3 * i + j)]; }
  const std::array<Rat, 9>& entries() const { return m_; }

  Rat value(const Point3& p) const;
  Rat bilinear(const Point3& p, const Point3& q) const;
  Rat determinant() const;

  /// Q(f0, f1, f2) as a binary form of degree 2k.
  BinaryForm compose(const std::array<BinaryForm, 3>& f) const;

  bool operator==(const TernaryConic&) const = default;

 private:
  std::array<Rat, 9> m_;
};

/// true iff det M != 0.
bool conic_is_smooth(const TernaryConic& q);

/// Stereographic projection from a rational point P of a smooth conic.
/// phi(s:t) is the second intersection of the conic with the line through P
/// in direction s*E1 + t*E2, where (P, E1, E2) is a unimodular integer basis
/// reduced modulo P. P itself is the image of the tangent direction.
class ConicParametrization {
 public:
  const std::array<BinaryForm, 3>& forms() const { return forms_; }
  const Point3& base_point() const { return base_; }

  /// Integer point phi(s:t), primitive and sign-normalized.
  std::array<Int, 3> at(const Int& s, const Int& t) const;
  /// Parameter of a conic point: phi(parameter_of(X)) is proportional to X.
  /// PreconditionError if X is not on the conic.
  Proj1 parameter_of(const Point3& x) const;

  /// Q(phi) == 0 coefficient by coefficient.
  bool identity_holds(const TernaryConic& q) const;

 private:
  friend ConicParametrization parametrize_through_point(const TernaryConic&, const Point3&);
  std::array<BinaryForm, 3> forms_;
  Point3 base_;
  // Columns P, E1, E2 of the basis used by the projection.
  std::array<std::array<Int, 3>, 3> basis_;
  TernaryConic conic_{std::array<Rat, 9>{1, 0, 0, 0, 1, 0, 0, 0, 1}};
};

/// PreconditionError if P is not on Q; DegenerateConicError if Q is singular.
ConicParametrization parametrize_through_point(const TernaryConic& q, const Point3& p);

struct BranchLocus {
  BinaryForm form;
  std::vector<ProjectiveRoot> rational_points;
  bool squarefree;
};

/// Branch data of (u:v:z) -> (u:v) on z^2 = r(u, v): the branch form is r
/// itself. NonReducedError for r == 0.
BranchLocus discriminant_of_double_cover(const BinaryForm& r);

/// Res(r1, r2) != 0. InvalidInputError on a zero form.
bool branch_loci_disjoint(const BinaryForm& r1, const BinaryForm& r2);

struct FibreProductReport {
  bool disjoint_branch;
  bool irreducible;
  std::array<bool, 3> squares;  // r1, r2, r1*r2
};

/// Geometric irreducibility of the fibre product of z^2 = r1 and w^2 = r2
/// over P^1: none of r1, r2, r1*r2 is a square over the closure.
bool fibre_product_irreducible(const BinaryForm& r1, const BinaryForm& r2);
FibreProductReport analyse_fibre_product(const BinaryForm& r1, const BinaryForm& r2);

}  // namespace cbundle
