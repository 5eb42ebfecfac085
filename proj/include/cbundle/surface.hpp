#pragma once

// Concrete double conic bundle surfaces over Q:
//   trilinear: sum c_ijk x_i y_j z_k = 0 in P1 x P1 x P1 (three conic
//              fibrations, one per factor; a del Pezzo surface of degree 6);
//   cover:     z^2 = F(u,v; s,t), F of bidegree (2,2) (two conic fibrations;
//              degree 4).

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cbundle/arith.hpp"
#include "cbundle/binary_form.hpp"
#include "cbundle/conic.hpp"

namespace cbundle {

/// Coefficient c_ijk at index 4i + 2j + k.
struct TrilinearSurface {
  std::array<Int, 8> c;
  const Int& coeff(int i, int j, int k) const { return c[static_cast<std::size_t>(4 * i + 2 * j + k)]; }
  bool operator==(const TrilinearSurface&) const = default;
};

/// Coefficient a_ij of u^i v^(2-i) s^j t^(2-j) at index 3i + j.
struct BiquadraticCover {
  std::array<Int, 9> a;
  const Int& coeff(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }
  bool operator==(const BiquadraticCover&) const = default;
};

using SurfaceModel = std::variant<TrilinearSurface, BiquadraticCover>;

enum class ModelKind { trilinear, cover };

ModelKind kind_of(const SurfaceModel& s);
/// Number of conic fibrations: 3 (trilinear) or 2 (cover).
int fibration_count(ModelKind k);
int fibration_count(const SurfaceModel& s);

/// Trilinear: three P^1 factors (x, y, z). Cover: two factors ((u:v), (s:t))
/// and the weighted coordinate z, which scales by lambda*mu when the factors
/// scale by lambda and mu.
struct SurfacePoint {
  std::vector<Proj1> factors;
  std::optional<Int> z;

  bool operator==(const SurfacePoint& o) const;
  bool operator<(const SurfacePoint& o) const;
  std::string to_string() const;
};

/// Max absolute value over the P^1 factor entries. The cover's z is not part
/// of the height: it is determined up to sign by the factors.
Int point_height(const SurfacePoint& p);

/// Primitive sign-normalized factors; for the cover z is rescaled to match.
/// InvalidInputError on zero factors or a non-integral rescaled z.
SurfacePoint canonicalize(ModelKind kind, SurfacePoint p);
bool is_canonical(ModelKind kind, const SurfacePoint& p);

/// Exact evaluation of the defining equation (F - z^2 for the cover).
Int evaluate(const SurfaceModel& s, const SurfacePoint& p);
/// DimensionError on arity mismatch.
bool contains(const SurfaceModel& s, const SurfacePoint& p);

/// Residual (1,1)-curve of the trilinear model over a point of one factor:
/// sum B[j][k] p_j q_k = 0, rows indexed by the parameter factor, columns by
/// the solved factor. Axis 0: rows y, columns z. Axis 1: rows x, columns z.
/// Axis 2: rows x, columns y.
struct TrilinearFibre {
  int axis;
  Proj1 base;
  std::array<std::array<Int, 2>, 2> matrix;
  bool degenerate;
};

/// Fibre of the cover over a base point: the conic z^2 = q in the
/// coordinates (p0, p1, z) of the other factor.
struct CoverFibre {
  int axis;
  Proj1 base;
  BinaryForm quadratic;
  TernaryConic conic;
  bool degenerate;
};

using Fibre = std::variant<TrilinearFibre, CoverFibre>;

/// Which factors play parameter and solved roles for a trilinear axis.
std::array<int, 2> trilinear_roles(int axis);

Fibre fibre_over(const SurfaceModel& s, int axis, const Proj1& base);
bool fibre_is_degenerate(const Fibre& f);

/// Base point of the fibre through p on the given axis.
Proj1 fibre_coordinate(const SurfacePoint& p, int axis);

/// Determinant of the fibre matrix (trilinear, degree 2) or the discriminant
/// of the restricted quadratic (cover, degree 4), as a form in the base.
/// InadmissibleSurfaceError if identically zero.
BinaryForm discriminant_form(const SurfaceModel& s, int axis);

/// For the cover: restricting the fibration on the other axis to the fibre
/// over `base` gives the double cover z^2 = r; returns r in the coordinates
/// of the other factor. NonReducedError if r == 0.
BinaryForm restricted_branch_form(const BiquadraticCover& s, int axis, const Proj1& base);

/// Rational parametrization of a smooth fibre. Trilinear: by default the
/// parameter is the row factor and the column factor is solved linearly;
/// `solve_for` may name the row factor instead, which swaps the two roles.
/// Cover: stereographic projection through a given point of the fibre.
class FibreParametrization {
 public:
  FibreParametrization(const SurfaceModel& s, int axis, const Proj1& base,
                       const std::optional<SurfacePoint>& through, std::optional<int> solve_for = std::nullopt);

  int axis() const { return axis_; }
  const Proj1& base() const { return base_; }

  /// Canonical surface point at parameter (a:b).
  SurfacePoint point_at(const Int& a, const Int& b) const;
  /// The surface equation pulled back to the parameter line.
  BinaryForm pulled_back_equation() const;

 private:
  SurfaceModel surface_;
  int axis_;
  Proj1 base_;
  std::optional<TrilinearFibre> trilinear_;
  bool swapped_ = false;
  std::optional<ConicParametrization> conic_;
};

FibreParametrization parametrize_fibre(const SurfaceModel& s, int axis, const Proj1& base,
                                       const std::optional<SurfacePoint>& through = std::nullopt,
                                       std::optional<int> solve_for = std::nullopt);

struct AdmissibilityReport {
  bool admissible = true;
  std::string reason;
  /// Serialized discriminant form or singular point that failed.
  std::string witness;
  std::vector<SurfacePoint> singular_candidates_checked;
};

/// Smoothness proxy: nonzero squarefree discriminant on every fibration,
/// plus an exact Jacobian test at the singular point of every rational
/// degenerate fibre with base height <= 100.
AdmissibilityReport check_admissible(const SurfaceModel& s);
/// Throws InadmissibleSurfaceError when check_admissible fails.
void require_admissible(const SurfaceModel& s);

}  // namespace cbundle
