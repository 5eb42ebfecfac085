#pragma once

// Zariski-density witness: do the points escape every curve of a given
// multidegree on the surface?

#include <array>
#include <vector>

#include "cbundle/surface.hpp"

namespace cbundle {

struct DensityVerdict {
  bool dense;
  std::size_t rank;           // rank of the point/monomial evaluation matrix
  std::size_t expected_rank;  // dimension of the forms modulo the surface equation
  std::size_t monomials;
};

/// Forms of the given multidegree restricted to the surface. Trilinear:
/// degrees (a, b, c) in x, y, z; every multiple of the equation vanishes on
/// the surface, so the relevant dimension is
///   (a+1)(b+1)(c+1) - a*b*c.
/// Cover: degrees (a, b, e) with monomials z^k u^.. s^.. of bidegree
/// (a, b), z counted as (1, 1), k <= e; multiples of z^2 - F are removed.
std::size_t restricted_form_dimension(ModelKind kind, const std::array<int, 3>& degrees);

/// True iff no form of the multidegree that is nonzero on the surface
/// vanishes at every point: exact rank of the interpolation matrix equals
/// restricted_form_dimension. VacuousInputError on an empty set.
DensityVerdict density_witness(ModelKind kind, const std::vector<SurfacePoint>& points,
                               const std::array<int, 3>& degrees);

/// Exact rank over Q of an integer matrix (fraction-free elimination).
std::size_t exact_rank(const std::vector<std::vector<Int>>& rows, std::size_t columns);

}  // namespace cbundle
