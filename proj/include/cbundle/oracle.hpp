#pragma once

// Brute-force ground truth for the other modules: exhaustive height-bounded
// point search on the surface models and boxed enumeration of divisor
// classes. Nothing here shares an algorithm with the code it checks.

#include <vector>

#include "cbundle/pic_lattice.hpp"
#include "cbundle/surface.hpp"

namespace cbundle::oracle {

/// Every canonical point whose P^1 factors have height <= bound, sorted.
/// Trilinear: loops over all three factors. Cover: loops over both factors
/// and takes z = +-sqrt(F) when F is a square. OpenMP-parallel over the
/// first factor.
std::vector<SurfacePoint> enumerate_points(const SurfaceModel& s, long bound);
/// Serial reference for enumerate_points.
std::vector<SurfacePoint> enumerate_points_serial(const SurfaceModel& s, long bound);

/// Fibres of the given fibration containing a point of height <= bound.
std::vector<Proj1> fibres_with_points(const SurfaceModel& s, int axis, long bound);

/// Inclusive coefficient box: a in [a_lo, a_hi], every b_i in [b_lo, b_hi].
struct ClassBox {
  long a_lo = 0, a_hi = 10, b_lo = -3, b_hi = 10;
  ClassBox enlarged(long by) const { return {a_lo - by, a_hi + by, b_lo - by, b_hi + by}; }
  bool operator==(const ClassBox&) const = default;
};

/// All classes in the box with the given X^2 and K.X, sorted. Plain
/// coordinate-by-coordinate search; branches are cut only when the partial
/// sums can no longer reach the targets.
std::vector<pic::DivisorClass> enumerate_classes_boxed(const pic::Lattice& lat, pic::ClassConstraint c,
                                                       const ClassBox& box);

struct StabilizedEnumeration {
  std::vector<pic::DivisorClass> classes;
  ClassBox box;  // the box whose +step enlargement changed nothing
  int enlargements;
};

/// Grows the box by `step` on every side until the result no longer changes.
StabilizedEnumeration enumerate_classes_stabilized(const pic::Lattice& lat, pic::ClassConstraint c,
                                                   ClassBox start = {}, long step = 2,
                                                   int max_enlargements = 16);

}  // namespace cbundle::oracle
