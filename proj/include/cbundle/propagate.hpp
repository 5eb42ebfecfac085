#pragma once

// Rational point propagation by alternating two conic fibrations: every
// point on a smooth fibre of one fibration yields, through the rational
// parametrization of that fibre, points on many fibres of the other.

#include <array>
#include <optional>
#include <vector>

#include "cbundle/surface.hpp"

namespace cbundle {

struct PropagationConfig {
  int depth = 3;
  /// Max height of the P^1 parameters sampled on each fibre.
  long sample_bound = 3;
  /// Points of height above the cap are discarded (and counted).
  Int height_cap = 1000000;
  /// The two fibrations alternated; the first is tried first.
  std::array<int, 2> axes{0, 1};
  /// Forces the starting axis; by default the first axis of `axes` whose
  /// fibre through the seed is smooth.
  std::optional<int> start_axis;
};

/// Per-round bookkeeping. `images` holds |fibre_images(points, axes[i])|
/// after the round; `current_images` is the count on the axis parametrized
/// in this round.
struct RoundStats {
  int round;
  int axis;
  std::size_t fibres_processed;
  std::size_t degenerate_skipped;
  std::size_t points_emitted;
  std::size_t truncated;
  std::size_t new_points;
  std::size_t total_points;
  std::array<std::size_t, 2> images;
  std::size_t current_images;
};

struct PropagationResult {
  std::vector<SurfacePoint> points;  // canonical, sorted, includes the seed
  std::vector<RoundStats> rounds;
  int start_axis;
};

/// Breadth-first over fibres: round k parametrizes every not yet visited
/// fibre (on the round's axis) that contains a known point, emitting the
/// points at all parameters of height <= sample_bound. Fibres are processed
/// in parallel; the result does not depend on the schedule.
/// Throws PreconditionError if the seed is not on the surface and
/// NoSmoothStartError if it only lies on degenerate fibres of both axes.
PropagationResult propagate(const SurfaceModel& s, const SurfacePoint& seed, const PropagationConfig& cfg);
/// Serial reference for propagate.
PropagationResult propagate_serial(const SurfaceModel& s, const SurfacePoint& seed, const PropagationConfig& cfg);

/// pi_axis of each point, canonical, sorted, duplicate free.
std::vector<Proj1> fibre_images(const std::vector<SurfacePoint>& points, int axis);

}  // namespace cbundle
