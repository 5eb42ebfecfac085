#include "cbundle/propagate.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>

#include "cbundle/errors.hpp"

namespace cbundle {

namespace {

struct Proj1Less {
  bool operator()(const Proj1& a, const Proj1& b) const { return compare(a, b) < 0; }
};

struct FibreOutcome {
  std::vector<SurfacePoint> points;
  bool degenerate = false;
  std::size_t truncated = 0;
};

using ParamList = std::vector<std::array<std::int64_t, 2>>;

FibreOutcome process_fibre(const SurfaceModel& s, int axis, int next_axis, const Proj1& base,
                           const SurfacePoint& through, const ParamList& params, const Int& cap) {
  FibreOutcome out;
  if (fibre_is_degenerate(fibre_over(s, axis, base))) {
    out.degenerate = true;
    return out;
  }
  // On the trilinear model the next axis' coordinate is the solved one, so
  // each sampled point opens a new fibre there.
  std::optional<int> solve;
  if (kind_of(s) == ModelKind::trilinear) solve = next_axis;
  FibreParametrization fp(s, axis, base, through, solve);
  out.points.reserve(params.size());
  for (const auto& [a, b] : params) {
    SurfacePoint p = fp.point_at(Int(static_cast<long>(a)), Int(static_cast<long>(b)));
    if (point_height(p) > cap) {
      ++out.truncated;
      continue;
    }
    out.points.push_back(std::move(p));
  }
  return out;
}

void validate(const SurfaceModel& s, const PropagationConfig& cfg) {
  if (cfg.depth < 1) throw PreconditionError("depth must be >= 1");
  if (cfg.sample_bound < 1) throw PreconditionError("sample bound must be >= 1");
  if (cfg.height_cap < 1) throw PreconditionError("height cap must be >= 1");
  const int n = fibration_count(s);
  for (int a : cfg.axes)
    if (a < 0 || a >= n) throw PreconditionError("axis " + std::to_string(a) + " out of range");
  if (cfg.axes[0] == cfg.axes[1]) throw PreconditionError("the two propagation axes must differ");
}

int choose_start(const SurfaceModel& s, const SurfacePoint& p, const PropagationConfig& cfg) {
  auto smooth = [&](int axis) { return !fibre_is_degenerate(fibre_over(s, axis, fibre_coordinate(p, axis))); };
  if (cfg.start_axis) {
    const int a = *cfg.start_axis;
    if (a != cfg.axes[0] && a != cfg.axes[1])
      throw PreconditionError("start axis must be one of the propagation axes");
    if (!smooth(a)) throw NoSmoothStartError("the seed lies on a degenerate fibre of the start axis");
    return a;
  }
  for (int a : cfg.axes)
    if (smooth(a)) return a;
  throw NoSmoothStartError("the seed lies only on degenerate fibres of both axes");
}

PropagationResult run(const SurfaceModel& s, const SurfacePoint& seed, const PropagationConfig& cfg,
                      bool parallel) {
  validate(s, cfg);
  const ModelKind kind = kind_of(s);
  const SurfacePoint p0 = canonicalize(kind, seed);
  if (!contains(s, p0)) throw PreconditionError("seed " + p0.to_string() + " is not on the surface");

  PropagationResult result;
  result.start_axis = choose_start(s, p0, cfg);
  const ParamList params = primitive_pairs(cfg.sample_bound);

  std::set<SurfacePoint> known{p0};
  std::array<std::set<Proj1, Proj1Less>, 2> visited;
  int side = result.start_axis == cfg.axes[0] ? 0 : 1;

  for (int round = 1; round <= cfg.depth; ++round) {
    const int axis = cfg.axes[static_cast<std::size_t>(side)];
    const int next = cfg.axes[static_cast<std::size_t>(side ^ 1)];
    std::map<Proj1, const SurfacePoint*, Proj1Less> todo;
    for (const auto& p : known) {
      const Proj1& b = p.factors[static_cast<std::size_t>(axis)];
      if (!visited[static_cast<std::size_t>(side)].count(b)) todo.emplace(b, &p);
    }
    std::vector<std::pair<Proj1, const SurfacePoint*>> work(todo.begin(), todo.end());
    std::vector<FibreOutcome> outcomes(work.size());

    if (parallel) {
      std::exception_ptr failure;
      const long n = static_cast<long>(work.size());
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < n; ++i) {
        try {
          const auto& [base, rep] = work[static_cast<std::size_t>(i)];
          outcomes[static_cast<std::size_t>(i)] = process_fibre(s, axis, next, base, *rep, params, cfg.height_cap);
        } catch (...) {
#pragma omp critical(cbundle_propagate_failure)
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      for (std::size_t i = 0; i < work.size(); ++i)
        outcomes[i] = process_fibre(s, axis, next, work[i].first, *work[i].second, params, cfg.height_cap);
    }

    RoundStats st{round, axis, work.size(), 0, 0, 0, 0, 0, {0, 0}, 0};
    for (std::size_t i = 0; i < work.size(); ++i) {
      visited[static_cast<std::size_t>(side)].insert(work[i].first);
      auto& o = outcomes[i];
      st.degenerate_skipped += o.degenerate ? 1 : 0;
      st.truncated += o.truncated;
      st.points_emitted += o.points.size();
      for (auto& p : o.points) st.new_points += known.insert(std::move(p)).second ? 1 : 0;
    }
    std::vector<SurfacePoint> snapshot(known.begin(), known.end());
    st.total_points = snapshot.size();
    st.images = {fibre_images(snapshot, cfg.axes[0]).size(), fibre_images(snapshot, cfg.axes[1]).size()};
    st.current_images = st.images[static_cast<std::size_t>(side)];
    result.rounds.push_back(st);
    side ^= 1;
  }
  result.points.assign(known.begin(), known.end());
  return result;
}

}  // namespace

PropagationResult propagate(const SurfaceModel& s, const SurfacePoint& seed, const PropagationConfig& cfg) {
  return run(s, seed, cfg, true);
}

PropagationResult propagate_serial(const SurfaceModel& s, const SurfacePoint& seed,
                                   const PropagationConfig& cfg) {
  return run(s, seed, cfg, false);
}

std::vector<Proj1> fibre_images(const std::vector<SurfacePoint>& points, int axis) {
  std::set<Proj1, Proj1Less> out;
  for (const auto& p : points) out.insert(canonical_proj1(fibre_coordinate(p, axis)[0], fibre_coordinate(p, axis)[1]));
  return {out.begin(), out.end()};
}

}  // namespace cbundle
