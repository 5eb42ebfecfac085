#include "cbundle/oracle.hpp"

#include <algorithm>
#include <set>

#include "cbundle/errors.hpp"
#include "cbundle/propagate.hpp"

namespace cbundle::oracle {

namespace {

using Pair = std::array<std::int64_t, 2>;

Proj1 to_proj(const Pair& p) { return {Int(static_cast<long>(p[0])), Int(static_cast<long>(p[1]))}; }

bool fits(const Int& x) { return x.fits_slong_p() && abs(x) < (Int(1) << 40); }

std::vector<SurfacePoint> trilinear_slice(const TrilinearSurface& s, const Pair& x, const std::vector<Pair>& pairs) {
  std::vector<SurfacePoint> out;
  const Proj1 xp = to_proj(x);
  for (const auto& y : pairs) {
    const Proj1 yp = to_proj(y);
    // Coefficients of z0 and z1 for this (x, y).
    std::array<Int, 2> lz{Int(0), Int(0)};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) lz[k] += s.coeff(i, j, k) * xp[i] * yp[j];
    if (fits(lz[0]) && fits(lz[1])) {
      const __int128 l0 = lz[0].get_si(), l1 = lz[1].get_si();
      for (const auto& z : pairs)
        if (l0 * z[0] + l1 * z[1] == 0) out.push_back({{xp, yp, to_proj(z)}, std::nullopt});
    } else {
      for (const auto& z : pairs)
        if (lz[0] * static_cast<long>(z[0]) + lz[1] * static_cast<long>(z[1]) == 0)
          out.push_back({{xp, yp, to_proj(z)}, std::nullopt});
    }
  }
  return out;
}

std::vector<SurfacePoint> cover_slice(const BiquadraticCover& s, const Pair& uv, const std::vector<Pair>& pairs) {
  std::vector<SurfacePoint> out;
  const SurfaceModel model = s;
  const Proj1 up = to_proj(uv);
  for (const auto& st : pairs) {
    SurfacePoint p{{up, to_proj(st)}, Int(0)};
    const Int f = evaluate(model, p);
    const auto root = exact_sqrt(f);
    if (!root) continue;
    if (*root == 0) {
      out.push_back(p);
    } else {
      p.z = -*root;
      out.push_back(p);
      p.z = *root;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<SurfacePoint> enumerate(const SurfaceModel& s, long bound, bool parallel) {
  if (bound < 1) throw PreconditionError("height bound must be >= 1");
  const auto pairs = primitive_pairs(bound);
  const long n = static_cast<long>(pairs.size());
  std::vector<std::vector<SurfacePoint>> slices(pairs.size());
  auto slice = [&](long i) {
    const auto& first = pairs[static_cast<std::size_t>(i)];
    if (const auto* t = std::get_if<TrilinearSurface>(&s)) return trilinear_slice(*t, first, pairs);
    return cover_slice(std::get<BiquadraticCover>(s), first, pairs);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) slices[static_cast<std::size_t>(i)] = slice(i);
  } else {
    for (long i = 0; i < n; ++i) slices[static_cast<std::size_t>(i)] = slice(i);
  }
  std::vector<SurfacePoint> out;
  for (auto& sl : slices)
    for (auto& p : sl) out.push_back(std::move(p));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<SurfacePoint> enumerate_points(const SurfaceModel& s, long bound) { return enumerate(s, bound, true); }

std::vector<SurfacePoint> enumerate_points_serial(const SurfaceModel& s, long bound) {
  return enumerate(s, bound, false);
}

std::vector<Proj1> fibres_with_points(const SurfaceModel& s, int axis, long bound) {
  if (axis < 0 || axis >= fibration_count(s)) throw PreconditionError("axis out of range");
  return fibre_images(enumerate_points(s, bound), axis);
}

std::vector<pic::DivisorClass> enumerate_classes_boxed(const pic::Lattice& lat, pic::ClassConstraint c,
                                                       const ClassBox& box) {
  if (box.a_lo > box.a_hi || box.b_lo > box.b_hi) return {};
  const int r = lat.blowups();
  std::vector<pic::DivisorClass> out;
  std::vector<long> b(static_cast<std::size_t>(r));
  const auto k = pic::canonical_class(lat);

  for (long a = box.a_lo; a <= box.a_hi; ++a) {
    const long target_sum = -3 * a - c.canonical_degree;       // sum of b_i
    const long target_squares = a * a - c.self_intersection;   // sum of b_i^2
    if (target_squares < 0) continue;
    // Depth-first over b_1..b_r with the partial sum and sum of squares.
    auto rec = [&](auto&& self, int pos, long sum, long squares) -> void {
      const long left = r - pos;
      const long need_sum = target_sum - sum;
      const long need_sq = target_squares - squares;
      if (need_sq < 0) return;
      if (left == 0) {
        if (need_sum != 0 || need_sq != 0) return;
        std::vector<Int> coeffs{Int(a)};
        for (long x : b) coeffs.emplace_back(x);
        pic::DivisorClass cls(std::move(coeffs));
        if (pic::intersect(lat, cls, cls) == c.self_intersection &&
            pic::intersect(lat, k, cls) == c.canonical_degree)
          out.push_back(std::move(cls));
        return;
      }
      if (need_sum < left * box.b_lo || need_sum > left * box.b_hi) return;
      if (need_sum * need_sum > left * need_sq) return;
      for (long x = box.b_lo; x <= box.b_hi; ++x) {
        b[static_cast<std::size_t>(pos)] = x;
        self(self, pos + 1, sum + x, squares + x * x);
      }
    };
    rec(rec, 0, 0, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

StabilizedEnumeration enumerate_classes_stabilized(const pic::Lattice& lat, pic::ClassConstraint c,
                                                   ClassBox start, long step, int max_enlargements) {
  StabilizedEnumeration res{enumerate_classes_boxed(lat, c, start), start, 0};
  for (int i = 0; i < max_enlargements; ++i) {
    const ClassBox bigger = res.box.enlarged(step);
    auto next = enumerate_classes_boxed(lat, c, bigger);
    if (next == res.classes) return res;
    res = {std::move(next), bigger, i + 1};
  }
  throw Error("class enumeration did not stabilize");
}

}  // namespace cbundle::oracle
