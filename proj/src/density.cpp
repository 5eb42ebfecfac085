#include "cbundle/density.hpp"

#include <algorithm>

#include "cbundle/errors.hpp"

namespace cbundle {

namespace {

// Exponent tuples: trilinear (x0-power, y0-power, z0-power); cover
// (k, u-power, s-power) with k the z-power.
std::vector<std::array<int, 3>> monomials(ModelKind kind, const std::array<int, 3>& deg) {
  std::vector<std::array<int, 3>> out;
  if (kind == ModelKind::trilinear) {
    for (int i = 0; i <= deg[0]; ++i)
      for (int j = 0; j <= deg[1]; ++j)
        for (int k = 0; k <= deg[2]; ++k) out.push_back({i, j, k});
  } else {
    const int kmax = std::min({deg[2], deg[0], deg[1]});
    for (int k = 0; k <= kmax; ++k)
      for (int i = 0; i <= deg[0] - k; ++i)
        for (int j = 0; j <= deg[1] - k; ++j) out.push_back({k, i, j});
  }
  return out;
}

std::size_t count(ModelKind kind, std::array<int, 3> deg) {
  if (deg[0] < 0 || deg[1] < 0 || deg[2] < 0) return 0;
  return monomials(kind, deg).size();
}

Int power(const Int& b, int e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

std::vector<Int> evaluate_row(ModelKind kind, const SurfacePoint& p, const std::array<int, 3>& deg,
                              const std::vector<std::array<int, 3>>& monos) {
  std::vector<Int> row;
  row.reserve(monos.size());
  for (const auto& m : monos) {
    Int v = 1;
    if (kind == ModelKind::trilinear) {
      for (int f = 0; f < 3; ++f) {
        const auto& x = p.factors[static_cast<std::size_t>(f)];
        v *= power(x[0], m[f]) * power(x[1], deg[f] - m[f]);
      }
    } else {
      const int k = m[0];
      const auto& uv = p.factors[0];
      const auto& st = p.factors[1];
      v = power(*p.z, k) * power(uv[0], m[1]) * power(uv[1], deg[0] - k - m[1]) * power(st[0], m[2]) *
          power(st[1], deg[1] - k - m[2]);
    }
    row.push_back(std::move(v));
  }
  return row;
}

}  // namespace

std::size_t restricted_form_dimension(ModelKind kind, const std::array<int, 3>& degrees) {
  if (degrees[0] < 0 || degrees[1] < 0 || degrees[2] < 0) throw PreconditionError("degrees must be >= 0");
  if (kind == ModelKind::trilinear)
    return count(kind, degrees) - count(kind, {degrees[0] - 1, degrees[1] - 1, degrees[2] - 1});
  return count(kind, degrees) - count(kind, {degrees[0] - 2, degrees[1] - 2, degrees[2] - 2});
}

std::size_t exact_rank(const std::vector<std::vector<Int>>& rows, std::size_t columns) {
  // Echelon basis kept primitive; each new row is reduced against it.
  std::vector<std::vector<Int>> basis;
  std::vector<std::size_t> pivots;
  for (const auto& input : rows) {
    if (basis.size() == columns) break;
    std::vector<Int> r = input;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::size_t pc = pivots[b];
      if (r[pc] == 0) continue;
      const Int f = r[pc];
      const Int g = basis[b][pc];
      for (std::size_t j = 0; j < columns; ++j) r[j] = r[j] * g - basis[b][j] * f;
      const Int content = gcd_of(r);
      if (content > 1)
        for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    }
    auto it = std::find_if(r.begin(), r.end(), [](const Int& x) { return x != 0; });
    if (it == r.end()) continue;
    Int g = gcd_of(r);
    for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    const std::size_t pc = static_cast<std::size_t>(it - r.begin());
    // Rows reduced in insertion order stay zero at every earlier pivot.
    pivots.push_back(pc);
    basis.push_back(std::move(r));
  }
  return basis.size();
}

DensityVerdict density_witness(ModelKind kind, const std::vector<SurfacePoint>& points,
                               const std::array<int, 3>& degrees) {
  if (points.empty()) throw VacuousInputError("density witness needs at least one point");
  const auto monos = monomials(kind, degrees);
  const std::size_t expected = restricted_form_dimension(kind, degrees);
  std::vector<std::vector<Int>> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    const std::size_t want = kind == ModelKind::trilinear ? 3 : 2;
    if (p.factors.size() != want || p.z.has_value() != (kind == ModelKind::cover))
      throw DimensionError("point " + p.to_string() + " does not match the model");
    rows.push_back(evaluate_row(kind, p, degrees, monos));
  }
  const std::size_t rank = exact_rank(rows, monos.size());
  return {rank == expected, rank, expected, monos.size()};
}

}  // namespace cbundle
