#include "cbundle/surface.hpp"

#include <sstream>

#include "cbundle/errors.hpp"

namespace cbundle {

ModelKind kind_of(const SurfaceModel& s) {
  return std::holds_alternative<TrilinearSurface>(s) ? ModelKind::trilinear : ModelKind::cover;
}

int fibration_count(ModelKind k) { return k == ModelKind::trilinear ? 3 : 2; }
int fibration_count(const SurfaceModel& s) { return fibration_count(kind_of(s)); }

bool SurfacePoint::operator==(const SurfacePoint& o) const {
  return factors == o.factors && z == o.z;
}

bool SurfacePoint::operator<(const SurfacePoint& o) const {
  if (factors.size() != o.factors.size()) return factors.size() < o.factors.size();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    int c = compare(factors[i], o.factors[i]);
    if (c != 0) return c < 0;
  }
  if (z.has_value() != o.z.has_value()) return !z.has_value();
  return z.has_value() && *z < *o.z;
}

std::string SurfacePoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < factors.size(); ++i)
    os << (i ? "," : "") << '(' << factors[i][0] << ':' << factors[i][1] << ')';
  if (z) os << ",z=" << *z;
  os << ')';
  return os.str();
}

Int point_height(const SurfacePoint& p) {
  Int h = 0;
  for (const auto& f : p.factors) {
    Int fh = height(f);
    if (fh > h) h = fh;
  }
  return h;
}

namespace {

void require_arity(ModelKind kind, const SurfacePoint& p) {
  const std::size_t want = kind == ModelKind::trilinear ? 3 : 2;
  const bool want_z = kind == ModelKind::cover;
  if (p.factors.size() != want || p.z.has_value() != want_z)
    throw DimensionError("point " + p.to_string() + " does not match the " +
                         std::string(kind == ModelKind::trilinear ? "trilinear" : "cover") +
                         " model arity");
}

// sum a_ij * d^m/du^.. monomial: evaluates F or one of its first partials.
// which: -1 for F, 0..3 for d/du, d/dv, d/ds, d/dt.
Int cover_value(const BiquadraticCover& s, const Proj1& uv, const Proj1& st, int which) {
  Int total = 0;
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      const Int& a = s.coeff(i, j);
      if (a == 0) continue;
      std::array<int, 4> e{i, 2 - i, j, 2 - j};
      Int k = a;
      if (which >= 0) {
        if (e[which] == 0) continue;
        k *= e[which];
        --e[which];
      }
      Int term = k;
      const std::array<const Int*, 4> base{&uv[0], &uv[1], &st[0], &st[1]};
      for (int m = 0; m < 4; ++m) {
        Int pw;
        mpz_pow_ui(pw.get_mpz_t(), base[m]->get_mpz_t(), static_cast<unsigned long>(e[m]));
        term *= pw;
      }
      total += term;
    }
  }
  return total;
}

// Trilinear equation or a first partial. which: -1 for F, else 2*factor+index.
Int trilinear_value(const TrilinearSurface& s, const std::vector<Proj1>& f, int which) {
  Int total = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const Int& c = s.coeff(i, j, k);
        if (c == 0) continue;
        const std::array<int, 3> idx{i, j, k};
        Int term = c;
        for (int m = 0; m < 3; ++m) {
          if (which >= 0 && which / 2 == m) {
            if (idx[m] != which % 2) {
              term = 0;
              break;
            }
          } else {
            term *= f[m][idx[m]];
          }
        }
        total += term;
      }
  return total;
}

BinaryForm cover_quadratic(const BiquadraticCover& s, int axis, const Proj1& b) {
  // Returns q as a form in the other factor, descending powers.
  std::array<Rat, 3> q;
  for (int e = 2; e >= 0; --e) {
    Int acc = 0;
    for (int m = 0; m <= 2; ++m) {
      Int w0, w1;
      mpz_pow_ui(w0.get_mpz_t(), b[0].get_mpz_t(), static_cast<unsigned long>(m));
      mpz_pow_ui(w1.get_mpz_t(), b[1].get_mpz_t(), static_cast<unsigned long>(2 - m));
      const Int& a = axis == 0 ? s.coeff(m, e) : s.coeff(e, m);
      acc += a * w0 * w1;
    }
    q[static_cast<std::size_t>(2 - e)] = Rat(acc);
  }
  return BinaryForm(std::vector<Rat>(q.begin(), q.end()));
}

TernaryConic conic_of(const BinaryForm& q) {
  // z^2 - q(p0, p1) in (p0, p1, z).
  return TernaryConic::from_quadratic(-q[0], -q[2], 1, -q[1], 0, 0);
}

}  // namespace

SurfacePoint canonicalize(ModelKind kind, SurfacePoint p) {
  require_arity(kind, p);
  Int scale = 1;
  for (auto& f : p.factors) {
    if (f[0] == 0 && f[1] == 0) throw InvalidInputError("zero coordinate vector in " + p.to_string());
    scale *= make_primitive(f);
  }
  if (kind == ModelKind::cover) {
    if (!mpz_divisible_p(p.z->get_mpz_t(), scale.get_mpz_t()))
      throw InvalidInputError("z is not integral after normalization");
    mpz_divexact(p.z->get_mpz_t(), p.z->get_mpz_t(), scale.get_mpz_t());
  }
  return p;
}

bool is_canonical(ModelKind kind, const SurfacePoint& p) { return canonicalize(kind, p) == p; }

Int evaluate(const SurfaceModel& s, const SurfacePoint& p) {
  require_arity(kind_of(s), p);
  if (const auto* t = std::get_if<TrilinearSurface>(&s)) return trilinear_value(*t, p.factors, -1);
  const auto& c = std::get<BiquadraticCover>(s);
  return cover_value(c, p.factors[0], p.factors[1], -1) - (*p.z) * (*p.z);
}

bool contains(const SurfaceModel& s, const SurfacePoint& p) { return evaluate(s, p) == 0; }

std::array<int, 2> trilinear_roles(int axis) {
  switch (axis) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    case 2: return {0, 1};
    default: throw PreconditionError("trilinear axis must be 0, 1 or 2");
  }
}

namespace {

void require_axis(const SurfaceModel& s, int axis) {
  if (axis < 0 || axis >= fibration_count(s))
    throw PreconditionError("axis " + std::to_string(axis) + " out of range for this model");
}

}  // namespace

Fibre fibre_over(const SurfaceModel& s, int axis, const Proj1& base) {
  require_axis(s, axis);
  const Proj1 b = canonical_proj1(base[0], base[1]);
  if (const auto* t = std::get_if<TrilinearSurface>(&s)) {
    const auto roles = trilinear_roles(axis);
    TrilinearFibre f{axis, b, {}, false};
    for (auto& row : f.matrix) row = {Int(0), Int(0)};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          const std::array<int, 3> idx{i, j, k};
          f.matrix[idx[roles[0]]][idx[roles[1]]] += t->coeff(i, j, k) * b[idx[axis]];
        }
    f.degenerate = f.matrix[0][0] * f.matrix[1][1] - f.matrix[0][1] * f.matrix[1][0] == 0;
    return f;
  }
  const auto& c = std::get<BiquadraticCover>(s);
  BinaryForm q = cover_quadratic(c, axis, b);
  TernaryConic conic = q.is_zero() ? TernaryConic::from_quadratic(0, 0, 1, 0, 0, 0) : conic_of(q);
  const bool degenerate = quadratic_discriminant(q) == 0;
  return CoverFibre{axis, b, q, conic, degenerate};
}

bool fibre_is_degenerate(const Fibre& f) {
  return std::visit([](const auto& x) { return x.degenerate; }, f);
}

Proj1 fibre_coordinate(const SurfacePoint& p, int axis) {
  if (axis < 0 || static_cast<std::size_t>(axis) >= p.factors.size())
    throw PreconditionError("axis out of range for point");
  return p.factors[static_cast<std::size_t>(axis)];
}

BinaryForm discriminant_form(const SurfaceModel& s, int axis) {
  require_axis(s, axis);
  BinaryForm disc;
  if (const auto* t = std::get_if<TrilinearSurface>(&s)) {
    const auto roles = trilinear_roles(axis);
    std::array<std::array<std::array<Rat, 2>, 2>, 2> lin{};  // [row][col][base index]
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          const std::array<int, 3> idx{i, j, k};
          lin[idx[roles[0]]][idx[roles[1]]][idx[axis]] += Rat(t->coeff(i, j, k));
        }
    auto form = [&](int r, int c) { return BinaryForm::linear(lin[r][c][0], lin[r][c][1]); };
    disc = form(0, 0) * form(1, 1) - form(0, 1) * form(1, 0);
  } else {
    const auto& c = std::get<BiquadraticCover>(s);
    auto coeff_form = [&](int e) {
      // Coefficient of p0^e p1^(2-e) in q, as a form in the base.
      std::vector<Rat> f;
      for (int m = 2; m >= 0; --m) f.emplace_back(axis == 0 ? c.coeff(m, e) : c.coeff(e, m));
      return BinaryForm(std::move(f));
    };
    const auto A = coeff_form(2), B = coeff_form(1), C = coeff_form(0);
    disc = B * B - A * C * Rat(4);
  }
  if (disc.is_zero())
    throw InadmissibleSurfaceError("discriminant of fibration " + std::to_string(axis) +
                                       " vanishes identically",
                                   disc.to_string());
  return disc;
}

BinaryForm restricted_branch_form(const BiquadraticCover& s, int axis, const Proj1& base) {
  if (axis != 0 && axis != 1) throw PreconditionError("cover axis must be 0 or 1");
  BinaryForm r = cover_quadratic(s, axis, canonical_proj1(base[0], base[1]));
  if (r.is_zero()) throw NonReducedError("restricted double cover is z^2 = 0");
  return r;
}

FibreParametrization::FibreParametrization(const SurfaceModel& s, int axis, const Proj1& base,
                                           const std::optional<SurfacePoint>& through, std::optional<int> solve_for)
    : surface_(s), axis_(axis), base_(canonical_proj1(base[0], base[1])) {
  Fibre f = fibre_over(s, axis, base_);
  if (fibre_is_degenerate(f)) {
    std::string witness;
    try {
      witness = discriminant_form(s, axis).to_string();
    } catch (const InadmissibleSurfaceError& e) {
      witness = e.witness();
    }
    throw DegenerateFibreError("fibre over (" + base_[0].get_str() + ":" + base_[1].get_str() +
                                   ") on axis " + std::to_string(axis) + " is degenerate",
                               witness);
  }
  if (auto* t = std::get_if<TrilinearFibre>(&f)) {
    trilinear_ = *t;
    if (solve_for) {
      const auto roles = trilinear_roles(axis);
      if (*solve_for != roles[0] && *solve_for != roles[1])
        throw PreconditionError("cannot solve for factor " + std::to_string(*solve_for) + " on axis " +
                                std::to_string(axis));
      swapped_ = *solve_for == roles[0];
    }
    return;
  }
  if (!through) throw PreconditionError("the cover model needs a point on the fibre to parametrize it");
  const auto kind = kind_of(s);
  SurfacePoint p = canonicalize(kind, *through);
  if (!contains(s, p)) throw PreconditionError("point " + p.to_string() + " is not on the surface");
  if (fibre_coordinate(p, axis) != base_)
    throw PreconditionError("point " + p.to_string() + " is not on the requested fibre");
  const auto& cf = std::get<CoverFibre>(f);
  const auto& other = p.factors[static_cast<std::size_t>(1 - axis)];
  conic_ = parametrize_through_point(cf.conic, {Rat(other[0]), Rat(other[1]), Rat(*p.z)});
}

SurfacePoint FibreParametrization::point_at(const Int& a, const Int& b) const {
  SurfacePoint p;
  if (trilinear_) {
    const auto& m = trilinear_->matrix;
    const auto roles = trilinear_roles(axis_);
    p.factors.resize(3);
    p.factors[static_cast<std::size_t>(axis_)] = base_;
    if (swapped_) {
      p.factors[static_cast<std::size_t>(roles[1])] = {a, b};
      p.factors[static_cast<std::size_t>(roles[0])] = {-(m[1][0] * a + m[1][1] * b),
                                                       m[0][0] * a + m[0][1] * b};
    } else {
      p.factors[static_cast<std::size_t>(roles[0])] = {a, b};
      p.factors[static_cast<std::size_t>(roles[1])] = {-(m[0][1] * a + m[1][1] * b),
                                                       m[0][0] * a + m[1][0] * b};
    }
    return canonicalize(ModelKind::trilinear, std::move(p));
  }
  const auto x = conic_->at(a, b);
  if (x[0] == 0 && x[1] == 0) throw Error("conic parametrization hit (0:0:1)");
  p.factors.resize(2);
  p.factors[static_cast<std::size_t>(axis_)] = base_;
  p.factors[static_cast<std::size_t>(1 - axis_)] = {x[0], x[1]};
  p.z = x[2];
  return canonicalize(ModelKind::cover, std::move(p));
}

BinaryForm FibreParametrization::pulled_back_equation() const {
  if (trilinear_) {
    const auto& m = trilinear_->matrix;
    std::array<BinaryForm, 2> row{BinaryForm::linear(1, 0), BinaryForm::linear(0, 1)};
    std::array<BinaryForm, 2> col{BinaryForm::linear(Rat(-m[0][1]), Rat(-m[1][1])),
                                  BinaryForm::linear(Rat(m[0][0]), Rat(m[1][0]))};
    if (swapped_) {
      col = {BinaryForm::linear(1, 0), BinaryForm::linear(0, 1)};
      row = {BinaryForm::linear(Rat(-m[1][0]), Rat(-m[1][1])), BinaryForm::linear(Rat(m[0][0]), Rat(m[0][1]))};
    }
    BinaryForm out = BinaryForm::zero(2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out = out + row[r] * col[c] * Rat(m[r][c]);
    return out;
  }
  const auto& cover = std::get<BiquadraticCover>(surface_);
  const BinaryForm q = cover_quadratic(cover, axis_, base_);
  const auto& f = conic_->forms();
  // F(base; f0, f1) - f2^2
  return f[0] * f[0] * q[0] + f[0] * f[1] * q[1] + f[1] * f[1] * q[2] - f[2] * f[2];
}

FibreParametrization parametrize_fibre(const SurfaceModel& s, int axis, const Proj1& base,
                                       const std::optional<SurfacePoint>& through, std::optional<int> solve_for) {
  return FibreParametrization(s, axis, base, through, solve_for);
}

namespace {

std::optional<SurfacePoint> singular_point_of_fibre(const Fibre& fibre) {
  SurfacePoint p;
  if (const auto* t = std::get_if<TrilinearFibre>(&fibre)) {
    const auto& m = t->matrix;
    int col = (m[0][0] != 0 || m[1][0] != 0) ? 0 : 1;
    int row = (m[0][0] != 0 || m[0][1] != 0) ? 0 : 1;
    Proj1 left{m[1][col], -m[0][col]};
    Proj1 right{m[row][1], -m[row][0]};
    if ((left[0] == 0 && left[1] == 0) || (right[0] == 0 && right[1] == 0)) return std::nullopt;
    const auto roles = trilinear_roles(t->axis);
    p.factors.resize(3);
    p.factors[static_cast<std::size_t>(t->axis)] = t->base;
    p.factors[static_cast<std::size_t>(roles[0])] = left;
    p.factors[static_cast<std::size_t>(roles[1])] = right;
    return canonicalize(ModelKind::trilinear, std::move(p));
  }
  const auto& c = std::get<CoverFibre>(fibre);
  const auto& q = c.quadratic;
  if (q.is_zero()) return std::nullopt;
  // q has integer coefficients here; its double root is (-q1 : 2 q0).
  Proj1 root = q[0] != 0 ? Proj1{Int(-q[1]), Int(Rat(2) * q[0])} : Proj1{Int(1), Int(0)};
  p.factors.resize(2);
  p.factors[static_cast<std::size_t>(c.axis)] = c.base;
  p.factors[static_cast<std::size_t>(1 - c.axis)] = root;
  p.z = Int(0);
  return canonicalize(ModelKind::cover, std::move(p));
}

bool jacobian_vanishes(const SurfaceModel& s, const SurfacePoint& p) {
  if (const auto* t = std::get_if<TrilinearSurface>(&s)) {
    for (int w = 0; w < 6; ++w)
      if (trilinear_value(*t, p.factors, w) != 0) return false;
    return true;
  }
  const auto& c = std::get<BiquadraticCover>(s);
  if (*p.z != 0) return false;
  for (int w = 0; w < 4; ++w)
    if (cover_value(c, p.factors[0], p.factors[1], w) != 0) return false;
  return true;
}

}  // namespace

AdmissibilityReport check_admissible(const SurfaceModel& s) {
  AdmissibilityReport rep;
  bool all_zero = true;
  std::visit([&](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, TrilinearSurface>) {
      for (const auto& x : m.c) all_zero = all_zero && x == 0;
    } else {
      for (const auto& x : m.a) all_zero = all_zero && x == 0;
    }
  }, s);
  if (all_zero) {
    rep.admissible = false;
    rep.reason = "defining equation is identically zero";
    return rep;
  }
  for (int axis = 0; axis < fibration_count(s); ++axis) {
    BinaryForm disc;
    try {
      disc = discriminant_form(s, axis);
    } catch (const InadmissibleSurfaceError& e) {
      rep.admissible = false;
      rep.reason = e.what();
      rep.witness = e.witness();
      return rep;
    }
    if (!is_squarefree(disc)) {
      rep.admissible = false;
      rep.reason = "discriminant of fibration " + std::to_string(axis) + " is not squarefree";
      rep.witness = disc.to_string();
      return rep;
    }
    for (const auto& root : rational_roots(disc)) {
      if (height(root.point) > 100) continue;
      const auto sing = singular_point_of_fibre(fibre_over(s, axis, root.point));
      if (!sing) continue;
      rep.singular_candidates_checked.push_back(*sing);
      if (jacobian_vanishes(s, *sing)) {
        rep.admissible = false;
        rep.reason = "surface is singular at " + sing->to_string();
        rep.witness = disc.to_string();
        return rep;
      }
    }
  }
  return rep;
}

void require_admissible(const SurfaceModel& s) {
  auto rep = check_admissible(s);
  if (!rep.admissible) throw InadmissibleSurfaceError("inadmissible surface: " + rep.reason, rep.witness);
}

}  // namespace cbundle
