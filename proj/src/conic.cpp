#include "cbundle/conic.hpp"

#include "cbundle/errors.hpp"

namespace cbundle {

namespace {

using IntMat = std::array<std::array<Int, 3>, 3>;

IntMat identity() {
  IntMat m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = (i == j) ? 1 : 0;
  return m;
}

Int det3(const IntMat& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Inverse of a unimodular matrix via the adjugate.
IntMat unimodular_inverse(const IntMat& m) {
  const Int d = det3(m);
  if (d != 1 && d != -1) throw Error("matrix is not unimodular");
  IntMat inv;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * d;
    }
  }
  return inv;
}

// Unimodular U with first column equal to the primitive vector p.
IntMat complete_to_basis(const std::array<Int, 3>& p) {
  std::array<Int, 3> w = p;
  IntMat v = identity();  // maintains v * p == w
  auto nonzero = [&] {
    int n = 0;
    for (const auto& x : w) n += (x != 0);
    return n;
  };
  while (nonzero() > 1) {
    int i = -1;
    for (int k = 0; k < 3; ++k)
      if (w[k] != 0 && (i < 0 || abs(w[k]) < abs(w[i]))) i = k;
    for (int j = 0; j < 3; ++j) {
      if (j == i || w[j] == 0) continue;
      Int q;
      mpz_tdiv_q(q.get_mpz_t(), w[j].get_mpz_t(), w[i].get_mpz_t());
      w[j] -= q * w[i];
      for (int c = 0; c < 3; ++c) v[j][c] -= q * v[i][c];
    }
  }
  int i = 0;
  while (w[i] == 0) ++i;
  std::swap(w[0], w[i]);
  std::swap(v[0], v[i]);
  if (w[0] == -1) {
    w[0] = 1;
    for (auto& x : v[0]) x = -x;
  }
  if (w[0] != 1) throw Error("vector is not primitive");
  return unimodular_inverse(v);
}

std::array<Int, 3> column(const IntMat& m, int j) { return {m[0][j], m[1][j], m[2][j]}; }

Point3 to_rat(const std::array<Int, 3>& v) { return {Rat(v[0]), Rat(v[1]), Rat(v[2])}; }

std::array<Int, 3> primitive3(const Point3& x) {
  auto ints = primitive_integer_multiple(std::span<const Rat>(x.data(), 3));
  return {ints[0], ints[1], ints[2]};
}

}  // namespace

TernaryConic::TernaryConic(std::array<Rat, 9> entries) : m_(std::move(entries)) {
  for (auto& e : m_) e.canonicalize();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (at(i, j) != at(j, i)) throw InvalidInputError("conic matrix is not symmetric");
  bool zero = true;
  for (const auto& e : m_) zero = zero && e == 0;
  if (zero) throw InvalidInputError("the zero matrix is not a conic");
}

TernaryConic TernaryConic::from_quadratic(const Rat& xx, const Rat& yy, const Rat& zz,
                                          const Rat& xy, const Rat& xz, const Rat& yz) {
  const Rat hxy = xy / 2, hxz = xz / 2, hyz = yz / 2;
  return TernaryConic({xx, hxy, hxz, hxy, yy, hyz, hxz, hyz, zz});
}

Rat TernaryConic::value(const Point3& p) const { return bilinear(p, p); }

Rat TernaryConic::bilinear(const Point3& p, const Point3& q) const {
  Rat s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += p[i] * at(i, j) * q[j];
  return s;
}

Rat TernaryConic::determinant() const {
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
         at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
         at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

BinaryForm TernaryConic::compose(const std::array<BinaryForm, 3>& f) const {
  BinaryForm out = BinaryForm::zero(2 * f[0].degree());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (at(i, j) != 0) out = out + f[i] * f[j] * at(i, j);
  return out;
}

bool conic_is_smooth(const TernaryConic& q) { return q.determinant() != 0; }

ConicParametrization parametrize_through_point(const TernaryConic& q, const Point3& p) {
  if (p[0] == 0 && p[1] == 0 && p[2] == 0) throw InvalidInputError("(0:0:0) is not a point");
  if (q.value(p) != 0) throw PreconditionError("point is not on the conic");
  if (!conic_is_smooth(q)) throw DegenerateConicError("conic is singular (det = 0)");

  const auto pi = primitive3(p);
  const IntMat u = complete_to_basis(pi);

  // Lines through P are indexed by Z^3 / ZP, with basis the images of e1, e2.
  // A parameter is the coordinate vector of a point modulo P, so a reduced
  // basis of that quotient (in the metric orthogonal to P) keeps the
  // parameters of small points small.
  std::array<Int, 3> e1 = column(u, 1), e2 = column(u, 2);
  auto dot = [](const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) -> Rat {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  auto nearest = [](const Rat& x) {
    Int r;
    Rat shifted = x + Rat(1, 2);
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return r;
  };
  const auto Pr = to_rat(pi);
  const Rat pp = dot(Pr, Pr);
  auto projected = [&](const std::array<Int, 3>& v) {
    auto r = to_rat(v);
    const Rat c = dot(r, Pr) / pp;
    for (int i = 0; i < 3; ++i) r[i] -= c * Pr[i];
    return r;
  };
  // Lagrange reduction
  for (;;) {
    auto a = projected(e1), b = projected(e2);
    if (dot(a, a) > dot(b, b)) {
      std::swap(e1, e2);
      std::swap(a, b);
    }
    const Int k = nearest(dot(a, b) / dot(a, a));
    if (k == 0) break;
    for (int i = 0; i < 3; ++i) e2[i] -= k * e1[i];
  }
  for (auto* v : {&e1, &e2}) {
    const Int k = nearest(dot(to_rat(*v), Pr) / pp);
    for (int i = 0; i < 3; ++i) (*v)[i] -= k * pi[i];
  }

  const Point3 P = to_rat(pi), E1 = to_rat(e1), E2 = to_rat(e2);
  const BinaryForm qw({q.value(E1), 2 * q.bilinear(E1, E2), q.value(E2)});
  const BinaryForm bw({q.bilinear(P, E1), q.bilinear(P, E2)});
  std::array<BinaryForm, 3> forms;
  for (int i = 0; i < 3; ++i) forms[i] = qw * P[i] - bw * BinaryForm::linear(E1[i], E2[i]) * Rat(2);

  std::vector<Rat> all;
  for (const auto& f : forms) all.insert(all.end(), f.coeffs().begin(), f.coeffs().end());
  auto ints = primitive_integer_multiple(all);
  for (int i = 0; i < 3; ++i)
    forms[i] = BinaryForm(std::vector<Rat>{Rat(ints[3 * i]), Rat(ints[3 * i + 1]), Rat(ints[3 * i + 2])});
  if (gcd(gcd(forms[0], forms[1]), forms[2]).degree() != 0)
    throw Error("parametrization forms share a factor");

  ConicParametrization out;
  out.forms_ = forms;
  out.base_ = P;
  for (int i = 0; i < 3; ++i) {
    out.basis_[i][0] = pi[i];
    out.basis_[i][1] = e1[i];
    out.basis_[i][2] = e2[i];
  }
  out.conic_ = q;
  return out;
}

std::array<Int, 3> ConicParametrization::at(const Int& s, const Int& t) const {
  std::array<Int, 3> x;
  for (int i = 0; i < 3; ++i) x[i] = Int(forms_[i].evaluate(Rat(s), Rat(t)));
  make_primitive(x);
  return x;
}

Proj1 ConicParametrization::parameter_of(const Point3& x) const {
  if (conic_.value(x) != 0) throw PreconditionError("point is not on the conic");
  const auto xi = primitive3(x);
  const IntMat inv = unimodular_inverse(basis_);
  std::array<Int, 3> c;
  for (int i = 0; i < 3; ++i) c[i] = inv[i][0] * xi[0] + inv[i][1] * xi[1] + inv[i][2] * xi[2];
  if (c[1] != 0 || c[2] != 0) return canonical_proj1(c[1], c[2]);
  // x is P: the tangent direction, B(P, s E1 + t E2) = 0
  const Point3 P = to_rat(column(basis_, 0)), E1 = to_rat(column(basis_, 1)), E2 = to_rat(column(basis_, 2));
  std::array<Rat, 2> dir{conic_.bilinear(P, E2), -conic_.bilinear(P, E1)};
  const auto d = primitive_integer_multiple(std::span<const Rat>(dir.data(), 2));
  return canonical_proj1(d[0], d[1]);
}

bool ConicParametrization::identity_holds(const TernaryConic& q) const {
  return q.compose(forms_).is_zero();
}

BranchLocus discriminant_of_double_cover(const BinaryForm& r) {
  if (r.is_zero()) throw NonReducedError("z^2 = 0 is not a reduced double cover");
  return {r, rational_roots(r), is_squarefree(r)};
}

bool branch_loci_disjoint(const BinaryForm& r1, const BinaryForm& r2) {
  if (r1.is_zero() || r2.is_zero()) throw InvalidInputError("branch form must be nonzero");
  return resultant(r1, r2) != 0;
}

FibreProductReport analyse_fibre_product(const BinaryForm& r1, const BinaryForm& r2) {
  FibreProductReport rep{};
  rep.disjoint_branch = branch_loci_disjoint(r1, r2);
  rep.squares = {is_square_over_closure(r1), is_square_over_closure(r2),
                 is_square_over_closure(r1 * r2)};
  rep.irreducible = !rep.squares[0] && !rep.squares[1] && !rep.squares[2];
  return rep;
}

bool fibre_product_irreducible(const BinaryForm& r1, const BinaryForm& r2) {
  return analyse_fibre_product(r1, r2).irreducible;
}

}  // namespace cbundle
