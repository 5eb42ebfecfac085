#include "cbundle/binary_form.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cbundle/errors.hpp"

namespace cbundle {

BinaryForm::BinaryForm(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInputError("a binary form needs at least one coefficient");
  for (auto& c : coeffs_) c.canonicalize();
}

BinaryForm::BinaryForm(std::initializer_list<long> coeffs) {
  if (coeffs.size() == 0) throw InvalidInputError("a binary form needs at least one coefficient");
  for (long c : coeffs) coeffs_.emplace_back(c);
}

BinaryForm BinaryForm::zero(int degree) {
  return BinaryForm(std::vector<Rat>(static_cast<std::size_t>(degree) + 1, Rat(0)));
}

BinaryForm BinaryForm::constant(const Rat& c) { return BinaryForm(std::vector<Rat>{c}); }

BinaryForm BinaryForm::linear(const Rat& a, const Rat& b) {
  return BinaryForm(std::vector<Rat>{a, b});
}

bool BinaryForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c == 0; });
}

Rat BinaryForm::evaluate(const Rat& u, const Rat& v) const {
  // Horner in u with v powers accumulated.
  Rat acc = 0;
  Rat vpow = 1;
  const int n = degree();
  std::vector<Rat> vp(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    vp[static_cast<std::size_t>(i)] = vpow;
    vpow *= v;
  }
  for (int i = 0; i <= n; ++i) acc = acc * u + coeffs_[static_cast<std::size_t>(i)] * vp[static_cast<std::size_t>(i)];
  return acc;
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
  if (degree() != o.degree()) throw DimensionError("adding forms of different degree");
  std::vector<Rat> r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeffs_[i] + o.coeffs_[i];
  return BinaryForm(std::move(r));
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const { return *this + (-o); }

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
  std::vector<Rat> r(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return BinaryForm(std::move(r));
}

BinaryForm BinaryForm::operator*(const Rat& k) const {
  std::vector<Rat> r(coeffs_);
  for (auto& c : r) c *= k;
  return BinaryForm(std::move(r));
}

BinaryForm BinaryForm::operator-() const { return *this * Rat(-1); }

BinaryForm BinaryForm::derivative_u() const {
  const int n = degree();
  if (n == 0) return zero(0);
  std::vector<Rat> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)] * (n - i);
  return BinaryForm(std::move(r));
}

BinaryForm BinaryForm::derivative_v() const {
  const int n = degree();
  if (n == 0) return zero(0);
  std::vector<Rat> r(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) r[static_cast<std::size_t>(i - 1)] = coeffs_[static_cast<std::size_t>(i)] * i;
  return BinaryForm(std::move(r));
}

BinaryForm BinaryForm::substitute(const Rat& a, const Rat& b, const Rat& c, const Rat& d) const {
  const int n = degree();
  const auto first = linear(a, b);
  const auto second = linear(c, d);
  std::vector<BinaryForm> pf{constant(1)}, ps{constant(1)};
  for (int i = 1; i <= n; ++i) {
    pf.push_back(pf.back() * first);
    ps.push_back(ps.back() * second);
  }
  auto out = zero(n);
  for (int i = 0; i <= n; ++i) {
    const Rat& k = coeffs_[static_cast<std::size_t>(i)];
    if (k == 0) continue;
    out = out + pf[static_cast<std::size_t>(n - i)] * ps[static_cast<std::size_t>(i)] * k;
  }
  return out;
}

BinaryForm BinaryForm::primitive() const {
  if (is_zero()) return *this;
  auto ints = primitive_integer_multiple(coeffs_);
  std::vector<Rat> r;
  r.reserve(ints.size());
  for (auto& x : ints) r.emplace_back(x);
  return BinaryForm(std::move(r));
}

bool BinaryForm::proportional_to(const BinaryForm& o) const {
  if (degree() != o.degree()) return false;
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  return primitive() == o.primitive();
}

std::string BinaryForm::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << cbundle::to_string(coeffs_[i]);
  os << ']';
  return os.str();
}

namespace {

// Univariate polynomials over Q, ascending coefficients, no trailing zeros
// (the zero polynomial is empty).
using Poly = std::vector<Rat>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

// f(x, 1); also returns the multiplicity of the root (1:0).
Poly dehomogenize(const BinaryForm& f, int& infinity_multiplicity) {
  const int n = f.degree();
  Poly p(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) p[static_cast<std::size_t>(j)] = f[n - j];
  trim(p);
  infinity_multiplicity = n - deg(p);
  return p;
}

BinaryForm homogenize(const Poly& p, int degree) {
  std::vector<Rat> c(static_cast<std::size_t>(degree) + 1, Rat(0));
  for (int j = 0; j <= deg(p); ++j) c[static_cast<std::size_t>(degree - j)] = p[static_cast<std::size_t>(j)];
  return BinaryForm(std::move(c));
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t j = 1; j < p.size(); ++j) d.push_back(p[j] * static_cast<long>(j));
  trim(d);
  return d;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw Error("polynomial division by zero");
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  const Rat& lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    Rat k = r.back() / lead;
    q[shift] = k;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= k * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

Poly exact_div(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  if (!r.empty()) throw Error("inexact polynomial division");
  return q;
}

Poly monic(Poly p) {
  if (p.empty()) return p;
  Rat lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Yun: returns (factor, multiplicity) with deg(factor) >= 1.
std::vector<std::pair<Poly, int>> yun(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  if (deg(f) < 1) return out;
  Poly fp = derivative(f);
  Poly a0 = poly_gcd(f, fp);
  Poly b = exact_div(f, a0);
  Poly c = exact_div(fp, a0);
  Poly d = sub(c, derivative(b));
  int i = 1;
  while (deg(b) >= 1) {
    Poly a = poly_gcd(b, d);
    if (deg(a) >= 1) out.emplace_back(a, i);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = sub(c, derivative(b));
    ++i;
  }
  return out;
}

std::vector<Int> integer_coeffs(const Poly& p) { return primitive_integer_multiple(p); }

std::vector<Int> divisors(const Int& n) {
  Int a = abs(n);
  if (a == 0) return {};
  if (!a.fits_slong_p() || a > Int("4611686018427387904"))
    throw InvalidInputError("coefficient too large for rational root search: " + a.get_str());
  long x = a.get_si();
  std::vector<Int> small, large;
  for (long k = 1; k * k <= x; ++k) {
    if (x % k == 0) {
      small.emplace_back(k);
      if (k != x / k) large.emplace_back(x / k);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Rat eval(const Poly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Rational roots of a squarefree polynomial.
std::vector<Rat> poly_rational_roots(const Poly& p) {
  std::vector<Rat> roots;
  const int n = deg(p);
  if (n < 1) return roots;
  if (n == 1) {
    roots.push_back(-p[0] / p[1]);
    return roots;
  }
  if (n == 2) {
    Rat disc = p[1] * p[1] - 4 * p[2] * p[0];
    // disc = N/D with D a square times ... clear: sqrt(N*D)/D.
    Int num = disc.get_num() * disc.get_den();
    auto s = exact_sqrt(num);
    if (!s) return roots;
    Rat root_disc(*s, disc.get_den());
    root_disc.canonicalize();
    roots.push_back((-p[1] - root_disc) / (2 * p[2]));
    if (root_disc != 0) roots.push_back((-p[1] + root_disc) / (2 * p[2]));
    return roots;
  }
  Poly q = p;
  if (q[0] == 0) {
    roots.emplace_back(0);
    q.erase(q.begin());
  }
  auto ints = integer_coeffs(q);
  for (const auto& num : divisors(ints.front())) {
    for (const auto& den : divisors(ints.back())) {
      for (int sign : {1, -1}) {
        Rat x(num * sign, den);
        x.canonicalize();
        if (eval(q, x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end())
          roots.push_back(x);
      }
    }
  }
  return roots;
}

Rat determinant(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      Rat k = m[row][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= k * m[col][j];
    }
  }
  return det;
}

}  // namespace

Rat resultant(const BinaryForm& f, const BinaryForm& g) {
  const int m = f.degree();
  const int n = g.degree();
  const int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<Rat>> s(static_cast<std::size_t>(size), std::vector<Rat>(static_cast<std::size_t>(size), Rat(0)));
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i) s[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + i)] = f[i];
  for (int row = 0; row < m; ++row)
    for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + j)] = g[j];
  return determinant(std::move(s));
}

Rat quadratic_discriminant(const BinaryForm& q) {
  if (q.degree() != 2) throw DimensionError("quadratic discriminant needs a degree-2 form");
  return q[1] * q[1] - 4 * q[0] * q[2];
}

BinaryForm gcd(const BinaryForm& f, const BinaryForm& g) {
  if (f.is_zero()) return g.primitive();
  if (g.is_zero()) return f.primitive();
  int inf_f = 0, inf_g = 0;
  Poly pf = dehomogenize(f, inf_f);
  Poly pg = dehomogenize(g, inf_g);
  Poly common = poly_gcd(pf, pg);
  const int inf = std::min(inf_f, inf_g);
  const int d = deg(common) + inf;
  // v^inf * homogenized gcd
  BinaryForm h = homogenize(common, deg(common));
  BinaryForm vpow = BinaryForm::constant(1);
  for (int i = 0; i < inf; ++i) vpow = vpow * BinaryForm::linear(0, 1);
  BinaryForm out = h * vpow;
  if (out.degree() != d) throw Error("gcd degree mismatch");
  return out.primitive();
}

std::vector<FormFactor> squarefree_decomposition(const BinaryForm& f) {
  if (f.is_zero()) throw InvalidInputError("squarefree decomposition of the zero form");
  int inf = 0;
  Poly p = dehomogenize(f, inf);
  std::vector<FormFactor> out;
  for (auto& [factor, mult] : yun(p)) out.push_back({homogenize(factor, deg(factor)).primitive(), mult});
  if (inf > 0) out.push_back({BinaryForm::linear(0, 1), inf});
  return out;
}

bool is_squarefree(const BinaryForm& f) {
  auto parts = squarefree_decomposition(f);
  return std::all_of(parts.begin(), parts.end(), [](const FormFactor& x) { return x.multiplicity == 1; });
}

bool is_square_over_closure(const BinaryForm& f) {
  auto parts = squarefree_decomposition(f);
  return std::all_of(parts.begin(), parts.end(), [](const FormFactor& x) { return x.multiplicity % 2 == 0; });
}

std::vector<ProjectiveRoot> rational_roots(const BinaryForm& f) {
  std::vector<ProjectiveRoot> out;
  for (const auto& part : squarefree_decomposition(f)) {
    int inf = 0;
    Poly p = dehomogenize(part.factor, inf);
    if (inf > 0) out.push_back({Proj1{Int(1), Int(0)}, part.multiplicity});
    for (const Rat& x : poly_rational_roots(p))
      out.push_back({canonical_proj1(x.get_num(), x.get_den()), part.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const ProjectiveRoot& a, const ProjectiveRoot& b) {
    return compare(a.point, b.point) < 0;
  });
  return out;
}

}  // namespace cbundle
