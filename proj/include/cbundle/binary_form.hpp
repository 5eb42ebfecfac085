#pragma once

#include <string>
#include <vector>

#include "cbundle/arith.hpp"

namespace cbundle {

/// Homogeneous form of formal degree n in (u, v) with rational coefficients,
/// stored by descending power of u: coeffs[i] multiplies u^(n-i) v^i.
/// The formal degree is kept even when leading coefficients vanish; a
/// vanishing u^n coefficient is a root at (1:0).
class BinaryForm {
 public:
  BinaryForm() : coeffs_{Rat(0)} {}
  explicit BinaryForm(std::vector<Rat> coeffs);
  BinaryForm(std::initializer_list<long> coeffs);

  static BinaryForm zero(int degree);
  static BinaryForm constant(const Rat& c);
  /// a*u + b*v
  static BinaryForm linear(const Rat& a, const Rat& b);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rat& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  Rat evaluate(const Rat& u, const Rat& v) const;

  BinaryForm operator+(const BinaryForm& o) const;
  BinaryForm operator-(const BinaryForm& o) const;
  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm operator*(const Rat& k) const;
  BinaryForm operator-() const;

  BinaryForm derivative_u() const;
  BinaryForm derivative_v() const;

  /// f(a u + b v, c u + d v).
  BinaryForm substitute(const Rat& a, const Rat& b, const Rat& c, const Rat& d) const;

  /// Scaled to primitive integer coefficients, first nonzero positive.
  /// The zero form is returned unchanged.
  BinaryForm primitive() const;

  /// Same formal degree and coefficients.
  bool operator==(const BinaryForm& o) const { return coeffs_ == o.coeffs_; }
  /// Equal up to a nonzero scalar.
  bool proportional_to(const BinaryForm& o) const;

  std::string to_string() const;

 private:
  std::vector<Rat> coeffs_;
};

/// Homogeneous resultant, the determinant of the Sylvester matrix built from
/// the formal degrees. Zero iff the forms share a root in P^1 over the
/// algebraic closure (including (1:0)).
Rat resultant(const BinaryForm& f, const BinaryForm& g);

/// Discriminant of a binary quadratic a u^2 + b uv + c v^2: b^2 - 4ac.
Rat quadratic_discriminant(const BinaryForm& q);

/// Monic-normalized homogeneous gcd (as a primitive integer form). The gcd
/// of a form with the zero form is the form itself.
BinaryForm gcd(const BinaryForm& f, const BinaryForm& g);

struct FormFactor {
  BinaryForm factor;  // primitive, squarefree, pairwise coprime
  int multiplicity;
};

/// f = c * prod factor^multiplicity over Q, by Yun's algorithm on f(x, 1)
/// plus the power of v. Throws InvalidInputError for the zero form.
std::vector<FormFactor> squarefree_decomposition(const BinaryForm& f);

bool is_squarefree(const BinaryForm& f);

/// Every root over the algebraic closure has even multiplicity, i.e. f is a
/// constant times a square. Constants are squares.
bool is_square_over_closure(const BinaryForm& f);

struct ProjectiveRoot {
  Proj1 point;
  int multiplicity;
};

/// Rational roots with multiplicity, sorted by point. Factors of degree > 2
/// use the rational root theorem and need coefficients below 2^62.
std::vector<ProjectiveRoot> rational_roots(const BinaryForm& f);

}  // namespace cbundle
