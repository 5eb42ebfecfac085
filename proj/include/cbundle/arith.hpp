#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cbundle {

using Int = mpz_class;
using Rat = mpq_class;

/// A point of P^1 as an integer pair. Canonical form: primitive, first
/// nonzero entry positive.
using Proj1 = std::array<Int, 2>;

Int gcd_of(std::span<const Int> v);

/// Divides by the gcd and flips the sign so the first nonzero entry is
/// positive. Returns the (signed) factor that was divided out; zero vectors
/// are left alone and return 0.
Int make_primitive(std::span<Int> v);

Proj1 canonical_proj1(Int a, Int b);

/// Max absolute value of the entries.
Int height(std::span<const Int> v);

std::optional<Int> exact_sqrt(const Int& n);

/// Lexicographic comparison of equal-length vectors.
int compare(std::span<const Int> a, std::span<const Int> b);

/// Canonical rational text: "p" or "p/q".
std::string to_string(const Rat& q);
std::string to_string(const Int& n);

/// Accepts "p", "-p", "p/q"; throws InvalidInputError otherwise.
Rat parse_rational(const std::string& text);
Int parse_integer(const std::string& text);

/// Clears denominators: the integer vector is proportional to `v`,
/// primitive, first nonzero entry positive.
std::vector<Int> primitive_integer_multiple(std::span<const Rat> v);

/// Primitive sign-normalized pairs (a, b) with max(|a|,|b|) <= bound, sorted
/// by height then lexicographically. These are the parameter values of P^1
/// used by the propagation engine.
std::vector<std::array<std::int64_t, 2>> primitive_pairs(std::int64_t bound);

}  // namespace cbundle
