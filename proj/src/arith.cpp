#include "cbundle/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "cbundle/errors.hpp"

namespace cbundle {

Int gcd_of(std::span<const Int> v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Int make_primitive(std::span<Int> v) {
  Int g = gcd_of(v);
  if (g == 0) return g;
  auto first = std::find_if(v.begin(), v.end(), [](const Int& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return g;
}

Proj1 canonical_proj1(Int a, Int b) {
  Proj1 p{std::move(a), std::move(b)};
  if (p[0] == 0 && p[1] == 0) throw InvalidInputError("(0:0) is not a point of P^1");
  make_primitive(p);
  return p;
}

Int height(std::span<const Int> v) {
  Int h = 0;
  for (const auto& x : v) {
    Int a = abs(x);
    if (a > h) h = a;
  }
  return h;
}

std::optional<Int> exact_sqrt(const Int& n) {
  if (n < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

int compare(std::span<const Int> a, std::span<const Int> b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

std::string to_string(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const Int& n) { return n.get_str(); }

namespace {

bool is_integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Int parse_integer(const std::string& text) {
  std::string s = trimmed(text);
  if (!is_integer_text(s)) throw InvalidInputError("not an integer: '" + text + "'");
  if (s[0] == '+') s.erase(0, 1);
  return Int(s, 10);
}

Rat parse_rational(const std::string& text) {
  std::string s = trimmed(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_integer(s));
  Int num = parse_integer(s.substr(0, slash));
  std::string den_text = s.substr(slash + 1);
  if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+')
    throw InvalidInputError("bad denominator in '" + text + "'");
  Int den = parse_integer(den_text);
  if (den == 0) throw InvalidInputError("zero denominator in '" + text + "'");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::vector<Int> primitive_integer_multiple(std::span<const Rat> v) {
  Int l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Int> out;
  out.reserve(v.size());
  for (const auto& q : v) out.emplace_back(Int(q * l));
  make_primitive(out);
  return out;
}

std::vector<std::array<std::int64_t, 2>> primitive_pairs(std::int64_t bound) {
  std::vector<std::array<std::int64_t, 2>> out;
  if (bound < 1) return out;
  for (std::int64_t a = 0; a <= bound; ++a) {
    for (std::int64_t b = -bound; b <= bound; ++b) {
      if (a == 0 && b <= 0) continue;
      if (std::gcd(a, b < 0 ? -b : b) != 1) continue;
      out.push_back({a, b});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    auto hp = std::max(p[0], p[1] < 0 ? -p[1] : p[1]);
    auto hq = std::max(q[0], q[1] < 0 ? -q[1] : q[1]);
    if (hp != hq) return hp < hq;
    return p < q;
  });
  return out;
}

}  // namespace cbundle
