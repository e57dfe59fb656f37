#include "bregman/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace bregman {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 v) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
    throw OverflowError("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

// Reduce n/d to lowest terms with d > 0 and narrow to 64 bits.
Rational reduce(i128 n, i128 d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (n == 0) return Rational(0);
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 g = gcd128(uabs128(n), static_cast<u128>(d));
  n /= static_cast<i128>(g);
  d /= static_cast<i128>(g);
  return Rational(narrow(n), narrow(d));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    return;
  }
  const bool negative = (num < 0) != (den < 0);
  std::uint64_t un = num < 0 ? 0ULL - static_cast<std::uint64_t>(num)
                             : static_cast<std::uint64_t>(num);
  std::uint64_t ud = den < 0 ? 0ULL - static_cast<std::uint64_t>(den)
                             : static_cast<std::uint64_t>(den);
  const std::uint64_t g = static_cast<std::uint64_t>(gcd128(un, ud));
  un /= g;
  ud /= g;
  const std::uint64_t max_mag =
      negative ? static_cast<std::uint64_t>(INT64_MAX) + 1 : static_cast<std::uint64_t>(INT64_MAX);
  if (un > max_mag || ud > static_cast<std::uint64_t>(INT64_MAX))
    throw OverflowError("rational does not fit 64 bits");
  num_ = negative ? static_cast<std::int64_t>(0ULL - un) : static_cast<std::int64_t>(un);
  den_ = static_cast<std::int64_t>(ud);
}

Rational Rational::operator-() const { return reduce(-static_cast<i128>(num_), den_); }

Rational Rational::reciprocal() const {
  if (num_ == 0) throw DomainError("reciprocal of zero");
  return reduce(den_, static_cast<i128>(num_));
}

Rational operator+(const Rational& a, const Rational& b) {
  return reduce(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return reduce(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("rational division by zero");
  return reduce(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = static_cast<i128>(a.num()) * b.den();
  i128 rhs = static_cast<i128>(b.num()) * a.den();
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

const char* category_name(RealCategory cat) {
  switch (cat) {
    case RealCategory::Re: return "Re";
    case RealCategory::Ro: return "Ro";
    case RealCategory::Rxe: return "Rxe";
    case RealCategory::Rxx: return "Rxx";
  }
  return "?";
}

RealCategory classify_rational(const Rational& q) {
  if (q.num() % 2 == 0) return RealCategory::Re;  // denominator odd in lowest terms
  return q.den() % 2 == 0 ? RealCategory::Rxe : RealCategory::Ro;
}

RealCategory reciprocal_category(RealCategory cat) {
  switch (cat) {
    case RealCategory::Re: return RealCategory::Rxe;
    case RealCategory::Rxe: return RealCategory::Re;
    case RealCategory::Ro: return RealCategory::Ro;
    case RealCategory::Rxx: return RealCategory::Rxx;
  }
  return RealCategory::Rxx;
}

double signed_pow(double x, const Rational& r) {
  const std::int64_t p = r.num();
  const std::int64_t q = r.den();
  if (p == 0) return 1.0;
  const double exponent = static_cast<double>(p) / static_cast<double>(q);
  if (q % 2 == 0) {
    if (x < 0.0)
      throw DomainError("even root of a negative number: " + std::to_string(x) + "^(" + r.str() + ")");
    if (x == 0.0) {
      if (p < 0) throw DomainError("zero raised to a negative power");
      return 0.0;
    }
    return std::pow(x, exponent);
  }
  if (x == 0.0) {
    if (p < 0) throw DomainError("zero raised to a negative power");
    return 0.0;
  }
  const double mag = std::pow(std::abs(x), exponent);
  return (x < 0.0 && p % 2 != 0) ? -mag : mag;
}

Rational rational_of_string(std::string_view s) {
  auto parse_int = [](std::string_view t) -> std::int64_t {
    if (t.empty()) throw ParseError("empty integer in rational");
    std::size_t start = (t[0] == '+') ? 1 : 0;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data() + start, t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
      throw ParseError("malformed integer '" + std::string(t) + "'");
    return v;
  };
  std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  std::int64_t num = parse_int(s.substr(0, slash));
  std::int64_t den = parse_int(s.substr(slash + 1));
  if (den == 0) throw ParseError("rational '" + std::string(s) + "' has zero denominator");
  return Rational(num, den);
}

}  // namespace bregman
