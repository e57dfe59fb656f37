#ifndef BREGMAN_RATIONAL_HPP
#define BREGMAN_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "bregman/errors.hpp"

namespace bregman {

/// Parity categories of the real line. A rational p/q in lowest terms is
/// Re (even/odd), Ro (odd/odd) or Rxe (odd/even); Rxx is the non-rational
/// remainder and is never produced from a Rational.
enum class RealCategory { Re, Ro, Rxe, Rxx };

const char* category_name(RealCategory cat);

/// Exact rational with 64-bit numerator/denominator, kept in lowest terms
/// with a positive denominator. Arithmetic is overflow-checked and throws
/// OverflowError; the alpha values of interest stay far below the limits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational reciprocal() const;  // throws DomainError on zero

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;  // "p/q", or "p" when integral

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Category of a canonical rational: Re if the numerator is even, Ro if
/// numerator and denominator are odd, Rxe if the denominator is even.
RealCategory classify_rational(const Rational& q);

/// Category of 1/x given the category of x (zero excluded by the caller):
/// Ro -> Ro, Re -> Rxe, Rxe -> Re, Rxx -> Rxx.
RealCategory reciprocal_category(RealCategory cat);

/// Real power with a rational exponent r = p/q.
///
/// Odd q: sign(x)^p * |x|^(p/q), defined for all x (x != 0 when p < 0).
/// Even q: the nonnegative root, requiring x >= 0 (x > 0 when p < 0).
/// Exact zero with a positive exponent returns exact zero; r = 0 gives 1.
/// The magnitude is computed by std::pow in double precision.
double signed_pow(double x, const Rational& r);

/// Parses "p/q" or "p" with decimal integers into a canonical Rational.
Rational rational_of_string(std::string_view s);

}  // namespace bregman

#endif
