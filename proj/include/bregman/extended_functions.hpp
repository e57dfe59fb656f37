#ifndef BREGMAN_EXTENDED_FUNCTIONS_HPP
#define BREGMAN_EXTENDED_FUNCTIONS_HPP

#include <limits>
#include <string>

#include "bregman/rational.hpp"

namespace bregman {

/// Side of the real line to use when a domain table offers both R++ and R--.
enum class BranchChoice { Positive, Negative };

/// Interval over the extended reals with open/closed endpoints; the runtime
/// form of the domain tables. Infinite endpoints are always open.
struct DomainSpec {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_closed = false;
  bool upper_closed = false;

  /// Membership with exact endpoint comparison. A positive boundary_eps
  /// shrinks open endpoints by eps for callers that need an interior guard.
  bool contains(double x, double boundary_eps = 0.0) const;
  DomainSpec interior() const { return {lower, upper, false, false}; }
  std::string str() const;

  static DomainSpec reals() { return {}; }
  static DomainSpec nonneg() { return {0.0, std::numeric_limits<double>::infinity(), true, false}; }
  static DomainSpec positive() { return {0.0, std::numeric_limits<double>::infinity(), false, false}; }
  static DomainSpec nonpos() { return {-std::numeric_limits<double>::infinity(), 0.0, false, true}; }
  static DomainSpec negative() { return {-std::numeric_limits<double>::infinity(), 0.0, false, false}; }

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

/// exp_a(x): e^x at alpha = 1, ((1-alpha)x)^(1/(1-alpha)) otherwise.
/// The raw domain table applies; where it splits into R++/R-- the branch is
/// resolved by the sign of x. Throws DomainError outside the domain.
double exp_alpha(const Rational& alpha, double x);

/// ln_a(x): ln x at alpha = 1, x^(1-alpha)/(1-alpha) otherwise.
double ln_alpha(const Rational& alpha, double x);

/// Scaled form exp_{a,c}(x) = (c^(1-alpha) + (1-alpha)x)^(1/(1-alpha)),
/// c exp(x) at alpha = 1. Requires c > 0.
double exp_alpha_c(const Rational& alpha, double c, double x);

/// Scaled form ln_{a,c}(x) = (x^(1-alpha) - c^(1-alpha))/(1-alpha),
/// ln x - ln c at alpha = 1. Requires c > 0.
double ln_alpha_c(const Rational& alpha, double c, double x);

/// c_alpha = c^(1-alpha)/(alpha-1), the constant absorbing the scale c into
/// the equivalence-class form. Undefined at alpha = 1.
double c_alpha_constant(const Rational& alpha, double c);

/// Domain of exp_a. reduced = false gives the raw table keyed by the
/// category of 1-alpha; reduced = true gives the bijection table keyed by
/// the category of alpha. The branch is consulted only where the table
/// offers the R++/R-- alternative.
DomainSpec domain_exp(const Rational& alpha, bool reduced, BranchChoice branch);

/// Domain of ln_a; mirrors domain_exp.
DomainSpec domain_ln(const Rational& alpha, bool reduced, BranchChoice branch);

}  // namespace bregman

#endif
