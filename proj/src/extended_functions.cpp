#include "bregman/extended_functions.hpp"

#include <cmath>

namespace bregman {

bool DomainSpec::contains(double x, double boundary_eps) const {
  if (lower_closed ? x < lower : x <= lower + boundary_eps) return false;
  if (upper_closed ? x > upper : x >= upper - boundary_eps) return false;
  return true;
}

std::string DomainSpec::str() const {
  const double inf = std::numeric_limits<double>::infinity();
  if (lower == -inf && upper == inf) return "R";
  if (lower == 0.0 && upper == inf) return lower_closed ? "R+" : "R++";
  if (lower == -inf && upper == 0.0) return upper_closed ? "R-" : "R--";
  std::string out;
  out += lower_closed ? '[' : '(';
  out += (lower == -inf) ? "-inf" : std::to_string(lower);
  out += ", ";
  out += (upper == inf) ? "inf" : std::to_string(upper);
  out += upper_closed ? ']' : ')';
  return out;
}

namespace {

DomainSpec branch_interval(BranchChoice branch, bool closed_at_zero) {
  if (branch == BranchChoice::Positive)
    return closed_at_zero ? DomainSpec::nonneg() : DomainSpec::positive();
  return closed_at_zero ? DomainSpec::nonpos() : DomainSpec::negative();
}

}  // namespace

DomainSpec domain_exp(const Rational& alpha, bool reduced, BranchChoice branch) {
  if (alpha == Rational(1)) return DomainSpec::reals();
  if (reduced) {
    const RealCategory cat = classify_rational(alpha);
    if (alpha < Rational(1))
      return cat == RealCategory::Re ? DomainSpec::reals() : DomainSpec::nonneg();
    return cat == RealCategory::Re ? branch_interval(branch, false) : DomainSpec::negative();
  }
  const Rational beta = Rational(1) - alpha;
  const RealCategory cat = classify_rational(beta);
  if (alpha < Rational(1)) {
    // 1-alpha in Ro or Rxe: every real; 1-alpha in Re: even root, R+.
    return cat == RealCategory::Re ? DomainSpec::nonneg() : DomainSpec::reals();
  }
  return cat == RealCategory::Re ? DomainSpec::negative() : branch_interval(branch, false);
}

DomainSpec domain_ln(const Rational& alpha, bool reduced, BranchChoice branch) {
  if (alpha == Rational(1)) return DomainSpec::positive();
  if (reduced) {
    const RealCategory cat = classify_rational(alpha);
    if (alpha < Rational(1))
      return cat == RealCategory::Re ? DomainSpec::reals() : DomainSpec::nonneg();
    return cat == RealCategory::Re ? branch_interval(branch, false) : DomainSpec::positive();
  }
  const Rational beta = Rational(1) - alpha;
  const RealCategory cat = classify_rational(beta);
  if (alpha < Rational(1))
    return cat == RealCategory::Rxe ? DomainSpec::nonneg() : DomainSpec::reals();
  return cat == RealCategory::Rxe ? DomainSpec::positive() : branch_interval(branch, false);
}

double exp_alpha(const Rational& alpha, double x) {
  if (alpha == Rational(1)) return std::exp(x);
  const BranchChoice side = x >= 0.0 ? BranchChoice::Positive : BranchChoice::Negative;
  if (!domain_exp(alpha, false, side).contains(x))
    throw DomainError("exp_" + alpha.str() + " undefined at " + std::to_string(x));
  const Rational beta = Rational(1) - alpha;
  return signed_pow(beta.value() * x, beta.reciprocal());
}

double ln_alpha(const Rational& alpha, double x) {
  if (alpha == Rational(1)) {
    if (x <= 0.0) throw DomainError("ln undefined at " + std::to_string(x));
    return std::log(x);
  }
  const BranchChoice side = x >= 0.0 ? BranchChoice::Positive : BranchChoice::Negative;
  if (!domain_ln(alpha, false, side).contains(x))
    throw DomainError("ln_" + alpha.str() + " undefined at " + std::to_string(x));
  const Rational beta = Rational(1) - alpha;
  return signed_pow(x, beta) / beta.value();
}

double exp_alpha_c(const Rational& alpha, double c, double x) {
  if (c <= 0.0) throw InvalidScale("scale c must be positive");
  if (alpha == Rational(1)) return c * std::exp(x);
  const Rational beta = Rational(1) - alpha;
  const double base = std::pow(c, beta.value()) + beta.value() * x;
  return signed_pow(base, beta.reciprocal());
}

double ln_alpha_c(const Rational& alpha, double c, double x) {
  if (c <= 0.0) throw InvalidScale("scale c must be positive");
  if (alpha == Rational(1)) {
    if (x <= 0.0) throw DomainError("ln undefined at " + std::to_string(x));
    return std::log(x) - std::log(c);
  }
  const Rational beta = Rational(1) - alpha;
  return (signed_pow(x, beta) - std::pow(c, beta.value())) / beta.value();
}

double c_alpha_constant(const Rational& alpha, double c) {
  if (c <= 0.0) throw InvalidScale("scale c must be positive");
  if (alpha == Rational(1)) throw DomainError("c_alpha undefined at alpha = 1");
  const Rational beta = Rational(1) - alpha;
  return std::pow(c, beta.value()) / (alpha.value() - 1.0);
}

}  // namespace bregman
