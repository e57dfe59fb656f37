#include "bregman/legendre.hpp"

#include <cmath>

namespace bregman {

namespace {

const Rational kOne(1);
const Rational kTwo(2);

DomainSpec branch_interval(BranchChoice branch, bool closed_at_zero) {
  if (branch == BranchChoice::Positive)
    return closed_at_zero ? DomainSpec::nonneg() : DomainSpec::positive();
  return closed_at_zero ? DomainSpec::nonpos() : DomainSpec::negative();
}

BranchChoice side_of(double x) { return x >= 0.0 ? BranchChoice::Positive : BranchChoice::Negative; }

}  // namespace

DomainSpec psi_domain(const Rational& alpha, BranchChoice branch) {
  if (alpha == kOne) return DomainSpec::reals();
  if (alpha == kTwo) return DomainSpec::negative();
  const bool even = classify_rational(alpha) == RealCategory::Re;
  if (alpha < kOne) return even ? DomainSpec::reals() : DomainSpec::nonneg();
  if (alpha < kTwo) return even ? branch_interval(branch, false) : DomainSpec::negative();
  return even ? branch_interval(branch, true) : DomainSpec::nonpos();
}

DomainSpec phi_domain(const Rational& alpha, BranchChoice branch) {
  const bool even = classify_rational(alpha) == RealCategory::Re;
  if (alpha < kOne) return even ? DomainSpec::reals() : DomainSpec::nonneg();
  if (alpha < kTwo) {
    if (even && alpha != kOne && branch == BranchChoice::Negative) return DomainSpec::nonpos();
    return DomainSpec::nonneg();
  }
  if (even && alpha != kTwo && branch == BranchChoice::Negative) return DomainSpec::negative();
  return DomainSpec::positive();
}

bool psi_is_legendre(const Rational& alpha) {
  if (alpha < kOne) return classify_rational(alpha) == RealCategory::Re;
  return true;
}

bool phi_is_legendre(const Rational& alpha) {
  if (alpha < kOne) return classify_rational(alpha) == RealCategory::Re;
  return true;
}

double psi(const Rational& alpha, double x) {
  if (!psi_domain(alpha, side_of(x)).contains(x))
    throw DomainError("Psi_" + alpha.str() + " undefined at " + std::to_string(x));
  if (alpha == kOne) return std::exp(x);
  if (alpha == kTwo) return -std::log(-x);
  const Rational beta = kOne - alpha;
  const Rational two_minus = kTwo - alpha;
  return signed_pow(beta.value() * x, two_minus / beta) / two_minus.value();
}

double psi_prime(const Rational& alpha, double x) { return exp_alpha(alpha, x); }

double psi_second(const Rational& alpha, double x) {
  if (alpha == kOne) return std::exp(x);
  if (alpha == kTwo) return 1.0 / (x * x);
  const Rational beta = kOne - alpha;
  return signed_pow(beta.value() * x, alpha / beta);
}

double phi(const Rational& alpha, double x) {
  if (!phi_domain(alpha, side_of(x)).contains(x))
    throw DomainError("Phi_" + alpha.str() + " undefined at " + std::to_string(x));
  if (alpha == kOne) return x == 0.0 ? 0.0 : x * std::log(x) - x;
  if (alpha == kTwo) return -std::log(x);
  const Rational beta = kOne - alpha;
  const Rational two_minus = kTwo - alpha;
  return signed_pow(x, two_minus) / (two_minus.value() * beta.value());
}

double phi_prime(const Rational& alpha, double x) { return ln_alpha(alpha, x); }

BaseFunction::BaseFunction(BaseKind kind_, const Rational& alpha_, BranchChoice branch_)
    : kind(kind_), alpha(alpha_), branch(branch_) {
  const bool legendre = kind == BaseKind::Psi ? psi_is_legendre(alpha) : phi_is_legendre(alpha);
  if (!legendre)
    throw UnsupportedAlpha("base function is not of Legendre type at alpha = " + alpha.str());
  domain = kind == BaseKind::Psi ? psi_domain(alpha, branch) : phi_domain(alpha, branch);
}

double BaseFunction::value(double x) const {
  return kind == BaseKind::Psi ? psi(alpha, x) : phi(alpha, x);
}

double BaseFunction::derivative(double x) const {
  return kind == BaseKind::Psi ? exp_alpha(alpha, x) : ln_alpha(alpha, x);
}

DomainSpec BaseFunction::conjugate_derivative_domain() const {
  // The gradient maps the chosen branch onto the opposite-signed branch of
  // the conjugate's domain when both sides exist (alpha > 1, alpha in Re).
  BranchChoice conj = branch;
  if (alpha > kOne && classify_rational(alpha) == RealCategory::Re)
    conj = branch == BranchChoice::Positive ? BranchChoice::Negative : BranchChoice::Positive;
  return kind == BaseKind::Psi ? domain_ln(alpha, true, conj) : domain_exp(alpha, true, conj);
}

double bregman_div(const BaseFunction& base, double x, double y) {
  if (!base.domain.contains(x))
    throw DomainError("divergence: first argument outside the base domain");
  if (!base.domain.interior().contains(y))
    throw DomainError("divergence: second argument outside the domain interior");
  return base.value(x) - base.value(y) - base.derivative(y) * (x - y);
}

double bregman_psi(const Rational& alpha, double x, double y, BranchChoice branch) {
  const DomainSpec dom = psi_domain(alpha, branch);
  if (!dom.contains(x) || !dom.interior().contains(y))
    throw DomainError("D_Psi arguments outside dom Psi");
  return psi(alpha, x) - psi(alpha, y) - exp_alpha(alpha, y) * (x - y);
}

double bregman_phi(const Rational& alpha, double x, double y, BranchChoice branch) {
  const DomainSpec dom = phi_domain(alpha, branch);
  if (!dom.contains(x) || !dom.interior().contains(y))
    throw DomainError("D_Phi arguments outside dom Phi");
  return phi(alpha, x) - phi(alpha, y) - ln_alpha(alpha, y) * (x - y);
}

double legendre_transform(const BaseFunction& base, double eta, double x) {
  if (!base.domain.contains(x))
    throw DomainError("Legendre transform: x outside the base domain");
  const double shifted = eta + base.derivative(x);
  if (!base.conjugate_derivative_domain().contains(shifted))
    throw DomainError("Legendre transform: eta + f'(x) leaves the conjugate domain");
  return base.kind == BaseKind::Psi ? ln_alpha(base.alpha, shifted) : exp_alpha(base.alpha, shifted);
}

double conjugate_check(const Rational& alpha, double x) {
  if (!psi_domain(alpha, side_of(x)).interior().contains(x))
    throw DomainError("conjugate check: x outside int(dom Psi)");
  return ln_alpha(alpha, exp_alpha(alpha, x));
}

}  // namespace bregman
