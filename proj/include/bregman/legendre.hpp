#ifndef BREGMAN_LEGENDRE_HPP
#define BREGMAN_LEGENDRE_HPP

#include "bregman/extended_functions.hpp"
#include "bregman/rational.hpp"

namespace bregman {

enum class BaseKind { Psi, Phi };

/// Natural domain of Psi, the indefinite integral of exp_a:
///   alpha = 1 -> R, alpha = 2 -> R--,
///   alpha < 1 -> R (alpha in Re) or R+,
///   1 < alpha < 2 -> R++/R-- (alpha in Re, branch) or R--,
///   alpha > 2 -> R+/R- (alpha in Re, branch) or R-.
DomainSpec psi_domain(const Rational& alpha, BranchChoice branch);

/// Natural domain of Phi, the indefinite integral of ln_a:
///   alpha < 1 -> R (alpha in Re) or R+,
///   1 <= alpha < 2 -> R+ (R- on the negative branch for alpha in Re),
///   alpha >= 2 -> R++ (R-- on the negative branch for alpha in Re, alpha > 2).
DomainSpec phi_domain(const Rational& alpha, BranchChoice branch);

/// Legendre-type status. Both base functions lose essential smoothness for
/// alpha < 1 outside Re (the derivative vanishes at the boundary 0 instead
/// of blowing up), so only alpha in Re union {1} qualifies there.
bool psi_is_legendre(const Rational& alpha);
bool phi_is_legendre(const Rational& alpha);

/// Psi(x) = e^x (alpha = 1), -ln(-x) (alpha = 2),
/// ((1-alpha)x)^((2-alpha)/(1-alpha)) / (2-alpha) otherwise.
/// Constants of integration are dropped throughout.
double psi(const Rational& alpha, double x);
double psi_prime(const Rational& alpha, double x);   // = exp_alpha
double psi_second(const Rational& alpha, double x);  // ((1-alpha)x)^(alpha/(1-alpha))

/// Phi(x) = x ln x - x (alpha = 1; value 0 at x = 0), -ln x (alpha = 2),
/// x^(2-alpha) / ((2-alpha)(1-alpha)) otherwise.
double phi(const Rational& alpha, double x);
double phi_prime(const Rational& alpha, double x);  // = ln_alpha

/// A base function of Legendre type with its classified domain. Construction
/// rejects (kind, alpha) combinations that are not of Legendre type.
struct BaseFunction {
  BaseKind kind;
  Rational alpha;
  BranchChoice branch;
  DomainSpec domain;

  BaseFunction(BaseKind kind, const Rational& alpha, BranchChoice branch);

  double value(double x) const;
  double derivative(double x) const;
  /// Domain of the conjugate's derivative; the target of the gradient map.
  DomainSpec conjugate_derivative_domain() const;
};

/// Bregman divergence D_f(x|y) = f(x) - f(y) - f'(y)(x - y) with
/// x in dom f and y in int(dom f). Nonnegative, zero iff x = y on strictly
/// convex interiors.
double bregman_div(const BaseFunction& base, double x, double y);

/// Divergences on the natural domains, without the Legendre-type gate;
/// used for table emission where non-Legendre alpha are still plottable.
double bregman_psi(const Rational& alpha, double x, double y,
                   BranchChoice branch = BranchChoice::Negative);
double bregman_phi(const Rational& alpha, double x, double y,
                   BranchChoice branch = BranchChoice::Positive);

/// Regular Legendre transformation L_f(eta, x) = (f*)'(eta + f'(x)).
/// For the conjugate pair here, (Psi*)' = ln_alpha and (Phi*)' = exp_alpha.
/// Satisfies L_f(eta1, L_f(eta2, x)) = L_f(eta1 + eta2, x).
double legendre_transform(const BaseFunction& base, double eta, double x);

/// Phi'(Psi'(x)); equals x on the interior of dom Psi.
double conjugate_check(const Rational& alpha, double x);

}  // namespace bregman

#endif
