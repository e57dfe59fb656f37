#ifndef BREGMAN_LOSS_HPP
#define BREGMAN_LOSS_HPP

#include <limits>
#include <vector>

#include "bregman/dataset.hpp"
#include "bregman/rational.hpp"

namespace bregman {

enum class LossMode { HBregman, LBregman, Explicit };

/// Relative guard applied when clamping margins to the gradient domain.
inline constexpr double kGradDomainEps = 1e-6;

/// A Bregman-Tweedie loss instance. Admitted alpha: {0, 1} and the even/odd
/// rationals in (0,1). H-Bregman fixes c_alpha = -1 (hence
/// c = (1-alpha)^(1/(1-alpha))); L-Bregman fixes c = 1. The margin gradient
/// exists for m < 2|c_alpha|.
struct LossSpec {
  Rational alpha;
  double c = 1.0;
  LossMode mode = LossMode::LBregman;
  double c_alpha = 0.0;     // c^(1-alpha)/(alpha-1); unused at alpha = 1
  double c_pow = 1.0;       // c^(1-alpha)
  double grad_lower = -std::numeric_limits<double>::infinity();  // 2 c_alpha

  bool logistic() const { return alpha == Rational(1); }
  /// Upper margin bound of the gradient domain, 2|c_alpha| (+inf at alpha=1).
  double grad_bound() const { return -grad_lower; }
};

/// Builds a LossSpec. c_opt is consulted only for LossMode::Explicit.
/// Throws UnsupportedAlpha outside the admitted set, InvalidScale for c <= 0.
LossSpec make_spec(const Rational& alpha, LossMode mode, double c_opt = 0.0);

/// ln(1 + e^(-m)) at alpha = 1, ln_{a,c}(c + exp_{a,c}(-m)) otherwise.
/// Defined for every real margin; 1 - m at (alpha, c) = (0, 1).
double bt_loss(const LossSpec& spec, double margin);

/// Margin derivative -(exp_{a,c}(-m) / (c + exp_{a,c}(-m)))^alpha, always
/// <= 0 on its domain m < 2|c_alpha|. Throws GradDomainError at and beyond
/// the bound.
double bt_loss_grad(const LossSpec& spec, double margin);

/// Perceptron-augmented family (max(0, c^(1-a) - (1-a)m))^(1/(1-a)) for
/// 0 <= alpha < 1: the hinge at (0,1), the squared hinge at (1/2, 1/4).
double higher_order_hinge(const Rational& alpha, double c, double margin);

/// Margin derivative of the higher-order hinge; 0 past the hinge point.
double higher_order_hinge_grad(const Rational& alpha, double c, double margin);

struct ObjectiveEval {
  double value = 0.0;
  std::vector<double> grad_w;
  double grad_b = 0.0;
};

/// Regularized empirical loss sum_i loss(y_i (<w, x_i> + b)) + lambda ||w||^2
/// with its gradient. With clamp enabled (the trainer default) margins are
/// pulled to 2|c_alpha| (1 - kGradDomainEps) before gradient evaluation;
/// otherwise GradDomainError propagates. The sample reduction is sequential
/// and deterministic.
ObjectiveEval objective_and_grad(const LossSpec& spec, double lambda, const Dataset& ds,
                                 const std::vector<double>& w, double b, bool clamp = true);

/// Same objective machinery over the higher-order hinge; used by the
/// internal SVM-style baselines.
ObjectiveEval hinge_objective_and_grad(const Rational& alpha, double c, double lambda,
                                       const Dataset& ds, const std::vector<double>& w, double b);

}  // namespace bregman

#endif
