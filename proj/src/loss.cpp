#include "bregman/loss.hpp"

#include <cmath>

#include "bregman/extended_functions.hpp"
#include "bregman/vec.hpp"

namespace bregman {

namespace {

const Rational kOne(1);

bool alpha_admitted(const Rational& alpha) {
  if (alpha == Rational(0) || alpha == kOne) return true;
  return alpha > Rational(0) && alpha < kOne && classify_rational(alpha) == RealCategory::Re;
}

double softplus(double z) {
  // ln(1 + e^z) without overflow for large |z|.
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

}  // namespace

LossSpec make_spec(const Rational& alpha, LossMode mode, double c_opt) {
  if (!alpha_admitted(alpha))
    throw UnsupportedAlpha("alpha = " + alpha.str() +
                           " is outside {0, 1} and the even/odd rationals in (0, 1)");
  LossSpec spec;
  spec.alpha = alpha;
  spec.mode = mode;
  if (alpha == kOne) {
    spec.c = 1.0;
    spec.c_pow = 1.0;
    spec.c_alpha = 0.0;
    spec.grad_lower = -std::numeric_limits<double>::infinity();
    return spec;
  }
  const Rational beta = kOne - alpha;
  switch (mode) {
    case LossMode::HBregman:
      // c_alpha = -1 forces c^(1-alpha) = 1-alpha.
      spec.c_pow = beta.value();
      spec.c = std::pow(beta.value(), 1.0 / beta.value());
      spec.c_alpha = -1.0;
      break;
    case LossMode::LBregman:
      spec.c = 1.0;
      spec.c_pow = 1.0;
      spec.c_alpha = -1.0 / beta.value();
      break;
    case LossMode::Explicit:
      if (c_opt <= 0.0) throw InvalidScale("explicit scale c must be positive");
      spec.c = c_opt;
      spec.c_pow = std::pow(c_opt, beta.value());
      spec.c_alpha = spec.c_pow / (alpha.value() - 1.0);
      break;
  }
  spec.grad_lower = 2.0 * spec.c_alpha;
  return spec;
}

double bt_loss(const LossSpec& spec, double margin) {
  if (spec.logistic()) return softplus(-margin);
  const Rational beta = kOne - spec.alpha;
  const double x = -margin;
  const double ev = signed_pow(spec.c_pow + beta.value() * x, beta.reciprocal());
  return (signed_pow(spec.c + ev, beta) - spec.c_pow) / beta.value();
}

double bt_loss_grad(const LossSpec& spec, double margin) {
  if (spec.logistic()) return -1.0 / (1.0 + std::exp(margin));
  if (margin >= spec.grad_bound())
    throw GradDomainError("margin " + std::to_string(margin) +
                          " outside the gradient domain m < " + std::to_string(spec.grad_bound()));
  const Rational beta = kOne - spec.alpha;
  const double ev = signed_pow(spec.c_pow + beta.value() * (-margin), beta.reciprocal());
  const double denom = spec.c + ev;
  if (denom <= 0.0)
    throw GradDomainError("margin at the singular point of the loss gradient");
  return -signed_pow(ev / denom, spec.alpha);
}

double higher_order_hinge(const Rational& alpha, double c, double margin) {
  if (alpha < Rational(0) || alpha >= kOne)
    throw UnsupportedAlpha("higher-order hinge needs 0 <= alpha < 1, got " + alpha.str());
  if (c <= 0.0) throw InvalidScale("scale c must be positive");
  const Rational beta = kOne - alpha;
  const double base = std::pow(c, beta.value()) - beta.value() * margin;
  if (base <= 0.0) return 0.0;
  return signed_pow(base, beta.reciprocal());
}

double higher_order_hinge_grad(const Rational& alpha, double c, double margin) {
  if (alpha < Rational(0) || alpha >= kOne)
    throw UnsupportedAlpha("higher-order hinge needs 0 <= alpha < 1, got " + alpha.str());
  if (c <= 0.0) throw InvalidScale("scale c must be positive");
  const Rational beta = kOne - alpha;
  const double base = std::pow(c, beta.value()) - beta.value() * margin;
  if (base <= 0.0) return 0.0;
  return -signed_pow(base, alpha / beta);
}

namespace {

template <typename Loss, typename Grad>
ObjectiveEval margin_objective(const Dataset& ds, double lambda, const std::vector<double>& w,
                               double b, Loss loss, Grad grad) {
  ObjectiveEval out;
  out.grad_w.assign(ds.d, 0.0);
  for (std::size_t i = 0; i < ds.n; ++i) {
    const double* x = ds.row(i);
    const double y = static_cast<double>(ds.labels[i]);
    const double m = y * (dot(w.data(), x, ds.d) + b);
    out.value += loss(m);
    const double g = grad(m) * y;
    for (std::size_t j = 0; j < ds.d; ++j) out.grad_w[j] += g * x[j];
    out.grad_b += g;
  }
  out.value += lambda * dot(w, w);
  for (std::size_t j = 0; j < ds.d; ++j) out.grad_w[j] += 2.0 * lambda * w[j];
  return out;
}

}  // namespace

ObjectiveEval objective_and_grad(const LossSpec& spec, double lambda, const Dataset& ds,
                                 const std::vector<double>& w, double b, bool clamp) {
  const double cap = spec.grad_bound() * (1.0 - kGradDomainEps);
  return margin_objective(
      ds, lambda, w, b, [&](double m) { return bt_loss(spec, m); },
      [&](double m) {
        if (clamp && !spec.logistic() && m > cap) m = cap;
        return bt_loss_grad(spec, m);
      });
}

ObjectiveEval hinge_objective_and_grad(const Rational& alpha, double c, double lambda,
                                       const Dataset& ds, const std::vector<double>& w, double b) {
  return margin_objective(
      ds, lambda, w, b, [&](double m) { return higher_order_hinge(alpha, c, m); },
      [&](double m) { return higher_order_hinge_grad(alpha, c, m); });
}

}  // namespace bregman
