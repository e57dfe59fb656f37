#ifndef BREGMAN_CLASSIFIER_HPP
#define BREGMAN_CLASSIFIER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bregman/dataset.hpp"
#include "bregman/loss.hpp"
#include "bregman/optimizer.hpp"

namespace bregman {

/// Higher-order hinge baseline run through the same trainer.
struct HingeSpec {
  Rational alpha;
  double c = 1.0;
};

using ModelLoss = std::variant<LossSpec, HingeSpec>;

enum class InitScheme { Zeros, SeededUniform };

struct TrainConfig {
  double lambda = 0.0;
  double rho = 1.5;  // box radius multiplier on |c_alpha|
  OptimConfig optim;
  InitScheme init = InitScheme::Zeros;
  std::uint64_t seed = 0;
};

/// Fitted linear model together with the preprocessing replayed at
/// prediction time.
struct Hyperplane {
  std::vector<double> w;
  double b = 0.0;
  ModelLoss loss;
  std::vector<double> means;
  std::vector<double> stds;
  double l1_divisor = 1.0;
  double rho = 1.5;
  double lambda = 0.0;
};

/// Trains on a preprocessed dataset by projected quasi-Newton on the box of
/// radius rho |c_alpha| (unconstrained for the logistic and hinge losses).
/// Bregman-Tweedie losses with alpha != 1 require a rescaled dataset
/// (NotRescaled otherwise). opt_out, when given, receives the optimizer
/// result for the returned point.
Hyperplane fit(const Dataset& ds, const ModelLoss& loss, const TrainConfig& cfg,
               OptimResult* opt_out = nullptr);
Hyperplane fit(const Dataset& ds, const LossSpec& spec, const TrainConfig& cfg,
               OptimResult* opt_out = nullptr);

/// Applies the stored standardize + rescale transform and returns
/// sign(<w, x'> + b); an exact 0 score maps to +1.
int predict(const Hyperplane& h, const std::vector<double>& x_raw);

/// Fraction of correctly predicted labels on a raw (untransformed) dataset.
double score(const Hyperplane& h, const Dataset& raw);

/// Decision values w.x + b on rows that are already in the model's
/// preprocessed space (used by cross-validation folds).
double accuracy_preprocessed(const Hyperplane& h, const Dataset& ds,
                             const std::vector<std::size_t>& rows);

struct CVCell {
  double lambda = 0.0;
  double mean_accuracy = 0.0;
  int failed_folds = 0;
  bool usable = false;
};

/// The benchmark grid lambda = 2^b, b = -14..5 (20 values).
std::vector<double> default_lambda_grid();

/// Cross-validated lambda selection: mean validation accuracy per grid value
/// across plan.folds folds; ties break toward the larger lambda. Cells whose
/// fit fails are excluded; SelectionError when nothing is usable.
std::pair<double, std::vector<CVCell>> select_lambda(const Dataset& ds, const ModelLoss& loss,
                                                     const CVPlan& plan,
                                                     const std::vector<double>& grid,
                                                     const TrainConfig& cfg, int repetition = 0);

/// Flat text model format; doubles are written with 17 significant digits
/// and round-trip bit-exactly.
void save_model(const Hyperplane& h, std::ostream& out);
Hyperplane load_model(std::istream& in);
void save_model_file(const Hyperplane& h, const std::string& path);
Hyperplane load_model_file(const std::string& path);

}  // namespace bregman

#endif
