#include "bregman/classifier.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bregman/rng.hpp"
#include "bregman/vec.hpp"

namespace bregman {

namespace {

bool needs_rescaled_data(const ModelLoss& loss) {
  if (const auto* spec = std::get_if<LossSpec>(&loss)) return !spec->logistic();
  return false;
}

double box_radius(const ModelLoss& loss, double rho) {
  if (const auto* spec = std::get_if<LossSpec>(&loss)) {
    if (!spec->logistic()) return rho * std::abs(spec->c_alpha);
  }
  return std::numeric_limits<double>::infinity();
}

Oracle make_oracle(const ModelLoss& loss, double lambda, const Dataset& ds) {
  if (const auto* spec = std::get_if<LossSpec>(&loss)) {
    LossSpec s = *spec;
    return [s, lambda, &ds](const std::vector<double>& x, std::vector<double>& grad) {
      std::vector<double> w(x.begin(), x.end() - 1);
      ObjectiveEval eval = objective_and_grad(s, lambda, ds, w, x.back());
      grad.assign(eval.grad_w.begin(), eval.grad_w.end());
      grad.push_back(eval.grad_b);
      return eval.value;
    };
  }
  const HingeSpec hs = std::get<HingeSpec>(loss);
  return [hs, lambda, &ds](const std::vector<double>& x, std::vector<double>& grad) {
    std::vector<double> w(x.begin(), x.end() - 1);
    ObjectiveEval eval = hinge_objective_and_grad(hs.alpha, hs.c, lambda, ds, w, x.back());
    grad.assign(eval.grad_w.begin(), eval.grad_w.end());
    grad.push_back(eval.grad_b);
    return eval.value;
  };
}

}  // namespace

Hyperplane fit(const Dataset& ds, const ModelLoss& loss, const TrainConfig& cfg,
               OptimResult* opt_out) {
  if (ds.n == 0 || ds.labels.size() != ds.n) throw DomainError("empty or inconsistent dataset");
  if (needs_rescaled_data(loss) && !ds.rescaled)
    throw NotRescaled("Bregman-Tweedie training with alpha != 1 needs l1-rescaled data");

  BoxConstraint box{box_radius(loss, cfg.rho)};
  std::vector<double> x0(ds.d + 1, 0.0);
  if (cfg.init == InitScheme::SeededUniform) {
    SplitMix64 rng(SplitMix64::derive(cfg.seed, 0x5eed));
    const double span = std::isfinite(box.radius) ? 0.5 * box.radius : 0.5;
    for (double& v : x0) v = span * (2.0 * rng.next_double() - 1.0);
  }

  OptimResult res = minimize(make_oracle(loss, cfg.lambda, ds), std::move(x0), box, cfg.optim);

  Hyperplane h;
  h.w.assign(res.point.begin(), res.point.end() - 1);
  h.b = res.point.back();
  h.loss = loss;
  h.means = ds.feature_means;
  h.stds = ds.feature_stds;
  h.l1_divisor = ds.l1_divisor;
  h.rho = cfg.rho;
  h.lambda = cfg.lambda;
  if (opt_out != nullptr) *opt_out = std::move(res);
  return h;
}

Hyperplane fit(const Dataset& ds, const LossSpec& spec, const TrainConfig& cfg,
               OptimResult* opt_out) {
  return fit(ds, ModelLoss(spec), cfg, opt_out);
}

int predict(const Hyperplane& h, const std::vector<double>& x_raw) {
  if (x_raw.size() != h.w.size())
    throw ArityError("expected " + std::to_string(h.w.size()) + " features, got " +
                     std::to_string(x_raw.size()));
  double s = h.b;
  const bool has_stats = !h.means.empty();
  for (std::size_t j = 0; j < x_raw.size(); ++j) {
    double z = x_raw[j];
    if (has_stats) z = h.stds[j] > 0.0 ? (z - h.means[j]) / h.stds[j] : 0.0;
    z /= h.l1_divisor;
    s += h.w[j] * z;
  }
  return s >= 0.0 ? +1 : -1;
}

double score(const Hyperplane& h, const Dataset& raw) {
  if (raw.d != h.w.size()) throw ArityError("dataset arity differs from the model");
  std::size_t correct = 0;
  std::vector<double> x(raw.d);
  for (std::size_t i = 0; i < raw.n; ++i) {
    const double* r = raw.row(i);
    x.assign(r, r + raw.d);
    if (predict(h, x) == raw.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(raw.n);
}

double accuracy_preprocessed(const Hyperplane& h, const Dataset& ds,
                             const std::vector<std::size_t>& rows) {
  std::size_t correct = 0;
  for (std::size_t i : rows) {
    const double s = dot(h.w.data(), ds.row(i), ds.d) + h.b;
    const int pred = s >= 0.0 ? +1 : -1;
    if (pred == ds.labels[i]) ++correct;
  }
  return rows.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(rows.size());
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int b = -14; b <= 5; ++b) grid.push_back(std::ldexp(1.0, b));
  return grid;
}

std::pair<double, std::vector<CVCell>> select_lambda(const Dataset& ds, const ModelLoss& loss,
                                                     const CVPlan& plan,
                                                     const std::vector<double>& grid,
                                                     const TrainConfig& cfg, int repetition) {
  if (grid.empty()) throw SelectionError("empty lambda grid");
  const std::vector<FoldSplit> folds = plan.stratified
                                           ? kfold_indices(ds.labels, plan, repetition)
                                           : kfold_indices(ds.n, plan, repetition);

  std::vector<CVCell> table;
  table.reserve(grid.size());
  for (double lambda : grid) {
    CVCell cell;
    cell.lambda = lambda;
    double acc_sum = 0.0;
    int ok = 0;
    for (const auto& [train_idx, valid_idx] : folds) {
      try {
        TrainConfig fold_cfg = cfg;
        fold_cfg.lambda = lambda;
        const Dataset train = subset(ds, train_idx);
        const Hyperplane h = fit(train, loss, fold_cfg);
        acc_sum += accuracy_preprocessed(h, ds, valid_idx);
        ++ok;
      } catch (const std::exception&) {
        ++cell.failed_folds;
      }
    }
    cell.usable = cell.failed_folds == 0 && ok > 0;
    cell.mean_accuracy = ok > 0 ? acc_sum / ok : 0.0;
    table.push_back(cell);
  }

  bool found = false;
  double best_lambda = 0.0, best_acc = -1.0;
  for (const CVCell& cell : table) {
    if (!cell.usable) continue;
    if (!found || cell.mean_accuracy > best_acc ||
        (cell.mean_accuracy == best_acc && cell.lambda > best_lambda)) {
      found = true;
      best_acc = cell.mean_accuracy;
      best_lambda = cell.lambda;
    }
  }
  if (!found) throw SelectionError("every (lambda, fold) cell failed");
  return {best_lambda, table};
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_vector(std::ostream& out, const char* name, const std::vector<double>& v) {
  out << name;
  for (double x : v) out << ' ' << fmt17(x);
  out << '\n';
}

}  // namespace

void save_model(const Hyperplane& h, std::ostream& out) {
  out << "btclass-model 1\n";
  if (const auto* spec = std::get_if<LossSpec>(&h.loss)) {
    out << "family bt\n";
    out << "alpha " << spec->alpha.str() << '\n';
    out << "c " << fmt17(spec->c) << '\n';
    const char* mode = spec->mode == LossMode::HBregman   ? "h"
                       : spec->mode == LossMode::LBregman ? "l"
                                                          : "custom";
    out << "mode " << mode << '\n';
  } else {
    const auto& hs = std::get<HingeSpec>(h.loss);
    out << "family hinge\n";
    out << "alpha " << hs.alpha.str() << '\n';
    out << "c " << fmt17(hs.c) << '\n';
    out << "mode hinge\n";
  }
  out << "rho " << fmt17(h.rho) << '\n';
  out << "lambda " << fmt17(h.lambda) << '\n';
  out << "features " << h.w.size() << '\n';
  write_vector(out, "means", h.means);
  write_vector(out, "stds", h.stds);
  out << "l1_divisor " << fmt17(h.l1_divisor) << '\n';
  write_vector(out, "w", h.w);
  out << "b " << fmt17(h.b) << '\n';
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

std::vector<std::string> expect_line(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("model file truncated before '" + key + "'");
  auto toks = tokens_of(line);
  if (toks.empty() || toks[0] != key)
    throw ParseError("model file: expected '" + key + "' line");
  return toks;
}

double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ParseError("model file: bad number '" + s + "'");
  return v;
}

std::vector<double> to_vector(const std::vector<std::string>& toks, std::size_t expected) {
  if (toks.size() != expected + 1)
    throw ParseError("model file: field '" + toks[0] + "' has wrong arity");
  std::vector<double> v;
  v.reserve(expected);
  for (std::size_t i = 1; i < toks.size(); ++i) v.push_back(to_double(toks[i]));
  return v;
}

}  // namespace

Hyperplane load_model(std::istream& in) {
  auto magic = expect_line(in, "btclass-model");
  if (magic.size() != 2 || magic[1] != "1") throw ParseError("unsupported model version");
  const std::string family = expect_line(in, "family").at(1);
  const Rational alpha = rational_of_string(expect_line(in, "alpha").at(1));
  const double c = to_double(expect_line(in, "c").at(1));
  const std::string mode = expect_line(in, "mode").at(1);

  Hyperplane h;
  if (family == "bt") {
    LossMode m = mode == "h" ? LossMode::HBregman
                 : mode == "l" ? LossMode::LBregman
                               : LossMode::Explicit;
    h.loss = make_spec(alpha, m, c);
  } else if (family == "hinge") {
    h.loss = HingeSpec{alpha, c};
  } else {
    throw ParseError("unknown loss family '" + family + "'");
  }
  h.rho = to_double(expect_line(in, "rho").at(1));
  h.lambda = to_double(expect_line(in, "lambda").at(1));
  const std::size_t d = static_cast<std::size_t>(to_double(expect_line(in, "features").at(1)));
  h.means = to_vector(expect_line(in, "means"), d);
  h.stds = to_vector(expect_line(in, "stds"), d);
  h.l1_divisor = to_double(expect_line(in, "l1_divisor").at(1));
  h.w = to_vector(expect_line(in, "w"), d);
  h.b = to_double(expect_line(in, "b").at(1));
  return h;
}

void save_model_file(const Hyperplane& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  save_model(h, out);
}

Hyperplane load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_model(in);
}

}  // namespace bregman
