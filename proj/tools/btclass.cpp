// btclass: command-line front end for the Bregman-Tweedie classification
// toolkit. Subcommands emit CSV tables (loss-table, divergence-table),
// inspect domains (domain-info), and run training, cross-validation, and
// benchmarks. Data goes to stdout, diagnostics to stderr; exit codes are
// 0 success, 1 runtime failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bregman/benchmark.hpp"
#include "bregman/classifier.hpp"
#include "bregman/dataset.hpp"
#include "bregman/legendre.hpp"
#include "bregman/loss.hpp"

namespace {

using namespace bregman;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

LossMode parse_mode(const std::string& mode) {
  if (mode == "h") return LossMode::HBregman;
  if (mode == "l") return LossMode::LBregman;
  if (mode == "custom") return LossMode::Explicit;
  throw CLI::ValidationError("--mode must be h, l, or custom");
}

// Bad flag values are usage errors (exit 2), not runtime failures.
Rational alpha_flag(const std::string& text) {
  try {
    return rational_of_string(text);
  } catch (const ParseError& e) {
    throw CLI::ValidationError(std::string("--alpha: ") + e.what());
  }
}

LossSpec spec_flag(const std::string& alpha, const std::string& mode, double c) {
  try {
    return make_spec(alpha_flag(alpha), parse_mode(mode), c);
  } catch (const UnsupportedAlpha& e) {
    throw CLI::ValidationError(std::string("--alpha: ") + e.what());
  } catch (const InvalidScale& e) {
    throw CLI::ValidationError(std::string("--c: ") + e.what());
  }
}

std::map<std::string, int> parse_label_map(const std::string& text) {
  std::map<std::string, int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--label-map entries look like label=-1 or label=1");
    const std::string value = item.substr(eq + 1);
    if (value != "1" && value != "+1" && value != "-1")
      throw CLI::ValidationError("--label-map targets must be -1 or 1");
    out[item.substr(0, eq)] = value == "-1" ? -1 : +1;
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
  return grid;
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << content;
}

struct CommonTrainFlags {
  std::string data;
  std::string label_col = "last";
  bool has_header = false;
  std::string label_map;
  std::string alpha = "1";
  std::string mode = "l";
  double c = 1.0;
  double rho = 1.5;
  double tol = 1e-7;
  int max_iter = 500;
  std::uint64_t seed = 0;
};

void add_train_flags(CLI::App* cmd, CommonTrainFlags& f) {
  cmd->add_option("--data", f.data, "training CSV file")->required();
  cmd->add_option("--label-col", f.label_col, "label column: index, name, or 'last'");
  cmd->add_flag("--has-header", f.has_header, "first CSV line is a header");
  cmd->add_option("--label-map", f.label_map, "explicit label mapping, e.g. yes=1,no=-1");
  cmd->add_option("--alpha", f.alpha, "loss parameter alpha as p/q");
  cmd->add_option("--mode", f.mode, "sub-model: h (c_alpha=-1), l (c=1), custom");
  cmd->add_option("--c", f.c, "scale c for --mode custom");
  cmd->add_option("--rho", f.rho, "box radius multiplier on |c_alpha|");
  cmd->add_option("--tol", f.tol, "optimizer tolerance");
  cmd->add_option("--max-iter", f.max_iter, "optimizer iteration cap");
  cmd->add_option("--seed", f.seed, "master seed");
}

LossSpec spec_from_flags(const CommonTrainFlags& f) {
  return spec_flag(f.alpha, f.mode, f.c);
}

TrainConfig config_from_flags(const CommonTrainFlags& f) {
  TrainConfig cfg;
  cfg.rho = f.rho;
  cfg.optim.tol = f.tol;
  cfg.optim.max_iter = f.max_iter;
  cfg.seed = f.seed;
  return cfg;
}

Dataset load_training_data(const CommonTrainFlags& f, const LossSpec& spec) {
  Dataset raw = load_csv(f.data, f.label_col, f.has_header, parse_label_map(f.label_map));
  Dataset std_ds = standardize(raw);
  if (spec.logistic()) return std_ds;
  return rescale_l1(std_ds);
}

int cmd_loss_table(const std::string& alpha, const std::string& mode, double c, double m_min,
                   double m_max, int steps, const std::string& out_path) {
  LossSpec spec = spec_flag(alpha, mode, c);
  std::ostringstream out;
  out << "m,loss,grad\n";
  for (int i = 0; i < steps; ++i) {
    const double m =
        steps == 1 ? m_min : m_min + (m_max - m_min) * static_cast<double>(i) / (steps - 1);
    out << fmt(m) << ',' << fmt(bt_loss(spec, m)) << ',';
    if (spec.logistic() || m < spec.grad_bound())
      out << fmt(bt_loss_grad(spec, m));
    out << '\n';
  }
  write_out(out_path, out.str());
  return 0;
}

int cmd_divergence_table(const std::string& alpha_text, double x_min, double x_max, int x_steps,
                         double y_min, double y_max, int y_steps, const std::string& psi_branch,
                         const std::string& phi_branch, const std::string& out_path) {
  const Rational alpha = alpha_flag(alpha_text);
  auto parse_branch = [](const std::string& b) {
    if (b == "pos") return BranchChoice::Positive;
    if (b == "neg") return BranchChoice::Negative;
    throw CLI::ValidationError("branch must be pos or neg");
  };
  const BranchChoice psi_b = parse_branch(psi_branch);
  const BranchChoice phi_b = parse_branch(phi_branch);

  std::ostringstream out;
  out << "x,y,d_psi,d_phi\n";
  auto grid_point = [](double lo, double hi, int steps, int i) {
    return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  };
  for (int ix = 0; ix < x_steps; ++ix) {
    const double x = grid_point(x_min, x_max, x_steps, ix);
    for (int iy = 0; iy < y_steps; ++iy) {
      const double y = grid_point(y_min, y_max, y_steps, iy);
      out << fmt(x) << ',' << fmt(y) << ',';
      try {
        out << fmt(bregman_psi(alpha, x, y, psi_b));
      } catch (const DomainError&) {
      }
      out << ',';
      try {
        out << fmt(bregman_phi(alpha, x, y, phi_b));
      } catch (const DomainError&) {
      }
      out << '\n';
    }
  }
  write_out(out_path, out.str());
  return 0;
}

int cmd_domain_info(const std::string& alpha_text) {
  const Rational alpha = alpha_flag(alpha_text);
  const Rational beta = Rational(1) - alpha;
  const RealCategory cat = classify_rational(alpha);
  std::ostringstream out;
  out << "alpha = " << alpha.str() << "  category: " << category_name(cat) << '\n';
  out << "1 - alpha = " << beta.str() << "  category: " << category_name(classify_rational(beta))
      << '\n';

  auto both = [&](auto fn) {
    const DomainSpec neg = fn(BranchChoice::Negative);
    const DomainSpec pos = fn(BranchChoice::Positive);
    return neg == pos ? neg.str() : neg.str() + " / " + pos.str();
  };
  out << "dom exp_a (raw):     "
      << both([&](BranchChoice b) { return domain_exp(alpha, false, b); }) << '\n';
  out << "dom exp_a (reduced): "
      << both([&](BranchChoice b) { return domain_exp(alpha, true, b); }) << '\n';
  out << "dom ln_a  (raw):     "
      << both([&](BranchChoice b) { return domain_ln(alpha, false, b); }) << '\n';
  out << "dom ln_a  (reduced): "
      << both([&](BranchChoice b) { return domain_ln(alpha, true, b); }) << '\n';
  out << "dom Psi = " << both([&](BranchChoice b) { return psi_domain(alpha, b); })
      << (psi_is_legendre(alpha) ? "" : "  (not of Legendre type)") << '\n';
  out << "dom Phi = " << both([&](BranchChoice b) { return phi_domain(alpha, b); })
      << (phi_is_legendre(alpha) ? "" : "  (not of Legendre type)") << '\n';

  if (alpha == Rational(1)) {
    out << "c_alpha: not used at alpha = 1 (logistic loss)\n";
  } else {
    out << "c_alpha(c) = c^(" << beta.str() << ") / (" << (alpha - Rational(1)).str() << ")";
    out << "; L-Bregman (c=1): c_alpha = " << fmt(c_alpha_constant(alpha, 1.0));
    if (alpha >= Rational(0) && alpha < Rational(1)) {
      const double c_h = std::pow(beta.value(), 1.0 / beta.value());
      out << "; H-Bregman (c_alpha=-1): c = " << fmt(c_h);
    }
    out << '\n';
  }

  const bool admitted = alpha == Rational(0) || alpha == Rational(1) ||
                        (alpha > Rational(0) && alpha < Rational(1) && cat == RealCategory::Re);
  if (!admitted)
    out << "warning: alpha outside the supported loss family {0, 1} u ((0,1) n Re)\n";
  std::cout << out.str();
  return 0;
}

int cmd_train(const CommonTrainFlags& f, double lambda, const std::string& out_path) {
  LossSpec spec = spec_from_flags(f);
  TrainConfig cfg = config_from_flags(f);
  cfg.lambda = lambda;
  Dataset ds = load_training_data(f, spec);
  OptimResult opt;
  Hyperplane h = fit(ds, spec, cfg, &opt);
  std::cerr << "trained on " << ds.n << " samples, " << ds.d << " features; objective "
            << fmt(opt.value) << ", " << opt.iterations << " iterations"
            << (opt.converged ? "" : " (not converged)") << '\n';
  std::ostringstream out;
  save_model(h, out);
  write_out(out_path, out.str());
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data,
                const std::string& label_col, bool has_header, const std::string& label_map,
                const std::string& out_path) {
  Hyperplane h = load_model_file(model_path);
  std::ostringstream out;
  if (!label_col.empty()) {
    Dataset raw = load_csv(data, label_col, has_header, parse_label_map(label_map));
    std::vector<double> x(raw.d);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < raw.n; ++i) {
      x.assign(raw.row(i), raw.row(i) + raw.d);
      const int pred = predict(h, x);
      correct += pred == raw.labels[i] ? 1 : 0;
      out << pred << '\n';
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * static_cast<double>(correct) /
                                              static_cast<double>(raw.n));
    std::cerr << "accuracy " << buf << "% on " << raw.n << " rows\n";
  } else {
    // No label column: every CSV field is a feature.
    std::ifstream in(data);
    if (!in) throw ParseError("cannot open '" + data + "'");
    std::string line;
    bool skip = has_header;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (skip) {
        skip = false;
        continue;
      }
      std::vector<double> x;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, ',')) x.push_back(std::stod(field));
      out << predict(h, x) << '\n';
    }
  }
  write_out(out_path, out.str());
  return 0;
}

int cmd_cv(const CommonTrainFlags& f, const std::string& grid_text, int folds,
           const std::string& out_path) {
  LossSpec spec = spec_from_flags(f);
  TrainConfig cfg = config_from_flags(f);
  Dataset ds = load_training_data(f, spec);
  CVPlan plan;
  plan.folds = folds;
  plan.seed = f.seed;
  const std::vector<double> grid = grid_text.empty() ? default_lambda_grid()
                                                     : parse_grid(grid_text);
  auto [best, table] = select_lambda(ds, spec, plan, grid, cfg);
  std::ostringstream out;
  out << "lambda,mean_accuracy,failed_folds,selected\n";
  for (const CVCell& cell : table)
    out << fmt(cell.lambda) << ',' << fmt(cell.mean_accuracy) << ',' << cell.failed_folds << ','
        << (cell.usable && cell.lambda == best ? 1 : 0) << '\n';
  write_out(out_path, out.str());
  std::cerr << "selected lambda = " << fmt(best) << '\n';
  return 0;
}

int cmd_bench(const std::string& manifest, int folds, int reps, std::uint64_t seed, double rho,
              double tol, int max_iter, int workers, const std::string& methods_filter,
              const std::string& format, const std::string& out_path) {
  std::vector<DatasetEntry> datasets = load_manifest(manifest);
  std::vector<MethodSpec> methods = default_methods();
  if (!methods_filter.empty()) {
    std::vector<MethodSpec> kept;
    std::stringstream ss(methods_filter);
    std::string name;
    while (std::getline(ss, name, ',')) {
      bool found = false;
      for (const auto& m : methods)
        if (m.name == name) {
          kept.push_back(m);
          found = true;
          break;
        }
      if (!found) throw ParseError("unknown method '" + name + "'");
    }
    methods = std::move(kept);
  }
  CVPlan plan;
  plan.folds = folds;
  plan.repetitions = reps;
  plan.seed = seed;
  BenchConfig cfg;
  cfg.train.rho = rho;
  cfg.train.optim.tol = tol;
  cfg.train.optim.max_iter = max_iter;
  cfg.workers = workers;
  BenchmarkReport report = run_benchmark(datasets, methods, plan, cfg);
  const ReportFormat fmt_kind = format == "markdown" ? ReportFormat::Markdown : ReportFormat::Csv;
  write_out(out_path, emit_report(report, fmt_kind));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bregman-Tweedie linear classification toolkit"};
  app.require_subcommand(1);

  // loss-table
  auto* lt = app.add_subcommand("loss-table", "emit (m, loss, grad) CSV over a margin grid");
  std::string lt_alpha = "1", lt_mode = "l", lt_out;
  double lt_c = 1.0, lt_min = -3.0, lt_max = 3.0;
  int lt_steps = 121;
  lt->add_option("--alpha", lt_alpha, "alpha as p/q");
  lt->add_option("--mode", lt_mode, "h, l, or custom");
  lt->add_option("--c", lt_c, "scale for --mode custom");
  lt->add_option("--m-min", lt_min, "grid start");
  lt->add_option("--m-max", lt_max, "grid end");
  lt->add_option("--steps", lt_steps, "number of grid rows")->check(CLI::PositiveNumber);
  lt->add_option("--out", lt_out, "output file (default stdout)");

  // divergence-table
  auto* dt = app.add_subcommand("divergence-table", "emit (x, y, D_Psi, D_Phi) CSV grid");
  std::string dt_alpha = "0", dt_psi_branch = "neg", dt_phi_branch = "pos", dt_out;
  double dt_xmin = -2, dt_xmax = 2, dt_ymin = -2, dt_ymax = 2;
  int dt_xsteps = 9, dt_ysteps = 41;
  dt->add_option("--alpha", dt_alpha, "alpha as p/q");
  dt->add_option("--x-min", dt_xmin);
  dt->add_option("--x-max", dt_xmax);
  dt->add_option("--x-steps", dt_xsteps)->check(CLI::PositiveNumber);
  dt->add_option("--y-min", dt_ymin);
  dt->add_option("--y-max", dt_ymax);
  dt->add_option("--y-steps", dt_ysteps)->check(CLI::PositiveNumber);
  dt->add_option("--psi-branch", dt_psi_branch, "pos or neg (alpha > 1 only)");
  dt->add_option("--phi-branch", dt_phi_branch, "pos or neg (alpha > 1 only)");
  dt->add_option("--out", dt_out, "output file (default stdout)");

  // domain-info
  auto* di = app.add_subcommand("domain-info", "print categories and domain tables for alpha");
  std::string di_alpha;
  di->add_option("--alpha", di_alpha, "alpha as p/q")->required();

  // train
  auto* tr = app.add_subcommand("train", "fit a model and write it out");
  CommonTrainFlags tr_flags;
  double tr_lambda = 0.0009765625;  // 2^-10
  std::string tr_out;
  add_train_flags(tr, tr_flags);
  tr->add_option("--lambda", tr_lambda, "ridge weight on ||w||^2");
  tr->add_option("--out", tr_out, "model file (default stdout)");

  // predict
  auto* pr = app.add_subcommand("predict", "predict labels with a saved model");
  std::string pr_model, pr_data, pr_label_col, pr_label_map, pr_out;
  bool pr_header = false;
  pr->add_option("--model", pr_model, "model file")->required();
  pr->add_option("--data", pr_data, "CSV file to predict")->required();
  pr->add_option("--label-col", pr_label_col,
                 "label column present in the data (enables accuracy on stderr)");
  pr->add_flag("--has-header", pr_header);
  pr->add_option("--label-map", pr_label_map);
  pr->add_option("--out", pr_out, "output file (default stdout)");

  // cv
  auto* cv = app.add_subcommand("cv", "cross-validated lambda selection");
  CommonTrainFlags cv_flags;
  std::string cv_grid, cv_out;
  int cv_folds = 4;
  add_train_flags(cv, cv_flags);
  cv->add_option("--lambda-grid", cv_grid, "comma-separated lambdas (default 2^-14..2^5)");
  cv->add_option("--folds", cv_folds)->check(CLI::PositiveNumber);
  cv->add_option("--out", cv_out, "output file (default stdout)");

  // bench
  auto* be = app.add_subcommand("bench", "multi-dataset benchmark with Friedman ranking");
  std::string be_manifest, be_methods, be_format = "csv", be_out;
  int be_folds = 4, be_reps = 5, be_iters = 500, be_workers = 1;
  std::uint64_t be_seed = 0;
  double be_rho = 1.5, be_tol = 1e-7;
  be->add_option("--manifest", be_manifest, "dataset manifest file")->required();
  be->add_option("--folds", be_folds)->check(CLI::PositiveNumber);
  be->add_option("--reps", be_reps)->check(CLI::PositiveNumber);
  be->add_option("--seed", be_seed);
  be->add_option("--rho", be_rho);
  be->add_option("--tol", be_tol);
  be->add_option("--max-iter", be_iters);
  be->add_option("--workers", be_workers)->check(CLI::PositiveNumber);
  be->add_option("--methods", be_methods, "comma-separated subset of the built-in methods");
  be->add_option("--format", be_format, "csv or markdown");
  be->add_option("--out", be_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (lt->parsed())
      return cmd_loss_table(lt_alpha, lt_mode, lt_c, lt_min, lt_max, lt_steps, lt_out);
    if (dt->parsed())
      return cmd_divergence_table(dt_alpha, dt_xmin, dt_xmax, dt_xsteps, dt_ymin, dt_ymax,
                                  dt_ysteps, dt_psi_branch, dt_phi_branch, dt_out);
    if (di->parsed()) return cmd_domain_info(di_alpha);
    if (tr->parsed()) return cmd_train(tr_flags, tr_lambda, tr_out);
    if (pr->parsed())
      return cmd_predict(pr_model, pr_data, pr_label_col, pr_header, pr_label_map, pr_out);
    if (cv->parsed()) return cmd_cv(cv_flags, cv_grid, cv_folds, cv_out);
    if (be->parsed())
      return cmd_bench(be_manifest, be_folds, be_reps, be_seed, be_rho, be_tol, be_iters,
                       be_workers, be_methods, be_format, be_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
