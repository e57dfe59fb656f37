#ifndef BREGMAN_BENCHMARK_HPP
#define BREGMAN_BENCHMARK_HPP

#include <string>
#include <vector>

#include "bregman/classifier.hpp"
#include "bregman/dataset.hpp"

namespace bregman {

/// A named competitor: loss plus its lambda grid (empty = default grid).
struct MethodSpec {
  std::string name;
  ModelLoss loss;
  std::vector<double> grid;
};

struct DatasetEntry {
  std::string name;
  std::string train_path;
  std::string test_path;
  std::string label_col = "last";
  bool has_header = false;
};

struct BenchConfig {
  TrainConfig train;
  int workers = 1;
};

struct BenchmarkReport {
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  /// per_cell[d][m][r]: test accuracy of method m on dataset d, repetition r.
  std::vector<std::vector<std::vector<double>>> per_cell;
  /// Repetition means, the ranked quantity.
  std::vector<std::vector<double>> mean_cell;
  std::vector<double> mean_accuracy;  // per method, over successful datasets
  std::vector<double> friedman_rank;  // per method; lower is better
  std::vector<bool> dataset_ok;
  std::vector<std::string> failures;  // one message per failed dataset
};

enum class ReportFormat { Csv, Markdown };

/// Per repetition and dataset: shuffle, select lambda by cross-validation on
/// the training set, refit on the full training set, score on the held-out
/// test set. Cells average over repetitions before ranking. Failing datasets
/// are excluded from the summary with a warning instead of aborting.
/// Deterministic for a fixed plan.seed, independent of worker count.
BenchmarkReport run_benchmark(const std::vector<DatasetEntry>& datasets,
                              const std::vector<MethodSpec>& methods, const CVPlan& plan,
                              const BenchConfig& cfg);

/// Average-tie Friedman ranks: per dataset, methods are ranked by descending
/// accuracy (rank 1 = best) with tied values sharing the mean of their
/// ranks; the result is the per-method mean rank across datasets.
std::vector<double> friedman_ranking(const std::vector<std::vector<double>>& acc);

/// Renders the accuracy table (percent, 2 decimals) with final "Mean" and
/// "Friedman Ranking" rows.
std::string emit_report(const BenchmarkReport& report, ReportFormat format);

/// Manifest: one dataset per line, "name,train_path,test_path,label_col,has_header";
/// blank lines and lines starting with '#' are skipped.
std::vector<DatasetEntry> load_manifest(const std::string& path);

/// The built-in method set: five hinge-like and five logistic-like
/// Bregman-Tweedie models plus logistic, hinge, and squared-hinge baselines.
std::vector<MethodSpec> default_methods();

}  // namespace bregman

#endif
