#ifndef BREGMAN_DATASET_HPP
#define BREGMAN_DATASET_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bregman/errors.hpp"

namespace bregman {

/// Dense feature matrix with +-1 labels and the preprocessing state needed
/// to replay the transform on unseen data. Immutable by convention: the
/// preprocessing functions return new datasets.
struct Dataset {
  std::vector<double> features;  // row-major, n x d
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<int> labels;  // +1 / -1

  std::vector<double> feature_means;
  std::vector<double> feature_stds;  // population (1/n) standard deviation
  bool standardized = false;

  double b_x = 0.0;  // max row l1 norm after standardization, before rescale
  double l1_divisor = 1.0;
  bool rescaled = false;

  const double* row(std::size_t i) const { return features.data() + i * d; }
  double row_l1(std::size_t i) const;
};

struct CVPlan {
  int folds = 4;
  int repetitions = 5;
  std::uint64_t seed = 0;
  bool stratified = false;
};

/// Loads a CSV file. label_col is a 0-based column index, a header name, or
/// "last". Labels are mapped onto {-1,+1}: an explicit label_map wins;
/// otherwise {0,-1}->-1 and {1,+1}->+1 for numeric-style labels, and the
/// lexicographically smaller of two text labels goes to -1.
Dataset load_csv(const std::string& path, const std::string& label_col = "last",
                 bool has_header = false, const std::map<std::string, int>& label_map = {});

/// Column z-scores with population standard deviation. Constant columns are
/// zeroed. Passing stats_from replays that dataset's transform (test data
/// must reuse the training statistics).
Dataset standardize(const Dataset& ds, const Dataset* stats_from = nullptr);

/// Divides every row by (B_X + 1) where B_X is the maximum row l1 norm of
/// the training set (pass b_x_from for test data). Requires a standardized
/// dataset; afterwards every row satisfies ||x||_1 <= B_X/(B_X+1) < 1.
Dataset rescale_l1(const Dataset& ds, const double* b_x_from = nullptr);

using FoldSplit = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;

/// Seeded k-fold partition of {0..n-1}; the shuffle is keyed by
/// (plan.seed, repetition). Folds are disjoint, covering, and their sizes
/// differ by at most one.
std::vector<FoldSplit> kfold_indices(std::size_t n, const CVPlan& plan, int repetition);

/// Stratified variant keeping the class ratio per fold; used when
/// plan.stratified is set.
std::vector<FoldSplit> kfold_indices(const std::vector<int>& labels, const CVPlan& plan,
                                     int repetition);

/// Row subset preserving preprocessing state and label order.
Dataset subset(const Dataset& ds, const std::vector<std::size_t>& rows);

}  // namespace bregman

#endif
