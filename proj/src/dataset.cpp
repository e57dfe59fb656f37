#include "bregman/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "bregman/rng.hpp"

namespace bregman {

double Dataset::row_l1(std::size_t i) const {
  double s = 0.0;
  const double* r = row(i);
  for (std::size_t j = 0; j < d; ++j) s += std::abs(r[j]);
  return s;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, std::size_t line_no) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw ParseError("line " + std::to_string(line_no) + ": bad numeric field '" + t + "'");
  return v;
}

// Default mapping: numeric-style pairs use {0,-1}->-1, {1,+1}->+1; text
// pairs send the lexicographically smaller label to -1.
std::map<std::string, int> default_label_map(const std::set<std::string>& classes) {
  const std::set<std::string> numeric = {"0", "1", "+1", "-1"};
  std::map<std::string, int> out;
  bool all_numeric = true;
  for (const auto& c : classes) all_numeric = all_numeric && numeric.count(c) > 0;
  if (all_numeric) {
    for (const auto& c : classes) out[c] = (c == "0" || c == "-1") ? -1 : +1;
  } else {
    int next = -1;
    for (const auto& c : classes) {  // std::set iterates in sorted order
      out[c] = next;
      next = +1;
    }
  }
  return out;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_col, bool has_header,
                 const std::map<std::string, int>& label_map) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (has_header && header.empty()) {
      for (auto& f : fields) f = trim(f);
      header = fields;
      continue;
    }
    if (!rows.empty() && fields.size() != rows.front().size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " fields, got " +
                       std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw ParseError("'" + path + "' holds no data rows");
  const std::size_t arity = rows.front().size();
  if (has_header && header.size() != arity)
    throw ParseError("header arity differs from data arity in '" + path + "'");

  std::size_t label_idx;
  if (label_col == "last") {
    label_idx = arity - 1;
  } else {
    char* end = nullptr;
    const long idx = std::strtol(label_col.c_str(), &end, 10);
    if (end == label_col.c_str() + label_col.size() && !label_col.empty()) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= arity)
        throw ParseError("label column index " + label_col + " out of range");
      label_idx = static_cast<std::size_t>(idx);
    } else {
      if (!has_header) throw ParseError("label column by name needs a header");
      auto it = std::find(header.begin(), header.end(), label_col);
      if (it == header.end()) throw ParseError("no column named '" + label_col + "'");
      label_idx = static_cast<std::size_t>(it - header.begin());
    }
  }

  std::vector<std::string> raw_labels;
  raw_labels.reserve(rows.size());
  std::set<std::string> classes;
  for (const auto& r : rows) {
    raw_labels.push_back(trim(r[label_idx]));
    classes.insert(raw_labels.back());
  }
  if (classes.size() != 2)
    throw LabelError("expected exactly 2 classes, found " + std::to_string(classes.size()));

  std::map<std::string, int> mapping = label_map.empty() ? default_label_map(classes) : label_map;
  std::set<int> mapped;
  for (const auto& c : classes) {
    auto it = mapping.find(c);
    if (it == mapping.end()) throw LabelError("label '" + c + "' missing from the label map");
    if (it->second != -1 && it->second != +1)
      throw LabelError("label map must target -1 or +1");
    mapped.insert(it->second);
  }
  if (mapped.size() != 2) throw LabelError("label map collapses the two classes");

  Dataset ds;
  ds.n = rows.size();
  ds.d = arity - 1;
  ds.features.resize(ds.n * ds.d);
  ds.labels.resize(ds.n);
  for (std::size_t i = 0; i < ds.n; ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < arity; ++j) {
      if (j == label_idx) continue;
      ds.features[i * ds.d + k] = parse_double(rows[i][j], i + 1);
      ++k;
    }
    ds.labels[i] = mapping.at(raw_labels[i]);
  }
  return ds;
}

Dataset standardize(const Dataset& ds, const Dataset* stats_from) {
  Dataset out = ds;
  if (stats_from != nullptr) {
    if (!stats_from->standardized) throw DomainError("stats_from dataset is not standardized");
    if (stats_from->feature_means.size() != ds.d)
      throw ArityError("stats_from feature arity differs");
    out.feature_means = stats_from->feature_means;
    out.feature_stds = stats_from->feature_stds;
  } else {
    out.feature_means.assign(ds.d, 0.0);
    out.feature_stds.assign(ds.d, 0.0);
    for (std::size_t i = 0; i < ds.n; ++i)
      for (std::size_t j = 0; j < ds.d; ++j) out.feature_means[j] += ds.features[i * ds.d + j];
    for (std::size_t j = 0; j < ds.d; ++j) out.feature_means[j] /= static_cast<double>(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i)
      for (std::size_t j = 0; j < ds.d; ++j) {
        const double dev = ds.features[i * ds.d + j] - out.feature_means[j];
        out.feature_stds[j] += dev * dev;
      }
    for (std::size_t j = 0; j < ds.d; ++j)
      out.feature_stds[j] = std::sqrt(out.feature_stds[j] / static_cast<double>(ds.n));
  }
  for (std::size_t i = 0; i < ds.n; ++i)
    for (std::size_t j = 0; j < ds.d; ++j) {
      const double sd = out.feature_stds[j];
      out.features[i * ds.d + j] =
          sd > 0.0 ? (ds.features[i * ds.d + j] - out.feature_means[j]) / sd : 0.0;
    }
  out.standardized = true;
  out.rescaled = false;
  out.b_x = 0.0;
  out.l1_divisor = 1.0;
  return out;
}

Dataset rescale_l1(const Dataset& ds, const double* b_x_from) {
  if (!ds.standardized) throw DomainError("rescale_l1 requires a standardized dataset");
  Dataset out = ds;
  double bx = 0.0;
  if (b_x_from != nullptr) {
    bx = *b_x_from;
  } else {
    for (std::size_t i = 0; i < ds.n; ++i) bx = std::max(bx, ds.row_l1(i));
  }
  const double divisor = bx + 1.0;
  for (double& v : out.features) v /= divisor;
  out.b_x = bx;
  out.l1_divisor = divisor;
  out.rescaled = true;
  return out;
}

std::vector<FoldSplit> kfold_indices(std::size_t n, const CVPlan& plan, int repetition) {
  if (plan.folds < 2) throw InvalidPlan("need at least 2 folds");
  if (n < static_cast<std::size_t>(plan.folds))
    throw InvalidPlan("fewer samples than folds");
  if (repetition < 0) throw InvalidPlan("repetition must be nonnegative");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(SplitMix64::derive(plan.seed, static_cast<std::uint64_t>(repetition)));
  shuffle(order, rng);

  const std::size_t k = static_cast<std::size_t>(plan.folds);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::vector<FoldSplit> out(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    auto& [train, valid] = out[f];
    valid.assign(order.begin() + pos, order.begin() + pos + size);
    train.reserve(n - size);
    for (std::size_t i = 0; i < n; ++i)
      if (i < pos || i >= pos + size) train.push_back(order[i]);
    pos += size;
  }
  return out;
}

std::vector<FoldSplit> kfold_indices(const std::vector<int>& labels, const CVPlan& plan,
                                     int repetition) {
  if (!plan.stratified) return kfold_indices(labels.size(), plan, repetition);
  if (plan.folds < 2) throw InvalidPlan("need at least 2 folds");
  if (labels.size() < static_cast<std::size_t>(plan.folds))
    throw InvalidPlan("fewer samples than folds");

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] > 0 ? pos : neg).push_back(i);
  SplitMix64 rng(SplitMix64::derive(plan.seed, static_cast<std::uint64_t>(repetition)));
  shuffle(pos, rng);
  shuffle(neg, rng);

  const std::size_t k = static_cast<std::size_t>(plan.folds);
  std::vector<std::vector<std::size_t>> blocks(k);
  std::size_t turn = 0;
  for (std::size_t i : pos) blocks[turn++ % k].push_back(i);
  for (std::size_t i : neg) blocks[turn++ % k].push_back(i);

  std::vector<FoldSplit> out(k);
  for (std::size_t f = 0; f < k; ++f) {
    auto& [train, valid] = out[f];
    valid = blocks[f];
    for (std::size_t g = 0; g < k; ++g)
      if (g != f) train.insert(train.end(), blocks[g].begin(), blocks[g].end());
  }
  return out;
}

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.n = rows.size();
  out.d = ds.d;
  out.features.resize(out.n * out.d);
  out.labels.resize(out.n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double* src = ds.row(rows[i]);
    std::copy(src, src + ds.d, out.features.begin() + i * ds.d);
    out.labels[i] = ds.labels[rows[i]];
  }
  out.feature_means = ds.feature_means;
  out.feature_stds = ds.feature_stds;
  out.standardized = ds.standardized;
  out.b_x = ds.b_x;
  out.l1_divisor = ds.l1_divisor;
  out.rescaled = ds.rescaled;
  return out;
}

}  // namespace bregman
