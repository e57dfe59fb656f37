#include "bregman/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "bregman/rng.hpp"

namespace bregman {

namespace {

struct PreparedDataset {
  Dataset train;  // standardized + rescaled
  Dataset test;   // raw; scoring replays the stored transform
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string percent(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * accuracy);
  return buf;
}

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::vector<double> friedman_ranking(const std::vector<std::vector<double>>& acc) {
  if (acc.empty()) throw MissingCellError("no datasets to rank");
  const std::size_t m = acc.front().size();
  std::vector<double> sum(m, 0.0);
  for (const auto& row : acc) {
    if (row.size() != m) throw MissingCellError("ragged accuracy matrix");
    for (double v : row)
      if (std::isnan(v)) throw MissingCellError("missing accuracy cell");
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
    std::size_t i = 0;
    while (i < m) {
      std::size_t j = i;
      while (j + 1 < m && row[order[j + 1]] == row[order[i]]) ++j;
      const double shared = 0.5 * static_cast<double>((i + 1) + (j + 1));  // average of ranks i+1..j+1
      for (std::size_t k = i; k <= j; ++k) sum[order[k]] += shared;
      i = j + 1;
    }
  }
  for (double& v : sum) v /= static_cast<double>(acc.size());
  return sum;
}

BenchmarkReport run_benchmark(const std::vector<DatasetEntry>& datasets,
                              const std::vector<MethodSpec>& methods, const CVPlan& plan,
                              const BenchConfig& cfg) {
  {
    std::set<std::string> names;
    for (const auto& m : methods)
      if (!names.insert(m.name).second)
        throw NameCollisionError("duplicate method name '" + m.name + "'");
  }
  if (methods.empty()) throw SelectionError("no methods registered");

  const std::size_t nd = datasets.size();
  const std::size_t nm = methods.size();
  const std::size_t nr = static_cast<std::size_t>(std::max(1, plan.repetitions));

  BenchmarkReport report;
  for (const auto& d : datasets) report.datasets.push_back(d.name);
  for (const auto& m : methods) report.methods.push_back(m.name);
  report.per_cell.assign(nd, std::vector<std::vector<double>>(nm, std::vector<double>(nr, 0.0)));
  report.dataset_ok.assign(nd, true);
  report.failures.assign(nd, "");

  // Load and preprocess up front; a bad file only disables its dataset.
  std::vector<PreparedDataset> prepared(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    try {
      const auto& entry = datasets[d];
      Dataset train_raw = load_csv(entry.train_path, entry.label_col, entry.has_header);
      Dataset test_raw = load_csv(entry.test_path, entry.label_col, entry.has_header);
      if (train_raw.d != test_raw.d)
        throw ParseError("train/test feature arity differs for '" + entry.name + "'");
      prepared[d].train = rescale_l1(standardize(train_raw));
      prepared[d].test = std::move(test_raw);
    } catch (const std::exception& e) {
      report.dataset_ok[d] = false;
      report.failures[d] = e.what();
    }
  }

  struct Task {
    std::size_t d, m, r;
  };
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < nd; ++d) {
    if (!report.dataset_ok[d]) continue;
    for (std::size_t m = 0; m < nm; ++m)
      for (std::size_t r = 0; r < nr; ++r) tasks.push_back({d, m, r});
  }

  std::mutex fail_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task task = tasks[t];
      try {
        const auto& method = methods[task.m];
        const Dataset& train = prepared[task.d].train;

        CVPlan cell_plan = plan;
        // Fold shuffles are shared across methods within a repetition.
        cell_plan.seed = SplitMix64::derive(plan.seed, task.d, 0xF01D);

        TrainConfig train_cfg = cfg.train;
        train_cfg.seed = SplitMix64::derive(plan.seed, task.d, task.m, task.r);

        const std::vector<double>& grid =
            method.grid.empty() ? default_lambda_grid() : method.grid;
        auto [best_lambda, table] = select_lambda(train, method.loss, cell_plan, grid, train_cfg,
                                                  static_cast<int>(task.r));
        train_cfg.lambda = best_lambda;
        const Hyperplane h = fit(train, method.loss, train_cfg);
        report.per_cell[task.d][task.m][task.r] = score(h, prepared[task.d].test);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        report.dataset_ok[task.d] = false;
        if (report.failures[task.d].empty())
          report.failures[task.d] = std::string("method '") + methods[task.m].name + "': " + e.what();
      }
    }
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t d = 0; d < nd; ++d)
    if (!report.dataset_ok[d])
      std::cerr << "warning: dataset '" << datasets[d].name
                << "' excluded from the report: " << report.failures[d] << '\n';

  report.mean_cell.assign(nd, std::vector<double>(nm, 0.0));
  for (std::size_t d = 0; d < nd; ++d)
    for (std::size_t m = 0; m < nm; ++m) {
      double s = 0.0;
      for (std::size_t r = 0; r < nr; ++r) s += report.per_cell[d][m][r];
      report.mean_cell[d][m] = s / static_cast<double>(nr);
    }

  std::vector<std::vector<double>> ranked;
  for (std::size_t d = 0; d < nd; ++d)
    if (report.dataset_ok[d]) ranked.push_back(report.mean_cell[d]);

  report.mean_accuracy.assign(nm, 0.0);
  if (!ranked.empty()) {
    for (const auto& row : ranked)
      for (std::size_t m = 0; m < nm; ++m) report.mean_accuracy[m] += row[m];
    for (double& v : report.mean_accuracy) v /= static_cast<double>(ranked.size());
    report.friedman_rank = friedman_ranking(ranked);
  } else {
    report.friedman_rank.assign(nm, 0.0);
  }
  return report;
}

std::string emit_report(const BenchmarkReport& report, ReportFormat format) {
  std::ostringstream out;
  const std::size_t nm = report.methods.size();
  auto row = [&](const std::string& head, const std::vector<std::string>& cells) {
    if (format == ReportFormat::Csv) {
      out << head;
      for (const auto& c : cells) out << ',' << c;
      out << '\n';
    } else {
      out << "| " << head;
      for (const auto& c : cells) out << " | " << c;
      out << " |\n";
    }
  };

  row("dataset", report.methods);
  if (format == ReportFormat::Markdown) {
    out << "|---";
    for (std::size_t m = 0; m < nm; ++m) out << "|---";
    out << "|\n";
  }
  for (std::size_t d = 0; d < report.datasets.size(); ++d) {
    if (!report.dataset_ok[d]) continue;
    std::vector<std::string> cells;
    for (std::size_t m = 0; m < nm; ++m) cells.push_back(percent(report.mean_cell[d][m]));
    row(report.datasets[d], cells);
  }
  std::vector<std::string> mean_cells, rank_cells;
  for (std::size_t m = 0; m < nm; ++m) {
    mean_cells.push_back(percent(report.mean_accuracy[m]));
    rank_cells.push_back(two_decimals(report.friedman_rank[m]));
  }
  row("Mean", mean_cells);
  row("Friedman Ranking", rank_cells);
  return out.str();
}

std::vector<DatasetEntry> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest '" + path + "'");
  std::vector<DatasetEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (fields.size() != 5)
      throw ParseError("manifest line " + std::to_string(line_no) +
                       ": expected name,train,test,label_col,has_header");
    DatasetEntry e;
    e.name = fields[0];
    e.train_path = fields[1];
    e.test_path = fields[2];
    e.label_col = fields[3];
    if (fields[4] == "1" || fields[4] == "true")
      e.has_header = true;
    else if (fields[4] == "0" || fields[4] == "false")
      e.has_header = false;
    else
      throw ParseError("manifest line " + std::to_string(line_no) + ": bad header flag '" +
                       fields[4] + "'");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<MethodSpec> default_methods() {
  std::vector<MethodSpec> out;
  auto hb = [](const char* name, std::int64_t p, std::int64_t q) {
    return MethodSpec{name, make_spec(Rational(p, q), LossMode::HBregman), {}};
  };
  auto lb = [](const char* name, std::int64_t p, std::int64_t q) {
    return MethodSpec{name, make_spec(Rational(p, q), LossMode::LBregman), {}};
  };
  out.push_back(hb("HB1", 58, 59));
  out.push_back(hb("HB2", 68, 69));
  out.push_back(hb("HB3", 76, 77));
  out.push_back(hb("HB4", 78, 79));
  out.push_back(hb("HB5", 90, 91));
  out.push_back(lb("LB1", 62, 63));
  out.push_back(lb("LB2", 70, 71));
  out.push_back(lb("LB3", 80, 81));
  out.push_back(lb("LB4", 84, 85));
  out.push_back(lb("LB5", 92, 93));
  out.push_back(MethodSpec{"Logistic", make_spec(Rational(1), LossMode::LBregman), {}});
  out.push_back(MethodSpec{"Hinge", HingeSpec{Rational(0), 1.0}, {}});
  out.push_back(MethodSpec{"L2SVM", HingeSpec{Rational(1, 2), 0.25}, {}});
  return out;
}

}  // namespace bregman
