#include "bregman/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "bregman/vec.hpp"

namespace bregman {

namespace {

struct Pair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;  // 1 / s'y
};

// Classic two-loop recursion; returns the quasi-Newton direction -H g.
std::vector<double> two_loop_direction(const std::vector<double>& g,
                                       const std::deque<Pair>& pairs, double gamma) {
  std::vector<double> q = g;
  std::vector<double> alpha(pairs.size());
  for (std::size_t k = pairs.size(); k-- > 0;) {
    alpha[k] = pairs[k].rho * dot(pairs[k].s, q);
    axpy(-alpha[k], pairs[k].y, q);
  }
  for (double& v : q) v *= gamma;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double beta = pairs[k].rho * dot(pairs[k].y, q);
    axpy(alpha[k] - beta, pairs[k].s, q);
  }
  for (double& v : q) v = -v;
  return q;
}

double pg_norm_inf(const std::vector<double>& x, const std::vector<double>& g,
                   const BoxConstraint& box) {
  double m = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double stepped = std::clamp(x[j] - g[j], -box.radius, box.radius);
    m = std::max(m, std::abs(x[j] - stepped));
  }
  return m;
}

}  // namespace

std::vector<double> project_box(std::vector<double> v, const BoxConstraint& box) {
  for (double& x : v) x = std::clamp(x, -box.radius, box.radius);
  return v;
}

OptimResult minimize(const Oracle& oracle, std::vector<double> x0, const BoxConstraint& box,
                     const OptimConfig& cfg) {
  const std::size_t n = x0.size();
  std::vector<double> x = project_box(std::move(x0), box);
  std::vector<double> g(n), g_new(n);
  double f = oracle(x, g);

  std::deque<Pair> pairs;
  double gamma = 1.0;

  OptimResult res;
  res.converged = false;

  int iter = 0;
  for (; iter < cfg.max_iter; ++iter) {
    const double pg = pg_norm_inf(x, g, box);
    if (pg <= cfg.tol) {
      res.converged = true;
      break;
    }

    bool accepted = false;
    std::vector<double> x_new;
    double f_new = 0.0;
    // Quasi-Newton direction first, projected steepest descent as fallback.
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      if (attempt == 1 && pairs.empty()) break;  // already tried steepest
      std::vector<double> d;
      if (attempt == 0 && !pairs.empty()) {
        d = two_loop_direction(g, pairs, gamma);
      } else {
        d = g;
        for (double& v : d) v = -v;
      }
      double t = 1.0;
      for (int ls = 0; ls <= cfg.ls_max; ++ls, t *= 0.5) {
        std::vector<double> xc(n);
        for (std::size_t j = 0; j < n; ++j)
          xc[j] = std::clamp(x[j] + t * d[j], -box.radius, box.radius);
        double gd = 0.0;
        bool moved = false;
        for (std::size_t j = 0; j < n; ++j) {
          const double delta = xc[j] - x[j];
          gd += g[j] * delta;
          moved = moved || delta != 0.0;
        }
        if (!moved) break;
        if (gd >= 0.0) continue;  // projection bent the step uphill
        const double fc = oracle(xc, g_new);
        if (fc <= f + cfg.armijo_c1 * gd) {
          accepted = true;
          x_new = std::move(xc);
          f_new = fc;
          break;
        }
      }
    }

    if (!accepted) {
      res.line_search_failed = true;
      break;
    }

    std::vector<double> s(n), yv(n);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = x_new[j] - x[j];
      yv[j] = g_new[j] - g[j];
    }
    const double sy = dot(s, yv);
    if (sy > 1e-10 * norm2(s) * norm2(yv)) {
      gamma = sy / dot(yv, yv);
      pairs.push_back({std::move(s), std::move(yv), 1.0 / sy});
      if (static_cast<int>(pairs.size()) > cfg.memory) pairs.pop_front();
    }

    x = std::move(x_new);
    f = f_new;
    std::swap(g, g_new);
  }

  res.point = x;
  res.value = f;
  res.iterations = iter;
  res.final_pg_norm = pg_norm_inf(x, g, box);
  return res;
}

}  // namespace bregman
