#ifndef BREGMAN_OPTIMIZER_HPP
#define BREGMAN_OPTIMIZER_HPP

#include <functional>
#include <limits>
#include <vector>

namespace bregman {

/// Symmetric l-infinity box |x_j| <= radius. radius = +inf disables the
/// constraint. The classifier sets radius = rho |c_alpha|.
struct BoxConstraint {
  double radius = std::numeric_limits<double>::infinity();
};

struct OptimConfig {
  int memory = 10;
  int max_iter = 500;
  double tol = 1e-7;  // on the projected-gradient infinity norm
  int ls_max = 30;
  double armijo_c1 = 1e-4;
};

struct OptimResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double final_pg_norm = 0.0;
  bool line_search_failed = false;
};

/// Objective oracle: returns f(x) and fills grad (resized by the caller).
using Oracle = std::function<double(const std::vector<double>&, std::vector<double>&)>;

/// Coordinatewise clamp onto the box; idempotent and nonexpansive.
std::vector<double> project_box(std::vector<double> v, const BoxConstraint& box);

/// Limited-memory projected quasi-Newton over the box. Two-loop L-BFGS
/// directions with Barzilai-Borwein initial scaling, curvature pairs kept
/// only when s'y > 1e-10 ||s|| ||y||, and Armijo backtracking along the
/// projected arc (falling back to the projected gradient direction before
/// giving up). Every point handed to the oracle is feasible, and the
/// objective is non-increasing across accepted iterates. Convergence means
/// ||x - P(x - grad)||_inf <= tol; a line-search failure returns the best
/// iterate with converged = false.
OptimResult minimize(const Oracle& oracle, std::vector<double> x0, const BoxConstraint& box,
                     const OptimConfig& cfg);

}  // namespace bregman

#endif
