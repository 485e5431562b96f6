#pragma once

#include <vector>

#include <Eigen/Dense>

#include "oolr/domain.hpp"
#include "oolr/loss.hpp"

namespace oolr {

struct SolveOptions {
  double tol = 1e-9;      // projected-gradient norm threshold
  int max_iters = 10000;
};

struct SolveResult {
  Decision z;
  double objective = 0.0;
  bool converged = false;
  int iters = 0;
};

/// Best fixed decision in hindsight: argmin over the box of the summed loss,
/// by projected gradient descent with backtracking line search from the box
/// center. The objective is convex, so the result is a global optimum.
SolveResult solve_static_benchmark(const std::vector<TraceSlot>& slots,
                                   const LossConfig& cfg, const FeasibleBox& box,
                                   const SolveOptions& opts = {});

/// Per-slot optimum: argmin over the box of a single slot's loss.
SolveResult solve_dynamic_benchmark(const TraceSlot& slot, const LossConfig& cfg,
                                    const FeasibleBox& box,
                                    const SolveOptions& opts = {});

/// Cumulative regret of one loss series against one comparator series,
/// with the running bound 2*sqrt(2)*D*sqrt(h_{1:t}).
struct RegretSeries {
  Eigen::VectorXd cumulative;
  Eigen::VectorXd average;
  Eigen::VectorXd bound;
};

RegretSeries compute_regret(const Eigen::VectorXd& alg_losses,
                            const Eigen::VectorXd& benchmark_losses,
                            const Eigen::VectorXd& h_series, double D);

/// Full per-slot record of one experiment run: losses against both
/// comparators, both regret accumulations, the prediction-error series and
/// the running regret bound, plus run diagnostics.
struct RegretReport {
  Eigen::VectorXd loss;
  Eigen::VectorXd loss_static;
  Eigen::VectorXd loss_dynamic;
  Eigen::VectorXd regret_static;
  Eigen::VectorXd regret_dynamic;
  Eigen::VectorXd avg_regret_static;
  Eigen::VectorXd avg_regret_dynamic;
  Eigen::VectorXd h;
  Eigen::VectorXd bound;
  std::vector<Decision> decisions;
  double diameter = 0.0;
  bool oracle_assisted = false;   // predictor peeked at the upcoming slot
  int fixed_point_nonconverged = 0;
  bool static_solver_converged = true;
  int dynamic_solver_nonconverged = 0;

  Eigen::Index T() const { return loss.size(); }
};

}  // namespace oolr
