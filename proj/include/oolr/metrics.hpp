#pragma once

#include <vector>

#include "oolr/benchmarks.hpp"
#include "oolr/domain.hpp"
#include "oolr/learners.hpp"
#include "oolr/loss.hpp"
#include "oolr/predictors.hpp"

namespace oolr {

enum class LearnerKind { Ftrl, Oolr };
enum class PredictorKind { Zero, Synthetic, ArmaOgd };
enum class BenchmarkKind { Static, Dynamic, Both };

struct ExperimentConfig {
  LearnerKind learner = LearnerKind::Oolr;
  PredictorKind predictor = PredictorKind::Zero;
  SyntheticPredictorConfig synthetic;
  ArmaOgdConfig arma;
  LossConfig loss;
  FeasibleBox box;
  double sigma = 0.0;      // <= 0 resolves to sqrt(2)/diameter(box)
  double eta_scale = 0.0;  // <= 0 resolves to diameter(box)
  BenchmarkKind benchmarks = BenchmarkKind::Both;
  SolveOptions solver;
  int T = 0;  // 0 means the full trace length
};

double resolve_sigma(const ExperimentConfig& cfg);
double resolve_eta_scale(const ExperimentConfig& cfg);

/// Runs the online protocol: the decision for slot t is committed before
/// slot t's environment is revealed, then the realized loss and gradient
/// feed the learner update and the next forecast. Every decision, the first
/// included, comes from the learner's decision step. The forecast consumed
/// at each decision is retained so the update charges the prediction error
/// against the same object.
///
/// The synthetic predictor reads the upcoming slot (a forecast of stated
/// accuracy); such runs are marked oracle_assisted. Comparator losses come
/// from the offline solvers on the same trace prefix.
RegretReport run_experiment(const ExperimentConfig& cfg,
                            const std::vector<TraceSlot>& trace);

}  // namespace oolr
