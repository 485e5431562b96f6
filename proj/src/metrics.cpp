#include "oolr/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace oolr {

double resolve_sigma(const ExperimentConfig& cfg) {
  return cfg.sigma > 0.0 ? cfg.sigma : std::sqrt(2.0) / diameter(cfg.box);
}

double resolve_eta_scale(const ExperimentConfig& cfg) {
  return cfg.eta_scale > 0.0 ? cfg.eta_scale : diameter(cfg.box);
}

RegretReport run_experiment(const ExperimentConfig& cfg,
                            const std::vector<TraceSlot>& trace) {
  const Eigen::Index m = cfg.box.m();
  if (trace.empty()) {
    throw std::invalid_argument("experiment needs a non-empty trace");
  }
  const int T = cfg.T > 0 ? cfg.T : static_cast<int>(trace.size());
  if (T > static_cast<int>(trace.size())) {
    throw std::invalid_argument("horizon " + std::to_string(T) +
                                " exceeds trace length " +
                                std::to_string(trace.size()));
  }
  for (const auto& slot : trace) {
    if (slot.m() != m) {
      throw std::invalid_argument("dimension: trace has m=" +
                                  std::to_string(slot.m()) + ", box has m=" +
                                  std::to_string(m));
    }
  }

  const Decision z1{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m)};
  OolrState oolr;
  FtrlState ftrl;
  if (cfg.learner == LearnerKind::Oolr) {
    oolr = oolr_init(cfg.box, resolve_sigma(cfg), z1);
  } else {
    ftrl = ftrl_init(cfg.box, resolve_eta_scale(cfg), z1);
  }

  ArmaOgdState arma;
  SyntheticPredictor synthetic(cfg.synthetic);
  if (cfg.predictor == PredictorKind::ArmaOgd) {
    arma = arma_init(2 * m, cfg.arma);
  }

  auto next_prediction = [&](int upcoming) -> Prediction {
    switch (cfg.predictor) {
      case PredictorKind::Zero:
        return zero_predict(m);
      case PredictorKind::ArmaOgd:
        return arma_predict(arma);
      case PredictorKind::Synthetic: {
        SyntheticPredictor::Probe probe;
        if (cfg.learner == LearnerKind::Oolr) {
          probe = [&](const Prediction& p) { return oolr_decide(oolr, p, cfg.box); };
        } else {
          probe = [&](const Prediction&) { return ftrl_decide(ftrl, cfg.box); };
        }
        return synthetic.predict(trace[upcoming], probe, cfg.loss);
      }
    }
    throw std::logic_error("unknown predictor kind");
  };

  auto decide = [&](const Prediction& pred) {
    return cfg.learner == LearnerKind::Oolr ? oolr_decide(oolr, pred, cfg.box)
                                            : ftrl_decide(ftrl, cfg.box);
  };

  RegretReport report;
  report.loss.resize(T);
  report.h.resize(T);
  report.decisions.reserve(T);
  report.diameter = diameter(cfg.box);
  report.oracle_assisted = cfg.predictor == PredictorKind::Synthetic;

  // The first decision also goes through the decision step (with the slot-1
  // forecast and an empty history): the regret analysis needs every played
  // point to minimize the optimistic objective, the first one included.
  Prediction pred = next_prediction(0);
  Decision z = decide(pred);
  for (int t = 0; t < T; ++t) {
    const TraceSlot& slot = trace[t];
    report.loss(t) = loss_value(slot, z, cfg.loss);
    const GradVector grad = loss_gradient(slot, z, cfg.loss);
    report.h(t) = (grad - pred.grad_hat).squaredNorm();
    report.decisions.push_back(z);

    if (cfg.learner == LearnerKind::Oolr) {
      oolr = oolr_update(oolr, grad, pred, z);
    } else {
      ftrl = ftrl_update(ftrl, grad);
    }
    if (cfg.predictor == PredictorKind::ArmaOgd) {
      arma = arma_update(arma, grad);
    }

    if (t + 1 < T) {
      pred = next_prediction(t + 1);
      z = decide(pred);
    }
  }
  report.fixed_point_nonconverged = synthetic.nonconverged_count();

  const std::vector<TraceSlot> prefix(trace.begin(), trace.begin() + T);
  const double D = report.diameter;
  const Eigen::VectorXd nan_col =
      Eigen::VectorXd::Constant(T, std::numeric_limits<double>::quiet_NaN());

  if (cfg.benchmarks == BenchmarkKind::Static ||
      cfg.benchmarks == BenchmarkKind::Both) {
    const SolveResult st = solve_static_benchmark(prefix, cfg.loss, cfg.box, cfg.solver);
    report.static_solver_converged = st.converged;
    report.loss_static.resize(T);
    for (int t = 0; t < T; ++t) {
      report.loss_static(t) = loss_value(prefix[t], st.z, cfg.loss);
    }
    const RegretSeries s = compute_regret(report.loss, report.loss_static, report.h, D);
    report.regret_static = s.cumulative;
    report.avg_regret_static = s.average;
    report.bound = s.bound;
  } else {
    report.loss_static = nan_col;
    report.regret_static = nan_col;
    report.avg_regret_static = nan_col;
  }

  if (cfg.benchmarks == BenchmarkKind::Dynamic ||
      cfg.benchmarks == BenchmarkKind::Both) {
    report.loss_dynamic.resize(T);
    for (int t = 0; t < T; ++t) {
      const SolveResult dyn =
          solve_dynamic_benchmark(prefix[t], cfg.loss, cfg.box, cfg.solver);
      if (!dyn.converged) report.dynamic_solver_nonconverged += 1;
      report.loss_dynamic(t) = dyn.objective;
    }
    const RegretSeries d = compute_regret(report.loss, report.loss_dynamic, report.h, D);
    report.regret_dynamic = d.cumulative;
    report.avg_regret_dynamic = d.average;
    if (report.bound.size() == 0) report.bound = d.bound;
  } else {
    report.loss_dynamic = nan_col;
    report.regret_dynamic = nan_col;
    report.avg_regret_dynamic = nan_col;
  }

  return report;
}

}  // namespace oolr
