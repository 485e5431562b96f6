#include "oolr/learners.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oolr {

namespace {

void check_learner_dims(Eigen::Index have, Eigen::Index want, const char* what) {
  if (have != want) {
    throw std::invalid_argument(std::string("dimension: ") + what + " has length " +
                                std::to_string(have) + ", expected " +
                                std::to_string(want));
  }
}

}  // namespace

OolrState oolr_init(const FeasibleBox& box, double sigma, const Decision& z1) {
  if (sigma <= 0.0) {
    throw std::invalid_argument("sigma must be > 0");
  }
  if (!contains(box, z1)) {
    throw std::invalid_argument("infeasible: initial decision outside the box");
  }
  OolrState s;
  s.sigma = sigma;
  s.grad_sum = Eigen::VectorXd::Zero(2 * box.m());
  s.weighted_center_sum = Eigen::VectorXd::Zero(2 * box.m());
  s.sigma_sum = 0.0;
  s.h_sum = 0.0;
  s.last_decision = z1;
  s.t = 1;
  return s;
}

Decision oolr_decide(const OolrState& state, const Prediction& pred,
                     const FeasibleBox& box) {
  const Eigen::Index n = 2 * box.m();
  check_learner_dims(state.grad_sum.size(), n, "grad_sum");
  check_learner_dims(pred.grad_hat.size(), n, "prediction");

  const Eigen::VectorXd linear = state.grad_sum + pred.grad_hat;
  if (state.sigma_sum > 0.0) {
    const Eigen::VectorXd center = state.weighted_center_sum / state.sigma_sum;
    return project(center - linear / state.sigma_sum, box);
  }
  // No regularizer mass yet: pure linear objective over the box.
  Eigen::VectorXd z(n);
  const Eigen::VectorXd last = state.last_decision.stacked();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = box.bounds(i % box.m());
    if (linear(i) > 0.0) {
      z(i) = 0.0;
    } else if (linear(i) < 0.0) {
      z(i) = d;
    } else {
      z(i) = last(i);
    }
  }
  return project(z, box);
}

OolrState oolr_update(OolrState state, const GradVector& grad_true,
                      const Prediction& pred_used, const Decision& z_played) {
  const Eigen::Index n = state.grad_sum.size();
  check_learner_dims(grad_true.size(), n, "gradient");
  check_learner_dims(pred_used.grad_hat.size(), n, "prediction");

  const double h_t = (grad_true - pred_used.grad_hat).squaredNorm();
  const double new_h_sum = state.h_sum + h_t;
  // Assigning sigma*sqrt(h_sum) keeps the telescoping identity exact.
  const double new_sigma_sum = state.sigma * std::sqrt(new_h_sum);
  const double sigma_t = new_sigma_sum - state.sigma_sum;

  state.weighted_center_sum += sigma_t * z_played.stacked();
  state.sigma_sum = new_sigma_sum;
  state.h_sum = new_h_sum;
  state.grad_sum += grad_true;
  state.last_decision = z_played;
  state.t += 1;
  return state;
}

FtrlState ftrl_init(const FeasibleBox& box, double eta_scale, const Decision& z1) {
  if (eta_scale <= 0.0) {
    throw std::invalid_argument("eta_scale must be > 0");
  }
  if (!contains(box, z1)) {
    throw std::invalid_argument("infeasible: initial decision outside the box");
  }
  FtrlState s;
  s.eta_scale = eta_scale;
  s.grad_sum = Eigen::VectorXd::Zero(2 * box.m());
  s.grad_sq_sum = 0.0;
  s.t = 1;
  s.last_decision = z1;
  return s;
}

Decision ftrl_decide(const FtrlState& state, const FeasibleBox& box) {
  check_learner_dims(state.grad_sum.size(), 2 * box.m(), "grad_sum");
  if (state.t == 1) {
    return state.last_decision;
  }
  const double eta =
      state.eta_scale / std::sqrt(std::max(state.grad_sq_sum, kFtrlGradFloor));
  return project(-eta * state.grad_sum, box);
}

FtrlState ftrl_update(FtrlState state, const GradVector& grad_true) {
  check_learner_dims(grad_true.size(), state.grad_sum.size(), "gradient");
  state.grad_sum += grad_true;
  state.grad_sq_sum += grad_true.squaredNorm();
  state.t += 1;
  return state;
}

}  // namespace oolr
