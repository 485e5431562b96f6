#include "oolr/predictors.hpp"

#include <cmath>
#include <stdexcept>

namespace oolr {

ArmaOgdState arma_init(Eigen::Index n_coords, const ArmaOgdConfig& cfg) {
  if (n_coords <= 0 || cfg.lag_order <= 0) {
    throw std::invalid_argument("predictor needs positive dimensions");
  }
  if (cfg.step_scale <= 0.0 || cfg.coeff_bound <= 0.0) {
    throw std::invalid_argument("predictor step and coefficient bound must be > 0");
  }
  ArmaOgdState s;
  s.cfg = cfg;
  s.coeffs = Eigen::MatrixXd::Zero(n_coords, cfg.lag_order);
  s.history = Eigen::MatrixXd::Zero(n_coords, cfg.lag_order);
  s.filled = 0;
  s.updates = 0;
  s.scale_max = 1.0;
  return s;
}

Prediction arma_predict(const ArmaOgdState& state) {
  const Eigen::Index n = state.coeffs.rows();
  Prediction p{Eigen::VectorXd::Zero(n)};
  if (state.filled == 0) {
    return p;
  }
  if (state.filled < state.cfg.lag_order) {
    p.grad_hat = state.history.col(0);  // persistence while warming up
    return p;
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    p.grad_hat(c) = state.coeffs.row(c).dot(state.history.row(c));
  }
  return p;
}

ArmaOgdState arma_update(ArmaOgdState state, const GradVector& observed) {
  const Eigen::Index n = state.coeffs.rows();
  if (observed.size() != n) {
    throw std::invalid_argument("dimension: observation does not match predictor width");
  }
  const int q = state.cfg.lag_order;
  state.updates += 1;
  const double eta =
      state.cfg.step_scale / (state.scale_max * std::sqrt(static_cast<double>(state.updates)));
  for (Eigen::Index c = 0; c < n; ++c) {
    // Window of previous values; absent lags during warm-up are zero.
    const double err = state.coeffs.row(c).dot(state.history.row(c)) - observed(c);
    const Eigen::RowVectorXd grad = 2.0 * err * state.history.row(c);
    state.coeffs.row(c) = (state.coeffs.row(c) - eta * grad)
                              .cwiseMax(-state.cfg.coeff_bound)
                              .cwiseMin(state.cfg.coeff_bound);
  }
  // Shift the window and push the new observation in front.
  for (int k = q - 1; k > 0; --k) {
    state.history.col(k) = state.history.col(k - 1);
  }
  state.history.col(0) = observed;
  state.filled = std::min(state.filled + 1, q);
  state.scale_max = std::max(state.scale_max, observed.cwiseAbs().maxCoeff());
  return state;
}

Prediction zero_predict(Eigen::Index m) {
  return Prediction{Eigen::VectorXd::Zero(2 * m)};
}

SyntheticPredictor::SyntheticPredictor(const SyntheticPredictorConfig& cfg)
    : cfg_(cfg), rng_(cfg.rng_seed) {
  if (cfg.zeta < 0.0) {
    throw std::invalid_argument("zeta must be >= 0");
  }
  if (cfg.fixed_point_iters <= 0 || cfg.fixed_point_tol <= 0.0) {
    throw std::invalid_argument("fixed point budget must be positive");
  }
}

Prediction SyntheticPredictor::predict(const TraceSlot& next_slot,
                                       const Probe& probe,
                                       const LossConfig& loss_cfg) {
  // One sign per slot makes the relative error exactly zeta per coordinate.
  const double sign = (rng_() & 1u) ? 1.0 : -1.0;
  const double factor = 1.0 + sign * cfg_.zeta;

  Decision z = probe(Prediction{Eigen::VectorXd::Zero(2 * next_slot.m())});
  Prediction pred{Eigen::VectorXd::Zero(2 * next_slot.m())};
  bool converged = false;
  for (int it = 0; it < cfg_.fixed_point_iters; ++it) {
    pred.grad_hat = factor * loss_gradient(next_slot, z, loss_cfg);
    const Decision z_next = probe(pred);
    if ((z_next.stacked() - z.stacked()).norm() < cfg_.fixed_point_tol) {
      converged = true;
      break;
    }
    z = z_next;
  }
  if (!converged) {
    nonconverged_ += 1;
  }
  return pred;
}

}  // namespace oolr
