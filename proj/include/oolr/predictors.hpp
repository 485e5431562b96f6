#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "oolr/learners.hpp"
#include "oolr/loss.hpp"

namespace oolr {

struct ArmaOgdConfig {
  int lag_order = 5;
  double step_scale = 0.5;
  double coeff_bound = 1.0;
};

/// Online auto-regressive forecaster applied independently to each signal
/// coordinate. Lag coefficients are refit by one projected gradient step on
/// the squared one-step error after every observation; the step size decays
/// as step_scale / (scale * sqrt(t)) where scale is a running max of the
/// observed magnitudes, floored at 1.
struct ArmaOgdState {
  ArmaOgdConfig cfg;
  Eigen::MatrixXd coeffs;   // n_coords x q lag coefficients
  Eigen::MatrixXd history;  // n_coords x q, column 0 holds the newest value
  int filled = 0;           // observations received (saturates at q)
  int updates = 0;          // gradient steps taken
  double scale_max = 1.0;   // max(1, running max |v|)
};

ArmaOgdState arma_init(Eigen::Index n_coords, const ArmaOgdConfig& cfg = {});

/// Forecast of the next value per coordinate: the lag combination once the
/// window is full, the most recent observation while warming up, zero before
/// anything was seen.
Prediction arma_predict(const ArmaOgdState& state);

/// One OGD step on the squared error of the lag model against `observed`
/// (missing lags during warm-up count as zero), then push `observed` into
/// the window. Coefficients stay clamped to [-coeff_bound, coeff_bound].
ArmaOgdState arma_update(ArmaOgdState state, const GradVector& observed);

/// All-zeros forecast for m resources (2m gradient coordinates).
Prediction zero_predict(Eigen::Index m);

struct SyntheticPredictorConfig {
  double zeta = 0.0;  // average relative error rate of the forecast
  std::uint64_t rng_seed = 0;
  int fixed_point_iters = 20;
  double fixed_point_tol = 1e-10;
};

/// Forecast of stated accuracy built from oracle access to the upcoming
/// slot. Each coordinate of the true gradient is scaled by (1 + s*zeta)
/// with one sign s per slot, so the relative error is exactly zeta.
///
/// The forecast and the decision it will induce are interdependent: the
/// learner moves to the forecast, which changes the gradient being
/// forecast. `predict` resolves this by iterating probe/perturb to a fixed
/// point; when the iteration does not settle within the configured budget
/// the last iterate is used and the run diagnostics count the event.
class SyntheticPredictor {
 public:
  using Probe = std::function<Decision(const Prediction&)>;

  explicit SyntheticPredictor(const SyntheticPredictorConfig& cfg);

  Prediction predict(const TraceSlot& next_slot, const Probe& probe,
                     const LossConfig& loss_cfg);

  int nonconverged_count() const { return nonconverged_; }

 private:
  SyntheticPredictorConfig cfg_;
  std::mt19937_64 rng_;
  int nonconverged_ = 0;
};

}  // namespace oolr
